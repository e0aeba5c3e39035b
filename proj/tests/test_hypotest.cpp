// Copyright 2026 The hude Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "hude/errors.hpp"
#include "hude/hypotest.hpp"
#include "hude/reactor.hpp"

using namespace hude;

namespace {

// Sup distance between empirical CDFs, evaluated at every sample point.
double brute_statistic(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  std::vector<double> all = a;
  all.insert(all.end(), b.begin(), b.end());
  for (double x : all) {
    const double fa = static_cast<double>(std::count_if(a.begin(), a.end(), [&](double v) { return v <= x; })) / a.size();
    const double fb = static_cast<double>(std::count_if(b.begin(), b.end(), [&](double v) { return v <= x; })) / b.size();
    d = std::max(d, std::fabs(fa - fb));
  }
  return d;
}

// Exact permutation p-value: the share of all splits of the pooled sample
// whose statistic is at least the observed one.
double brute_p_value(const std::vector<double>& a, const std::vector<double>& b) {
  const double d = brute_statistic(a, b);
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<bool> pick(pooled.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(a.size()), true);
  long hits = 0, total = 0;
  do {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < pooled.size(); ++i) (pick[i] ? x : y).push_back(pooled[i]);
    if (brute_statistic(x, y) >= d - 1e-12) ++hits;
    ++total;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

TEST_CASE("published residuals pass the test at 5%") {
  const TestReport r = uncertain_hypothesis_test(reactor::table4(), 0.05);
  CHECK(r.residual_count == 60);
  CHECK(r.threshold == 3);
  CHECK(r.outliers == std::vector<std::size_t>{50, 55});
  CHECK(r.outlier_values[0] == doctest::Approx(0.9875));
  CHECK(r.outlier_values[1] == doctest::Approx(0.9952));
  CHECK(r.lower == 0.025);
  CHECK(r.upper == 0.975);
  CHECK_FALSE(r.reject);
}

TEST_CASE("hand-counted outliers") {
  const std::vector<double> e = {0.01, 0.5, 0.99, 0.3};
  const TestReport r = uncertain_hypothesis_test(e, 0.1);
  CHECK(r.threshold == 1);
  CHECK(r.outliers == std::vector<std::size_t>{1, 3});
  CHECK(r.reject);
  // The bounds themselves are not outliers.
  const TestReport edge = uncertain_hypothesis_test(std::vector<double>{0.05, 0.95}, 0.1);
  CHECK(edge.outliers.empty());
  // 20 residuals at 5%: one outlier is enough.
  std::vector<double> twenty(20, 0.5);
  CHECK_FALSE(uncertain_hypothesis_test(twenty, 0.05).reject);
  twenty[7] = 0.999;
  const TestReport one = uncertain_hypothesis_test(twenty, 0.05);
  CHECK(one.threshold == 1);
  CHECK(one.reject);
  CHECK_THROWS_AS(uncertain_hypothesis_test(e, 0.0), PreconditionError);
  CHECK_THROWS_AS(uncertain_hypothesis_test(std::vector<double>{}, 0.05), PreconditionError);
}

TEST_CASE("outliers are reported by observation index") {
  ResidualVector r = make_residual_vector({0.5, 0.999, 0.5});
  r.index = {4, 5, 6};
  CHECK(uncertain_hypothesis_test(r, 0.05).outliers == std::vector<std::size_t>{5});
}

TEST_CASE("two-sample statistic and exact p-value") {
  const std::vector<double> a = {1, 2, 3, 4, 5}, b = {2.5, 6, 7};
  const KsResult r = two_sample_ks(a, b);
  CHECK(r.statistic == doctest::Approx(2.0 / 3.0));
  CHECK(r.p_value == doctest::Approx(0.2857142857142857).epsilon(1e-12));
  CHECK_FALSE(r.reject_at_5pct);
  CHECK(r.asymptotic_critical == doctest::Approx(1.358 * std::sqrt(8.0 / 15.0)));

  const KsResult sep = two_sample_ks(std::vector<double>{0.1, 0.2}, std::vector<double>{0.8, 0.9});
  CHECK(sep.statistic == 1.0);
  CHECK(sep.p_value == doctest::Approx(1.0 / 3.0));
  CHECK_FALSE(sep.reject_at_5pct);

  const KsResult same = two_sample_ks(a, a);
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == 1.0);
  CHECK_THROWS_AS(two_sample_ks(a, std::vector<double>{}), PreconditionError);
}

TEST_CASE("exact p-values agree with enumeration") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 2 + trial % 5, m = 3 + (trial * 7) % 6;
    std::vector<double> a(n), b(m);
    const double shift = 0.1 * (trial % 4);
    for (double& x : a) x = u(rng);
    for (double& x : b) x = u(rng) + shift;
    const KsResult r = two_sample_ks(a, b);
    CHECK(r.statistic == doctest::Approx(brute_statistic(a, b)).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(brute_p_value(a, b)).epsilon(1e-10));
  }
}

TEST_CASE("statistic is symmetric in its samples") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(10 + trial), b(7 + 2 * trial);
    for (double& x : a) x = u(rng);
    for (double& x : b) x = u(rng) * 1.2;
    const KsResult ab = two_sample_ks(a, b), ba = two_sample_ks(b, a);
    CHECK(ab.statistic == ba.statistic);
    CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-12));
  }
}

TEST_CASE("diagnostic split of the published residuals") {
  const ResidualVector t4 = reactor::table4();
  const std::vector<double> head(t4.epsilon.begin(), t4.epsilon.begin() + 21);
  const std::vector<double> tail(t4.epsilon.begin() + 43, t4.epsilon.end());
  const KsResult r = two_sample_ks(head, tail);
  CHECK(r.size_a == 21);
  CHECK(r.size_b == 17);
  CHECK(r.statistic == doctest::Approx(0.42296918767507).epsilon(1e-12));
  CHECK(r.p_value == doctest::Approx(0.046000823751846366).epsilon(1e-9));
  CHECK(r.reject_at_5pct);
}

TEST_CASE("large samples use the corrected limit") {
  CHECK(kolmogorov_tail(0.0) == 1.0);
  CHECK(kolmogorov_tail(1.358) == doctest::Approx(0.05).epsilon(0.01));
  std::vector<double> a(4000), b(3000);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& x : a) x = u(rng);
  for (double& x : b) x = u(rng);
  const KsResult r = two_sample_ks(a, b);
  CHECK(r.p_value > 0.0);
  CHECK(r.p_value <= 1.0);
  CHECK_FALSE(r.reject_at_5pct == (r.p_value >= 0.05));
}
