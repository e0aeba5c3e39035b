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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
// and exits non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hude/alphapath.hpp"
#include "hude/estimate.hpp"
#include "hude/hypotest.hpp"
#include "hude/reactor.hpp"
#include "hude/residuals.hpp"
#include "oracles.hpp"

using namespace hude;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome example2_closed_form() {
  const auto start = std::chrono::steady_clock::now();
  const HudeModel m = testing::example2_model();
  const InitialState init{0.0, {0.0, 0.0}};
  const double exact = testing::example2_exact(1.0, 0.9);
  const double euler = solve_alpha_path(m, {}, 0.9, init, 1.0, 1e-4).trajectory.back()[0];
  const double rk4 = solve_alpha_path(m, {}, 0.9, init, 1.0, 1e-3, Method::kRk4).trajectory.back()[0];
  const double secs = seconds_since(start);
  const bool ok = std::fabs(euler - 1.3815) <= 2e-3 && std::fabs(rk4 - exact) <= 1e-5 &&
                  std::fabs(exact - 1.3815) < 5e-5 && secs < 1.0;
  return {ok, fmt("euler %.6f, rk4 %.8f, exact %.8f, %.3f s", euler, rk4, exact, secs)};
}

Outcome example1_crossing() {
  const HudeModel m = testing::example1_model();
  const InitialState init{0.0, {0.0, 0.0}};
  const double t = 1.5 * std::numbers::pi;
  const double lo = solve_alpha_path(m, {}, 0.4, init, t, 1e-4, Method::kRk4).trajectory.back()[0];
  const double hi = solve_alpha_path(m, {}, 0.6, init, t, 1e-4, Method::kRk4).trajectory.back()[0];
  const double oracle = testing::example1_exact(t, 0.4) - testing::example1_exact(t, 0.6);
  const double diff = lo - hi;
  const bool ok = lo > hi && std::fabs(diff - 0.2216) <= 1e-3 && std::fabs(diff - oracle) <= 1e-6;
  return {ok, fmt("X^0.4 - X^0.6 = %.6f (oracle %.6f)", diff, oracle)};
}

Outcome published_residual_test() {
  const TestReport r = uncertain_hypothesis_test(reactor::table4(), 0.05);
  const bool ok = r.outliers == std::vector<std::size_t>{50, 55} && r.threshold == 3 && !r.reject;
  std::string list;
  for (auto j : r.outliers) list += (list.empty() ? "" : ",") + std::to_string(j);
  return {ok, fmt("outliers {%s}, threshold %zu, %s", list.c_str(), r.threshold,
                  r.reject ? "reject" : "accept")};
}

Outcome moment_fit() {
  const double published = moment_objective(reactor::table4().epsilon, 2);
  const auto start = std::chrono::steady_clock::now();
  const reactor::ReactorParams params;
  const HudeModel model = reactor::build_reactor_hude(params);
  EstimateOptions opts;
  opts.moments = 2;
  opts.theta_init = {0.001, 0.5};
  opts.bounds = Bounds{{0.0, 0.0}, {1.0, 1.0}};
  opts.residual.h = 1e-3;
  opts.residual.method = Method::kEuler;
  opts.residual.scheme = DerivativeScheme::kForward;
  const EstimationResult fit = estimate_moments(model, reactor::table3(), opts);
  const ResidualVector eps = compute_residuals(model, fit.theta, reactor::table3(), opts.residual);
  const TestReport test = uncertain_hypothesis_test(eps, 0.05);
  const double secs = seconds_since(start);
  const bool ok = published <= 1e-4 && fit.objective <= 1e-6 && fit.theta[1] >= 0.15 &&
                  fit.theta[1] <= 0.45 && !test.reject;
  return {ok, fmt("published objective %.3g; refit sigma = (%.6g, %.6g), objective %.3g, "
                  "%zu outlier(s) of threshold %zu, %.1f s",
                  published, fit.theta[0], fit.theta[1], fit.objective, test.outliers.size(),
                  test.threshold, secs)};
}

Outcome reactor_coefficients() {
  const reactor::Coefficients c = reactor::coefficients(reactor::ReactorParams{});
  auto close6 = [](double v, double want) { return std::fabs(v - want) <= 5e-7 * std::fabs(want); };
  const bool ok = close6(c.rate_coeff, -55.1435) && close6(c.population_coeff, 0.785) &&
                  close6(c.k_over_l, 10010.0) && close6(c.excess_over_l, 10.0);
  return {ok, fmt("%.8g, %.8g, %.8g, %.8g", c.rate_coeff, c.population_coeff, c.k_over_l,
                  c.excess_over_l)};
}

Outcome closed_form_agreement() {
  const reactor::ReactorParams p = reactor::published_params();
  double worst = 0.0;
  for (double a : {0.45, 0.5, 0.7, 0.9}) {
    const AlphaPathField f = reactor::build_simplified_field(p, a);
    const Trajectory tr = integrate(Method::kRk4, f, InitialState{0.0, {1.2157, 0.008}}, 6.0, 1e-3);
    for (std::size_t k = 0; k < tr.size(); ++k) {
      const double exact = reactor::closed_form_psi_inv(tr.time(k), a);
      worst = std::max(worst, std::fabs(tr.at(k, 0) - exact) / std::fabs(exact));
    }
  }
  return {worst <= 1e-4, fmt("max relative gap %.3g over %s", worst, "t in [0,6]")};
}

// Random linear pair f <= g sharing the initial state; f is non-decreasing
// in x0..x{n-2}.
Outcome comparison_fuzz() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20261014);
  std::uniform_real_distribution<double> coef(0.0, 2.0), last(-2.0, 2.0), free(-1.0, 1.0),
      lift(0.01, 1.0);
  int holds = 0;
  double worst = -1e300;
  for (int i = 0; i < 100; ++i) {
    const int n = i % 2 == 0 ? 2 : 3;
    std::string drift;
    for (int k = 0; k < n; ++k) {
      const double a = k + 1 < n ? coef(rng) : last(rng);
      drift += fmt("%.17g*x%d + ", a, k);
    }
    drift += fmt("%.17g*sin(3*t)", free(rng));
    const HudeModel lower(n, drift, {}, {});
    const HudeModel upper(n, drift + fmt(" + %.17g", lift(rng)), {}, {});
    InitialState init{0.0, {}};
    for (int k = 0; k < n; ++k) init.values.push_back(free(rng));
    const auto lo = solve_alpha_path(lower, {}, 0.5, init, 2.0, 1e-3, Method::kRk4);
    const auto hi = solve_alpha_path(upper, {}, 0.5, init, 2.0, 1e-3, Method::kRk4);
    const ComparisonReport r = compare_paths(lo.trajectory, hi.trajectory);
    if (r.holds) ++holds;
    worst = std::max(worst, r.max_excess);
  }
  const double secs = seconds_since(start);
  return {holds == 100 && secs < 30.0,
          fmt("%d/100 ordered, max(psi - Psi) %.3g, %.2f s", holds, worst, secs)};
}

Outcome residual_round_trip() {
  const HudeModel m(2, "-x0 - 0.5*x1", {"sig*x0", "0.1"}, {"sig"});
  const ParamVector theta = {0.3};
  ResidualOptions opts;
  opts.delta = 1e-4;
  opts.h = 1e-4;
  std::vector<double> times(51);
  for (std::size_t j = 0; j < times.size(); ++j) times[j] = 0.1 * static_cast<double>(j);
  const Simulation sim = simulate_observations(m, theta, InitialState{0.0, {1.0, 0.0}}, times, 99, opts);
  opts.scheme = DerivativeScheme::kProvided;
  const ResidualVector r = compute_residuals(m, theta, sim.series, opts);
  double worst = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) worst = std::max(worst, std::fabs(r.epsilon[j] - sim.drawn[j]));
  return {r.size() == 50 && worst <= 0.005, fmt("M = %zu, max |eps - drawn| %.3g", r.size(), worst)};
}

Outcome alpha_monotonicity() {
  // Example 2: ordered in alpha at every grid point, condition passes.
  const HudeModel ex2 = testing::example2_model();
  const InitialState zero{0.0, {0.0, 0.0}};
  bool ordered = true, condition = true;
  std::vector<Trajectory> paths;
  for (int i = 1; i <= 9; ++i) {
    const double a = i / 10.0;
    paths.push_back(solve_alpha_path(ex2, {}, a, zero, 1.0, 1e-3).trajectory);
    ConditionBox box{{0.0, 1.0}, {{-10.0, 10.0}, {-10.0, 10.0}}, 5};
    condition = condition && check_alpha_path_condition(ex2, {}, a, box).passed;
  }
  for (std::size_t i = 1; i < paths.size(); ++i) ordered = ordered && compare_paths(paths[i - 1], paths[i]).holds;

  // Reactor: fails at alpha <= 0.35 with a warning, holds above 0.4.
  const reactor::ReactorParams p = reactor::published_params();
  const HudeModel rx = reactor::build_reactor_hude(p);
  const ParamVector th = reactor::reactor_theta(p);
  const ConditionBox box{{0.0, 6.0}, {{1.2, 1.35}, {0.0, 0.05}}, 4};
  std::vector<double> low = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35};
  bool fails_low = true, holds_high = true;
  for (double a : low) fails_low = fails_low && !check_alpha_path_condition(rx, th, a, box).passed;
  for (double a : {0.4, 0.5, 0.7, 0.9}) holds_high = holds_high && check_alpha_path_condition(rx, th, a, box).passed;
  const InverseDistribution d =
      inverse_distribution(rx, th, InitialState{0.0, {1.2157, 0.008}}, 6.0, low, 1e-3, Method::kRk4);
  const bool warned = d.warnings.size() == low.size();
  return {ordered && condition && fails_low && holds_high && warned,
          fmt("example ordered %s, condition %s; reactor fails below 0.35 %s, holds from 0.4 %s, "
              "%zu warning(s)",
              ordered ? "yes" : "no", condition ? "passes" : "fails", fails_low ? "yes" : "no",
              holds_high ? "yes" : "no", d.warnings.size())};
}

Outcome ks_split() {
  const ResidualVector t4 = reactor::table4();
  const std::vector<double> head(t4.epsilon.begin(), t4.epsilon.begin() + 21);
  const std::vector<double> tail(t4.epsilon.begin() + 43, t4.epsilon.end());
  const KsResult r = two_sample_ks(head, tail);
  return {r.reject_at_5pct, fmt("D = %.5f, exact p = %.4f (asymptotic critical %.4f)", r.statistic,
                                r.p_value, r.asymptotic_critical)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"second example matches its closed form", example2_closed_form},
      {"first example paths cross", example1_crossing},
      {"published residuals: 2 outliers, threshold 3, accept", published_residual_test},
      {"moment objective and reactor refit", moment_fit},
      {"reactor coefficients", reactor_coefficients},
      {"closed form agrees with the simplified field", closed_form_agreement},
      {"comparison fuzz over 100 linear models", comparison_fuzz},
      {"residual round trip, M = 50", residual_round_trip},
      {"alpha monotonicity and reactor warning", alpha_monotonicity},
      {"KS split of the published residuals rejects", ks_split},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu  %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
