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

#include "hude/hypotest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "hude/errors.hpp"

namespace hude {

TestReport uncertain_hypothesis_test(std::span<const double> residuals,
                                     double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw PreconditionError("significance must lie in (0,1)");
  }
  if (residuals.empty()) throw PreconditionError("empty residual vector");
  TestReport report;
  report.alpha = alpha;
  report.residual_count = residuals.size();
  report.lower = alpha / 2.0;
  report.upper = 1.0 - alpha / 2.0;
  // ceil() of e.g. 0.05 * 60 must give 3, not 4.
  const double raw = alpha * static_cast<double>(residuals.size());
  report.threshold = std::max<std::size_t>(
      static_cast<std::size_t>(std::ceil(raw - 1e-9)), 1);
  for (std::size_t j = 0; j < residuals.size(); ++j) {
    const double e = residuals[j];
    if (e < report.lower || e > report.upper) {
      report.outliers.push_back(j + 1);
      report.outlier_values.push_back(e);
    }
  }
  report.reject = report.outliers.size() >= report.threshold;
  return report;
}

TestReport uncertain_hypothesis_test(const ResidualVector& residuals,
                                     double alpha) {
  TestReport report = uncertain_hypothesis_test(residuals.epsilon, alpha);
  if (residuals.index.size() == residuals.size()) {
    for (auto& j : report.outliers) j = residuals.index[j - 1];
  }
  return report;
}

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

// P(D < d) via paths from (0,0) to (n,m) staying inside |i/n - j/m| < d,
// carried as probabilities so nothing overflows. `bound` is d*n*m rounded
// to the integer lattice the statistic lives on.
double inside_probability(std::size_t n, std::size_t m, std::int64_t bound) {
  std::vector<double> row(m + 1, 0.0);
  auto inside = [&](std::size_t i, std::size_t j) {
    const std::int64_t diff = static_cast<std::int64_t>(i * m) -
                              static_cast<std::int64_t>(j * n);
    return (diff < 0 ? -diff : diff) < bound;
  };
  for (std::size_t j = 0; j <= m; ++j) {
    row[j] = (j == 0 || row[j - 1] > 0.0) && inside(0, j) ? 1.0 : 0.0;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    row[0] = inside(i, 0) ? row[0] : 0.0;
    for (std::size_t j = 1; j <= m; ++j) {
      if (!inside(i, j)) {
        row[j] = 0.0;
        continue;
      }
      const double total = static_cast<double>(i + j);
      row[j] = row[j] * (static_cast<double>(i) / total) +
               row[j - 1] * (static_cast<double>(j) / total);
    }
  }
  return row[m];
}

}  // namespace

KsResult two_sample_ks(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw PreconditionError("empty KS sample");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const std::size_t n = sa.size(), m = sb.size();

  // Walk the pooled order statistics; tied values advance together.
  std::size_t i = 0, j = 0;
  std::int64_t best = 0;  // max |i*m - j*n|
  while (i < n || j < m) {
    double v;
    if (j >= m || (i < n && sa[i] <= sb[j])) {
      v = sa[i];
    } else {
      v = sb[j];
    }
    while (i < n && sa[i] == v) ++i;
    while (j < m && sb[j] == v) ++j;
    const std::int64_t diff = static_cast<std::int64_t>(i * m) -
                              static_cast<std::int64_t>(j * n);
    best = std::max(best, diff < 0 ? -diff : diff);
  }

  KsResult r;
  r.size_a = n;
  r.size_b = m;
  const double nm = static_cast<double>(n) * static_cast<double>(m);
  r.statistic = static_cast<double>(best) / nm;
  r.asymptotic_critical = 1.358 * std::sqrt(static_cast<double>(n + m) / nm);
  if (best == 0) {
    r.p_value = 1.0;
  } else if (nm <= 1e7) {
    r.p_value = std::clamp(1.0 - inside_probability(n, m, best), 0.0, 1.0);
  } else {
    const double ne = nm / static_cast<double>(n + m);
    const double root = std::sqrt(ne);
    r.p_value = kolmogorov_tail((root + 0.12 + 0.11 / root) * r.statistic);
  }
  r.reject_at_5pct = r.p_value < 0.05;
  return r;
}

}  // namespace hude
