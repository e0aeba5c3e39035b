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

#ifndef HUDE_HYPOTEST_HPP_
#define HUDE_HYPOTEST_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "hude/residuals.hpp"

namespace hude {

struct TestReport {
  double alpha = 0.05;
  std::size_t residual_count = 0;
  std::size_t threshold = 1;             // max(ceil(alpha M), 1)
  std::vector<std::size_t> outliers;     // residual indices j (1-based)
  std::vector<double> outlier_values;
  double lower = 0.0;                    // alpha / 2
  double upper = 1.0;                    // 1 - alpha / 2
  bool reject = false;                   // outliers.size() >= threshold
};

/// Goodness-of-fit decision: reject the model when at least
/// max(ceil(alpha M), 1) residuals fall outside [alpha/2, 1 - alpha/2].
TestReport uncertain_hypothesis_test(const ResidualVector& residuals,
                                     double alpha);
TestReport uncertain_hypothesis_test(std::span<const double> residuals,
                                     double alpha);

struct KsResult {
  double statistic = 0.0;  // D = sup |F_a - F_b|
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  /// P(D >= observed) under the null of a common continuous distribution,
  /// exact by lattice-path counting (asymptotic for very large samples).
  double p_value = 1.0;
  /// 1.358 sqrt((n_a + n_b) / (n_a n_b)), for reference.
  double asymptotic_critical = 0.0;
  bool reject_at_5pct = false;  // p_value < 0.05
};

KsResult two_sample_ks(std::span<const double> a, std::span<const double> b);

/// Kolmogorov limiting tail Q(lambda) = 2 sum_k (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_tail(double lambda);

}  // namespace hude

#endif  // HUDE_HYPOTEST_HPP_
