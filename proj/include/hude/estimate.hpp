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

#ifndef HUDE_ESTIMATE_HPP_
#define HUDE_ESTIMATE_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hude/model.hpp"
#include "hude/optimize.hpp"
#include "hude/residuals.hpp"

namespace hude {

/// theta -> residuals. Implementations may throw IntegrationError; the
/// estimators score such probes as +infinity.
using ResidualFn = std::function<std::vector<double>(const ParamVector&)>;

/// (1/M) sum_j eps_j^k - 1/(k+1) for k = 1..p.
std::vector<double> moment_gaps(std::span<const double> eps, int p);

/// Sum of squared moment gaps against the linear distribution L(0,1).
double moment_objective(std::span<const double> eps, int p);
double moment_objective(const ParamVector& theta, const ResidualFn& residuals,
                        int p);

/// Least-squares form of the maximum-likelihood equations at detection
/// level `level`: with K = ceil(M (1 - level)) and eps' sorted,
/// i* = argmin_i eps'_{i+K-1} - eps'_i (smallest i on ties), and the value
/// is (eps'_{i*} - level/2)^2 + (eps'_{i*+K-1} - (1 - level/2))^2.
struct MleFit {
  double value = 0.0;
  std::size_t window_start = 0;  // 0-based i*
  std::size_t window = 0;        // K
  double lower_gap = 0.0;
  double upper_gap = 0.0;
};
MleFit mle_objective(std::span<const double> eps, double level);

struct EstimationResult {
  ParamVector theta;
  double objective = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  /// Moment gaps (moments method) or the two equation gaps (MLE).
  std::vector<double> gaps;
  std::size_t residual_count = 0;
};

struct EstimateOptions {
  int moments = 0;  // p; 0 means one moment per parameter
  ParamVector theta_init;
  Bounds bounds;
  /// converged requires objective <= fit_threshold.
  double fit_threshold = 1e-10;
  ResidualOptions residual;
  MinimizeOptions minimize;
};

EstimationResult estimate_moments(const ResidualFn& residuals,
                                  const EstimateOptions& opts);
EstimationResult estimate_moments(const HudeModel& model,
                                  const ObservationSeries& series,
                                  const EstimateOptions& opts);

EstimationResult estimate_mle(const ResidualFn& residuals, double level,
                              const EstimateOptions& opts);
EstimationResult estimate_mle(const HudeModel& model,
                              const ObservationSeries& series, double level,
                              const EstimateOptions& opts);

}  // namespace hude

#endif  // HUDE_ESTIMATE_HPP_
