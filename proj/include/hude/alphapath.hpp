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

#ifndef HUDE_ALPHAPATH_HPP_
#define HUDE_ALPHAPATH_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hude/model.hpp"
#include "hude/odeint.hpp"
#include "hude/phi.hpp"

namespace hude {

/// X_t^alpha together with its derivatives on a grid.
struct AlphaPath {
  double alpha;
  Trajectory trajectory;
};

AlphaPath solve_alpha_path(const HudeModel& model, const ParamVector& theta,
                           double alpha, const InitialState& init,
                           double t_end, double h,
                           Method method = Method::kEuler);

/// Psi_t^{-1}(alpha) sampled over a set of alphas at one time.
struct InverseDistribution {
  double t = 0.0;
  std::vector<std::pair<double, double>> points;  // (alpha, psi_inv)
  /// Advisory messages: alphas at which the monotonicity hypothesis failed
  /// on the region the path traversed. Values are still computed.
  std::vector<std::string> warnings;
};

/// Evaluates X_t^alpha at `t` for every alpha. Each path is spot-checked
/// against check_alpha_path_condition over the bounding box of its own
/// states; failures become warnings, not errors.
InverseDistribution inverse_distribution(const HudeModel& model,
                                         const ParamVector& theta,
                                         const InitialState& init, double t,
                                         std::span<const double> alphas,
                                         double h,
                                         Method method = Method::kEuler);

/// Writes `alpha,psi_inv` rows at 17 significant digits.
void write_inverse_distribution_csv(std::ostream& out,
                                    const InverseDistribution& dist);

struct ComparisonReport {
  bool holds = true;     // lo <= hi (within tolerance) at every grid point
  bool strict = true;    // lo < hi at every grid point after the first
  double tolerance = 0.0;
  double max_excess = 0.0;  // max of lo - hi over the grid
  std::optional<std::size_t> first_violation;
  double first_violation_time = 0.0;
};

/// Compares the x0 components of two trajectories on an identical grid.
/// Tolerance is 1e-9 times the largest |x0| seen on either path.
ComparisonReport compare_paths(const Trajectory& lo, const Trajectory& hi);

}  // namespace hude

#endif  // HUDE_ALPHAPATH_HPP_
