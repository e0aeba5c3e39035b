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

#ifndef HUDE_RESIDUALS_HPP_
#define HUDE_RESIDUALS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hude/model.hpp"
#include "hude/odeint.hpp"

namespace hude {

/// How derivative columns are obtained from the raw observations.
/// kProvided uses columns already present in the series (e.g. simulated
/// full states) and computes nothing.
enum class DerivativeScheme { kForward, kCentral, kProvided };

DerivativeScheme parse_scheme(std::string_view name);
const char* scheme_name(DerivativeScheme s);

/// Timestamped scalar observations plus optional derivative columns.
/// derivatives[v-1][j] holds x^(v) at times[j]; NaN marks a gap (the
/// trailing staircase of the forward scheme, or both ends for central).
struct ObservationSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<std::vector<double>> derivatives;

  std::size_t size() const noexcept { return times.size(); }

  /// Throws PreconditionError unless times strictly increase, every value
  /// is finite and column lengths match.
  void validate() const;

  /// True if x, x', ..., x^(n-1) are all known at index j.
  bool has_state(std::size_t j, int order) const;
  InitialState state_at(std::size_t j, int order) const;
};

/// Fills derivative columns 1..n-1 by iterated differences:
///   forward: x^(v)_j = (x^(v-1)_{j+1} - x^(v-1)_j) / (t_{j+1} - t_j)
///   central: x^(v)_j = (x^(v-1)_{j+1} - x^(v-1)_{j-1}) / (t_{j+1} - t_{j-1})
ObservationSeries estimate_derivatives(const ObservationSeries& series,
                                       int order, DerivativeScheme scheme);

struct ResidualOptions {
  double delta = 1e-4;
  double h = default_step();
  Method method = Method::kEuler;
  DerivativeScheme scheme = DerivativeScheme::kForward;
};

/// Where the observation sat relative to the reachable alpha-path envelope.
enum class Envelope { kInside, kBelow, kAbove };

struct Residual {
  double epsilon = 0.5;
  Envelope envelope = Envelope::kInside;
  /// False if the probed terminal values were not non-decreasing in alpha.
  bool monotone = true;
  int iterations = 0;
};

/// Probes never leave [kProbeMin, 1 - kProbeMin].
inline constexpr double kProbeMin = 1e-6;

/// Residual of one observation by bisection on alpha: integrate the
/// alpha-path from `init` to `t_next`, move the lower bound up while the
/// terminal value is below `x_next`, stop once the bracket is no wider than
/// `delta` and return its midpoint.
Residual compute_residual(const HudeModel& model, const ParamVector& theta,
                          const InitialState& init, double t_next,
                          double x_next, const ResidualOptions& opts = {});

/// Residuals in observation order.
struct ResidualVector {
  std::vector<double> epsilon;
  std::vector<std::size_t> index;  // 1-based j of the initial observation
  std::vector<Envelope> envelope;
  std::vector<bool> monotone;
  ParamVector theta;
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return epsilon.size(); }
  bool empty() const noexcept { return epsilon.empty(); }
};

/// Wraps plain values (j = 1..M) for use by the test and estimation code.
ResidualVector make_residual_vector(std::vector<double> epsilon);

/// Reconstructs derivatives with opts.scheme, then scores every step
/// j -> j+1 whose full state at j is known. With n = 2 and the forward
/// scheme, L observations give L - 1 residuals.
ResidualVector compute_residuals(const HudeModel& model,
                                 const ParamVector& theta,
                                 const ObservationSeries& series,
                                 const ResidualOptions& opts = {});

struct Simulation {
  ObservationSeries series;  // full state columns, use kProvided to rescore
  std::vector<double> drawn;  // the alpha used on each step
};

/// Generates observations by drawing alpha_j uniformly on (0,1) and moving
/// the full state along the alpha_j-path from t_j to t_{j+1}. times[0] must
/// equal init.t0. Deterministic for a given seed.
Simulation simulate_observations(const HudeModel& model,
                                 const ParamVector& theta,
                                 const InitialState& init,
                                 std::span<const double> times,
                                 std::uint64_t seed,
                                 const ResidualOptions& opts = {});

/// As simulate_observations with caller-supplied alphas, one per step.
Simulation simulate_with_draws(const HudeModel& model,
                               const ParamVector& theta,
                               const InitialState& init,
                               std::span<const double> times,
                               std::span<const double> draws,
                               const ResidualOptions& opts = {});

}  // namespace hude

#endif  // HUDE_RESIDUALS_HPP_
