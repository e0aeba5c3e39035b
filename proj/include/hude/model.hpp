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

#ifndef HUDE_MODEL_HPP_
#define HUDE_MODEL_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hude/expr.hpp"

namespace hude {

/// Parameter values ordered like HudeModel::param_names().
using ParamVector = std::vector<double>;

/// Order-n scalar uncertain differential equation
///
///   x^(n) = f(t, x, ..., x^(n-1); theta)
///           + sum_i g_i(t, x, ..., x^(n-1); theta) dC_i/dt
///
/// with the state written positionally as x0 = x, x1 = x', ...
class HudeModel {
 public:
  HudeModel(int order, std::string_view drift,
            std::vector<std::string> diffusions,
            std::vector<std::string> param_names);

  int order() const noexcept { return order_; }
  std::size_t diffusion_count() const noexcept { return diffusions_.size(); }
  const ExprAst& drift() const noexcept { return drift_; }
  const std::vector<ExprAst>& diffusions() const noexcept { return diffusions_; }
  const std::vector<std::string>& param_names() const noexcept {
    return param_names_;
  }
  const CompiledExpr& compiled_drift() const noexcept { return drift_code_; }
  const std::vector<CompiledExpr>& compiled_diffusions() const noexcept {
    return diffusion_code_;
  }

  /// Orders a name -> value map into a ParamVector. Throws
  /// PreconditionError on missing or unknown names.
  ParamVector bind(const std::map<std::string, double>& values) const;

  /// Throws PreconditionError unless `theta` has one value per parameter.
  void check_theta(std::span<const double> theta) const;

 private:
  int order_;
  ExprAst drift_;
  std::vector<ExprAst> diffusions_;
  std::vector<std::string> param_names_;
  CompiledExpr drift_code_;
  std::vector<CompiledExpr> diffusion_code_;
};

/// Initial time and (x0, ..., x{n-1}) at that time.
struct InitialState {
  double t0 = 0.0;
  std::vector<double> values;
};

/// Smallest and largest alpha ever passed to phi_inv by the field builder.
inline constexpr double kAlphaClamp = 1e-12;

/// First-order reduction of the alpha-path ODE:
///   F_k     = y_{k+1}                                   (k < n-1)
///   F_{n-1} = f(t,y) + sum_i |g_i(t,y)| * phi_inv(alpha)
class AlphaPathField {
 public:
  AlphaPathField(const HudeModel& model, ParamVector theta, double alpha);

  void operator()(double t, std::span<const double> y,
                  std::span<double> dy) const;

  /// The F_{n-1} component alone.
  double highest(double t, std::span<const double> y) const;

  std::size_t dimension() const noexcept { return order_; }
  double alpha() const noexcept { return alpha_; }
  double noise_multiplier() const noexcept { return noise_; }

 private:
  std::size_t order_;
  CompiledExpr drift_;
  std::vector<CompiledExpr> diffusions_;
  ParamVector theta_;
  double alpha_;
  double noise_;
};

/// Builds the alpha-path field. Throws PreconditionError if alpha is
/// outside (0,1) or theta does not bind every parameter.
AlphaPathField alpha_path_field(const HudeModel& model, ParamVector theta,
                                double alpha);

/// Region on which the monotonicity hypothesis is checked: a range for t
/// and one for each of x0..x{n-1}, sampled with `resolution` points per
/// axis.
struct ConditionBox {
  std::pair<double, double> t{0.0, 0.0};
  std::vector<std::pair<double, double>> state;
  int resolution = 5;
};

struct AxisCheck {
  std::size_t axis = 0;     // state index k, 0 <= k <= n-2
  bool passed = true;
  double worst_slope = 0.0;  // most negative difference quotient found
  double worst_t = 0.0;
  std::vector<double> worst_point;
};

struct ConditionReport {
  bool passed = true;
  double alpha = 0.5;
  std::vector<AxisCheck> axes;
};

/// Checks on a grid, by forward differences, that
/// f + sum_i |g_i| phi_inv(alpha) is non-decreasing in each of x0..x{n-2}.
/// Order-1 models pass vacuously.
ConditionReport check_alpha_path_condition(const HudeModel& model,
                                           const ParamVector& theta,
                                           double alpha,
                                           const ConditionBox& box);

}  // namespace hude

#endif  // HUDE_MODEL_HPP_
