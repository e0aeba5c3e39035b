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

#include "hude/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "hude/errors.hpp"
#include "hude/phi.hpp"

namespace hude {

namespace {

// Parameter names must be identifiers that shadow nothing the parser knows.
bool usable_param_name(const std::string& name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
    return false;
  }
  for (char c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  static const char* const kReserved[] = {"t", "exp", "ln", "sin", "cos", "abs"};
  for (const char* r : kReserved) {
    if (name == r) return false;
  }
  const bool state_like =
      name.size() > 1 && name[0] == 'x' &&
      std::all_of(name.begin() + 1, name.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  return !state_like;
}

}  // namespace

HudeModel::HudeModel(int order, std::string_view drift,
                     std::vector<std::string> diffusions,
                     std::vector<std::string> param_names)
    : order_(order), param_names_(std::move(param_names)) {
  if (order_ < 1) throw PreconditionError("model order must be >= 1");
  for (std::size_t i = 0; i < param_names_.size(); ++i) {
    const auto& name = param_names_[i];
    if (!usable_param_name(name) ||
        std::find(param_names_.begin() + static_cast<long>(i) + 1,
                  param_names_.end(), name) != param_names_.end()) {
      throw PreconditionError("invalid or duplicate parameter name '" + name +
                              "'");
    }
  }
  drift_ = parse_expr(drift, order_, param_names_);
  drift_code_ = CompiledExpr(drift_);
  for (const auto& src : diffusions) {
    diffusions_.push_back(parse_expr(src, order_, param_names_));
    diffusion_code_.emplace_back(diffusions_.back());
  }
}

ParamVector HudeModel::bind(const std::map<std::string, double>& values) const {
  for (const auto& [name, value] : values) {
    if (std::find(param_names_.begin(), param_names_.end(), name) ==
        param_names_.end()) {
      throw PreconditionError("unknown parameter '" + name + "'");
    }
  }
  ParamVector theta;
  theta.reserve(param_names_.size());
  for (const auto& name : param_names_) {
    auto it = values.find(name);
    if (it == values.end()) {
      throw PreconditionError("unbound parameter '" + name + "'");
    }
    theta.push_back(it->second);
  }
  return theta;
}

void HudeModel::check_theta(std::span<const double> theta) const {
  if (theta.size() != param_names_.size()) {
    throw PreconditionError("expected " + std::to_string(param_names_.size()) +
                            " parameter values, got " +
                            std::to_string(theta.size()));
  }
}

AlphaPathField::AlphaPathField(const HudeModel& model, ParamVector theta,
                               double alpha)
    : order_(static_cast<std::size_t>(model.order())),
      drift_(model.compiled_drift()),
      diffusions_(model.compiled_diffusions()),
      theta_(std::move(theta)),
      alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw PreconditionError("alpha must lie in (0,1), got " +
                            std::to_string(alpha));
  }
  model.check_theta(theta_);
  noise_ = phi_inv(std::clamp(alpha, kAlphaClamp, 1.0 - kAlphaClamp));
}

double AlphaPathField::highest(double t, std::span<const double> y) const {
  const EvalEnv env{t, y, theta_};
  double acc = drift_(env);
  if (noise_ != 0.0) {
    double spread = 0.0;
    for (const auto& g : diffusions_) spread += std::fabs(g(env));
    acc += spread * noise_;
  }
  return acc;
}

void AlphaPathField::operator()(double t, std::span<const double> y,
                                std::span<double> dy) const {
  for (std::size_t k = 0; k + 1 < order_; ++k) dy[k] = y[k + 1];
  dy[order_ - 1] = highest(t, y);
}

AlphaPathField alpha_path_field(const HudeModel& model, ParamVector theta,
                                double alpha) {
  return AlphaPathField(model, std::move(theta), alpha);
}

ConditionReport check_alpha_path_condition(const HudeModel& model,
                                           const ParamVector& theta,
                                           double alpha,
                                           const ConditionBox& box) {
  const auto n = static_cast<std::size_t>(model.order());
  ConditionReport report;
  report.alpha = alpha;
  const AlphaPathField field(model, theta, alpha);
  if (n == 1) return report;
  if (box.state.size() != n) {
    throw PreconditionError("condition box needs one range per state axis");
  }
  if (box.resolution < 2) {
    throw PreconditionError("condition grid resolution must be >= 2");
  }

  const auto res = static_cast<std::size_t>(box.resolution);
  auto coord = [&](const std::pair<double, double>& range, std::size_t i) {
    return range.first +
           (range.second - range.first) * static_cast<double>(i) /
               static_cast<double>(res - 1);
  };

  for (std::size_t axis = 0; axis + 1 < n; ++axis) {
    AxisCheck check;
    check.axis = axis;
    report.axes.push_back(check);
  }

  // Odometer over (t, x0, ..., x{n-1}).
  std::vector<std::size_t> idx(n + 1, 0);
  std::vector<double> point(n), shifted(n);
  for (;;) {
    const double t = coord(box.t, idx[0]);
    for (std::size_t k = 0; k < n; ++k) point[k] = coord(box.state[k], idx[k + 1]);
    const double base = field.highest(t, point);
    for (auto& check : report.axes) {
      const std::size_t k = check.axis;
      if (idx[k + 1] + 1 >= res) continue;
      shifted = point;
      shifted[k] = coord(box.state[k], idx[k + 1] + 1);
      if (shifted[k] == point[k]) continue;  // degenerate range
      const double next = field.highest(t, shifted);
      const double diff = next - base;
      const double tol = 1e-12 * std::max({1.0, std::fabs(base), std::fabs(next)});
      const double slope = diff / (shifted[k] - point[k]);
      if (slope < check.worst_slope || (check.worst_point.empty() && slope < 0.0)) {
        check.worst_slope = slope;
        check.worst_t = t;
        check.worst_point = point;
      }
      if (diff < -tol) check.passed = false;
    }
    std::size_t d = 0;
    while (d <= n && ++idx[d] == res) idx[d++] = 0;
    if (d > n) break;
  }
  for (const auto& check : report.axes) report.passed = report.passed && check.passed;
  return report;
}

}  // namespace hude
