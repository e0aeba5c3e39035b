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

#include "hude/alphapath.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "hude/errors.hpp"

namespace hude {

AlphaPath solve_alpha_path(const HudeModel& model, const ParamVector& theta,
                           double alpha, const InitialState& init,
                           double t_end, double h, Method method) {
  if (init.values.size() != static_cast<std::size_t>(model.order())) {
    throw PreconditionError("initial state length must equal model order");
  }
  const AlphaPathField field = alpha_path_field(model, theta, alpha);
  return {alpha, integrate(method, field, init, t_end, h)};
}

namespace {

ConditionBox bounding_box(const Trajectory& traj) {
  ConditionBox box;
  box.t = {traj.time(0), traj.time(traj.size() - 1)};
  box.resolution = 3;
  box.state.resize(traj.dimension());
  for (std::size_t c = 0; c < traj.dimension(); ++c) {
    double lo = traj.at(0, c), hi = lo;
    for (std::size_t k = 1; k < traj.size(); ++k) {
      lo = std::min(lo, traj.at(k, c));
      hi = std::max(hi, traj.at(k, c));
    }
    if (hi - lo < 1e-12) {
      const double pad = 1e-6 * std::max(1.0, std::fabs(lo));
      lo -= pad;
      hi += pad;
    }
    box.state[c] = {lo, hi};
  }
  return box;
}

}  // namespace

InverseDistribution inverse_distribution(const HudeModel& model,
                                         const ParamVector& theta,
                                         const InitialState& init, double t,
                                         std::span<const double> alphas,
                                         double h, Method method) {
  InverseDistribution dist;
  dist.t = t;
  for (double alpha : alphas) {
    double value;
    if (t == init.t0) {
      value = init.values.at(0);
      // Nothing traversed yet, so there is no region to spot-check.
      dist.points.emplace_back(alpha, value);
      continue;
    }
    const AlphaPath path = solve_alpha_path(model, theta, alpha, init, t, h,
                                            method);
    value = path.trajectory.back()[0];
    dist.points.emplace_back(alpha, value);
    const ConditionReport report = check_alpha_path_condition(
        model, theta, alpha, bounding_box(path.trajectory));
    if (!report.passed) {
      for (const auto& axis : report.axes) {
        if (axis.passed) continue;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "alpha-path monotonicity condition fails at alpha=%.6g "
                      "on axis x%zu (slope %.3g)",
                      alpha, axis.axis, axis.worst_slope);
        dist.warnings.emplace_back(buf);
      }
    }
  }
  return dist;
}

void write_inverse_distribution_csv(std::ostream& out,
                                    const InverseDistribution& dist) {
  out << "alpha,psi_inv\n";
  char buf[64];
  for (const auto& [alpha, value] : dist.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", alpha, value);
    out << buf;
  }
}

ComparisonReport compare_paths(const Trajectory& lo, const Trajectory& hi) {
  if (lo.size() != hi.size()) throw PreconditionError("grid length mismatch");
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (lo.time(k) != hi.time(k)) {
      throw PreconditionError("grid mismatch at index " + std::to_string(k));
    }
  }
  ComparisonReport report;
  double scale = 0.0;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    scale = std::max({scale, std::fabs(lo.at(k, 0)), std::fabs(hi.at(k, 0))});
  }
  report.tolerance = 1e-9 * scale;
  report.max_excess = -INFINITY;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    const double excess = lo.at(k, 0) - hi.at(k, 0);
    report.max_excess = std::max(report.max_excess, excess);
    if (excess > report.tolerance && report.holds) {
      report.holds = false;
      report.first_violation = k;
      report.first_violation_time = lo.time(k);
    }
    if (k > 0 && !(excess < 0.0)) report.strict = false;
  }
  if (!report.holds) report.strict = false;
  return report;
}

}  // namespace hude
