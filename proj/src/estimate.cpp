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

#include "hude/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hude/errors.hpp"

namespace hude {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t tail_window(std::size_t m, double level) {
  const double raw = static_cast<double>(m) * (1.0 - level);
  return static_cast<std::size_t>(std::ceil(raw - 1e-9));
}

void check_start(const EstimateOptions& opts) {
  if (opts.theta_init.empty()) throw PreconditionError("empty start point");
  if (opts.bounds.size() != opts.theta_init.size()) {
    throw PreconditionError("bounds dimension must match theta");
  }
  if (!opts.bounds.contains(opts.theta_init)) {
    throw PreconditionError("theta_init outside bounds");
  }
}

ResidualFn model_residuals(const HudeModel& model,
                           const ObservationSeries& series,
                           const ResidualOptions& ropts) {
  // Derivative columns do not depend on theta; build them once.
  const ObservationSeries full =
      estimate_derivatives(series, model.order(), ropts.scheme);
  ResidualOptions inner = ropts;
  inner.scheme = DerivativeScheme::kProvided;
  return [&model, full, inner](const ParamVector& theta) {
    return compute_residuals(model, theta, full, inner).epsilon;
  };
}

/// Shared driver: minimize `score(residuals)` and finish the result.
template <class Score, class Finish>
EstimationResult run(const ResidualFn& residuals, const EstimateOptions& opts,
                     Score score, Finish finish) {
  check_start(opts);
  bool any_finite = false;
  const Objective f = [&](std::span<const double> x) {
    const ParamVector theta(x.begin(), x.end());
    std::vector<double> eps;
    try {
      eps = residuals(theta);
    } catch (const IntegrationError&) {
      return kInf;
    }
    const double v = score(eps);
    if (std::isfinite(v)) any_finite = true;
    return v;
  };
  const MinimizeResult best =
      minimize(f, opts.theta_init, opts.bounds, opts.minimize);
  if (!any_finite) throw Error("every objective probe failed");

  EstimationResult out;
  out.theta = best.x;
  out.objective = best.value;
  out.iterations = best.iterations;
  out.evaluations = best.evaluations;
  const std::vector<double> eps = residuals(out.theta);
  out.residual_count = eps.size();
  finish(out, eps, best);
  return out;
}

}  // namespace

std::vector<double> moment_gaps(std::span<const double> eps, int p) {
  if (eps.empty()) throw PreconditionError("empty residual vector");
  if (p < 1) throw PreconditionError("moment count must be >= 1");
  std::vector<double> gaps;
  gaps.reserve(static_cast<std::size_t>(p));
  const double m = static_cast<double>(eps.size());
  for (int k = 1; k <= p; ++k) {
    double sum = 0.0;
    for (double e : eps) sum += std::pow(e, k);
    gaps.push_back(sum / m - 1.0 / (k + 1));
  }
  return gaps;
}

double moment_objective(std::span<const double> eps, int p) {
  double total = 0.0;
  for (double g : moment_gaps(eps, p)) total += g * g;
  return total;
}

double moment_objective(const ParamVector& theta, const ResidualFn& residuals,
                        int p) {
  return moment_objective(residuals(theta), p);
}

MleFit mle_objective(std::span<const double> eps, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw PreconditionError("detection level must lie in (0,1)");
  }
  const std::size_t m = eps.size();
  const std::size_t k = tail_window(m, level);
  if (m < 2 || k < 2 || k > m) {
    throw PreconditionError("MLE needs M >= ceil(M(1-alpha)) >= 2");
  }
  std::vector<double> sorted(eps.begin(), eps.end());
  std::sort(sorted.begin(), sorted.end());
  MleFit fit;
  fit.window = k;
  double best = kInf;
  for (std::size_t i = 0; i + k <= m; ++i) {
    const double width = sorted[i + k - 1] - sorted[i];
    if (width < best) {
      best = width;
      fit.window_start = i;
    }
  }
  fit.lower_gap = sorted[fit.window_start] - level / 2.0;
  fit.upper_gap = sorted[fit.window_start + k - 1] - (1.0 - level / 2.0);
  fit.value = fit.lower_gap * fit.lower_gap + fit.upper_gap * fit.upper_gap;
  return fit;
}

EstimationResult estimate_moments(const ResidualFn& residuals,
                                  const EstimateOptions& opts) {
  const int p = opts.moments > 0 ? opts.moments
                                 : static_cast<int>(opts.theta_init.size());
  return run(
      residuals, opts,
      [p](const std::vector<double>& eps) {
        return eps.empty() ? kInf : moment_objective(eps, p);
      },
      [&](EstimationResult& out, const std::vector<double>& eps,
          const MinimizeResult&) {
        out.gaps = moment_gaps(eps, p);
        out.converged = out.objective <= opts.fit_threshold;
      });
}

EstimationResult estimate_moments(const HudeModel& model,
                                  const ObservationSeries& series,
                                  const EstimateOptions& opts) {
  if (opts.theta_init.size() != model.param_names().size()) {
    throw PreconditionError("theta_init must bind every model parameter");
  }
  return estimate_moments(model_residuals(model, series, opts.residual), opts);
}

EstimationResult estimate_mle(const ResidualFn& residuals, double level,
                              const EstimateOptions& opts) {
  return run(
      residuals, opts,
      [level](const std::vector<double>& eps) {
        return mle_objective(eps, level).value;
      },
      [&](EstimationResult& out, const std::vector<double>& eps,
          const MinimizeResult& best) {
        const MleFit fit = mle_objective(eps, level);
        out.gaps = {fit.lower_gap, fit.upper_gap};
        out.converged = best.tolerance_reached;
      });
}

EstimationResult estimate_mle(const HudeModel& model,
                              const ObservationSeries& series, double level,
                              const EstimateOptions& opts) {
  if (opts.theta_init.size() != model.param_names().size()) {
    throw PreconditionError("theta_init must bind every model parameter");
  }
  return estimate_mle(model_residuals(model, series, opts.residual), level,
                      opts);
}

}  // namespace hude
