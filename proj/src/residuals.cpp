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

#include "hude/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "hude/errors.hpp"

namespace hude {

namespace {

constexpr double kGap = std::numeric_limits<double>::quiet_NaN();

}  // namespace

DerivativeScheme parse_scheme(std::string_view name) {
  if (name == "forward") return DerivativeScheme::kForward;
  if (name == "central") return DerivativeScheme::kCentral;
  if (name == "provided") return DerivativeScheme::kProvided;
  throw PreconditionError("unknown derivative scheme '" + std::string(name) +
                          "'");
}

const char* scheme_name(DerivativeScheme s) {
  switch (s) {
    case DerivativeScheme::kForward: return "forward";
    case DerivativeScheme::kCentral: return "central";
    case DerivativeScheme::kProvided: return "provided";
  }
  return "?";
}

void ObservationSeries::validate() const {
  if (times.size() != values.size()) {
    throw PreconditionError("observation times and values differ in length");
  }
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (!std::isfinite(times[j]) || !std::isfinite(values[j])) {
      throw PreconditionError("non-finite observation at row " +
                              std::to_string(j + 1));
    }
    if (j > 0 && !(times[j] > times[j - 1])) {
      throw PreconditionError("observation times must be strictly increasing");
    }
  }
  for (const auto& column : derivatives) {
    if (column.size() != times.size()) {
      throw PreconditionError("derivative column length mismatch");
    }
  }
}

bool ObservationSeries::has_state(std::size_t j, int order) const {
  if (j >= size()) return false;
  if (derivatives.size() + 1 < static_cast<std::size_t>(order)) return false;
  for (int v = 1; v < order; ++v) {
    if (!std::isfinite(derivatives[static_cast<std::size_t>(v - 1)][j])) {
      return false;
    }
  }
  return true;
}

InitialState ObservationSeries::state_at(std::size_t j, int order) const {
  if (!has_state(j, order)) {
    throw PreconditionError("no full state at observation " +
                            std::to_string(j + 1));
  }
  InitialState init;
  init.t0 = times[j];
  init.values.push_back(values[j]);
  for (int v = 1; v < order; ++v) {
    init.values.push_back(derivatives[static_cast<std::size_t>(v - 1)][j]);
  }
  return init;
}

ObservationSeries estimate_derivatives(const ObservationSeries& series,
                                       int order, DerivativeScheme scheme) {
  series.validate();
  if (order < 1) throw PreconditionError("order must be >= 1");
  const std::size_t L = series.size();
  if (L < static_cast<std::size_t>(order)) {
    throw PreconditionError("need at least " + std::to_string(order) +
                            " observations, got " + std::to_string(L));
  }
  if (scheme == DerivativeScheme::kProvided) {
    if (series.derivatives.size() + 1 < static_cast<std::size_t>(order)) {
      throw PreconditionError("series lacks the provided derivative columns");
    }
    return series;
  }
  if (scheme == DerivativeScheme::kCentral && order > 1 && L < 3) {
    throw PreconditionError("central differences need interior points");
  }

  ObservationSeries out;
  out.times = series.times;
  out.values = series.values;
  const auto& t = series.times;
  const std::vector<double>* prev = &out.values;
  for (int v = 1; v < order; ++v) {
    std::vector<double> column(L, kGap);
    for (std::size_t j = 0; j < L; ++j) {
      if (scheme == DerivativeScheme::kForward) {
        if (j + 1 >= L) continue;
        column[j] = ((*prev)[j + 1] - (*prev)[j]) / (t[j + 1] - t[j]);
      } else {
        if (j == 0 || j + 1 >= L) continue;
        column[j] = ((*prev)[j + 1] - (*prev)[j - 1]) / (t[j + 1] - t[j - 1]);
      }
    }
    out.derivatives.push_back(std::move(column));
    prev = &out.derivatives.back();
  }
  return out;
}

Residual compute_residual(const HudeModel& model, const ParamVector& theta,
                          const InitialState& init, double t_next,
                          double x_next, const ResidualOptions& opts) {
  if (!(opts.delta > 0.0)) throw PreconditionError("delta must be positive");
  if (!std::isfinite(x_next)) throw PreconditionError("non-finite observation");
  if (!(t_next > init.t0)) throw PreconditionError("t_next must exceed t_j");
  if (init.values.size() != static_cast<std::size_t>(model.order())) {
    throw PreconditionError("initial state length must equal model order");
  }
  model.check_theta(theta);

  Residual out;
  std::vector<std::pair<double, double>> probes;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > opts.delta) {
    const double alpha =
        std::clamp(0.5 * (lo + hi), kProbeMin, 1.0 - kProbeMin);
    const AlphaPathField field(model, theta, alpha);
    const double x =
        integrate_to_end(opts.method, field, init, t_next, opts.h)[0];
    probes.emplace_back(alpha, x);
    if (x < x_next) {
      lo = 0.5 * (lo + hi);
    } else {
      hi = 0.5 * (lo + hi);
    }
    ++out.iterations;
  }
  out.epsilon = 0.5 * (lo + hi);
  if (lo == 0.0) out.envelope = Envelope::kBelow;
  if (hi == 1.0) out.envelope = Envelope::kAbove;

  std::sort(probes.begin(), probes.end());
  for (std::size_t i = 1; i < probes.size(); ++i) {
    const double a = probes[i - 1].second, b = probes[i].second;
    if (b < a - 1e-12 * std::max(std::fabs(a), std::fabs(b))) {
      out.monotone = false;
      break;
    }
  }
  return out;
}

ResidualVector make_residual_vector(std::vector<double> epsilon) {
  ResidualVector r;
  r.epsilon = std::move(epsilon);
  for (std::size_t j = 0; j < r.epsilon.size(); ++j) r.index.push_back(j + 1);
  r.envelope.assign(r.epsilon.size(), Envelope::kInside);
  r.monotone.assign(r.epsilon.size(), true);
  return r;
}

ResidualVector compute_residuals(const HudeModel& model,
                                 const ParamVector& theta,
                                 const ObservationSeries& series,
                                 const ResidualOptions& opts) {
  const int n = model.order();
  series.validate();
  if (series.size() < static_cast<std::size_t>(n) + 1) {
    throw PreconditionError("need at least order+1 observations to score a step");
  }
  const ObservationSeries full = estimate_derivatives(series, n, opts.scheme);

  ResidualVector out;
  out.theta = theta;
  std::size_t non_monotone = 0, below = 0, above = 0;
  for (std::size_t j = 0; j + 1 < full.size(); ++j) {
    if (!full.has_state(j, n)) continue;
    const Residual r = compute_residual(model, theta, full.state_at(j, n),
                                        full.times[j + 1], full.values[j + 1],
                                        opts);
    out.epsilon.push_back(r.epsilon);
    out.index.push_back(j + 1);
    out.envelope.push_back(r.envelope);
    out.monotone.push_back(r.monotone);
    if (!r.monotone) ++non_monotone;
    if (r.envelope == Envelope::kBelow) ++below;
    if (r.envelope == Envelope::kAbove) ++above;
  }
  if (out.empty()) throw PreconditionError("no admissible step to score");
  if (non_monotone > 0) {
    out.warnings.push_back(
        std::to_string(non_monotone) +
        " residual(s) bisected a terminal value that is not monotone in alpha");
  }
  if (below + above > 0) {
    out.warnings.push_back(std::to_string(below) + " below / " +
                           std::to_string(above) +
                           " above the reachable alpha-path envelope");
  }
  return out;
}

Simulation simulate_with_draws(const HudeModel& model,
                               const ParamVector& theta,
                               const InitialState& init,
                               std::span<const double> times,
                               std::span<const double> draws,
                               const ResidualOptions& opts) {
  const auto n = static_cast<std::size_t>(model.order());
  if (times.empty() || times[0] != init.t0) {
    throw PreconditionError("times[0] must equal the initial time");
  }
  if (draws.size() + 1 != times.size()) {
    throw PreconditionError("need exactly one draw per step");
  }
  if (init.values.size() != n) {
    throw PreconditionError("initial state length must equal model order");
  }
  Simulation sim;
  sim.drawn.assign(draws.begin(), draws.end());
  sim.series.derivatives.assign(n - 1, {});
  auto record = [&](double t, std::span<const double> y) {
    sim.series.times.push_back(t);
    sim.series.values.push_back(y[0]);
    for (std::size_t v = 1; v < n; ++v) sim.series.derivatives[v - 1].push_back(y[v]);
  };
  InitialState state = init;
  record(state.t0, state.values);
  for (std::size_t j = 0; j < draws.size(); ++j) {
    if (!(times[j + 1] > times[j])) {
      throw PreconditionError("times must be strictly increasing");
    }
    const AlphaPathField field(model, theta, draws[j]);
    state.values = integrate_to_end(opts.method, field, state, times[j + 1], opts.h);
    state.t0 = times[j + 1];
    record(state.t0, state.values);
  }
  return sim;
}

Simulation simulate_observations(const HudeModel& model,
                                 const ParamVector& theta,
                                 const InitialState& init,
                                 std::span<const double> times,
                                 std::uint64_t seed,
                                 const ResidualOptions& opts) {
  if (times.empty()) throw PreconditionError("empty time grid");
  // mt19937_64 is fully specified; converting its output by hand keeps the
  // draws identical across standard libraries.
  std::mt19937_64 rng(seed);
  std::vector<double> draws;
  draws.reserve(times.size() - 1);
  while (draws.size() + 1 < times.size()) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u > 0.0) draws.push_back(u);
  }
  return simulate_with_draws(model, theta, init, times, draws, opts);
}

}  // namespace hude
