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

#include "hude/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "hude/errors.hpp"

namespace hude {

bool Bounds::contains(std::span<const double> x) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
  }
  return true;
}

std::vector<double> Bounds::reflect(std::span<const double> x) const {
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double lo = lower[i], width = upper[i] - lower[i];
    if (width <= 0.0) {
      out[i] = lo;
      continue;
    }
    double y = std::fmod(out[i] - lo, 2.0 * width);
    if (y < 0.0) y += 2.0 * width;
    if (y > width) y = 2.0 * width - y;
    out[i] = std::clamp(lo + y, lower[i], upper[i]);
  }
  return out;
}

namespace {

void check_problem(std::span<const double> x0, const Bounds& bounds) {
  if (bounds.lower.size() != bounds.upper.size() ||
      bounds.lower.size() != x0.size() || x0.empty()) {
    throw PreconditionError("bounds and start point dimensions differ");
  }
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (!(bounds.lower[i] <= bounds.upper[i])) {
      throw PreconditionError("empty bounds on coordinate " + std::to_string(i));
    }
  }
  if (!bounds.contains(x0)) throw PreconditionError("start point outside bounds");
}

}  // namespace

MinimizeResult nelder_mead(const Objective& f, std::span<const double> x0,
                           const Bounds& bounds, const MinimizeOptions& opts) {
  check_problem(x0, bounds);
  const std::size_t n = x0.size();
  MinimizeResult result;

  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<std::vector<double>> simplex;
  simplex.emplace_back(x0.begin(), x0.end());
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(x0.begin(), x0.end());
    v[i] = v[i] != 0.0 ? 1.05 * v[i] : 0.00025;
    simplex.push_back(bounds.reflect(v));
  }
  std::vector<double> values;
  values.reserve(n + 1);
  for (const auto& v : simplex) values.push_back(eval(v));

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return values[a] < values[b];
    });
    std::vector<std::vector<double>> s;
    std::vector<double> fv;
    for (auto k : order) {
      s.push_back(std::move(simplex[k]));
      fv.push_back(values[k]);
    }
    simplex = std::move(s);
    values = std::move(fv);
  };

  auto towards = [&](const std::vector<double>& c, const std::vector<double>& w,
                     double coef) {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = c[i] + coef * (w[i] - c[i]);
    return bounds.reflect(p);
  };

  sort_simplex();
  while (result.evaluations < opts.max_evaluations) {
    double fspread = 0.0, xspread = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      fspread = std::max(fspread, std::fabs(values[k] - values[0]));
      for (std::size_t i = 0; i < n; ++i) {
        xspread = std::max(xspread, std::fabs(simplex[k][i] - simplex[0][i]));
      }
    }
    if (fspread <= opts.f_tolerance && xspread <= opts.x_tolerance) {
      result.tolerance_reached = true;
      break;
    }
    if (std::isfinite(values[0]) && xspread <= opts.x_tolerance) {
      result.tolerance_reached = true;
      break;
    }
    ++result.iterations;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i] / static_cast<double>(n);
    }
    const auto& worst = simplex[n];
    const auto xr = towards(centroid, worst, -1.0);
    const double fr = eval(xr);
    if (fr < values[0]) {
      const auto xe = towards(centroid, worst, -2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[n] = xe;
        values[n] = fe;
      } else {
        simplex[n] = xr;
        values[n] = fr;
      }
    } else if (fr < values[n - 1]) {
      simplex[n] = xr;
      values[n] = fr;
    } else {
      const bool outside = fr < values[n];
      const auto xc = outside ? towards(centroid, worst, -0.5)
                              : towards(centroid, worst, 0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : values[n])) {
        simplex[n] = xc;
        values[n] = fc;
      } else {
        for (std::size_t k = 1; k <= n; ++k) {
          simplex[k] = towards(simplex[0], simplex[k], 0.5);
          values[k] = eval(simplex[k]);
        }
      }
    }
    sort_simplex();
  }
  result.x = simplex[0];
  result.value = values[0];
  return result;
}

MinimizeResult minimize(const Objective& f, std::span<const double> x0,
                        const Bounds& bounds, const MinimizeOptions& opts) {
  check_problem(x0, bounds);
  MinimizeResult best = nelder_mead(f, x0, bounds, opts);
  int iterations = best.iterations, evaluations = best.evaluations;
  std::mt19937_64 rng(opts.seed);
  for (int r = 0; r < opts.restarts; ++r) {
    std::vector<double> start(x0.size());
    for (std::size_t i = 0; i < start.size(); ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      start[i] = bounds.lower[i] + u * (bounds.upper[i] - bounds.lower[i]);
    }
    MinimizeResult run = nelder_mead(f, start, bounds, opts);
    iterations += run.iterations;
    evaluations += run.evaluations;
    if (run.value < best.value) best = std::move(run);
  }
  best.iterations = iterations;
  best.evaluations = evaluations;
  return best;
}

}  // namespace hude
