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

#ifndef HUDE_OPTIMIZE_HPP_
#define HUDE_OPTIMIZE_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hude {

/// Closed box lower <= x <= upper.
struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t size() const noexcept { return lower.size(); }
  bool contains(std::span<const double> x) const;
  /// Folds x back into the box by mirror reflection at each face.
  std::vector<double> reflect(std::span<const double> x) const;
};

struct MinimizeOptions {
  int max_evaluations = 600;  // per start
  double x_tolerance = 1e-8;
  double f_tolerance = 1e-15;
  int restarts = 3;           // extra random starts inside the box
  std::uint64_t seed = 0;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool tolerance_reached = false;  // false if stopped by max_evaluations
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free simplex search (Nelder-Mead) kept inside `bounds` by
/// reflection. The initial simplex perturbs each coordinate by 5% of its
/// start value (0.00025 when zero). Non-finite objective values are treated
/// as +infinity.
MinimizeResult nelder_mead(const Objective& f, std::span<const double> x0,
                           const Bounds& bounds, const MinimizeOptions& opts);

/// Runs nelder_mead from x0 and from opts.restarts seeded uniform points
/// in the box; returns the best. Counters are summed over all starts.
MinimizeResult minimize(const Objective& f, std::span<const double> x0,
                        const Bounds& bounds, const MinimizeOptions& opts);

}  // namespace hude

#endif  // HUDE_OPTIMIZE_HPP_
