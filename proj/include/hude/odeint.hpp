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

#ifndef HUDE_ODEINT_HPP_
#define HUDE_ODEINT_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hude/errors.hpp"
#include "hude/model.hpp"

namespace hude {

/// dy/dt = F(t, y), written into `dy`.
using VectorField =
    std::function<void(double, std::span<const double>, std::span<double>)>;

enum class Method { kEuler, kRk4 };

/// Parses "euler" / "rk4".
Method parse_method(std::string_view name);
const char* method_name(Method m);

/// Default fixed step. The HUDE_DEFAULT_STEP environment variable overrides
/// it when set to a positive number.
double default_step();

/// Uniform grid t0 < t0+h < ... < t_end (last step possibly shortened) and
/// the state vector at every grid point, stored row-major.
class Trajectory {
 public:
  Trajectory(std::size_t dimension, double step)
      : dimension_(dimension), step_(step) {}

  std::size_t dimension() const noexcept { return dimension_; }
  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return times_.size(); }

  double time(std::size_t k) const { return times_[k]; }
  const std::vector<double>& times() const noexcept { return times_; }
  std::span<const double> row(std::size_t k) const {
    return {states_.data() + k * dimension_, dimension_};
  }
  std::span<const double> back() const { return row(size() - 1); }
  /// Component `c` at grid point `k`.
  double at(std::size_t k, std::size_t c) const {
    return states_[k * dimension_ + c];
  }

  void push(double t, std::span<const double> y) {
    times_.push_back(t);
    states_.insert(states_.end(), y.begin(), y.end());
  }
  void reserve(std::size_t rows) {
    times_.reserve(rows);
    states_.reserve(rows * dimension_);
  }

 private:
  std::size_t dimension_;
  double step_;
  std::vector<double> times_;
  std::vector<double> states_;
};

/// Writes `t,x0,...,x{n-1}` rows at 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

namespace detail {

inline std::size_t step_count(double t0, double t_end, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw PreconditionError("step must be positive and finite");
  }
  if (!(t_end > t0)) throw PreconditionError("t_end must exceed t0");
  const double span = t_end - t0;
  // Tolerate the rounding in span/h so that e.g. 0.1/1e-4 gives 1000 steps.
  const double q = span / h;
  auto steps = static_cast<std::size_t>(std::ceil(q - 1e-9 * q));
  return steps == 0 ? 1 : steps;
}

inline void check_finite(std::span<const double> y, double t) {
  for (double v : y) {
    if (!std::isfinite(v)) throw IntegrationError("non-finite state", t);
  }
}

template <class Field>
void euler_step(const Field& field, double t, double h, std::vector<double>& y,
                std::vector<double>& k1) {
  field(t, y, k1);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += h * k1[i];
}

struct Rk4Scratch {
  explicit Rk4Scratch(std::size_t n) : k1(n), k2(n), k3(n), k4(n), tmp(n) {}
  std::vector<double> k1, k2, k3, k4, tmp;
};

template <class Field>
void rk4_step(const Field& field, double t, double h, std::vector<double>& y,
              Rk4Scratch& s) {
  const std::size_t n = y.size();
  field(t, y, s.k1);
  for (std::size_t i = 0; i < n; ++i) s.tmp[i] = y[i] + 0.5 * h * s.k1[i];
  field(t + 0.5 * h, s.tmp, s.k2);
  for (std::size_t i = 0; i < n; ++i) s.tmp[i] = y[i] + 0.5 * h * s.k2[i];
  field(t + 0.5 * h, s.tmp, s.k3);
  for (std::size_t i = 0; i < n; ++i) s.tmp[i] = y[i] + h * s.k3[i];
  field(t + h, s.tmp, s.k4);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] += h / 6.0 * (s.k1[i] + 2.0 * s.k2[i] + 2.0 * s.k3[i] + s.k4[i]);
  }
}

/// Drives `method` from init to t_end, calling visit(t, y) at every grid
/// point including the first.
template <class Field, class Visit>
void drive(Method method, const Field& field, const InitialState& init,
           double t_end, double h, Visit&& visit) {
  const std::size_t steps = step_count(init.t0, t_end, h);
  std::vector<double> y = init.values;
  check_finite(y, init.t0);
  visit(init.t0, std::span<const double>(y));
  std::vector<double> k1(y.size());
  Rk4Scratch scratch(y.size());
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = init.t0 + static_cast<double>(k) * h;
    const double t_next =
        k + 1 == steps ? t_end : init.t0 + static_cast<double>(k + 1) * h;
    const double dt = t_next - t;
    if (method == Method::kEuler) {
      euler_step(field, t, dt, y, k1);
    } else {
      rk4_step(field, t, dt, y, scratch);
    }
    check_finite(y, t_next);
    visit(t_next, std::span<const double>(y));
  }
}

}  // namespace detail

/// Integrates dy/dt = field(t, y) on a uniform grid and keeps every state.
/// Throws IntegrationError if a state becomes non-finite.
template <class Field>
Trajectory integrate(Method method, const Field& field,
                     const InitialState& init, double t_end, double h) {
  Trajectory traj(init.values.size(), h);
  traj.reserve(detail::step_count(init.t0, t_end, h) + 1);
  detail::drive(method, field, init, t_end, h,
                [&](double t, std::span<const double> y) { traj.push(t, y); });
  return traj;
}

/// Same as integrate() but returns only the final state.
template <class Field>
std::vector<double> integrate_to_end(Method method, const Field& field,
                                     const InitialState& init, double t_end,
                                     double h) {
  std::vector<double> last;
  detail::drive(method, field, init, t_end, h,
                [&](double, std::span<const double> y) {
                  last.assign(y.begin(), y.end());
                });
  return last;
}

/// Explicit Euler: y_{k+1} = y_k + h F(t_k, y_k).
Trajectory integrate_euler(const VectorField& field, const InitialState& init,
                           double t_end, double h);

/// Classical fourth-order Runge-Kutta.
Trajectory integrate_rk4(const VectorField& field, const InitialState& init,
                         double t_end, double h);

}  // namespace hude

#endif  // HUDE_ODEINT_HPP_
