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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "hude/alphapath.hpp"
#include "hude/errors.hpp"
#include "hude/reactor.hpp"
#include "hude/residuals.hpp"
#include "oracles.hpp"

using namespace hude;

namespace {

ResidualOptions fast_options() {
  ResidualOptions o;
  o.h = 1e-3;
  o.method = Method::kRk4;
  return o;
}

std::vector<double> grid(double t0, double dt, std::size_t count) {
  std::vector<double> t(count);
  for (std::size_t j = 0; j < count; ++j) t[j] = t0 + dt * static_cast<double>(j);
  return t;
}

}  // namespace

TEST_CASE("derivative schemes") {
  ObservationSeries s{{0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 4.0, 9.0}, {}};
  const ObservationSeries fwd = estimate_derivatives(s, 3, DerivativeScheme::kForward);
  REQUIRE(fwd.derivatives.size() == 2);
  CHECK(fwd.derivatives[0][0] == 1.0);
  CHECK(fwd.derivatives[0][2] == 5.0);
  CHECK(std::isnan(fwd.derivatives[0][3]));
  CHECK(fwd.derivatives[1][0] == 2.0);
  CHECK(fwd.derivatives[1][1] == 2.0);
  CHECK(std::isnan(fwd.derivatives[1][2]));
  CHECK(fwd.has_state(1, 3));
  CHECK_FALSE(fwd.has_state(2, 3));

  const ObservationSeries cen = estimate_derivatives(s, 2, DerivativeScheme::kCentral);
  CHECK(std::isnan(cen.derivatives[0][0]));
  CHECK(cen.derivatives[0][1] == 2.0);
  CHECK(cen.derivatives[0][2] == 4.0);
  CHECK(std::isnan(cen.derivatives[0][3]));

  CHECK_THROWS_AS(estimate_derivatives(s, 2, DerivativeScheme::kProvided), PreconditionError);
  CHECK_THROWS_AS(estimate_derivatives(ObservationSeries{{0.0, 0.0}, {1.0, 2.0}, {}}, 2,
                                       DerivativeScheme::kForward),
                  PreconditionError);
  CHECK(parse_scheme("central") == DerivativeScheme::kCentral);
  CHECK_THROWS_AS(parse_scheme("backward"), PreconditionError);
}

TEST_CASE("residual of an observation placed on a known path") {
  const HudeModel m(1, "-x0", {"sig"}, {"sig"});
  const ParamVector theta = {0.5};
  const InitialState init{0.0, {1.0}};
  for (double a : {0.5, 0.7, 0.123}) {
    const Simulation sim = simulate_with_draws(m, theta, init, std::vector<double>{0.0, 0.1},
                                               std::vector<double>{a}, fast_options());
    const Residual r = compute_residual(m, theta, init, 0.1, sim.series.values[1], fast_options());
    CHECK(std::fabs(r.epsilon - a) <= 1e-4);
    CHECK(r.iterations == 14);
    CHECK(r.envelope == Envelope::kInside);
    CHECK(r.monotone);
  }
}

TEST_CASE("second example, observation on the 0.7-path from t = 0.5") {
  const HudeModel m = testing::example2_model();
  const InitialState at_half{0.5, {testing::example2_exact(0.5, 0.7), 0.0}};
  const AlphaPath path = solve_alpha_path(m, {}, 0.7, at_half, 0.6, 1e-4, Method::kRk4);
  ResidualOptions o;
  o.h = 1e-4;
  o.method = Method::kRk4;
  const Residual r = compute_residual(m, {}, at_half, 0.6, path.trajectory.back()[0], o);
  CHECK(std::fabs(r.epsilon - 0.7) <= 1e-4);
}

TEST_CASE("observations outside the envelope") {
  const HudeModel m(1, "-x0", {"sig"}, {"sig"});
  const InitialState init{0.0, {1.0}};
  const Residual above = compute_residual(m, {0.01}, init, 0.1, 50.0, fast_options());
  CHECK(above.envelope == Envelope::kAbove);
  CHECK(above.epsilon > 1.0 - 1e-4);
  const Residual below = compute_residual(m, {0.01}, init, 0.1, -50.0, fast_options());
  CHECK(below.envelope == Envelope::kBelow);
  CHECK(below.epsilon < 1e-4);
}

TEST_CASE("reactor residuals on the published observations") {
  const reactor::ReactorParams p = reactor::published_params();
  ResidualOptions o;
  o.h = 1e-3;
  const ResidualVector r = compute_residuals(reactor::build_reactor_hude(p),
                                             reactor::reactor_theta(p), reactor::table3(), o);
  REQUIRE(r.size() == 60);
  CHECK(r.index.front() == 1);
  CHECK(r.index.back() == 60);
  CHECK(r.epsilon[0] == doctest::Approx(0.4373).epsilon(0.02 / 0.4373));
  const ResidualVector published = reactor::table4();
  double worst = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    worst = std::max(worst, std::fabs(r.epsilon[j] - published.epsilon[j]));
  }
  MESSAGE("largest deviation from the published residuals: " << worst);
  CHECK(worst < 0.02);
}

TEST_CASE("order-many observations are rejected") {
  const HudeModel m = testing::example2_model();
  CHECK_THROWS_AS(compute_residuals(m, {}, ObservationSeries{{0.0, 1.0}, {0.0, 1.0}, {}}),
                  PreconditionError);
  CHECK_THROWS_AS(compute_residual(m, {}, InitialState{0.0, {0.0}}, 1.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(compute_residual(m, {}, InitialState{1.0, {0.0, 0.0}}, 1.0, 0.0), PreconditionError);
}

TEST_CASE("residuals of a correctly specified model look uniform") {
  const HudeModel m(2, "-x0 - 0.5*x1", {"sig"}, {"sig"});
  const ParamVector theta = {0.3};
  const Simulation sim = simulate_observations(m, theta, InitialState{0.0, {1.0, 0.0}},
                                               grid(0.0, 0.05, 201), 42, fast_options());
  ResidualOptions o = fast_options();
  o.scheme = DerivativeScheme::kProvided;
  const ResidualVector r = compute_residuals(m, theta, sim.series, o);
  REQUIRE(r.size() == 200);
  const double mean = std::accumulate(r.epsilon.begin(), r.epsilon.end(), 0.0) / 200.0;
  CHECK(std::fabs(mean - 0.5) < 0.05);
  for (std::size_t j = 0; j < r.size(); ++j) {
    CHECK(std::fabs(r.epsilon[j] - sim.drawn[j]) <= 1e-4);
  }
}

TEST_CASE("simulation is deterministic per seed") {
  const HudeModel m(1, "-x0", {"sig"}, {"sig"});
  const auto t = grid(0.0, 0.1, 20);
  const Simulation a = simulate_observations(m, {0.2}, InitialState{0.0, {1.0}}, t, 9, fast_options());
  const Simulation b = simulate_observations(m, {0.2}, InitialState{0.0, {1.0}}, t, 9, fast_options());
  const Simulation c = simulate_observations(m, {0.2}, InitialState{0.0, {1.0}}, t, 10, fast_options());
  CHECK(a.series.values == b.series.values);
  CHECK(a.drawn != c.drawn);
  for (double u : a.drawn) CHECK((u > 0.0 && u < 1.0));
  CHECK_THROWS_AS(simulate_observations(m, {0.2}, InitialState{1.0, {1.0}}, t, 9), PreconditionError);
}

TEST_CASE("autonomous models are invariant to a shift in time") {
  const HudeModel m(2, "-x0 - 0.2*x1", {"sig*x0"}, {"sig"});
  const ParamVector theta = {0.4};
  ObservationSeries s{grid(0.0, 0.1, 12), {}, {}};
  for (double t : s.times) s.values.push_back(std::cos(t) + 0.05 * std::sin(7.0 * t));
  ObservationSeries shifted = s;
  for (double& t : shifted.times) t += 3.0;
  const ResidualVector a = compute_residuals(m, theta, s, fast_options());
  const ResidualVector b = compute_residuals(m, theta, shifted, fast_options());
  REQUIRE(a.size() == b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    CHECK(std::fabs(a.epsilon[j] - b.epsilon[j]) <= 1e-4);
  }
}
