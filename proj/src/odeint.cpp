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

#include "hude/odeint.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace hude {

Method parse_method(std::string_view name) {
  if (name == "euler") return Method::kEuler;
  if (name == "rk4") return Method::kRk4;
  throw PreconditionError("unknown integrator '" + std::string(name) + "'");
}

const char* method_name(Method m) {
  return m == Method::kEuler ? "euler" : "rk4";
}

double default_step() {
  constexpr double kStep = 1e-4;
  if (const char* env = std::getenv("HUDE_DEFAULT_STEP")) {
    char* end = nullptr;
    const double h = std::strtod(env, &end);
    if (end != env && *end == '\0' && h > 0.0 && std::isfinite(h)) return h;
  }
  return kStep;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << 't';
  for (std::size_t c = 0; c < traj.dimension(); ++c) out << ",x" << c;
  out << '\n';
  char buf[32];
  for (std::size_t k = 0; k < traj.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.time(k));
    out << buf;
    for (double v : traj.row(k)) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

Trajectory integrate_euler(const VectorField& field, const InitialState& init,
                           double t_end, double h) {
  return integrate(Method::kEuler, field, init, t_end, h);
}

Trajectory integrate_rk4(const VectorField& field, const InitialState& init,
                         double t_end, double h) {
  return integrate(Method::kRk4, field, init, t_end, h);
}

}  // namespace hude
