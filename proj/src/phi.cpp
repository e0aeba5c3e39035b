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

#include "hude/phi.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hude/errors.hpp"

namespace hude {

double phi_inv(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw PreconditionError("alpha must lie in (0,1), got " +
                            std::to_string(alpha));
  }
  return std::numbers::sqrt3 / std::numbers::pi * std::log(alpha / (1.0 - alpha));
}

double phi(double x) {
  return 1.0 / (1.0 + std::exp(-std::numbers::pi * x / std::numbers::sqrt3));
}

}  // namespace hude
