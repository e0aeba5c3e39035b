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

#ifndef HUDE_PHI_HPP_
#define HUDE_PHI_HPP_

namespace hude {

/// Inverse standard normal uncertainty distribution,
/// (sqrt(3)/pi) * ln(alpha / (1 - alpha)). Throws PreconditionError unless
/// 0 < alpha < 1.
double phi_inv(double alpha);

/// Standard normal uncertainty distribution, the inverse of phi_inv.
double phi(double x);

}  // namespace hude

#endif  // HUDE_PHI_HPP_
