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

#ifndef HUDE_REACTOR_HPP_
#define HUDE_REACTOR_HPP_

#include <array>
#include <span>
#include <vector>

#include "hude/model.hpp"
#include "hude/odeint.hpp"
#include "hude/residuals.hpp"

namespace hude::reactor {

/// Point-kinetics constants. Units: seconds, neutron population as-is.
struct ReactorParams {
  double decay = 0.0785;            // lambda, 1/s
  double delayed_fraction = 0.0065; // beta
  double multiplication = 1.001;    // k
  double lifetime = 1e-4;           // l_n, s
  double sigma1 = 0.0;              // noise on beta
  double sigma2 = 0.0;              // noise on lambda
  double source = 0.0;              // B, neutrons/s
  /// Optional six-group (beta_i, lambda_i); empty means one group.
  std::vector<double> group_fractions;
  std::vector<double> group_decays;

  /// Throws PreconditionError unless l_n > 0, 0 < beta < 1, sigmas >= 0 and
  /// the group fractions (if any) sum to beta.
  void validate() const;
};

/// Coefficients of the one-group second-order equation
///   N'' = rate_coeff * N' + population_coeff * N
///         - (k/l) sigma1 N' dC1 + sigma2 ((k-1)/l N - N') dC2
struct Coefficients {
  double rate_coeff;        // (k(1-beta)-1)/l - lambda
  double population_coeff;  // lambda (k-1)/l
  double k_over_l;          // k/l
  double excess_over_l;     // (k-1)/l
};

Coefficients coefficients(const ReactorParams& p);

/// Order-2 model in x0 = N, x1 = N' with parameters sig1, sig2 left free.
HudeModel build_reactor_hude(const ReactorParams& p);

/// The sigma values of `p` as a ParamVector for build_reactor_hude.
ParamVector reactor_theta(const ReactorParams& p);

/// Linear alpha-path field with the |.| of each diffusion dropped under the
/// assumption N >> N' > 0:
///   N'' = (rate + (k/l sigma1 - sigma2) phi_inv(a)) N'
///         + (population + (k-1)/l sigma2 phi_inv(a)) N
AlphaPathField build_simplified_field(const ReactorParams& p, double alpha);

/// Seven-dimensional deterministic point kinetics (N, Q_1..Q_6):
///   N'   = B + sum_i lambda_i Q_i + (k(1-beta)-1)/l N
///   Q_i' = -lambda_i Q_i + k beta_i / l N
VectorField build_point_kinetics(const ReactorParams& p);

/// Closed-form Psi_t^{-1}(alpha) of the simplified field,
///   P = rate + kP phi_inv(a),  R = population + kR phi_inv(a),  T = P^2 + 4R
/// with the default slopes matching the fitted sigmas (1.134632, 2.96798).
struct ClosedForm {
  double rate = -55.1435;
  double rate_slope = 1.134632;
  double population = 0.785;
  double population_slope = 2.96798;
};

/// Valid for 0.4 < alpha < 1; throws PreconditionError outside.
double closed_form_psi_inv(double t, double alpha, double n0 = 1.2157,
                           double n0_prime = 0.008,
                           const ClosedForm& c = ClosedForm{});

/// P, R, T for closed_form_psi_inv.
std::array<double, 3> closed_form_prt(double alpha,
                                      const ClosedForm& c = ClosedForm{});

/// 61 observations of N_t on t = 0, 0.1, ..., 6.
ObservationSeries table3();
/// The 60 published residuals at sigma = (0.000143, 0.296798).
ResidualVector table4();

/// sigma1, sigma2 as published.
inline constexpr std::array<double, 2> kPublishedSigma = {0.000143, 0.296798};

/// Default plant with the published sigmas.
ReactorParams published_params();

}  // namespace hude::reactor

#endif  // HUDE_REACTOR_HPP_
