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

#include "hude/reactor.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "hude/errors.hpp"
#include "hude/phi.hpp"

namespace hude::reactor {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr std::array<double, 61> kTable3 = {
    1.2157, 1.2165, 1.2186, 1.2213, 1.2236, 1.2236, 1.2262, 1.2271, 1.2296,
    1.2317, 1.2313, 1.2388, 1.2339, 1.2386, 1.2361, 1.2399, 1.2420, 1.2459,
    1.2492, 1.2494, 1.2530, 1.2545, 1.2498, 1.2572, 1.2550, 1.2656, 1.2607,
    1.2697, 1.2635, 1.2688, 1.2658, 1.2689, 1.2717, 1.2748, 1.2797, 1.2782,
    1.2880, 1.2823, 1.2922, 1.2815, 1.2902, 1.2922, 1.2817, 1.2849, 1.2908,
    1.2964, 1.3057, 1.2975, 1.3101, 1.3050, 1.3249, 1.3138, 1.3064, 1.3136,
    1.3047, 1.3288, 1.3241, 1.3250, 1.3145, 1.3243, 1.3285};

constexpr std::array<double, 60> kTable4 = {
    0.4373, 0.5238, 0.5632, 0.5436, 0.3800, 0.5616, 0.4387, 0.5498, 0.5226,
    0.3566, 0.8227, 0.1370, 0.6916, 0.2351, 0.6358, 0.5177, 0.6417, 0.6019,
    0.3940, 0.6192, 0.4787, 0.1454, 0.8153, 0.2537, 0.9065, 0.1407, 0.8673,
    0.1011, 0.7186, 0.2134, 0.5851, 0.5664, 0.5845, 0.6861, 0.2970, 0.8839,
    0.1187, 0.8856, 0.0329, 0.8542, 0.5070, 0.0342, 0.5906, 0.7404, 0.7223,
    0.8696, 0.0638, 0.9360, 0.1401, 0.9875, 0.0317, 0.0809, 0.7937, 0.0540,
    0.9952, 0.1549, 0.4357, 0.0368, 0.8784, 0.6384};

}  // namespace

void ReactorParams::validate() const {
  if (!(lifetime > 0.0)) throw PreconditionError("neutron lifetime must be > 0");
  if (!(delayed_fraction > 0.0 && delayed_fraction < 1.0)) {
    throw PreconditionError("delayed neutron fraction must lie in (0,1)");
  }
  if (!(sigma1 >= 0.0) || !(sigma2 >= 0.0)) {
    throw PreconditionError("noise levels must be non-negative");
  }
  if (group_fractions.size() != group_decays.size()) {
    throw PreconditionError("group fraction and decay lists differ in length");
  }
  if (!group_fractions.empty()) {
    const double sum =
        std::accumulate(group_fractions.begin(), group_fractions.end(), 0.0);
    if (std::fabs(sum - delayed_fraction) > 1e-12 * std::max(1.0, delayed_fraction)) {
      throw PreconditionError("group fractions must sum to beta");
    }
  }
}

Coefficients coefficients(const ReactorParams& p) {
  p.validate();
  const double k = p.multiplication, l = p.lifetime;
  return {(k * (1.0 - p.delayed_fraction) - 1.0) / l - p.decay,
          p.decay * (k - 1.0) / l, k / l, (k - 1.0) / l};
}

HudeModel build_reactor_hude(const ReactorParams& p) {
  const Coefficients c = coefficients(p);
  const std::string drift = num(c.rate_coeff) + "*x1 + " +
                            num(c.population_coeff) + "*x0";
  const std::string g1 = "-" + num(c.k_over_l) + "*sig1*x1";
  const std::string g2 = "sig2*(" + num(c.excess_over_l) + "*x0 - x1)";
  return HudeModel(2, drift, {g1, g2}, {"sig1", "sig2"});
}

ParamVector reactor_theta(const ReactorParams& p) {
  return {p.sigma1, p.sigma2};
}

AlphaPathField build_simplified_field(const ReactorParams& p, double alpha) {
  const Coefficients c = coefficients(p);
  const double z = phi_inv(alpha);
  const double rate = c.rate_coeff + (c.k_over_l * p.sigma1 - p.sigma2) * z;
  const double population = c.population_coeff + c.excess_over_l * p.sigma2 * z;
  const HudeModel linear(2, num(rate) + "*x1 + " + num(population) + "*x0", {},
                         {});
  return AlphaPathField(linear, {}, alpha);
}

VectorField build_point_kinetics(const ReactorParams& p) {
  p.validate();
  if (p.group_fractions.size() != 6) {
    throw PreconditionError("point kinetics needs six precursor groups");
  }
  const double k = p.multiplication, l = p.lifetime;
  const double prompt = (k * (1.0 - p.delayed_fraction) - 1.0) / l;
  const double source = p.source;
  const std::vector<double> beta = p.group_fractions;
  const std::vector<double> decay = p.group_decays;
  return [=](double, std::span<const double> y, std::span<double> dy) {
    const double n = y[0];
    double feed = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
      feed += decay[i] * y[i + 1];
      dy[i + 1] = -decay[i] * y[i + 1] + k * beta[i] / l * n;
    }
    dy[0] = source + feed + prompt * n;
  };
}

std::array<double, 3> closed_form_prt(double alpha, const ClosedForm& c) {
  const double z = phi_inv(alpha);
  const double P = c.rate + c.rate_slope * z;
  const double R = c.population + c.population_slope * z;
  return {P, R, P * P + 4.0 * R};
}

double closed_form_psi_inv(double t, double alpha, double n0, double n0_prime,
                           const ClosedForm& c) {
  if (!(alpha > 0.4 && alpha < 1.0)) {
    throw PreconditionError("closed form holds only for 0.4 < alpha < 1");
  }
  const auto [P, R, T] = closed_form_prt(alpha, c);
  if (!(T > 0.0)) throw PreconditionError("closed form discriminant not positive");
  const double root = std::sqrt(T);
  const double slow = (P + root) / 2.0, fast = (P - root) / 2.0;
  return std::exp(fast * t) * (-2.0 * n0_prime + n0 * (root + P)) / (2.0 * root) +
         std::exp(slow * t) * (2.0 * n0_prime + n0 * (root - P)) / (2.0 * root);
}

ReactorParams published_params() {
  ReactorParams p;
  p.sigma1 = kPublishedSigma[0];
  p.sigma2 = kPublishedSigma[1];
  return p;
}

ObservationSeries table3() {
  ObservationSeries s;
  for (std::size_t j = 0; j < kTable3.size(); ++j) {
    s.times.push_back(static_cast<double>(j) / 10.0);
    s.values.push_back(kTable3[j]);
  }
  return s;
}

ResidualVector table4() {
  ResidualVector r =
      make_residual_vector(std::vector<double>(kTable4.begin(), kTable4.end()));
  r.theta = {kPublishedSigma[0], kPublishedSigma[1]};
  return r;
}

}  // namespace hude::reactor
