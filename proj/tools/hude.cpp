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

// Command-line front end: alpha-paths, residuals, estimation, the
// uncertain hypothesis test, simulation and the reactor walk-through.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hude/alphapath.hpp"
#include "hude/errors.hpp"
#include "hude/estimate.hpp"
#include "hude/hypotest.hpp"
#include "hude/io.hpp"
#include "hude/reactor.hpp"
#include "hude/residuals.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

enum Exit : int {
  kOk = 0,
  kUsage = 2,
  kFileNotFound = 3,
  kParse = 4,
  kModule = 5,
};

struct Options {
  std::string model;
  std::string data;
  std::string out;
  std::string theta;
  std::string init;
  std::string bounds;
  std::string alphas;
  std::string method = "moments";
  std::string integrator = "euler";
  std::string scheme = "forward";
  double alpha = 0.5;
  double level = 0.05;
  double delta = 1e-4;
  double step = 0.0;  // 0: library default
  double t0 = 0.0;
  double t_end = NAN;
  double dt = 0.1;
  int moments = 0;
  int count = 0;
  int restarts = 3;
  std::uint64_t seed = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

double to_number(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw hude::ParseError(std::string("bad number in ") + what + ": '" + s + "'", 0);
  }
  return v;
}

std::vector<double> number_list(const std::string& s, const char* what) {
  std::vector<double> v;
  for (const auto& part : split(s, ',')) v.push_back(to_number(part, what));
  return v;
}

// "name=value,name=value"
std::map<std::string, double> named_values(const std::string& s) {
  std::map<std::string, double> out;
  for (const auto& part : split(s, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) {
      throw hude::ParseError("--theta expects name=value pairs, got '" + part + "'", 0);
    }
    out[part.substr(0, eq)] = to_number(part.substr(eq + 1), "--theta");
  }
  return out;
}

// "lo:hi,lo:hi", one pair per parameter.
hude::Bounds parse_bounds(const std::string& s, std::size_t dims) {
  hude::Bounds b;
  if (s.empty()) {
    b.lower.assign(dims, 0.0);
    b.upper.assign(dims, 1.0);
    return b;
  }
  for (const auto& part : split(s, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) {
      throw hude::ParseError("--bounds expects lo:hi pairs, got '" + part + "'", 0);
    }
    b.lower.push_back(to_number(part.substr(0, colon), "--bounds"));
    b.upper.push_back(to_number(part.substr(colon + 1), "--bounds"));
  }
  if (b.size() != dims) {
    throw hude::PreconditionError("--bounds needs one range per parameter");
  }
  return b;
}

struct Loaded {
  hude::io::ModelFile file;
  hude::ParamVector theta;
  hude::InitialState init;
  std::optional<double> t_end;
};

Loaded load(const Options& o, bool need_theta) {
  if (o.model.empty()) throw hude::PreconditionError("--model is required");
  Loaded l{hude::io::load_model_file(o.model), {}, {}, {}};
  std::map<std::string, double> named = l.file.theta.value_or(std::map<std::string, double>{});
  if (!o.theta.empty()) {
    for (const auto& [k, v] : named_values(o.theta)) named[k] = v;
  }
  if (need_theta || !named.empty()) l.theta = l.file.model.bind(named);
  l.init = l.file.init.value_or(hude::InitialState{});
  if (!o.init.empty()) {
    l.init.t0 = o.t0;
    l.init.values = number_list(o.init, "--init");
  }
  if (l.init.values.empty()) {
    throw hude::PreconditionError("initial state missing: set init in the model or pass --init");
  }
  l.t_end = std::isnan(o.t_end) ? l.file.t_end : std::optional<double>(o.t_end);
  return l;
}

hude::ResidualOptions residual_options(const Options& o) {
  hude::ResidualOptions r;
  r.delta = o.delta;
  if (o.step > 0.0) r.h = o.step;
  r.method = hude::parse_method(o.integrator);
  r.scheme = hude::parse_scheme(o.scheme);
  return r;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    hude::io::write_file(o.out, text);
  }
}

void warn(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

json estimate_json(const hude::HudeModel& model, const hude::EstimationResult& r,
                   const std::string& method) {
  json theta = json::object();
  for (std::size_t i = 0; i < r.theta.size(); ++i) theta[model.param_names()[i]] = r.theta[i];
  json out;
  out["method"] = method;
  out["theta"] = theta;
  out["objective"] = r.objective;
  out["converged"] = r.converged;
  out[method == "mle" ? "tail_gaps" : "moment_gaps"] = r.gaps;
  out["residual_count"] = r.residual_count;
  out["evaluations"] = r.evaluations;
  return out;
}

json test_json(const hude::TestReport& r) {
  return {{"alpha", r.alpha},
          {"residual_count", r.residual_count},
          {"threshold", r.threshold},
          {"outliers", r.outliers},
          {"outlier_values", r.outlier_values},
          {"reject", r.reject}};
}

json ks_json(const hude::KsResult& r) {
  return {{"statistic", r.statistic},
          {"size_a", r.size_a},
          {"size_b", r.size_b},
          {"p_value", r.p_value},
          {"asymptotic_critical", r.asymptotic_critical},
          {"reject", r.reject_at_5pct}};
}

hude::ObservationSeries load_observations(const Options& o) {
  if (o.data.empty()) throw hude::PreconditionError("--data is required");
  return hude::io::read_observations_csv(fs::path(o.data));
}

int run_alpha_path(const Options& o) {
  const Loaded l = load(o, true);
  if (!l.t_end) throw hude::PreconditionError("horizon missing: set t_end in the model or pass --t-end");
  const double h = o.step > 0.0 ? o.step : hude::default_step();
  const hude::Method m = hude::parse_method(o.integrator);
  std::ostringstream out;
  if (o.alphas.empty()) {
    const hude::AlphaPath p = hude::solve_alpha_path(l.file.model, l.theta, o.alpha, l.init, *l.t_end, h, m);
    hude::write_trajectory_csv(out, p.trajectory);
  } else {
    const auto alphas = number_list(o.alphas, "--alphas");
    const hude::InverseDistribution d =
        hude::inverse_distribution(l.file.model, l.theta, l.init, *l.t_end, alphas, h, m);
    warn(d.warnings);
    hude::write_inverse_distribution_csv(out, d);
  }
  emit(o, out.str());
  return kOk;
}

int run_residuals(const Options& o) {
  const Loaded l = load(o, true);
  const hude::ResidualVector r =
      hude::compute_residuals(l.file.model, l.theta, load_observations(o), residual_options(o));
  warn(r.warnings);
  std::ostringstream out;
  hude::io::write_residuals_csv(out, r);
  emit(o, out.str());
  return kOk;
}

int run_estimate(const Options& o) {
  if (o.model.empty()) throw hude::PreconditionError("--model is required");
  hude::io::ModelFile file = hude::io::load_model_file(o.model);
  const std::size_t dims = file.model.param_names().size();
  if (dims == 0) throw hude::PreconditionError("model has no parameters to estimate");
  hude::EstimateOptions opts;
  opts.bounds = parse_bounds(o.bounds, dims);
  std::map<std::string, double> start = file.theta.value_or(std::map<std::string, double>{});
  if (!o.theta.empty()) {
    for (const auto& [k, v] : named_values(o.theta)) start[k] = v;
  }
  if (start.empty()) {
    for (std::size_t i = 0; i < dims; ++i) {
      start[file.model.param_names()[i]] = 0.5 * (opts.bounds.lower[i] + opts.bounds.upper[i]);
    }
  }
  opts.theta_init = file.model.bind(start);
  opts.moments = o.moments;
  opts.residual = residual_options(o);
  opts.minimize.seed = o.seed;
  opts.minimize.restarts = o.restarts;
  const hude::ObservationSeries series = load_observations(o);
  hude::EstimationResult r;
  if (o.method == "moments") {
    r = hude::estimate_moments(file.model, series, opts);
  } else if (o.method == "mle") {
    r = hude::estimate_mle(file.model, series, o.level, opts);
  } else {
    throw hude::PreconditionError("unknown estimation method '" + o.method + "'");
  }
  emit(o, estimate_json(file.model, r, o.method).dump(2) + "\n");
  return kOk;
}

int run_test(const Options& o) {
  if (o.data.empty()) throw hude::PreconditionError("--data is required");
  hude::ResidualVector r;
  if (o.model.empty()) {
    r = hude::io::read_residuals_csv(fs::path(o.data));
  } else {
    const Loaded l = load(o, true);
    r = hude::compute_residuals(l.file.model, l.theta, load_observations(o), residual_options(o));
    warn(r.warnings);
  }
  emit(o, test_json(hude::uncertain_hypothesis_test(r, o.level)).dump(2) + "\n");
  return kOk;
}

int run_simulate(const Options& o) {
  const Loaded l = load(o, true);
  if (o.count < 2) throw hude::PreconditionError("--count must be at least 2");
  if (!(o.dt > 0.0)) throw hude::PreconditionError("--dt must be positive");
  std::vector<double> times(static_cast<std::size_t>(o.count));
  for (std::size_t j = 0; j < times.size(); ++j) {
    times[j] = l.init.t0 + o.dt * static_cast<double>(j);
  }
  const hude::Simulation sim =
      hude::simulate_observations(l.file.model, l.theta, l.init, times, o.seed, residual_options(o));
  std::ostringstream out;
  hude::io::write_observations_csv(out, sim.series);
  emit(o, out.str());
  return kOk;
}

int run_reactor_demo(const Options& o) {
  if (o.out.empty()) throw hude::PreconditionError("--out directory is required");
  const fs::path dir = o.out;
  fs::create_directories(dir);
  namespace rx = hude::reactor;

  rx::ReactorParams params;
  const hude::HudeModel model = rx::build_reactor_hude(params);
  const hude::ObservationSeries series = rx::table3();
  hude::EstimateOptions opts;
  opts.theta_init = {0.001, 0.5};
  opts.bounds = hude::Bounds{{0.0, 0.0}, {1.0, 1.0}};
  opts.residual = residual_options(o);
  if (!(o.step > 0.0)) opts.residual.h = 1e-3;
  opts.minimize.seed = o.seed;
  opts.minimize.restarts = o.restarts;
  const hude::EstimationResult fit = hude::estimate_moments(model, series, opts);
  hude::io::write_file(dir / "estimate.json", estimate_json(model, fit, "moments").dump(2) + "\n");

  const hude::ResidualVector eps = hude::compute_residuals(model, fit.theta, series, opts.residual);
  warn(eps.warnings);
  std::ostringstream csv;
  hude::io::write_residuals_csv(csv, eps);
  hude::io::write_file(dir / "residuals.csv", csv.str());

  json tests;
  tests["fitted"] = test_json(hude::uncertain_hypothesis_test(eps, o.level));
  tests["published"] = test_json(hude::uncertain_hypothesis_test(rx::table4(), o.level));
  hude::io::write_file(dir / "test.json", tests.dump(2) + "\n");

  // Early residuals (j = 1..21) against late ones (j = 44..60).
  auto split_ks = [](const std::vector<double>& e) {
    const std::vector<double> head(e.begin(), e.begin() + 21);
    const std::vector<double> tail(e.begin() + 43, e.end());
    return ks_json(hude::two_sample_ks(head, tail));
  };
  json ks;
  ks["fitted"] = split_ks(eps.epsilon);
  ks["published"] = split_ks(rx::table4().epsilon);
  hude::io::write_file(dir / "ks.json", ks.dump(2) + "\n");

  // Psi^{-1} at t = 6 from the closed form and from the fitted full model.
  params.sigma1 = fit.theta[0];
  params.sigma2 = fit.theta[1];
  const rx::Coefficients c = rx::coefficients(params);
  const rx::ClosedForm form{c.rate_coeff, c.k_over_l * params.sigma1 - params.sigma2,
                            c.population_coeff, c.excess_over_l * params.sigma2};
  std::vector<double> alphas;
  for (int i = 41; i <= 99; ++i) alphas.push_back(i / 100.0);
  const hude::InitialState start{0.0, {series.values[0], 0.008}};
  const hude::InverseDistribution numeric = hude::inverse_distribution(
      model, fit.theta, start, 6.0, alphas, opts.residual.h, hude::Method::kRk4);
  warn(numeric.warnings);
  std::ostringstream curve;
  curve << "alpha,closed_form,numeric\n";
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    std::string closed;
    try {
      closed = hude::io::format_double(rx::closed_form_psi_inv(6.0, alphas[i], start.values[0], start.values[1], form));
    } catch (const hude::PreconditionError&) {
      closed = "";  // discriminant not positive at this alpha
    }
    curve << hude::io::format_double(alphas[i]) << ',' << closed << ','
          << hude::io::format_double(numeric.points[i].second) << '\n';
  }
  hude::io::write_file(dir / "psi_curve.csv", curve.str());

  json summary = estimate_json(model, fit, "moments");
  summary["reject"] = tests["fitted"]["reject"];
  summary["outliers"] = tests["fitted"]["outliers"];
  summary["ks_p_value"] = ks["fitted"]["p_value"];
  std::cout << summary.dump(2) << '\n';
  return kOk;
}

void report_error(const char* kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toolkit for high-order uncertain differential equations"};
  app.require_subcommand(1);
  Options o;

  auto model_opt = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("--model", o.model, "Model JSON file");
    if (required) opt->required();
  };
  auto solver_opts = [&](CLI::App* s) {
    s->add_option("--step", o.step, "Integrator step (default 1e-4 or HUDE_DEFAULT_STEP)");
    s->add_option("--integrator", o.integrator, "euler or rk4")->capture_default_str();
    s->add_option("--theta", o.theta, "Parameter values, name=value,...");
    s->add_option("--init", o.init, "Initial state x0,...,x{n-1}");
    s->add_option("--t0", o.t0, "Initial time used with --init");
    s->add_option("--out", o.out, "Output file (default stdout)");
  };
  auto residual_opts = [&](CLI::App* s) {
    s->add_option("--delta", o.delta, "Bisection tolerance")->capture_default_str();
    s->add_option("--scheme", o.scheme, "forward, central or provided")->capture_default_str();
  };

  auto* path = app.add_subcommand("alpha-path", "Solve an alpha-path or sample the inverse distribution");
  model_opt(path, true);
  solver_opts(path);
  path->add_option("--alpha", o.alpha, "Path level in (0,1)")->capture_default_str();
  path->add_option("--alphas", o.alphas, "Comma list of levels; prints Psi^-1 at the horizon");
  path->add_option("--t-end", o.t_end, "Horizon");

  auto* res = app.add_subcommand("residuals", "Residuals of observations under a model");
  model_opt(res, true);
  solver_opts(res);
  residual_opts(res);
  res->add_option("--data", o.data, "Observation CSV (t,x[,x1..])")->required();

  auto* est = app.add_subcommand("estimate", "Fit parameters by moments or tail-window likelihood");
  model_opt(est, true);
  solver_opts(est);
  residual_opts(est);
  est->add_option("--data", o.data, "Observation CSV")->required();
  est->add_option("--method", o.method, "moments or mle")->capture_default_str();
  est->add_option("--p", o.moments, "Number of moments (default: one per parameter)");
  est->add_option("--alpha", o.level, "Tail level for mle")->capture_default_str();
  est->add_option("--bounds", o.bounds, "Box lo:hi,... (default 0:1 per parameter)");
  est->add_option("--seed", o.seed, "Seed for restart points")->capture_default_str();
  est->add_option("--restarts", o.restarts, "Extra random starts")->capture_default_str();

  auto* test = app.add_subcommand("test", "Uncertain hypothesis test on residuals");
  model_opt(test, false);
  solver_opts(test);
  residual_opts(test);
  test->add_option("--data", o.data, "Residual CSV (j,epsilon), or observations with --model")->required();
  test->add_option("--alpha", o.level, "Significance level")->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "Simulate observations along random alpha-paths");
  model_opt(sim, true);
  solver_opts(sim);
  sim->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  sim->add_option("--count", o.count, "Number of observations")->required();
  sim->add_option("--dt", o.dt, "Observation spacing")->capture_default_str();

  auto* demo = app.add_subcommand("reactor-demo", "Fit, test and plot the reactor case");
  demo->add_option("--out", o.out, "Output directory")->required();
  demo->add_option("--step", o.step, "Integrator step (default 1e-3)");
  demo->add_option("--integrator", o.integrator, "euler or rk4")->capture_default_str();
  demo->add_option("--scheme", o.scheme, "Derivative scheme")->capture_default_str();
  demo->add_option("--delta", o.delta, "Bisection tolerance")->capture_default_str();
  demo->add_option("--alpha", o.level, "Significance level")->capture_default_str();
  demo->add_option("--seed", o.seed, "Seed for restart points")->capture_default_str();
  demo->add_option("--restarts", o.restarts, "Extra random starts")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return kUsage;
  }

  try {
    if (path->parsed()) return run_alpha_path(o);
    if (res->parsed()) return run_residuals(o);
    if (est->parsed()) return run_estimate(o);
    if (test->parsed()) return run_test(o);
    if (sim->parsed()) return run_simulate(o);
    if (demo->parsed()) return run_reactor_demo(o);
  } catch (const hude::IoError& e) {
    report_error("file", e.what());
    return kFileNotFound;
  } catch (const hude::ParseError& e) {
    report_error("parse", e.what());
    return kParse;
  } catch (const hude::Error& e) {
    report_error("module", e.what());
    return kModule;
  } catch (const fs::filesystem_error& e) {
    report_error("file", e.what());
    return kFileNotFound;
  }
  return kUsage;
}
