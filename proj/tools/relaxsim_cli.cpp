// Copyright 2026 The relaxsim Authors
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

// relaxsim: spin-3/2 quadrupolar relaxation sweeps and channel/circuit dumps.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 tolerance
// violation reported by `compare`.

#include <cstdio>
#include <algorithm>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_config.hpp"
#include "relaxsim/channels.hpp"
#include "relaxsim/circuit.hpp"
#include "relaxsim/redfield.hpp"
#include "relaxsim/sweep.hpp"

namespace {

using namespace relaxsim;

constexpr int kExitUsage = 1;
constexpr int kExitTolerance = 2;

struct SpectralFlags {
  SpectralDensities<double> sd = SpectralDensities<double>::measured();

  void attach(CLI::App* app) {
    app->add_option("--j0", sd.j0, "spectral density J0 [s]")->capture_default_str();
    app->add_option("--j1", sd.j1, "spectral density J1 [s]")->capture_default_str();
    app->add_option("--j2", sd.j2, "spectral density J2 [s]")->capture_default_str();
    app->add_option("--c", sd.c, "quadrupolar coupling coefficient C [1/s^2]")->capture_default_str();
  }
};

// "key=value" pairs, comma separated on the command line.
std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw DomainError("--params: expected key=value, got '" + item + "'");
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) throw DomainError("--params: bad number in '" + item + "'");
    out[item.substr(0, eq)] = v;
  }
  return out;
}

std::optional<double> lookup(const std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  return it == params.end() ? std::nullopt : std::optional<double>(it->second);
}

double require(const std::map<std::string, double>& params, const std::string& key) {
  auto v = lookup(params, key);
  if (!v) throw DomainError("--params: missing '" + key + "'");
  return *v;
}

void check_known(const std::map<std::string, double>& params, const std::vector<std::string>& known) {
  for (const auto& [key, value] : params) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw DomainError("--params: unknown key '" + key + "'");
    }
  }
}

// Relaxation parameters from either explicit probabilities or a time t with
// the measured spectral densities.
RelaxationParams<double> relaxation_params(const std::map<std::string, double>& params,
                                           const SpectralDensities<double>& sd) {
  RelaxationParams<double> rp;
  if (auto t = lookup(params, "t")) {
    rp = channel_params_from_spectral(sd, lookup(params, "p_a").value_or(0.5),
                                      lookup(params, "p_b").value_or(0.5), *t);
  }
  rp.gamma_a = lookup(params, "gamma_a").value_or(rp.gamma_a);
  rp.gamma_b = lookup(params, "gamma_b").value_or(rp.gamma_b);
  rp.lambda = lookup(params, "lambda").value_or(rp.lambda);
  rp.p_a = lookup(params, "p_a").value_or(rp.p_a);
  rp.p_b = lookup(params, "p_b").value_or(rp.p_b);
  rp.validate();
  return rp;
}

void print_matrix(std::ostream& os, const ComplexMatrix<double>& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    os << "  ";
    for (Index j = 0; j < m.cols(); ++j) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%+.6f%+.6fi ", m(i, j).real(), m(i, j).imag());
      os << buf;
    }
    os << "\n";
  }
}

// ---------------------------------------------------------------------------

int run_sweep_cmd(SweepConfig cfg, const std::string& state, const std::vector<std::string>& models,
                  const std::string& format) {
  cfg.state = parse_state_kind(state);
  cfg.models.clear();
  for (const auto& m : models) cfg.models.push_back(parse_model(m));
  cfg.output_format = parse_output_format(format);
  const auto records = run_sweep(cfg);
  if (cfg.output_path.empty()) {
    write_records(records, std::cout, cfg.output_format);
  } else {
    std::cerr << "wrote " << records.size() << " records to " << cfg.output_path << "\n";
  }
  return 0;
}

int run_compare_cmd(const std::vector<std::string>& inputs, double tolerance) {
  std::vector<SweepRecord> records;
  for (const auto& path : inputs) {
    auto more = read_records(path);
    records.insert(records.end(), more.begin(), more.end());
  }
  const auto report = compare_report(records);
  std::cout << "element,model_a,model_b,max_abs\n";
  for (const auto& d : report.by_element) {
    std::cout << d.element << "," << to_string(d.model_a) << "," << to_string(d.model_b) << ","
              << std::setprecision(6) << std::scientific << d.max_abs << "\n";
  }
  std::cout << "\nt,max_abs\n";
  for (std::size_t k = 0; k < report.times.size(); ++k) {
    std::cout << std::setprecision(6) << std::scientific << report.times[k] << "," << report.max_by_time[k]
              << "\n";
  }
  const bool ok = report.within(tolerance);
  std::cout << "\nworst " << report.worst << (ok ? " <= " : " > ") << "tolerance " << tolerance
            << (ok ? " PASS" : " FAIL") << "\n";
  return ok ? 0 : kExitTolerance;
}

int run_sudden_death_cmd(SweepConfig cfg, bool gpd_only) {
  cfg.state = StateKind::Bell;
  cfg.epsilon = 1.0;
  cfg.models = {Model::Channel};
  cfg.dissipation = !gpd_only;
  const auto result = sudden_death_scan(cfg);
  if (!result.t_star) {
    std::cout << "none in range (t_max = " << cfg.t_max << " s)\n";
  } else {
    std::cout << std::setprecision(10) << "t* = " << *result.t_star << " s"
              << (result.stays_zero ? "" : " (concurrence revives later in range)") << "\n";
  }
  return 0;
}

int run_kraus_dump_cmd(const std::string& name, const std::vector<std::string>& raw,
                       const SpectralDensities<double>& sd) {
  const auto params = parse_params(raw);
  KrausChannel<double> ch = KrausChannel<double>::identity(2);
  if (name == "gad") {
    check_known(params, {"gamma", "p"});
    ch = gad(require(params, "gamma"), lookup(params, "p").value_or(0.5));
  } else if (name == "ad") {
    check_known(params, {"gamma"});
    ch = gad(require(params, "gamma"), 1.0);
  } else if (name == "pd") {
    check_known(params, {"lambda"});
    ch = pd(require(params, "lambda"));
  } else if (name == "gpd") {
    check_known(params, {"lambda"});
    ch = gpd(require(params, "lambda"));
  } else if (name == "quadrupolar") {
    check_known(params, {"t", "gamma_a", "gamma_b", "lambda", "p_a", "p_b"});
    ch = quadrupolar_channel(relaxation_params(params, sd));
  } else {
    throw DomainError("unknown channel '" + name + "' (expected ad, gad, pd, gpd, quadrupolar)");
  }
  std::cout << name << ": " << ch.size() << " Kraus operators of dimension " << ch.dim() << "\n";
  for (std::size_t k = 0; k < ch.size(); ++k) {
    std::cout << "E" << k << " =\n";
    print_matrix(std::cout, ch[k]);
  }
  std::cout << "completeness error: " << std::scientific << std::setprecision(3) << ch.completeness_error()
            << "\nChoi eigenvalues:";
  const auto ev = eigenvalues_hermitian(choi(ch).mat);
  std::cout << std::fixed << std::setprecision(10);
  for (Index i = 0; i < ev.size(); ++i) std::cout << " " << ev(i);
  std::cout << "\n";
  return 0;
}

int run_circuit_dump_cmd(const std::string& kind_name, const std::vector<std::string>& raw,
                         const SpectralDensities<double>& sd) {
  const CircuitKind kind = parse_circuit_kind(kind_name);
  const auto params = parse_params(raw);
  check_known(params, {"alpha", "beta", "theta", "alpha_a", "beta_a", "alpha_b", "beta_b", "p", "p_a",
                       "p_b", "gamma", "lambda", "gamma_a", "gamma_b", "t"});

  CircuitAngles<double> angles;
  if (kind == CircuitKind::QUADRUPOLAR &&
      (lookup(params, "t") || lookup(params, "gamma_a") || lookup(params, "gamma_b") || lookup(params, "lambda"))) {
    angles = quadrupolar_angles(relaxation_params(params, sd));
  }
  if (auto g = lookup(params, "gamma")) {
    angles.alpha = damping_angle(*g);
    angles.beta = excitation_angle(*g);
  }
  if (auto l = lookup(params, "lambda")) angles.theta = dephasing_angle(*l);
  auto set = [&](std::optional<double>& field, const char* key) {
    if (auto v = lookup(params, key)) field = v;
  };
  set(angles.alpha, "alpha");
  set(angles.beta, "beta");
  set(angles.theta, "theta");
  set(angles.alpha_a, "alpha_a");
  set(angles.beta_a, "beta_a");
  set(angles.alpha_b, "alpha_b");
  set(angles.beta_b, "beta_b");
  set(angles.p, "p");
  set(angles.p_a, "p_a");
  set(angles.p_b, "p_b");

  const auto built = build_circuit(kind, angles);
  std::cout << dump(built.circuit);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-3/2 quadrupolar relaxation as a quantum computation"};
  app.require_subcommand(1);
  app.fallthrough(false);
  std::map<CLI::App*, std::string> config_paths;
  auto with_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_paths[sub], "TOML or JSON file with flag values; flags override it");
  };

  // sweep
  SweepConfig sweep_cfg;
  SpectralFlags sweep_sd;
  std::string sweep_state = "label00", sweep_format = "csv";
  std::vector<std::string> sweep_models{"redfield", "channel", "circuit"};
  auto* sweep = app.add_subcommand("sweep", "time sweep of the relaxation models");
  with_config(sweep);
  sweep_sd.attach(sweep);
  sweep->add_option("--state", sweep_state, "label00|label01|label10|label11|uniform|bell")->capture_default_str();
  sweep->add_option("--epsilon", sweep_cfg.epsilon, "pseudo-pure polarization in (0,1]")->capture_default_str();
  sweep->add_option("--t-max", sweep_cfg.t_max, "sweep end time [s]")->capture_default_str();
  sweep->add_option("--steps", sweep_cfg.steps, "number of time points (>= 2)")->capture_default_str();
  sweep->add_option("--models", sweep_models, "subset of redfield,channel,circuit")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--out", sweep_cfg.output_path, "output file (stdout when omitted)");
  sweep->add_option("--format", sweep_format, "csv|json")->capture_default_str();

  // compare
  std::vector<std::string> compare_inputs;
  double compare_tol = 1e-9;
  auto* compare = app.add_subcommand("compare", "cross-model discrepancy report");
  with_config(compare);
  compare->add_option("--in", compare_inputs, "record files (CSV or .json)");
  compare->add_option("--tolerance", compare_tol, "maximum allowed discrepancy")->capture_default_str();

  // sudden-death
  SweepConfig death_cfg;
  death_cfg.t_max = 0.1;
  death_cfg.steps = 10001;
  SpectralFlags death_sd;
  bool gpd_only = false;
  auto* death = app.add_subcommand("sudden-death", "first time the Bell-state concurrence reaches zero");
  with_config(death);
  death_sd.attach(death);
  death->add_option("--t-max", death_cfg.t_max, "scan end time [s]")->capture_default_str();
  death->add_option("--steps", death_cfg.steps, "number of grid points")->capture_default_str();
  death->add_flag("--gpd-only", gpd_only, "disable both GAD channels");

  // kraus-dump
  std::string channel_name;
  std::vector<std::string> kraus_params;
  SpectralFlags kraus_sd;
  auto* kraus = app.add_subcommand("kraus-dump", "print Kraus operators and Choi eigenvalues");
  with_config(kraus);
  kraus_sd.attach(kraus);
  kraus->add_option("--channel", channel_name, "ad|gad|pd|gpd|quadrupolar");
  kraus->add_option("--params", kraus_params, "key=value list, e.g. gamma=0.3,p=0.5")->delimiter(',');

  // circuit-dump
  std::string circuit_kind;
  std::vector<std::string> circuit_params;
  SpectralFlags circuit_sd;
  auto* circ = app.add_subcommand("circuit-dump", "print a dilation circuit gate by gate");
  with_config(circ);
  circuit_sd.attach(circ);
  circ->add_option("--kind", circuit_kind, "AD|EXCITE|GAD|PD|BLOCH|GPD|QUADRUPOLAR");
  circ->add_option("--params", circuit_params, "angles or probabilities, e.g. alpha=1.2,beta=1.9,p=0.5")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
    for (auto& [sub, path] : config_paths) {
      if (*sub && !path.empty()) relaxsim::cli::apply_config_file(*sub, path);
    }
    auto require = [](CLI::App* sub, const char* flag) {
      if (*sub && sub->get_option(flag)->count() == 0) {
        throw CLI::RequiredError(flag);
      }
    };
    require(compare, "--in");
    require(kraus, "--channel");
    require(circ, "--kind");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sweep) {
      sweep_cfg.spectral = sweep_sd.sd;
      return run_sweep_cmd(sweep_cfg, sweep_state, sweep_models, sweep_format);
    }
    if (*compare) return run_compare_cmd(compare_inputs, compare_tol);
    if (*death) {
      death_cfg.spectral = death_sd.sd;
      return run_sudden_death_cmd(death_cfg, gpd_only);
    }
    if (*kraus) return run_kraus_dump_cmd(channel_name, kraus_params, kraus_sd.sd);
    if (*circ) return run_circuit_dump_cmd(circuit_kind, circuit_params, circuit_sd.sd);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
