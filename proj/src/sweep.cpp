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

#include "relaxsim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "relaxsim/channels.hpp"
#include "relaxsim/circuit.hpp"

namespace relaxsim {

std::string_view to_string(Model model) {
  switch (model) {
    case Model::Redfield: return "redfield";
    case Model::Channel: return "channel";
    case Model::Circuit: return "circuit";
  }
  return "?";
}

Model parse_model(std::string_view name) {
  for (auto m : {Model::Redfield, Model::Channel, Model::Circuit}) {
    if (name == to_string(m)) return m;
  }
  throw DomainError("unknown model '" + std::string(name) + "'");
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "json";
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw DomainError("unknown output format '" + std::string(name) + "'");
}

void SweepConfig::validate() const {
  spectral.validate();
  if (!(epsilon > 0 && epsilon <= 1)) throw DomainError("sweep: epsilon must lie in (0,1]");
  if (!(t_max > 0)) throw DomainError("sweep: t_max must be positive");
  if (steps < 2) throw DomainError("sweep: steps must be at least 2");
  if (models.empty()) throw DomainError("sweep: no models selected");
  if (!dissipation && std::find(models.begin(), models.end(), Model::Redfield) != models.end()) {
    throw DomainError("sweep: the Redfield model cannot run with dissipation disabled");
  }
}

std::vector<double> SweepConfig::times() const {
  std::vector<double> t(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) t[i] = t_max * i / (steps - 1);
  return t;
}

SweepRecord SweepRecord::from_state(double t, Model model, const DensityMatrix<double>& rho) {
  if (rho.dim() != 4) throw DimensionError("SweepRecord: expected a 4x4 density matrix");
  SweepRecord rec;
  rec.t = t;
  rec.model = model;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      rec.elements[4 * i + j] = rho(i, j);
      rec.deviation[4 * i + j] = rho(i, j) - (i == j ? 0.25 : 0.0);
    }
  }
  rec.concurrence = relaxsim::concurrence(rho);
  return rec;
}

ComplexMatrix<double> SweepRecord::matrix() const {
  ComplexMatrix<double> m(4, 4);
  for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = elements[i];
  return m;
}

namespace {

RelaxationParams<double> params_at(const SweepConfig& cfg, double t) {
  auto params = channel_params_from_spectral(cfg.spectral, 0.5, 0.5, t);
  if (!cfg.dissipation) params.gamma_a = params.gamma_b = 0;
  return params;
}

}  // namespace

DensityMatrix<double> evolve_model(const SweepConfig& cfg, Model model, double t) {
  const auto rho0 = make_state(cfg.state, cfg.epsilon);
  switch (model) {
    case Model::Redfield:
      return redfield_evolve(rho0, DensityMatrix<double>::maximally_mixed(4), cfg.spectral, t);
    case Model::Channel:
      return apply_channel(quadrupolar_channel(params_at(cfg, t)), rho0);
    case Model::Circuit: {
      const auto built = build_circuit(CircuitKind::QUADRUPOLAR, quadrupolar_angles(params_at(cfg, t)));
      return evolve_open(built.circuit, rho0, built.env);
    }
  }
  throw DomainError("evolve_model: unknown model");
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<SweepRecord> records;
  for (double t : cfg.times()) {
    for (Model m : cfg.models) records.push_back(SweepRecord::from_state(t, m, evolve_model(cfg, m, t)));
  }
  if (!cfg.output_path.empty()) write_records(records, cfg.output_path, cfg.output_format);
  return records;
}

CompareReport compare_report(std::span<const SweepRecord> records) {
  std::vector<Model> order;
  std::map<Model, std::vector<const SweepRecord*>> by_model;
  for (const auto& r : records) {
    if (!by_model.count(r.model)) order.push_back(r.model);
    by_model[r.model].push_back(&r);
  }
  if (order.size() < 2) throw DomainError("compare: need records from at least two models");

  for (auto& [model, rows] : by_model) {
    std::stable_sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->t < b->t; });
  }
  const auto& ref = by_model[order.front()];
  for (Model m : order) {
    const auto& rows = by_model[m];
    bool same = rows.size() == ref.size();
    for (std::size_t i = 0; same && i < rows.size(); ++i) {
      same = std::abs(rows[i]->t - ref[i]->t) <= 1e-12 * std::max(1.0, std::abs(ref[i]->t));
    }
    if (!same) {
      throw DomainError("compare: models '" + std::string(to_string(order.front())) + "' and '" +
                        std::string(to_string(m)) + "' use different time grids");
    }
  }

  CompareReport report;
  for (const auto* r : ref) report.times.push_back(r->t);
  report.max_by_time.assign(ref.size(), 0.0);
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const auto& ra = by_model[order[a]];
      const auto& rb = by_model[order[b]];
      for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
          ElementDiscrepancy d{"rho_" + std::to_string(i) + std::to_string(j), order[a], order[b], 0.0};
          for (std::size_t k = 0; k < ra.size(); ++k) {
            const double diff = std::abs(ra[k]->elements[4 * i + j] - rb[k]->elements[4 * i + j]);
            d.max_abs = std::max(d.max_abs, diff);
            report.max_by_time[k] = std::max(report.max_by_time[k], diff);
          }
          report.worst = std::max(report.worst, d.max_abs);
          report.by_element.push_back(std::move(d));
        }
      }
    }
  }
  return report;
}

SuddenDeathResult sudden_death_scan(const SweepConfig& cfg) {
  cfg.validate();
  SuddenDeathResult result;
  result.times = cfg.times();
  const Model model = cfg.models.front();
  for (double t : result.times) result.concurrence.push_back(concurrence(evolve_model(cfg, model, t)));
  for (std::size_t i = 0; i < result.times.size(); ++i) {
    if (result.concurrence[i] <= kZeroConcurrence) {
      result.t_star = result.times[i];
      for (std::size_t k = i; k < result.times.size(); ++k) {
        if (result.concurrence[k] > kZeroConcurrence) result.stays_zero = false;
      }
      break;
    }
  }
  return result;
}

double fit_decay_rate(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size() || t.size() < 2) throw DimensionError("fit_decay_rate: need >= 2 paired samples");
  std::vector<double> logs(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) throw DomainError("fit_decay_rate: zero sample");
    logs[i] = std::log(std::abs(y[i]));
  }
  const auto n = static_cast<double>(t.size());
  double t_mean = 0, l_mean = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    t_mean += t[i] / n;
    l_mean += logs[i] / n;
  }
  double stl = 0, stt = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stl += (t[i] - t_mean) * (logs[i] - l_mean);
    stt += (t[i] - t_mean) * (t[i] - t_mean);
  }
  const double slope = stl / stt;
  return -slope;
}

}  // namespace relaxsim
