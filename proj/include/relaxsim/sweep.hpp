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

// Time sweeps of the spin-3/2 relaxation models and cross-model comparison.

#pragma once

#include <array>
#include <complex>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relaxsim/params.hpp"
#include "relaxsim/qmatrix.hpp"
#include "relaxsim/redfield.hpp"

namespace relaxsim {

/// Redfield: analytic Redfield solution. Channel: Kraus composite applied to
/// the state. Circuit: 7-qubit dilation with the environment traced out.
enum class Model { Redfield, Channel, Circuit };
enum class OutputFormat { Csv, Json };

std::string_view to_string(Model model);
Model parse_model(std::string_view name);
std::string_view to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view name);

struct SweepConfig {
  SpectralDensities<double> spectral = SpectralDensities<double>::measured();
  StateKind state = StateKind::Label00;
  double epsilon = 1.0;
  double t_max = 0.05;
  int steps = 101;
  std::vector<Model> models{Model::Redfield, Model::Channel, Model::Circuit};
  std::string output_path;  // empty: keep records in memory only
  OutputFormat output_format = OutputFormat::Csv;
  // When false the GAD probabilities are forced to zero, leaving pure GPD.
  bool dissipation = true;

  void validate() const;
  std::vector<double> times() const;
};

struct SweepRecord {
  double t = 0;
  Model model = Model::Redfield;
  std::array<std::complex<double>, 16> elements{};   // row-major rho_ij
  std::array<std::complex<double>, 16> deviation{};  // rho_ij - delta_ij / 4
  double concurrence = 0;

  static SweepRecord from_state(double t, Model model, const DensityMatrix<double>& rho);
  ComplexMatrix<double> matrix() const;
};

/// Evaluate one model at one time for the configured initial state.
DensityMatrix<double> evolve_model(const SweepConfig& cfg, Model model, double t);

/// Records ordered by (t, model). Written to cfg.output_path when it is set.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

// ---------------------------------------------------------------------------
// Record files

/// Column names of the CSV header: t, model, re/im of the upper triangle, concurrence.
std::vector<std::string> csv_header();
void write_csv(std::span<const SweepRecord> records, const std::string& path);
void write_json(std::span<const SweepRecord> records, const std::string& path);
void write_records(std::span<const SweepRecord> records, const std::string& path, OutputFormat format);
void write_csv(std::span<const SweepRecord> records, std::ostream& out);
void write_json(std::span<const SweepRecord> records, std::ostream& out);
void write_records(std::span<const SweepRecord> records, std::ostream& out, OutputFormat format);
std::vector<SweepRecord> read_csv(const std::string& path);
std::vector<SweepRecord> read_json(const std::string& path);
/// Dispatches on the extension (.json, otherwise CSV).
std::vector<SweepRecord> read_records(const std::string& path);

// ---------------------------------------------------------------------------
// Analysis

struct ElementDiscrepancy {
  std::string element;  // "rho_01", ...
  Model model_a;
  Model model_b;
  double max_abs = 0;
};

struct CompareReport {
  std::vector<ElementDiscrepancy> by_element;  // upper triangle x model pairs
  std::vector<double> times;
  std::vector<double> max_by_time;  // worst element over all pairs at each time
  double worst = 0;

  bool within(double tolerance) const { return worst <= tolerance; }
};

/// Pairwise maximum absolute discrepancy between models sharing a time grid.
CompareReport compare_report(std::span<const SweepRecord> records);

struct SuddenDeathResult {
  std::optional<double> t_star;  // first grid time with zero concurrence
  bool stays_zero = true;        // concurrence remains zero after t_star
  std::vector<double> times;
  std::vector<double> concurrence;
};

inline constexpr double kZeroConcurrence = 1e-12;

/// Scan concurrence of the first configured model on the sweep grid.
SuddenDeathResult sudden_death_scan(const SweepConfig& cfg);

/// Least-squares slope k of log|y| = log A - k t. Requires nonzero samples.
double fit_decay_rate(std::span<const double> t, std::span<const double> y);

}  // namespace relaxsim
