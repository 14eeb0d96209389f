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

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "relaxsim/sweep.hpp"

namespace relaxsim {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& path, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

// Complete a record whose upper triangle is set.
void fill_from_upper(SweepRecord& rec) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) rec.elements[4 * i + j] = std::conj(rec.elements[4 * j + i]);
  }
  for (int k = 0; k < 16; ++k) rec.deviation[k] = rec.elements[k] - (k % 5 == 0 ? 0.25 : 0.0);
}

}  // namespace

std::vector<std::string> csv_header() {
  std::vector<std::string> cols{"t", "model"};
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      const std::string ij = std::to_string(i) + std::to_string(j);
      cols.push_back("re_rho_" + ij);
      cols.push_back("im_rho_" + ij);
    }
  }
  cols.push_back("concurrence");
  return cols;
}

void write_csv(std::span<const SweepRecord> records, const std::string& path) {
  auto out = open_out(path);
  write_csv(records, out);
  if (!out) throw std::runtime_error("error while writing '" + path + "'");
}

void write_csv(std::span<const SweepRecord> records, std::ostream& out) {
  const auto header = csv_header();
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << "\n";
  for (const auto& r : records) {
    out << format_double(r.t) << "," << to_string(r.model);
    for (int i = 0; i < 4; ++i) {
      for (int j = i; j < 4; ++j) {
        const auto v = r.elements[4 * i + j];
        out << "," << format_double(v.real()) << "," << format_double(v.imag());
      }
    }
    out << "," << format_double(r.concurrence) << "\n";
  }
}

std::vector<SweepRecord> read_csv(const std::string& path) {
  auto in = open_in(path);
  const auto header = csv_header();
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  {
    std::string expected;
    for (std::size_t c = 0; c < header.size(); ++c) expected += (c ? "," : "") + header[c];
    if (line != expected) throw std::runtime_error(path + ": unexpected CSV header");
  }

  std::vector<SweepRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != header.size()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(header.size()) + " columns");
    }
    SweepRecord rec;
    rec.t = parse_double(cells[0], path, line_no);
    rec.model = parse_model(cells[1]);
    std::size_t c = 2;
    for (int i = 0; i < 4; ++i) {
      for (int j = i; j < 4; ++j) {
        const double re = parse_double(cells[c++], path, line_no);
        const double im = parse_double(cells[c++], path, line_no);
        rec.elements[4 * i + j] = {re, im};
      }
    }
    rec.concurrence = parse_double(cells[c], path, line_no);
    fill_from_upper(rec);
    records.push_back(rec);
  }
  return records;
}

void write_json(std::span<const SweepRecord> records, const std::string& path) {
  auto out = open_out(path);
  write_json(records, out);
  if (!out) throw std::runtime_error("error while writing '" + path + "'");
}

void write_json(std::span<const SweepRecord> records, std::ostream& out) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& r : records) {
    json re = json::array(), im = json::array(), dre = json::array(), dim = json::array();
    for (int i = 0; i < 4; ++i) {
      json a = json::array(), b = json::array(), c = json::array(), d = json::array();
      for (int j = 0; j < 4; ++j) {
        a.push_back(r.elements[4 * i + j].real());
        b.push_back(r.elements[4 * i + j].imag());
        c.push_back(r.deviation[4 * i + j].real());
        d.push_back(r.deviation[4 * i + j].imag());
      }
      re.push_back(a);
      im.push_back(b);
      dre.push_back(c);
      dim.push_back(d);
    }
    rows.push_back({{"t", r.t},
                    {"model", std::string(to_string(r.model))},
                    {"rho_re", re},
                    {"rho_im", im},
                    {"deviation_re", dre},
                    {"deviation_im", dim},
                    {"concurrence", r.concurrence}});
  }
  out << json{{"records", rows}}.dump(1) << "\n";
}

std::vector<SweepRecord> read_json(const std::string& path) {
  auto in = open_in(path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  std::vector<SweepRecord> records;
  try {
    for (const auto& row : doc.at("records")) {
      SweepRecord rec;
      rec.t = row.at("t").get<double>();
      rec.model = parse_model(row.at("model").get<std::string>());
      for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
          rec.elements[4 * i + j] = {row.at("rho_re").at(i).at(j).get<double>(),
                                     row.at("rho_im").at(i).at(j).get<double>()};
        }
      }
      rec.concurrence = row.at("concurrence").get<double>();
      fill_from_upper(rec);
      records.push_back(rec);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": malformed record file (" + e.what() + ")");
  }
  return records;
}

void write_records(std::span<const SweepRecord> records, const std::string& path, OutputFormat format) {
  if (format == OutputFormat::Json) {
    write_json(records, path);
  } else {
    write_csv(records, path);
  }
}

void write_records(std::span<const SweepRecord> records, std::ostream& out, OutputFormat format) {
  if (format == OutputFormat::Json) {
    write_json(records, out);
  } else {
    write_csv(records, out);
  }
}

std::vector<SweepRecord> read_records(const std::string& path) {
  const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  return json ? read_json(path) : read_csv(path);
}

}  // namespace relaxsim
