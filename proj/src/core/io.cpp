// Copyright 2026 The QOC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qoc {
namespace {

void throw_io(const std::filesystem::path& path, const std::string& what) {
  throw std::runtime_error(path.string() + ": " + what);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::filesystem::path& path, const std::string& text) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw_io(path, "trailing characters in number '" + text + "'");
    return value;
  } catch (const std::invalid_argument&) {
    throw_io(path, "not a number: '" + text + "'");
  } catch (const std::out_of_range&) {
    throw_io(path, "number out of range: '" + text + "'");
  }
  return 0;  // unreachable
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw_io(path, "cannot open for writing");
  return out;
}

}  // namespace

std::string format_g17(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void save_pulse_csv(const std::filesystem::path& path, const Pulse& pulse) {
  std::ofstream out = open_for_write(path);
  out << "t_start";
  for (std::size_t j = 0; j < pulse.controls(); ++j) out << ",u_" << (j + 1);
  out << "\n";
  const double dt = pulse.dt();
  for (std::size_t k = 0; k < pulse.segments(); ++k) {
    out << format_g17(static_cast<double>(k) * dt);
    for (std::size_t j = 0; j < pulse.controls(); ++j)
      out << "," << format_g17(pulse.amplitudes(static_cast<Eigen::Index>(k),
                                                static_cast<Eigen::Index>(j)));
    out << "\n";
  }
  if (!out) throw_io(path, "write failed");
}

Pulse load_pulse_csv(const std::filesystem::path& path, double total_time) {
  std::ifstream in(path);
  if (!in) throw_io(path, "cannot open");
  std::string line;
  if (!std::getline(in, line)) throw_io(path, "empty file");
  const std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "t_start")
    throw_io(path, "expected header t_start,u_1[,...]");
  const std::size_t controls = header.size() - 1;

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw_io(path, "row has " + std::to_string(fields.size()) + " fields, expected " +
                         std::to_string(header.size()));
    parse_double(path, fields[0]);  // t_start is derived, but must be numeric
    std::vector<double> row;
    for (std::size_t j = 1; j < fields.size(); ++j) row.push_back(parse_double(path, fields[j]));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw_io(path, "no segments");

  Eigen::MatrixXd amps(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(controls));
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (std::size_t j = 0; j < controls; ++j)
      amps(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = rows[k][j];
  return make_pulse(total_time, std::move(amps));
}

void save_sweep_csv(const std::filesystem::path& path, const std::vector<double>& omegas,
                    const std::vector<double>& errors) {
  if (omegas.size() != errors.size())
    throw std::invalid_argument("save_sweep_csv: omega/error size mismatch");
  std::ofstream out = open_for_write(path);
  out << "omega,error\n";
  for (std::size_t i = 0; i < omegas.size(); ++i)
    out << format_g17(omegas[i]) << "," << format_g17(errors[i]) << "\n";
  if (!out) throw_io(path, "write failed");
}

void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& value) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out = open_for_write(tmp);
    out << value.dump(2) << "\n";
    if (!out) throw_io(tmp, "write failed");
  }
  std::filesystem::rename(tmp, path);
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_io(path, "cannot open");
  nlohmann::json value;
  try {
    in >> value;
  } catch (const nlohmann::json::parse_error& err) {
    throw_io(path, err.what());
  }
  return value;
}

void append_jsonl(const std::filesystem::path& path, const nlohmann::json& value) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw_io(path, "cannot open for append");
  out << value.dump() << "\n";
  if (!out) throw_io(path, "append failed");
}

}  // namespace qoc
