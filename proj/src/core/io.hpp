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

#ifndef QOC_CORE_IO_HPP
#define QOC_CORE_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/propagate.hpp"

namespace qoc {

/// Shortest exact decimal form that round-trips a double (17 significant
/// digits).
std::string format_g17(double value);

/// Pulse CSV: header `t_start,u_1[,u_2,...]`, one row per segment, 17
/// significant digits so amplitudes round-trip bit-exactly. t_start is the
/// segment start time k * dt (informational; T lives in the metadata record).
void save_pulse_csv(const std::filesystem::path& path, const Pulse& pulse);

/// Reads amplitudes back; `total_time` comes from the metadata record.
/// Throws std::runtime_error on malformed content.
Pulse load_pulse_csv(const std::filesystem::path& path, double total_time);

/// Sweep CSV: header `omega,error`, one row per evaluation point.
void save_sweep_csv(const std::filesystem::path& path, const std::vector<double>& omegas,
                    const std::vector<double>& errors);

/// Writes via a temporary file in the same directory plus rename, so records
/// appear atomically.
void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& value);

nlohmann::json read_json(const std::filesystem::path& path);

/// Appends one compact JSON line to an index file (creating it if needed).
void append_jsonl(const std::filesystem::path& path, const nlohmann::json& value);

}  // namespace qoc

#endif
