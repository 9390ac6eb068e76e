// SPDX-License-Identifier: Apache-2.0
//
// lowadc - uplink MIMO detection behind low-resolution ADCs
// Copyright (C) 2026 The lowadc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "lowadc/mc.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lowadc
{

inline constexpr std::string_view tool_name = "lowadc";
inline constexpr std::string_view tool_version = "0.1.0";

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

/*!
 * Experiment presets:
 *   fig5 - M=1024, 1-bit, fixed angle pi/12, 30 dB cumulative, QAM64
 *   fig6 - M=1024, 1-bit, random angle, QAM64, -10..45 dB
 *   fig7 - M=32, 3-bit, automatic gain, random angle, QAM64, -10..45 dB
 * Throws std::invalid_argument for an unknown name.
 */
SimConfig preset_config(std::string_view name);

nlohmann::json config_to_json(const SimConfig& config);

// Inverse of config_to_json. Missing keys keep SimConfig defaults; unknown
// keys and ill-typed values throw std::invalid_argument.
SimConfig config_from_json(const nlohmann::json& j);

// Header: receiver,snr_db,trials,bit_errors,ber,ci_low,ci_high
void write_ber_csv(std::ostream& os, std::span<const BerRecord> records);

nlohmann::json record_to_json(const BerRecord& record);

// Config echo, tool version, timestamp, seed and every record.
nlohmann::json make_manifest(const SimConfig& config, std::span<const BerRecord> records,
                             const std::string& timestamp);

// Reads the config echoed in a manifest.
SimConfig config_from_manifest(const nlohmann::json& manifest);

struct EtfGrid
{
    int bits = 1;
    double delta = 2.0;
    std::vector<double> sigma2 = {1.0};
    double s_min = -5.0;
    double s_max = 5.0;
    int steps = 201; // grid points, endpoints included

    void validate() const;
};

// Header: s,sigma2,F(s). One block of rows per sigma2, in the given order.
void write_etf_csv(std::ostream& os, const EtfGrid& grid);

// "# predicted" block (symbol,re,im) followed by "# realizations" block.
void write_constellation_csv(std::ostream& os, const ConstellationStudy& study);

struct ComplexityReport
{
    std::int64_t m_antennas;
    std::int64_t k_users;
    std::int64_t n_qam;
    std::uint64_t naive;
    std::uint64_t bruteforce;
    double ratio() const noexcept { return static_cast<double>(bruteforce) / static_cast<double>(naive); }
};

ComplexityReport complexity_report(std::int64_t m_antennas, std::int64_t k_users, std::int64_t n_qam);
void write_complexity_report(std::ostream& os, const ComplexityReport& report);

} // namespace lowadc
