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

#include "lowadc/report.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <set>
#include <stdexcept>
#include <system_error>

namespace lowadc
{

namespace
{

using nlohmann::json;

std::vector<double> snr_grid(double first, double last, double step)
{
    std::vector<double> out;
    for (int i = 0; first + i * step <= last + 1e-9; ++i)
        out.push_back(first + i * step);
    return out;
}

template <typename T>
T get_as(const json& j, const char* key)
{
    try
    {
        return j.at(key).get<T>();
    }
    catch (const json::exception& e)
    {
        throw std::invalid_argument(std::string("config key '") + key + "': " + e.what());
    }
}

json channel_mode_to_json(const ChannelMode& mode)
{
    switch (mode.kind)
    {
    case ChannelMode::Kind::los_random_angle:
        return "los_random_angle";
    case ChannelMode::Kind::iid_gaussian:
        return "iid_gaussian";
    case ChannelMode::Kind::fixed_angle:
        return json{{"fixed_angle", mode.angle}};
    }
    return nullptr;
}

ChannelMode channel_mode_from_json(const json& j)
{
    if (j.is_string())
    {
        const auto name = j.get<std::string>();
        if (name == "los_random_angle")
            return ChannelMode::random_angle();
        if (name == "iid_gaussian")
            return ChannelMode::iid();
    }
    else if (j.is_object() && j.size() == 1 && j.contains("fixed_angle") && j.at("fixed_angle").is_number())
    {
        return ChannelMode::fixed(j.at("fixed_angle").get<double>());
    }
    throw std::invalid_argument("channel_mode must be \"los_random_angle\", \"iid_gaussian\" or {\"fixed_angle\": radians}");
}

} // namespace

std::string format_double(double v)
{
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, end);
}

SimConfig preset_config(std::string_view name)
{
    SimConfig c;
    c.qam_order = 64;
    c.k_users = 1;
    c.delta = 2.0;
    c.target_bit_errors = 200;
    c.base_seed = 20190419;
    if (name == "fig5")
    {
        c.m_antennas = 1024;
        c.quantizer_bits = 1;
        c.gain = 1.0;
        c.channel_mode = ChannelMode::fixed(std::numbers::pi / 12.0);
        c.snr_points_db = {30.0};
        c.max_trials = 20000;
        c.receivers = {Receiver::naive_ml, Receiver::bruteforce_ml, Receiver::equivalent_ml};
        return c;
    }
    if (name == "fig6")
    {
        c.m_antennas = 1024;
        c.quantizer_bits = 1;
        c.gain = 1.0;
        c.channel_mode = ChannelMode::random_angle();
        c.snr_points_db = snr_grid(-10.0, 45.0, 5.0);
        c.max_trials = 20000;
        c.receivers = {Receiver::ideal_ml, Receiver::naive_ml, Receiver::bruteforce_ml, Receiver::equivalent_ml};
        return c;
    }
    if (name == "fig7")
    {
        c.m_antennas = 32;
        c.quantizer_bits = 3;
        c.gain = std::nullopt;
        c.agc_rms_fraction = std::numbers::sqrt2 / 2.0;
        c.channel_mode = ChannelMode::random_angle();
        c.snr_points_db = snr_grid(-10.0, 45.0, 5.0);
        c.max_trials = 20000;
        c.receivers = {Receiver::ideal_ml, Receiver::naive_ml, Receiver::bruteforce_ml, Receiver::equivalent_ml};
        return c;
    }
    throw std::invalid_argument("unknown preset '" + std::string(name) + "' (expected fig5, fig6 or fig7)");
}

nlohmann::json config_to_json(const SimConfig& config)
{
    json receivers = json::array();
    for (auto r : config.receivers)
        receivers.push_back(std::string(to_string(r)));
    json j;
    j["m_antennas"] = config.m_antennas;
    j["k_users"] = config.k_users;
    j["qam_order"] = config.qam_order;
    j["quantizer_bits"] = config.quantizer_bits ? json(*config.quantizer_bits) : json("ideal");
    j["delta"] = config.delta;
    j["gain"] = config.gain ? json(*config.gain) : json("auto");
    j["agc_rms_fraction"] = config.agc_rms_fraction;
    j["snr_points_db"] = config.snr_points_db;
    j["max_trials"] = config.max_trials;
    j["target_bit_errors"] = config.target_bit_errors;
    j["base_seed"] = config.base_seed;
    j["channel_mode"] = channel_mode_to_json(config.channel_mode);
    j["receivers"] = receivers;
    j["batch_trials"] = config.batch_trials;
    j["threads"] = config.threads;
    j["angle_cache_bins"] = config.angle_cache_bins;
    j["max_candidates"] = config.max_candidates;
    return j;
}

SimConfig config_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw std::invalid_argument("config must be a JSON object");
    static const std::set<std::string> known = {
        "m_antennas", "k_users",     "qam_order",        "quantizer_bits", "delta",        "gain",
        "agc_rms_fraction", "snr_points_db", "max_trials", "target_bit_errors", "base_seed", "channel_mode",
        "receivers",  "batch_trials", "threads",         "angle_cache_bins", "max_candidates",
    };
    for (const auto& item : j.items())
        if (!known.contains(item.key()))
            throw std::invalid_argument("unknown config key '" + item.key() + "'");

    SimConfig c;
    if (j.contains("m_antennas"))
        c.m_antennas = get_as<int>(j, "m_antennas");
    if (j.contains("k_users"))
        c.k_users = get_as<int>(j, "k_users");
    if (j.contains("qam_order"))
        c.qam_order = get_as<int>(j, "qam_order");
    if (j.contains("quantizer_bits"))
    {
        const auto& v = j.at("quantizer_bits");
        if (v.is_string() && v.get<std::string>() == "ideal")
            c.quantizer_bits = std::nullopt;
        else
            c.quantizer_bits = get_as<int>(j, "quantizer_bits");
    }
    if (j.contains("delta"))
        c.delta = get_as<double>(j, "delta");
    if (j.contains("gain"))
    {
        const auto& v = j.at("gain");
        if (v.is_string() && v.get<std::string>() == "auto")
            c.gain = std::nullopt;
        else
            c.gain = get_as<double>(j, "gain");
    }
    if (j.contains("agc_rms_fraction"))
        c.agc_rms_fraction = get_as<double>(j, "agc_rms_fraction");
    if (j.contains("snr_points_db"))
        c.snr_points_db = get_as<std::vector<double>>(j, "snr_points_db");
    if (j.contains("max_trials"))
        c.max_trials = get_as<std::int64_t>(j, "max_trials");
    if (j.contains("target_bit_errors"))
        c.target_bit_errors = get_as<std::int64_t>(j, "target_bit_errors");
    if (j.contains("base_seed"))
        c.base_seed = get_as<std::uint64_t>(j, "base_seed");
    if (j.contains("channel_mode"))
        c.channel_mode = channel_mode_from_json(j.at("channel_mode"));
    if (j.contains("receivers"))
    {
        c.receivers.clear();
        for (const auto& name : get_as<std::vector<std::string>>(j, "receivers"))
            c.receivers.push_back(parse_receiver(name));
    }
    if (j.contains("batch_trials"))
        c.batch_trials = get_as<int>(j, "batch_trials");
    if (j.contains("threads"))
        c.threads = get_as<int>(j, "threads");
    if (j.contains("angle_cache_bins"))
        c.angle_cache_bins = get_as<int>(j, "angle_cache_bins");
    if (j.contains("max_candidates"))
        c.max_candidates = get_as<std::size_t>(j, "max_candidates");
    return c;
}

void write_ber_csv(std::ostream& os, std::span<const BerRecord> records)
{
    os << "receiver,snr_db,trials,bit_errors,ber,ci_low,ci_high\n";
    for (const auto& r : records)
        os << to_string(r.receiver) << ',' << format_double(r.snr_db) << ',' << r.trials << ',' << r.bit_errors
           << ',' << format_double(r.ber) << ',' << format_double(r.ci_low) << ',' << format_double(r.ci_high) << '\n';
}

nlohmann::json record_to_json(const BerRecord& r)
{
    return json{
        {"receiver", std::string(to_string(r.receiver))},
        {"snr_db", r.snr_db},
        {"trials", r.trials},
        {"bits", r.bits},
        {"bit_errors", r.bit_errors},
        {"symbols", r.symbols},
        {"symbol_errors", r.symbol_errors},
        {"ber", r.ber},
        {"ser", r.ser},
        {"ci_low", r.ci_low},
        {"ci_high", r.ci_high},
    };
}

nlohmann::json make_manifest(const SimConfig& config, std::span<const BerRecord> records,
                             const std::string& timestamp)
{
    json recs = json::array();
    for (const auto& r : records)
        recs.push_back(record_to_json(r));
    return json{
        {"tool", std::string(tool_name)},
        {"version", std::string(tool_version)},
        {"timestamp", timestamp},
        {"base_seed", config.base_seed},
        {"config", config_to_json(config)},
        {"records", recs},
    };
}

SimConfig config_from_manifest(const nlohmann::json& manifest)
{
    if (!manifest.is_object() || !manifest.contains("config"))
        throw std::invalid_argument("manifest has no config section");
    return config_from_json(manifest.at("config"));
}

void EtfGrid::validate() const
{
    QuantizerSpec check(bits, delta);
    if (sigma2.empty())
        throw std::invalid_argument("etf: at least one sigma2 value is required");
    for (double s2 : sigma2)
        if (!(s2 >= 0.0) || !std::isfinite(s2))
            throw std::invalid_argument("etf: sigma2 values must be non-negative and finite");
    if (!std::isfinite(s_min) || !std::isfinite(s_max) || !(s_min < s_max))
        throw std::invalid_argument("etf: need finite s_min < s_max");
    if (steps < 2)
        throw std::invalid_argument("etf: need at least 2 grid points");
}

void write_etf_csv(std::ostream& os, const EtfGrid& grid)
{
    grid.validate();
    const QuantizerSpec spec(grid.bits, grid.delta);
    os << "s,sigma2,F(s)\n";
    for (double s2 : grid.sigma2)
    {
        for (int i = 0; i < grid.steps; ++i)
        {
            const double s = grid.s_min + (grid.s_max - grid.s_min) * i / (grid.steps - 1);
            os << format_double(s) << ',' << format_double(s2) << ',' << format_double(etf_real(spec, s2, s)) << '\n';
        }
    }
}

void write_constellation_csv(std::ostream& os, const ConstellationStudy& study)
{
    os << "# predicted\nsymbol,re,im\n";
    for (std::size_t i = 0; i < study.predicted.size(); ++i)
        os << i << ',' << format_double(study.predicted[i].real()) << ',' << format_double(study.predicted[i].imag())
           << '\n';
    os << "\n# realizations\nsymbol,re,im\n";
    for (std::size_t i = 0; i < study.realizations.size(); ++i)
        os << study.realization_symbol[i] << ',' << format_double(study.realizations[i].real()) << ','
           << format_double(study.realizations[i].imag()) << '\n';
}

ComplexityReport complexity_report(std::int64_t m_antennas, std::int64_t k_users, std::int64_t n_qam)
{
    return ComplexityReport{m_antennas, k_users, n_qam, complexity_naive(m_antennas, k_users, n_qam),
                            complexity_bruteforce(m_antennas, k_users, n_qam)};
}

void write_complexity_report(std::ostream& os, const ComplexityReport& report)
{
    os << "M=" << report.m_antennas << " K=" << report.k_users << " N_QAM=" << report.n_qam << '\n'
       << "naive_ml (MRC + quadratic search): " << report.naive << " complex multiplies\n"
       << "bruteforce_ml (likelihood search): " << report.bruteforce << " complex multiplies\n"
       << "ratio: " << format_double(report.ratio()) << '\n';
}

} // namespace lowadc
