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

// lowadc command-line front end: sweep | etf | constellation | complexity.
// Exit codes: 0 success, 2 usage error, 1 runtime error.

#include "lowadc/errors.hpp"
#include "lowadc/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace
{

using namespace lowadc;

constexpr int exit_usage = 2;
constexpr int exit_runtime = 1;

// Marks errors in user-supplied configuration (mapped to exit code 2).
class usage_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

SimConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw usage_error("cannot open config file '" + path + "'");
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception& e)
    {
        throw usage_error("config file '" + path + "' is not valid JSON: " + e.what());
    }
    // A manifest written by `sweep` works as a config too.
    if (j.is_object() && j.contains("config") && j.contains("records"))
        return config_from_manifest(j);
    return config_from_json(j);
}

// Writes through `fn` to `path`, or to stdout when path is empty.
template <typename Fn>
void emit(const std::string& path, Fn&& fn)
{
    if (path.empty())
    {
        fn(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    fn(out);
}

struct SweepOptions
{
    std::string config_path;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> max_trials;
    std::optional<std::int64_t> target_errors;
    std::optional<int> threads;
    std::optional<int> antennas;
    std::vector<double> snr;
    std::string out;
    bool quiet = false;
};

SimConfig resolve_config(const SweepOptions& o, const char* default_preset)
{
    if (!o.config_path.empty() && !o.preset.empty())
        throw usage_error("--config and --preset are mutually exclusive");
    SimConfig c;
    try
    {
        if (!o.config_path.empty())
            c = load_config(o.config_path);
        else
            c = preset_config(o.preset.empty() ? default_preset : o.preset);
    }
    catch (const std::invalid_argument& e)
    {
        throw usage_error(e.what());
    }
    if (o.seed)
        c.base_seed = *o.seed;
    if (o.max_trials)
        c.max_trials = *o.max_trials;
    if (o.target_errors)
        c.target_bit_errors = *o.target_errors;
    if (o.threads)
        c.threads = *o.threads;
    if (o.antennas)
        c.m_antennas = *o.antennas;
    if (!o.snr.empty())
        c.snr_points_db = o.snr;
    try
    {
        c.validate();
    }
    catch (const std::invalid_argument& e)
    {
        throw usage_error(e.what());
    }
    return c;
}

void add_common(CLI::App* cmd, SweepOptions& o)
{
    cmd->add_option("--config", o.config_path, "JSON config (or a sweep manifest)");
    cmd->add_option("--preset", o.preset, "fig5 | fig6 | fig7");
    cmd->add_option("--seed", o.seed, "Base seed");
    cmd->add_option("--out", o.out, "Output CSV path (default: stdout)");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
    cmd->add_option("--antennas", o.antennas, "Override the antenna count M");
    cmd->add_option("--snr", o.snr, "Override the cumulative SNR points (dB)")->delimiter(',');
}

int run_sweep_cmd(const SweepOptions& o)
{
    const SimConfig config = resolve_config(o, "fig6");
    const auto records = run_sweep(config, [&](const BerRecord& r) {
        if (!o.quiet)
            std::cerr << to_string(r.receiver) << " snr=" << r.snr_db << " trials=" << r.trials
                      << " errors=" << r.bit_errors << " ber=" << r.ber << '\n';
    });
    emit(o.out, [&](std::ostream& os) { write_ber_csv(os, records); });
    const auto manifest = make_manifest(config, records, utc_timestamp());
    const std::string manifest_path = o.out.empty() ? std::string() : o.out + ".manifest.json";
    if (manifest_path.empty())
        std::cerr << manifest.dump(2) << '\n';
    else
        emit(manifest_path, [&](std::ostream& os) { os << manifest.dump(2) << '\n'; });
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Uplink MIMO detection behind low-resolution ADCs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version));

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "BER-vs-SNR Monte Carlo sweep, CSV plus JSON manifest");
    add_common(sweep_cmd, sweep);
    sweep_cmd->add_option("--max-trials", sweep.max_trials, "Trial cap per (SNR, receiver)");
    sweep_cmd->add_option("--target-errors", sweep.target_errors, "Bit errors that end a (SNR, receiver) point");
    sweep_cmd->add_flag("--quiet", sweep.quiet, "No progress lines on stderr");

    EtfGrid etf;
    std::string etf_out;
    auto* etf_cmd = app.add_subcommand("etf", "Equivalent transfer function table");
    etf_cmd->add_option("--bits", etf.bits, "Quantizer bits");
    etf_cmd->add_option("--delta", etf.delta, "Quantizer step");
    etf_cmd->add_option("--sigma2", etf.sigma2, "Noise variance per real component (list)")->delimiter(',');
    etf_cmd->add_option("--s-min", etf.s_min, "Grid start");
    etf_cmd->add_option("--s-max", etf.s_max, "Grid end");
    etf_cmd->add_option("--steps", etf.steps, "Grid points");
    etf_cmd->add_option("--out", etf_out, "Output CSV path (default: stdout)");

    SweepOptions constel;
    int per_symbol = 500;
    auto* constel_cmd = app.add_subcommand("constellation", "MRC prediction vs realization scatter data");
    add_common(constel_cmd, constel);
    constel_cmd->add_option("--per-symbol", per_symbol, "Realizations per constellation point");

    std::int64_t cx_m = 1024;
    std::int64_t cx_k = 1;
    std::int64_t cx_n = 64;
    auto* cx_cmd = app.add_subcommand("complexity", "Complex-multiply counts of naive vs brute-force ML");
    cx_cmd->add_option("--antennas,-M", cx_m, "Antennas");
    cx_cmd->add_option("--users,-K", cx_k, "Users");
    cx_cmd->add_option("--qam,-N", cx_n, "Constellation size");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return exit_usage;
    }

    try
    {
        if (*sweep_cmd)
            return run_sweep_cmd(sweep);
        if (*etf_cmd)
        {
            try
            {
                etf.validate();
            }
            catch (const std::invalid_argument& e)
            {
                throw usage_error(e.what());
            }
            emit(etf_out, [&](std::ostream& os) { write_etf_csv(os, etf); });
            return 0;
        }
        if (*constel_cmd)
        {
            const SimConfig config = resolve_config(constel, "fig5");
            if (per_symbol < 2)
                throw usage_error("--per-symbol must be at least 2");
            ConstellationStudy study;
            try
            {
                study = run_constellation_study(config, per_symbol);
            }
            catch (const std::invalid_argument& e)
            {
                throw usage_error(e.what());
            }
            emit(constel.out, [&](std::ostream& os) { write_constellation_csv(os, study); });
            return 0;
        }
        if (*cx_cmd)
        {
            ComplexityReport report{};
            try
            {
                report = complexity_report(cx_m, cx_k, cx_n);
            }
            catch (const std::invalid_argument& e)
            {
                throw usage_error(e.what());
            }
            write_complexity_report(std::cout, report);
            return 0;
        }
    }
    catch (const usage_error& e)
    {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const capacity_error& e)
    {
        std::cerr << "capacity error: " << e.what() << '\n';
        return exit_runtime;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_usage;
}
