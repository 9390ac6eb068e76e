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

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace lowadc;

namespace
{

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
    {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir
{
    std::filesystem::path path;
    TempDir()
    {
        path = std::filesystem::temp_directory_path() /
               ("lowadc_test_" + std::to_string(std::hash<std::string>{}(std::to_string(std::rand()) +
                                                                         std::to_string(reinterpret_cast<std::uintptr_t>(this)))));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(LOWADC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("format_double round-trips")
{
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e22, 0.0})
        CHECK(std::stod(format_double(v)) == v);
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("BER CSV layout")
{
    BerRecord r;
    r.receiver = Receiver::equivalent_ml;
    r.snr_db = 30.0;
    r.trials = 100;
    r.bits = 600;
    r.bit_errors = 3;
    r.ber = 0.005;
    r.ci_low = 0.001;
    r.ci_high = 0.01;
    std::ostringstream os;
    write_ber_csv(os, std::vector<BerRecord>{r});
    const auto rows = parse_csv(os.str());
    REQUIRE(rows.size() == 2);
    CHECK(os.str().substr(0, os.str().find('\n')) == "receiver,snr_db,trials,bit_errors,ber,ci_low,ci_high");
    CHECK(rows[1] == std::vector<std::string>{"equivalent_ml", "30", "100", "3", "0.005", "0.001", "0.01"});
}

TEST_CASE("ETF CSV for one bit equals erf")
{
    EtfGrid g;
    g.bits = 1;
    g.sigma2 = {0.5, 2.0};
    g.steps = 101;
    std::ostringstream os;
    write_etf_csv(os, g);
    const auto rows = parse_csv(os.str());
    REQUIRE(rows.size() == 1 + 2 * 101);
    CHECK(rows[0] == std::vector<std::string>{"s", "sigma2", "F(s)"});
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        const double s = std::stod(rows[i][0]);
        const double s2 = std::stod(rows[i][1]);
        CHECK(std::abs(std::stod(rows[i][2]) - std::erf(s / std::sqrt(2.0 * s2))) <= 1e-12);
    }
    CHECK(std::stod(rows[1][0]) == -5.0);
    CHECK(std::stod(rows[101][0]) == 5.0);
}

TEST_CASE("ETF CSV without noise is the staircase and stays bounded")
{
    EtfGrid g;
    g.bits = 2;
    g.sigma2 = {0.0, 1.0};
    g.s_min = -4.0;
    g.s_max = 4.0;
    g.steps = 81;
    std::ostringstream os;
    write_etf_csv(os, g);
    const auto rows = parse_csv(os.str());
    REQUIRE(rows.size() == 1 + 2 * 81);
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        const double s = std::stod(rows[i][0]);
        const double f = std::stod(rows[i][2]);
        CHECK(std::abs(f) <= 3.0);
        if (std::stod(rows[i][1]) == 0.0)
        {
            const double expected = s < -2.0 ? -3.0 : s < 0.0 ? -1.0 : s < 2.0 ? 1.0 : 3.0;
            CHECK(f == expected);
        }
    }

    EtfGrid bad;
    bad.steps = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = EtfGrid{};
    bad.sigma2 = {-1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = EtfGrid{};
    bad.s_min = 1.0;
    bad.s_max = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("constellation CSV layout")
{
    SimConfig c;
    c.m_antennas = 32;
    c.qam_order = 64;
    c.snr_points_db = {30.0};
    c.channel_mode = ChannelMode::fixed(std::numbers::pi / 12.0);
    c.receivers = {Receiver::equivalent_ml};
    const auto study = run_constellation_study(c, 3);
    std::ostringstream a, b;
    write_constellation_csv(a, study);
    write_constellation_csv(b, run_constellation_study(c, 3));
    CHECK(a.str() == b.str());

    const auto rows = parse_csv(a.str());
    REQUIRE(rows.size() == 2 + 64 + 1 + 2 + 64 * 3);
    CHECK(rows[0] == std::vector<std::string>{"# predicted"});
    CHECK(rows[66].empty());
    CHECK(rows[67] == std::vector<std::string>{"# realizations"});
}

TEST_CASE("config JSON round-trip")
{
    for (const char* name : {"fig5", "fig6", "fig7"})
    {
        const auto c = preset_config(name);
        CHECK_NOTHROW(c.validate());
        const auto j = config_to_json(c);
        const auto back = config_from_json(nlohmann::json::parse(j.dump()));
        CHECK(config_to_json(back) == j);
    }

    SimConfig c;
    c.quantizer_bits.reset();
    c.gain.reset();
    c.snr_points_db = {1.0};
    c.receivers = {Receiver::ideal_ml};
    c.channel_mode = ChannelMode::iid();
    c.k_users = 2;
    const auto j = config_to_json(c);
    CHECK(j["quantizer_bits"] == "ideal");
    CHECK(j["gain"] == "auto");
    const auto back = config_from_json(j);
    CHECK_FALSE(back.quantizer_bits.has_value());
    CHECK_FALSE(back.gain.has_value());
    CHECK(back.channel_mode.kind == ChannelMode::Kind::iid_gaussian);

    auto unknown = config_to_json(preset_config("fig6"));
    unknown["antenas"] = 3;
    CHECK_THROWS_AS(config_from_json(unknown), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"m_antennas": "many"})")), std::invalid_argument);
    CHECK_THROWS_AS(preset_config("fig8"), std::invalid_argument);
}

TEST_CASE("preset contents")
{
    const auto f5 = preset_config("fig5");
    CHECK(f5.m_antennas == 1024);
    CHECK(f5.quantizer_bits == 1);
    CHECK(f5.qam_order == 64);
    CHECK(f5.channel_mode.kind == ChannelMode::Kind::fixed_angle);
    CHECK(f5.channel_mode.angle == doctest::Approx(std::numbers::pi / 12.0));
    CHECK(f5.snr_points_db == std::vector<double>{30.0});

    const auto f6 = preset_config("fig6");
    CHECK(f6.m_antennas == 1024);
    CHECK(f6.quantizer_bits == 1);
    CHECK(f6.snr_points_db.front() == -10.0);
    CHECK(f6.snr_points_db.back() == 45.0);

    const auto f7 = preset_config("fig7");
    CHECK(f7.m_antennas == 32);
    CHECK(f7.quantizer_bits == 3);
    CHECK_FALSE(f7.gain.has_value());
}

TEST_CASE("manifest round-trip")
{
    auto c = preset_config("fig6");
    c.m_antennas = 8;
    c.snr_points_db = {10.0};
    c.max_trials = 64;
    const auto records = run_sweep(c);
    const auto m = make_manifest(c, records, "2026-01-01T00:00:00Z");
    CHECK(m["tool"] == "lowadc");
    CHECK(m["base_seed"] == c.base_seed);
    CHECK(m["records"].size() == records.size());
    CHECK(config_to_json(config_from_manifest(m)) == config_to_json(c));
}

TEST_CASE("complexity report text")
{
    const auto r = complexity_report(1024, 1, 64);
    CHECK(r.naive == 1152u);
    CHECK(r.bruteforce == 131072u);
    std::ostringstream os;
    write_complexity_report(os, r);
    CHECK(os.str().find("1152") != std::string::npos);
    CHECK(os.str().find("131072") != std::string::npos);
}

TEST_CASE("CLI exit codes")
{
    TempDir tmp;
    CHECK(run_cli("complexity -M 1024 -K 1 -N 64") == 0);
    CHECK(run_cli("") == 2);
    CHECK(run_cli("bogus") == 2);
    CHECK(run_cli("sweep --max-trials 0") == 2);
    CHECK(run_cli("sweep --preset fig9") == 2);
    CHECK(run_cli("sweep --max-trials abc") == 2);
    CHECK(run_cli("sweep --config " + (tmp.path / "missing.json").string()) == 2);
    CHECK(run_cli("complexity -M 1024 -K 12 -N 64") == 1);

    const auto bad = tmp.path / "bad.json";
    std::ofstream(bad) << R"({"m_antennas": 16, "frobnicate": 1})";
    CHECK(run_cli("sweep --config " + bad.string()) == 2);

    const auto out = tmp.path / "etf.csv";
    CHECK(run_cli("etf --bits 2 --sigma2 0.5,1 --out " + out.string()) == 0);
    CHECK(parse_csv(slurp(out)).size() == 1 + 2 * 201);
}

TEST_CASE("CLI sweep writes CSV and a replayable manifest")
{
    TempDir tmp;
    const auto out = tmp.path / "a.csv";
    const std::string common = "--preset fig6 --antennas 8 --snr 0,20 --max-trials 128 --seed 9 --quiet";
    REQUIRE(run_cli("sweep " + common + " --threads 1 --out " + out.string()) == 0);
    const auto manifest_path = tmp.path / "a.csv.manifest.json";
    REQUIRE(std::filesystem::exists(manifest_path));
    const auto manifest = nlohmann::json::parse(slurp(manifest_path));
    CHECK(manifest["base_seed"] == 9);
    CHECK(manifest["config"]["m_antennas"] == 8);

    const auto replay = tmp.path / "b.csv";
    REQUIRE(run_cli("sweep --quiet --threads 2 --config " + manifest_path.string() + " --out " + replay.string()) == 0);
    CHECK(slurp(out) == slurp(replay));
    CHECK(parse_csv(slurp(out)).size() == 1 + 2 * 4);
}
