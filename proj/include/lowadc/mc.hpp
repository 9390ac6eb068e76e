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

#include "lowadc/quant.hpp"
#include "lowadc/rx.hpp"
#include "lowadc/signal.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lowadc
{

enum class Receiver
{
    ideal_ml,      // naive ML on the unquantized samples of the same trial
    naive_ml,      // naive ML on the ADC outputs, quantization ignored
    bruteforce_ml, // exhaustive likelihood over the quantized outputs
    equivalent_ml, // quadratic metric against the nld_aware table
};

std::string_view to_string(Receiver receiver);
Receiver parse_receiver(std::string_view name);

struct ChannelMode
{
    enum class Kind
    {
        los_random_angle,
        fixed_angle,
        iid_gaussian,
    };

    Kind kind = Kind::los_random_angle;
    double angle = 0.0; // radians, fixed_angle only

    static ChannelMode random_angle() { return {Kind::los_random_angle, 0.0}; }
    static ChannelMode fixed(double alpha) { return {Kind::fixed_angle, alpha}; }
    static ChannelMode iid() { return {Kind::iid_gaussian, 0.0}; }
};

struct SimConfig
{
    int m_antennas = 1024;
    int k_users = 1;
    int qam_order = 64;
    std::optional<int> quantizer_bits = 1; // nullopt: ideal ADCs
    double delta = 2.0;
    std::optional<double> gain = 1.0; // nullopt: auto AGC (multi-bit only)
    // Auto AGC target: RMS of the real ADC input as a fraction of the
    // saturation threshold (R - 2) * delta / 2.
    double agc_rms_fraction = 0.5;
    std::vector<double> snr_points_db;
    std::int64_t max_trials = 10000;
    std::int64_t target_bit_errors = 200;
    std::uint64_t base_seed = 1;
    ChannelMode channel_mode;
    std::vector<Receiver> receivers;
    // Trials per scheduling batch. Stopping is decided at batch boundaries, so
    // this value (not the thread count) determines the trial counts.
    int batch_trials = 64;
    // 0: one worker per hardware thread.
    int threads = 0;
    // los_random_angle only: when > 0, angles snap to this many uniform bins
    // and detector tables are cached per bin. Changes the channel ensemble.
    int angle_cache_bins = 0;
    std::size_t max_candidates = default_max_candidates;

    // Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

/*!
 * Input gain that puts the RMS of the real ADC input (signal plus noise) at
 * rms_fraction times the saturation threshold (R - 2) * delta / 2; the default
 * of one half gives (R - 2) * delta / 4. The noise level follows the gain
 * through the cumulative SNR, so the result depends on snr. Requires at least
 * 2 bits.
 */
double agc_gain(const QuantizerSpec& quantizer, const ChannelMatrix& channel, const QamConstellation& constellation,
                SnrSpec snr, double rms_fraction = 0.5);

// Counter-based seed for trial `trial_index` of SNR point `snr_index`.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t snr_index, std::uint64_t trial_index);

struct TrialOutcome
{
    std::vector<int> transmitted;           // symbol index per user
    std::vector<std::uint32_t> true_bits;   // Gray label per user
    std::vector<std::size_t> slots;         // indices into config.receivers that ran
    std::vector<std::vector<int>> decided;  // per receiver, symbol index per user
    std::vector<std::vector<std::uint32_t>> decided_bits;
    std::vector<std::uint64_t> multiplies;  // per receiver, detection cost

    std::int64_t bit_errors(std::size_t receiver_slot) const;
    std::int64_t symbol_errors(std::size_t receiver_slot) const;
};

/*!
 * Evaluates single trials for one SNR point of a configuration.
 *
 * In fixed_angle mode the channel, gain, noise level and detector tables are
 * built once here and shared by every trial. The runner is immutable after
 * construction apart from the optional angle-bin table cache, which is
 * internally synchronized.
 */
class TrialRunner
{
public:
    TrialRunner(const SimConfig& config, std::size_t snr_index);
    ~TrialRunner();
    TrialRunner(const TrialRunner&) = delete;
    TrialRunner& operator=(const TrialRunner&) = delete;

    // `active` masks config.receivers; empty means all. Deterministic in
    // (base_seed, snr_index, trial_index) regardless of the mask.
    TrialOutcome run(std::uint64_t trial_index, const std::vector<bool>& active = {}) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

TrialOutcome run_trial(const SimConfig& config, std::size_t snr_index, std::uint64_t trial_index);

struct BerRecord
{
    Receiver receiver = Receiver::naive_ml;
    double snr_db = 0.0;
    std::int64_t trials = 0;
    std::int64_t bits = 0;
    std::int64_t bit_errors = 0;
    std::int64_t symbols = 0;
    std::int64_t symbol_errors = 0;
    double ber = 0.0;
    double ser = 0.0;
    double ci_low = 0.0; // 95% Wilson interval on the BER
    double ci_high = 0.0;

    double ci_half_width() const noexcept { return 0.5 * (ci_high - ci_low); }
};

// 95% Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::int64_t errors, std::int64_t n);

using SweepProgress = std::function<void(const BerRecord&)>;

/*!
 * Runs every (SNR point, receiver) pair until max_trials or target_bit_errors
 * is reached. Output is ordered by SNR point, then by config.receivers, and is
 * independent of the thread count.
 */
std::vector<BerRecord> run_sweep(const SimConfig& config, const SweepProgress& progress = {});

// Sample mean of a complex statistic with per-component standard errors.
struct MeanEstimate
{
    std::string name;
    cdouble mean;
    double se_re = 0.0;
    double se_im = 0.0;

    // Both components within `k` standard errors of zero.
    bool within(double k) const noexcept;
};

struct NoiseStudyConfig
{
    int m_antennas = 64;
    int quantizer_bits = 1;
    double delta = 2.0;
    int qam_order = 64;
    double snr_db = 18.0; // cumulative
    double gain = 1.0;
    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
};

/*!
 * Samples random-angle LOS trials and estimates the moments that the
 * equivalent model says vanish: E[n_o], E[n_o(m) s_l(n)] for n = m and n != m,
 * and E[n_o(m) n_o(n)] for n != m (each also with the conjugate on the second
 * factor). Per-trial antenna averages are the samples behind each standard
 * error.
 */
std::vector<MeanEstimate> equivalent_noise_statistics(const NoiseStudyConfig& config);

struct ConstellationStudy
{
    std::vector<cdouble> predicted;          // nld_aware table, one per symbol
    std::vector<int> realization_symbol;     // true symbol of each realization
    std::vector<cdouble> realizations;       // simulated MRC outputs
    std::vector<cdouble> mean;               // per-symbol sample mean
    std::vector<double> se_re;               // per-symbol standard error
    std::vector<double> se_im;
};

// Single-user fixed-angle study: `per_symbol` noisy MRC outputs for every
// constellation point next to the nld_aware predictions. Uses the first SNR
// point of the configuration.
ConstellationStudy run_constellation_study(const SimConfig& config, int per_symbol);

} // namespace lowadc
