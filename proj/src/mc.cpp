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

#include "lowadc/mc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace lowadc
{

namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Running mean and variance (Welford).
class Moments
{
public:
    void add(double v)
    {
        ++n_;
        const double d = v - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (v - mean_);
    }
    double mean() const { return mean_; }
    double standard_error() const
    {
        if (n_ < 2)
            return 0.0;
        return std::sqrt(m2_ / static_cast<double>(n_ - 1) / static_cast<double>(n_));
    }

private:
    std::int64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct ComplexMoments
{
    Moments re;
    Moments im;
    void add(cdouble v)
    {
        re.add(v.real());
        im.add(v.imag());
    }
};

bool has_receiver(const SimConfig& config, Receiver r)
{
    return std::find(config.receivers.begin(), config.receivers.end(), r) != config.receivers.end();
}

bool needs_naive_table(Receiver r) { return r == Receiver::ideal_ml || r == Receiver::naive_ml; }

int worker_count(const SimConfig& config)
{
    if (config.threads > 0)
        return config.threads;
    return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

// Runs body(i) for i in [0, n) on `workers` threads; rethrows the first error.
template <typename Body>
void parallel_for(std::size_t n, int workers, Body&& body)
{
    const auto w = static_cast<std::size_t>(std::max(1, workers));
    if (w == 1 || n < 2)
    {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(w);
    {
        std::vector<std::jthread> pool;
        pool.reserve(w);
        for (std::size_t t = 0; t < w; ++t)
        {
            pool.emplace_back([&, t] {
                try
                {
                    for (std::size_t i = t; i < n; i += w)
                        body(i);
                }
                catch (...)
                {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace

std::string_view to_string(Receiver receiver)
{
    switch (receiver)
    {
    case Receiver::ideal_ml:
        return "ideal_ml";
    case Receiver::naive_ml:
        return "naive_ml";
    case Receiver::bruteforce_ml:
        return "bruteforce_ml";
    case Receiver::equivalent_ml:
        return "equivalent_ml";
    }
    return "unknown";
}

Receiver parse_receiver(std::string_view name)
{
    for (auto r : {Receiver::ideal_ml, Receiver::naive_ml, Receiver::bruteforce_ml, Receiver::equivalent_ml})
        if (to_string(r) == name)
            return r;
    throw std::invalid_argument("unknown receiver '" + std::string(name) + "'");
}

void SimConfig::validate() const
{
    if (m_antennas < 1)
        throw std::invalid_argument("m_antennas must be >= 1");
    if (k_users < 1)
        throw std::invalid_argument("k_users must be >= 1");
    QamConstellation check(qam_order);
    if (quantizer_bits)
        QuantizerSpec(*quantizer_bits, delta);
    if (gain && (!(*gain > 0.0) || !std::isfinite(*gain)))
        throw std::invalid_argument("gain must be positive");
    if (!(agc_rms_fraction > 0.0) || !std::isfinite(agc_rms_fraction))
        throw std::invalid_argument("agc_rms_fraction must be positive");
    if (!gain && quantizer_bits && *quantizer_bits < 2)
        throw std::invalid_argument("automatic gain needs a quantizer with at least 2 bits");
    if (snr_points_db.empty())
        throw std::invalid_argument("snr_points_db must not be empty");
    for (double snr : snr_points_db)
        if (!std::isfinite(snr))
            throw std::invalid_argument("SNR points must be finite");
    if (max_trials < 1)
        throw std::invalid_argument("max_trials must be >= 1");
    if (target_bit_errors < 1)
        throw std::invalid_argument("target_bit_errors must be >= 1");
    if (receivers.empty())
        throw std::invalid_argument("at least one receiver is required");
    for (std::size_t i = 0; i < receivers.size(); ++i)
        for (std::size_t j = i + 1; j < receivers.size(); ++j)
            if (receivers[i] == receivers[j])
                throw std::invalid_argument("duplicate receiver " + std::string(to_string(receivers[i])));
    if (!quantizer_bits && (has_receiver(*this, Receiver::bruteforce_ml) || has_receiver(*this, Receiver::equivalent_ml)))
        throw std::invalid_argument("bruteforce_ml and equivalent_ml need a quantizer (quantizer_bits)");
    if (channel_mode.kind != ChannelMode::Kind::iid_gaussian && k_users != 1)
        throw std::invalid_argument("line-of-sight channel modes are single-user (k_users = 1)");
    if (!std::isfinite(channel_mode.angle))
        throw std::invalid_argument("channel angle must be finite");
    if (batch_trials < 1)
        throw std::invalid_argument("batch_trials must be >= 1");
    if (threads < 0)
        throw std::invalid_argument("threads must be >= 0");
    if (angle_cache_bins < 0)
        throw std::invalid_argument("angle_cache_bins must be >= 0");
    candidate_count(qam_order, k_users, max_candidates);
}

double agc_gain(const QuantizerSpec& quantizer, const ChannelMatrix& channel, const QamConstellation& constellation,
                SnrSpec snr, double rms_fraction)
{
    if (quantizer.bits() < 2)
        throw std::invalid_argument("agc_gain: needs at least 2 bits");
    if (!(rms_fraction > 0.0) || !std::isfinite(rms_fraction))
        throw std::invalid_argument("agc_gain: rms_fraction must be positive");
    const double target_rms = rms_fraction * quantizer.saturation_threshold();
    // Per-antenna real-part power at unit gain: signal P/(2M), noise P/(2 snr).
    const double power = received_signal_power(channel, constellation, 1.0);
    const double per_unit_gain = 0.5 * power * (1.0 / channel.m_antennas() + 1.0 / snr.linear());
    return target_rms / std::sqrt(per_unit_gain);
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t snr_index, std::uint64_t trial_index)
{
    std::uint64_t s = splitmix64(base_seed);
    s = splitmix64(s ^ (0xd1b54a32d192ed03ULL * (static_cast<std::uint64_t>(snr_index) + 1)));
    return splitmix64(s ^ trial_index);
}

std::int64_t TrialOutcome::bit_errors(std::size_t receiver_slot) const
{
    std::int64_t errors = 0;
    for (std::size_t u = 0; u < true_bits.size(); ++u)
        errors += std::popcount(true_bits[u] ^ decided_bits[receiver_slot][u]);
    return errors;
}

std::int64_t TrialOutcome::symbol_errors(std::size_t receiver_slot) const
{
    std::int64_t errors = 0;
    for (std::size_t u = 0; u < transmitted.size(); ++u)
        errors += transmitted[u] != decided[receiver_slot][u] ? 1 : 0;
    return errors;
}

struct TrialRunner::Impl
{
    struct Setup
    {
        ChannelMatrix channel;
        double gain;
        NoiseModel noise;
        std::optional<DetectorTable> naive;
        std::optional<DetectorTable> nld;
    };

    SimConfig config;
    std::size_t snr_index;
    SnrSpec snr;
    QamConstellation qam;
    std::optional<QuantizerSpec> quantizer;
    std::optional<Setup> fixed;

    mutable std::mutex cache_mutex;
    mutable std::map<int, std::shared_ptr<const Setup>> cache;

    Impl(const SimConfig& cfg, std::size_t index)
        : config(cfg), snr_index(index), snr{cfg.snr_points_db.at(index)}, qam(cfg.qam_order)
    {
        if (config.quantizer_bits)
            quantizer.emplace(*config.quantizer_bits, config.delta);
        if (config.channel_mode.kind == ChannelMode::Kind::fixed_angle)
            fixed.emplace(make_setup(los_channel(config.m_antennas, config.channel_mode.angle), true, true));
    }

    Setup make_setup(ChannelMatrix channel, bool want_naive, bool want_nld) const
    {
        double gain = 1.0;
        if (config.gain)
            gain = *config.gain;
        else if (quantizer)
            gain = agc_gain(*quantizer, channel, qam, snr, config.agc_rms_fraction);
        NoiseModel noise = sigma_from_snr(snr, channel, qam, gain);

        std::optional<DetectorTable> naive;
        std::optional<DetectorTable> nld;
        const bool any_naive = std::any_of(config.receivers.begin(), config.receivers.end(), needs_naive_table);
        if (want_naive && any_naive)
            naive.emplace(build_table(channel, qam, gain, TableMode::naive, std::nullopt, std::nullopt,
                                      config.max_candidates));
        if (want_nld && quantizer && has_receiver(config, Receiver::equivalent_ml))
            nld.emplace(build_table(channel, qam, gain, TableMode::nld_aware, quantizer, noise, config.max_candidates));
        return Setup{std::move(channel), gain, noise, std::move(naive), std::move(nld)};
    }

    std::shared_ptr<const Setup> cached_setup(double alpha) const
    {
        const double width = 2.0 * std::numbers::pi / config.angle_cache_bins;
        const int bin = std::clamp(static_cast<int>(std::floor((alpha + std::numbers::pi) / width)), 0,
                                   config.angle_cache_bins - 1);
        {
            std::lock_guard lock(cache_mutex);
            if (auto it = cache.find(bin); it != cache.end())
                return it->second;
        }
        const double center = -std::numbers::pi + (bin + 0.5) * width;
        auto setup = std::make_shared<const Setup>(make_setup(los_channel(config.m_antennas, center), true, true));
        std::lock_guard lock(cache_mutex);
        return cache.emplace(bin, std::move(setup)).first->second;
    }
};

TrialRunner::TrialRunner(const SimConfig& config, std::size_t snr_index)
{
    config.validate();
    impl_ = std::make_unique<Impl>(config, snr_index);
}

TrialRunner::~TrialRunner() = default;

TrialOutcome TrialRunner::run(std::uint64_t trial_index, const std::vector<bool>& active) const
{
    const Impl& p = *impl_;
    const SimConfig& cfg = p.config;
    const auto& receivers = cfg.receivers;
    if (!active.empty() && active.size() != receivers.size())
        throw std::invalid_argument("TrialRunner::run: receiver mask has the wrong length");
    const auto is_active = [&](std::size_t slot) { return active.empty() || active[slot]; };

    bool want_naive = false;
    bool want_nld = false;
    for (std::size_t slot = 0; slot < receivers.size(); ++slot)
    {
        if (!is_active(slot))
            continue;
        want_naive = want_naive || needs_naive_table(receivers[slot]);
        want_nld = want_nld || receivers[slot] == Receiver::equivalent_ml;
    }

    Rng rng(trial_seed(cfg.base_seed, p.snr_index, trial_index));

    std::optional<Impl::Setup> local;
    std::shared_ptr<const Impl::Setup> shared;
    const Impl::Setup* setup = nullptr;
    switch (cfg.channel_mode.kind)
    {
    case ChannelMode::Kind::fixed_angle:
        setup = &*p.fixed;
        break;
    case ChannelMode::Kind::los_random_angle: {
        const double alpha = sample_angle(rng);
        if (cfg.angle_cache_bins > 0)
        {
            shared = p.cached_setup(alpha);
            setup = shared.get();
        }
        else
        {
            local.emplace(p.make_setup(los_channel(cfg.m_antennas, alpha), want_naive, want_nld));
            setup = &*local;
        }
        break;
    }
    case ChannelMode::Kind::iid_gaussian:
        local.emplace(p.make_setup(iid_gaussian_channel(cfg.m_antennas, cfg.k_users, rng), want_naive, want_nld));
        setup = &*local;
        break;
    }

    const int k_users = cfg.k_users;
    const int m_antennas = cfg.m_antennas;
    TrialOutcome out;
    std::uniform_int_distribution<int> pick(0, p.qam.order() - 1);
    Eigen::VectorXcd x(k_users);
    for (int u = 0; u < k_users; ++u)
    {
        const int index = pick(rng);
        out.transmitted.push_back(index);
        out.true_bits.push_back(p.qam.label(index));
        x(u) = p.qam.symbol(index);
    }

    const Eigen::MatrixXcd& h = setup->channel.entries();
    const Eigen::VectorXcd s_l = setup->gain * (h * x);
    const auto noise = sample_noise(setup->noise, m_antennas, rng);
    std::vector<cdouble> unquantized(static_cast<std::size_t>(m_antennas));
    for (int m = 0; m < m_antennas; ++m)
        unquantized[static_cast<std::size_t>(m)] = s_l(m) + noise[static_cast<std::size_t>(m)];
    std::vector<cdouble> adc_out = unquantized;
    if (p.quantizer)
        for (auto& v : adc_out)
            v = quantize_complex(*p.quantizer, v);

    std::optional<Eigen::VectorXcd> y_ideal;
    std::optional<Eigen::VectorXcd> y_adc;
    const auto ideal_mrc = [&]() -> const Eigen::VectorXcd& {
        if (!y_ideal)
            y_ideal = mrc(setup->channel, unquantized);
        return *y_ideal;
    };
    const auto adc_mrc = [&]() -> const Eigen::VectorXcd& {
        if (!y_adc)
            y_adc = mrc(setup->channel, adc_out);
        return *y_adc;
    };
    const auto as_span = [](const Eigen::VectorXcd& v) {
        return std::span<const cdouble>(v.data(), static_cast<std::size_t>(v.size()));
    };

    for (std::size_t slot = 0; slot < receivers.size(); ++slot)
    {
        if (!is_active(slot))
            continue;
        DetectionResult result;
        switch (receivers[slot])
        {
        case Receiver::ideal_ml:
            result = detect_quadratic(*setup->naive, as_span(ideal_mrc()));
            break;
        case Receiver::naive_ml:
            result = detect_quadratic(*setup->naive, as_span(adc_mrc()));
            break;
        case Receiver::equivalent_ml:
            result = detect_quadratic(*setup->nld, as_span(adc_mrc()));
            break;
        case Receiver::bruteforce_ml:
            result = detect_bruteforce_ml(setup->channel, adc_out, *p.quantizer, setup->noise, p.qam, setup->gain,
                                          cfg.max_candidates);
            break;
        }
        std::vector<std::uint32_t> bits;
        bits.reserve(result.symbol_indices.size());
        for (int index : result.symbol_indices)
            bits.push_back(p.qam.label(index));
        out.slots.push_back(slot);
        out.decided.push_back(std::move(result.symbol_indices));
        out.decided_bits.push_back(std::move(bits));
        out.multiplies.push_back(result.complexity_charged);
    }
    return out;
}

TrialOutcome run_trial(const SimConfig& config, std::size_t snr_index, std::uint64_t trial_index)
{
    return TrialRunner(config, snr_index).run(trial_index);
}

std::pair<double, double> wilson_interval(std::int64_t errors, std::int64_t n)
{
    if (n < 1 || errors < 0 || errors > n)
        throw std::invalid_argument("wilson_interval: need 0 <= errors <= n and n >= 1");
    constexpr double z = 1.96;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(errors) / nn;
    const double z2n = z * z / nn;
    const double center = (p + 0.5 * z2n) / (1.0 + z2n);
    const double half = z * std::sqrt(p * (1.0 - p) / nn + 0.25 * z2n / nn) / (1.0 + z2n);
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<BerRecord> run_sweep(const SimConfig& config, const SweepProgress& progress)
{
    config.validate();
    const QamConstellation qam(config.qam_order);
    const std::size_t n_receivers = config.receivers.size();
    const int workers = worker_count(config);
    const auto bits_per_trial = static_cast<std::int64_t>(config.k_users) * qam.bits_per_symbol();

    std::vector<BerRecord> records;
    for (std::size_t snr_index = 0; snr_index < config.snr_points_db.size(); ++snr_index)
    {
        const TrialRunner runner(config, snr_index);
        std::vector<BerRecord> point(n_receivers);
        for (std::size_t slot = 0; slot < n_receivers; ++slot)
        {
            point[slot].receiver = config.receivers[slot];
            point[slot].snr_db = config.snr_points_db[snr_index];
        }
        std::vector<bool> active(n_receivers, true);

        std::int64_t done = 0;
        while (done < config.max_trials && std::find(active.begin(), active.end(), true) != active.end())
        {
            const std::int64_t batch = std::min<std::int64_t>(config.batch_trials, config.max_trials - done);
            std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(batch));
            parallel_for(outcomes.size(), workers, [&](std::size_t i) {
                outcomes[i] = runner.run(static_cast<std::uint64_t>(done) + i, active);
            });

            for (const auto& outcome : outcomes)
            {
                for (std::size_t j = 0; j < outcome.slots.size(); ++j)
                {
                    BerRecord& rec = point[outcome.slots[j]];
                    rec.trials += 1;
                    rec.bits += bits_per_trial;
                    rec.bit_errors += outcome.bit_errors(j);
                    rec.symbols += config.k_users;
                    rec.symbol_errors += outcome.symbol_errors(j);
                }
            }
            done += batch;
            for (std::size_t slot = 0; slot < n_receivers; ++slot)
                if (active[slot] && point[slot].bit_errors >= config.target_bit_errors)
                    active[slot] = false;
        }

        for (auto& rec : point)
        {
            rec.ber = static_cast<double>(rec.bit_errors) / static_cast<double>(rec.bits);
            rec.ser = static_cast<double>(rec.symbol_errors) / static_cast<double>(rec.symbols);
            std::tie(rec.ci_low, rec.ci_high) = wilson_interval(rec.bit_errors, rec.bits);
            if (progress)
                progress(rec);
            records.push_back(rec);
        }
    }
    return records;
}

bool MeanEstimate::within(double k) const noexcept
{
    return std::abs(mean.real()) <= k * se_re && std::abs(mean.imag()) <= k * se_im;
}

std::vector<MeanEstimate> equivalent_noise_statistics(const NoiseStudyConfig& config)
{
    if (config.m_antennas < 2)
        throw std::invalid_argument("equivalent_noise_statistics: need at least two antennas");
    if (config.trials < 2)
        throw std::invalid_argument("equivalent_noise_statistics: need at least two trials");
    const QuantizerSpec quantizer(config.quantizer_bits, config.delta);
    const QamConstellation qam(config.qam_order);
    const int m_antennas = config.m_antennas;
    const int far = m_antennas / 2;

    enum Stat
    {
        mean_noise,
        noise_signal_same,
        noise_signal_same_conj,
        noise_signal_next,
        noise_signal_next_conj,
        noise_signal_far,
        noise_noise_next,
        noise_noise_next_conj,
        noise_noise_far,
        stat_count,
    };
    const char* names[stat_count] = {
        "E[n_o(m)]",
        "E[n_o(m) s_l(m)]",
        "E[n_o(m) conj(s_l(m))]",
        "E[n_o(m) s_l(m+1)]",
        "E[n_o(m) conj(s_l(m+1))]",
        "E[n_o(m) s_l(m+M/2)]",
        "E[n_o(m) n_o(m+1)]",
        "E[n_o(m) conj(n_o(m+1))]",
        "E[n_o(m) n_o(m+M/2)]",
    };
    std::vector<ComplexMoments> moments(stat_count);

    std::uniform_int_distribution<int> pick(0, qam.order() - 1);
    std::vector<cdouble> s_l(static_cast<std::size_t>(m_antennas));
    std::vector<cdouble> n_o(static_cast<std::size_t>(m_antennas));
    for (std::int64_t t = 0; t < config.trials; ++t)
    {
        Rng rng(trial_seed(config.seed, 0, static_cast<std::uint64_t>(t)));
        const ChannelMatrix channel = los_channel(m_antennas, sample_angle(rng));
        const NoiseModel noise = sigma_from_snr(SnrSpec{config.snr_db}, channel, qam, config.gain);
        const cdouble x = qam.symbol(pick(rng));
        const auto n_l = sample_noise(noise, m_antennas, rng);
        for (int m = 0; m < m_antennas; ++m)
        {
            const auto i = static_cast<std::size_t>(m);
            s_l[i] = config.gain * channel(m, 0) * x;
            n_o[i] = quantize_complex(quantizer, s_l[i] + n_l[i]) - etf_complex(quantizer, noise, s_l[i]);
        }

        cdouble acc[stat_count] = {};
        for (int m = 0; m < m_antennas; ++m)
        {
            const auto i = static_cast<std::size_t>(m);
            const auto next = static_cast<std::size_t>((m + 1) % m_antennas);
            const auto opposite = static_cast<std::size_t>((m + far) % m_antennas);
            acc[mean_noise] += n_o[i];
            acc[noise_signal_same] += n_o[i] * s_l[i];
            acc[noise_signal_same_conj] += n_o[i] * std::conj(s_l[i]);
            acc[noise_signal_next] += n_o[i] * s_l[next];
            acc[noise_signal_next_conj] += n_o[i] * std::conj(s_l[next]);
            acc[noise_signal_far] += n_o[i] * s_l[opposite];
            acc[noise_noise_next] += n_o[i] * n_o[next];
            acc[noise_noise_next_conj] += n_o[i] * std::conj(n_o[next]);
            acc[noise_noise_far] += n_o[i] * n_o[opposite];
        }
        for (int s = 0; s < stat_count; ++s)
            moments[static_cast<std::size_t>(s)].add(acc[s] / static_cast<double>(m_antennas));
    }

    std::vector<MeanEstimate> out;
    for (int s = 0; s < stat_count; ++s)
    {
        const auto& mo = moments[static_cast<std::size_t>(s)];
        out.push_back(MeanEstimate{names[s], cdouble(mo.re.mean(), mo.im.mean()), mo.re.standard_error(),
                                   mo.im.standard_error()});
    }
    return out;
}

ConstellationStudy run_constellation_study(const SimConfig& config, int per_symbol)
{
    config.validate();
    if (config.k_users != 1 || config.channel_mode.kind != ChannelMode::Kind::fixed_angle || !config.quantizer_bits)
        throw std::invalid_argument("constellation study needs a single-user fixed-angle quantized configuration");
    if (per_symbol < 2)
        throw std::invalid_argument("constellation study needs at least two realizations per symbol");

    const QuantizerSpec quantizer(*config.quantizer_bits, config.delta);
    const QamConstellation qam(config.qam_order);
    const SnrSpec snr{config.snr_points_db.front()};
    const ChannelMatrix channel = los_channel(config.m_antennas, config.channel_mode.angle);
    const double gain = config.gain ? *config.gain : agc_gain(quantizer, channel, qam, snr, config.agc_rms_fraction);
    const NoiseModel noise = sigma_from_snr(snr, channel, qam, gain);
    const DetectorTable table =
        build_table(channel, qam, gain, TableMode::nld_aware, quantizer, noise, config.max_candidates);

    const int n_qam = qam.order();
    const int m_antennas = config.m_antennas;
    ConstellationStudy study;
    study.predicted.resize(static_cast<std::size_t>(n_qam));
    study.realizations.resize(static_cast<std::size_t>(n_qam) * static_cast<std::size_t>(per_symbol));
    study.realization_symbol.resize(study.realizations.size());
    study.mean.resize(static_cast<std::size_t>(n_qam));
    study.se_re.resize(static_cast<std::size_t>(n_qam));
    study.se_im.resize(static_cast<std::size_t>(n_qam));

    const int workers = worker_count(config);
    parallel_for(static_cast<std::size_t>(n_qam), workers, [&](std::size_t sym) {
        study.predicted[sym] = table.prediction(sym)[0];
        const cdouble x = qam.symbol(static_cast<int>(sym));
        std::vector<cdouble> adc_out(static_cast<std::size_t>(m_antennas));
        ComplexMoments moments;
        for (int r = 0; r < per_symbol; ++r)
        {
            Rng rng(trial_seed(config.base_seed, sym, static_cast<std::uint64_t>(r)));
            const auto n_l = sample_noise(noise, m_antennas, rng);
            for (int m = 0; m < m_antennas; ++m)
            {
                const auto i = static_cast<std::size_t>(m);
                adc_out[i] = quantize_complex(quantizer, gain * channel(m, 0) * x + n_l[i]);
            }
            const cdouble y = mrc(channel, adc_out)(0);
            const std::size_t row = sym * static_cast<std::size_t>(per_symbol) + static_cast<std::size_t>(r);
            study.realizations[row] = y;
            study.realization_symbol[row] = static_cast<int>(sym);
            moments.add(y);
        }
        study.mean[sym] = cdouble(moments.re.mean(), moments.im.mean());
        study.se_re[sym] = moments.re.standard_error();
        study.se_im[sym] = moments.im.standard_error();
    });
    return study;
}

} // namespace lowadc
