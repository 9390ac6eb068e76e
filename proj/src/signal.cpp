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

#include "lowadc/signal.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lowadc
{

QamConstellation::QamConstellation(int order) : order_(order), bits_(0), axis_levels_(0), gain_(0.0)
{
    if (order != 4 && order != 16 && order != 64 && order != 256)
        throw std::invalid_argument("QamConstellation: unsupported order " + std::to_string(order));

    bits_ = std::countr_zero(static_cast<unsigned>(order));
    axis_levels_ = 1 << (bits_ / 2);
    const int half_bits = bits_ / 2;

    // Per-axis mean of (2i - L + 1)^2 is (L^2 - 1) / 3; two axes.
    const double axis_energy = (axis_levels_ * axis_levels_ - 1) / 3.0;
    gain_ = 1.0 / std::sqrt(2.0 * axis_energy);

    symbols_.reserve(static_cast<std::size_t>(order));
    labels_.reserve(static_cast<std::size_t>(order));
    for (int i_re = 0; i_re < axis_levels_; ++i_re)
    {
        for (int i_im = 0; i_im < axis_levels_; ++i_im)
        {
            const double re = (2 * i_re - axis_levels_ + 1) * gain_;
            const double im = (2 * i_im - axis_levels_ + 1) * gain_;
            symbols_.emplace_back(re, im);
            const auto gray_re = static_cast<std::uint32_t>(i_re ^ (i_re >> 1));
            const auto gray_im = static_cast<std::uint32_t>(i_im ^ (i_im >> 1));
            labels_.push_back((gray_re << half_bits) | gray_im);
        }
    }
}

double QamConstellation::mean_energy() const noexcept
{
    double sum = 0.0;
    for (const auto& x : symbols_)
        sum += std::norm(x);
    return sum / order_;
}

QamConstellation make_qam(int order) { return QamConstellation(order); }

ChannelMatrix::ChannelMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries))
{
    if (entries_.rows() < 1 || entries_.cols() < 1)
        throw std::invalid_argument("ChannelMatrix: empty channel");
    if (!entries_.allFinite())
        throw std::invalid_argument("ChannelMatrix: non-finite entry");
}

ChannelMatrix los_channel(int m_antennas, double alpha)
{
    if (m_antennas < 1)
        throw std::invalid_argument("los_channel: need at least one antenna");
    const double phase_step = std::numbers::pi * std::sin(alpha);
    Eigen::MatrixXcd h(m_antennas, 1);
    for (int m = 0; m < m_antennas; ++m)
        h(m, 0) = std::polar(1.0, phase_step * (m + 1));
    return ChannelMatrix(std::move(h));
}

ChannelMatrix iid_gaussian_channel(int m_antennas, int k_users, Rng& rng)
{
    if (m_antennas < 1 || k_users < 1)
        throw std::invalid_argument("iid_gaussian_channel: dimensions must be positive");
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd h(m_antennas, k_users);
    for (int k = 0; k < k_users; ++k)
        for (int m = 0; m < m_antennas; ++m)
        {
            const double re = normal(rng);
            h(m, k) = cdouble(re, normal(rng));
        }
    return ChannelMatrix(std::move(h));
}

double sample_angle(Rng& rng)
{
    std::uniform_real_distribution<double> uniform(-std::numbers::pi, std::numbers::pi);
    for (;;)
    {
        // uniform_real_distribution may round up to the open upper bound
        const double a = uniform(rng);
        if (a < std::numbers::pi)
            return a;
    }
}

double SnrSpec::linear() const noexcept { return std::pow(10.0, cumulative_snr_db / 10.0); }

double received_signal_power(const ChannelMatrix& channel, const QamConstellation& constellation, double gain)
{
    // Symbols are zero-mean and independent across users, so cross terms vanish.
    return gain * gain * constellation.mean_energy() * channel.entries().squaredNorm();
}

NoiseModel sigma_from_snr(SnrSpec snr, const ChannelMatrix& channel, const QamConstellation& constellation,
                          double gain)
{
    if (!(gain > 0.0) || !std::isfinite(gain))
        throw std::invalid_argument("sigma_from_snr: gain must be positive");
    if (!std::isfinite(snr.cumulative_snr_db))
        throw std::invalid_argument("sigma_from_snr: SNR must be finite");
    const double power = received_signal_power(channel, constellation, gain);
    if (!(power > 0.0))
        throw std::invalid_argument("sigma_from_snr: channel carries no signal power");
    return NoiseModel(power / snr.linear() / 2.0);
}

std::vector<cdouble> sample_noise(const NoiseModel& noise, int m, Rng& rng)
{
    if (m < 0)
        throw std::invalid_argument("sample_noise: negative length");
    std::normal_distribution<double> normal(0.0, noise.sigma());
    std::vector<cdouble> out(static_cast<std::size_t>(m));
    for (auto& v : out)
    {
        const double re = normal(rng);
        v = cdouble(re, normal(rng));
    }
    return out;
}

} // namespace lowadc
