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

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace lowadc
{

using Rng = std::mt19937_64;
using cdouble = std::complex<double>;

/*!
 * Square QAM with unit average symbol energy and per-axis reflected Gray labels.
 *
 * Symbol index k = i_re * L + i_im, where L = sqrt(order) and i_re, i_im index
 * the per-axis amplitudes (2i - L + 1) * gain in increasing order. The label of
 * symbol k is (gray(i_re) << bits/2) | gray(i_im).
 */
class QamConstellation
{
public:
    explicit QamConstellation(int order);

    int order() const noexcept { return order_; }
    int bits_per_symbol() const noexcept { return bits_; }
    int axis_levels() const noexcept { return axis_levels_; }
    // Per-axis amplitude scale; axis amplitudes are odd multiples of this.
    double gain() const noexcept { return gain_; }

    std::span<const cdouble> symbols() const noexcept { return symbols_; }
    std::span<const std::uint32_t> labels() const noexcept { return labels_; }
    cdouble symbol(int index) const { return symbols_.at(static_cast<std::size_t>(index)); }
    std::uint32_t label(int index) const { return labels_.at(static_cast<std::size_t>(index)); }

    // (1/N) * sum |x|^2
    double mean_energy() const noexcept;

private:
    int order_;
    int bits_;
    int axis_levels_;
    double gain_;
    std::vector<cdouble> symbols_;
    std::vector<std::uint32_t> labels_;
};

// Throws std::invalid_argument unless order is 4, 16, 64 or 256.
QamConstellation make_qam(int order);

// M x K complex channel; column k holds the antenna responses of user k.
class ChannelMatrix
{
public:
    explicit ChannelMatrix(Eigen::MatrixXcd entries);

    int m_antennas() const noexcept { return static_cast<int>(entries_.rows()); }
    int k_users() const noexcept { return static_cast<int>(entries_.cols()); }
    const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
    cdouble operator()(int m, int k) const { return entries_(m, k); }

private:
    Eigen::MatrixXcd entries_;
};

// Single-user line-of-sight array response exp(j pi sin(alpha) m), m = 1..M.
ChannelMatrix los_channel(int m_antennas, double alpha);

// i.i.d. CN(0, 1) entries (unit variance per complex entry).
ChannelMatrix iid_gaussian_channel(int m_antennas, int k_users, Rng& rng);

// Uniform angle of arrival on [-pi, pi).
double sample_angle(Rng& rng);

struct SnrSpec
{
    double cumulative_snr_db;

    double linear() const noexcept;
};

/*!
 * Noise level that realizes a cumulative input SNR, i.e. total received signal
 * power summed over the array divided by the per-antenna complex noise power:
 *
 *   snr = sum_m E|g * sum_k h_k(m) x_k|^2 / (2 sigma2)
 *
 * with independent uniformly drawn user symbols. Throws std::invalid_argument
 * for an all-zero channel or a non-positive gain.
 */
NoiseModel sigma_from_snr(SnrSpec snr, const ChannelMatrix& channel, const QamConstellation& constellation,
                          double gain);

// sum_m E|g * sum_k h_k(m) x_k|^2 over uniformly drawn symbols.
double received_signal_power(const ChannelMatrix& channel, const QamConstellation& constellation, double gain);

// m i.i.d. complex Gaussian samples, each real component with variance sigma2.
std::vector<cdouble> sample_noise(const NoiseModel& noise, int m, Rng& rng);

} // namespace lowadc
