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

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace lowadc
{

/*!
 * Uniform mid-rise quantizer with R = 2^bits output levels.
 *
 * Levels are q_r = (2r - R - 1) * delta / 2 for r = 1..R, stored here 0-based
 * (index i holds q_{i+1}). Cells are half-open, [q - delta/2, q + delta/2),
 * and the two outermost cells extend to -inf and +inf respectively.
 */
class QuantizerSpec
{
public:
    static constexpr int max_bits = 16;

    QuantizerSpec(int bits, double delta);

    int bits() const noexcept { return bits_; }
    int num_levels() const noexcept { return num_levels_; }
    double delta() const noexcept { return delta_; }
    std::span<const double> levels() const noexcept { return levels_; }
    double level(int index) const { return levels_.at(static_cast<std::size_t>(index)); }

    double max_level() const noexcept { return levels_.back(); }

    // Inputs at or above +threshold saturate to the top level; inputs below
    // -threshold saturate to the bottom level.
    double saturation_threshold() const noexcept { return (num_levels_ - 2) * delta_ / 2.0; }

    // Index of the cell containing s (the index of quantize_real(s)).
    int cell_index(double s) const;

    // Index of an exact output level, or nullopt if v is not one of the levels.
    std::optional<int> level_index(double v) const;

    // Cell edges of level `index`; the outermost edges are infinite.
    double cell_lower(int index) const;
    double cell_upper(int index) const;

private:
    int bits_;
    int num_levels_;
    double delta_;
    std::vector<double> levels_;
};

// Variance of the Gaussian noise on each real component of a complex ADC
// input. A complex sample therefore carries total noise power 2 * sigma2.
class NoiseModel
{
public:
    explicit NoiseModel(double sigma2);

    double sigma2() const noexcept { return sigma2_; }
    double sigma() const noexcept;

private:
    double sigma2_;
};

// Throws std::invalid_argument unless 1 <= bits <= 16 and delta > 0.
QuantizerSpec make_quantizer(int bits, double delta = 2.0);

double quantize_real(const QuantizerSpec& spec, double s);
std::complex<double> quantize_complex(const QuantizerSpec& spec, std::complex<double> s);

/*!
 * Probability that the quantizer emits level `index` (0-based) when its input
 * is s_l plus N(0, sigma2) noise.
 *
 * Every branch is written as a difference of complementary error functions
 * taken on the same side of the mean, so saturation-cell tails keep their
 * relative accuracy far from the cell (|s_l| of 30 sigma and beyond).
 */
double output_probability(const QuantizerSpec& spec, const NoiseModel& noise, double s_l, int index);

// Pr(lower <= mean + n < upper) for n ~ N(0, sigma^2); either edge may be infinite.
double interval_probability(double lower, double upper, double mean, double sigma);

// Floor applied to every probability factor before taking the log.
inline constexpr double probability_floor = 1e-300;

// log(max(output_probability(...), probability_floor)).
double log_output_probability(const QuantizerSpec& spec, const NoiseModel& noise, double s_l, int index);

/*!
 * Equivalent transfer function F(s_l) = E[Q(s_l + n)], n ~ N(0, sigma2).
 *
 * Evaluated as (delta/2) * sum_i erf((s_l - t_i) / sqrt(2 sigma2)) over the
 * R-1 decision thresholds t_i, which equals sum_r q_r Pr(q_r | s_l) and is
 * exactly odd in s_l. sigma2 == 0 returns quantize_real(s_l).
 */
double etf_real(const QuantizerSpec& spec, double sigma2, double s_l);
double etf_real(const QuantizerSpec& spec, const NoiseModel& noise, double s_l);

std::complex<double> etf_complex(const QuantizerSpec& spec, double sigma2, std::complex<double> s_l);
std::complex<double> etf_complex(const QuantizerSpec& spec, const NoiseModel& noise, std::complex<double> s_l);

// s_o - F(s_l). Throws std::invalid_argument if s_o is not a level pair.
std::complex<double> equivalent_noise(const QuantizerSpec& spec, const NoiseModel& noise,
                                      std::complex<double> s_l, std::complex<double> s_o);

} // namespace lowadc
