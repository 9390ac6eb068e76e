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
#include "lowadc/signal.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lowadc
{

enum class TableMode
{
    naive,     // predictions g * H^H H X
    nld_aware, // predictions H^H F(g * H X)
};

inline constexpr std::size_t default_max_candidates = std::size_t{1} << 20;

// Largest condition number of H^H H accepted when inverting it.
inline constexpr double max_gram_condition = 1e12;

// n_qam^k_users, throwing capacity_error above `limit`.
std::size_t candidate_count(int n_qam, int k_users, std::size_t limit = default_max_candidates);

/*!
 * Precomputed search space for the MRC-domain detectors.
 *
 * Candidates enumerate constellation^K lexicographically by per-user symbol
 * index with user 0 most significant, so candidate i carries the base-N digits
 * of i. The table is immutable once built and may be shared across threads.
 */
class DetectorTable
{
public:
    DetectorTable(TableMode mode, int k_users, int n_qam, std::vector<int> candidates,
                  std::vector<cdouble> predictions, Eigen::MatrixXcd a_matrix);

    TableMode mode() const noexcept { return mode_; }
    int k_users() const noexcept { return k_users_; }
    int n_qam() const noexcept { return n_qam_; }
    std::size_t size() const noexcept { return candidates_.size() / static_cast<std::size_t>(k_users_); }

    std::span<const int> candidate(std::size_t i) const;
    std::span<const cdouble> prediction(std::size_t i) const;

    // inv(H^H H)
    const Eigen::MatrixXcd& a_matrix() const noexcept { return a_matrix_; }

private:
    TableMode mode_;
    int k_users_;
    int n_qam_;
    std::vector<int> candidates_;
    std::vector<cdouble> predictions_;
    Eigen::MatrixXcd a_matrix_;
};

struct DetectionResult
{
    std::size_t candidate = 0;
    std::vector<int> symbol_indices;
    // Quadratic metric (minimized) or log-likelihood (maximized).
    double metric = 0.0;
    // Complex multiplications spent on this decision.
    std::uint64_t complexity_charged = 0;
};

// Y = H^H S_o. Throws std::invalid_argument on a length mismatch.
Eigen::VectorXcd mrc(const ChannelMatrix& channel, std::span<const cdouble> adc_out);

// inv(H^H H), guarded by max_gram_condition (numeric_error otherwise).
Eigen::MatrixXcd inverse_gram(const ChannelMatrix& channel);

/*!
 * Builds the candidate list, the MRC-domain predictions and inv(H^H H).
 *
 * nld_aware mode needs the quantizer and the per-component noise level used to
 * evaluate the equivalent transfer function; naive mode ignores both.
 */
DetectorTable build_table(const ChannelMatrix& channel, const QamConstellation& constellation, double gain,
                          TableMode mode, const std::optional<QuantizerSpec>& quantizer = std::nullopt,
                          const std::optional<NoiseModel>& noise = std::nullopt,
                          std::size_t max_candidates = default_max_candidates);

// argmin_i (y - Y_i)^H A (y - Y_i); ties go to the lowest candidate index.
DetectionResult detect_quadratic(const DetectorTable& table, std::span<const cdouble> y);

/*!
 * Exhaustive ML over the quantized observations: maximizes
 * sum_m log Pr(Re s_o(m) | Re s_l(m)) + log Pr(Im s_o(m) | Im s_l(m)) with
 * s_l = g H X, each factor floored at probability_floor. Ties go to the lowest
 * candidate index. Throws std::invalid_argument if adc_out holds a value that
 * is not a quantizer output pair.
 */
DetectionResult detect_bruteforce_ml(const ChannelMatrix& channel, std::span<const cdouble> adc_out,
                                     const QuantizerSpec& quantizer, const NoiseModel& noise,
                                     const QamConstellation& constellation, double gain,
                                     std::size_t max_candidates = default_max_candidates);

// M K + (K^2 + K) n_qam^K
std::uint64_t complexity_naive(std::int64_t m_antennas, std::int64_t k_users, std::int64_t n_qam);

// M (K + 1) n_qam^K
std::uint64_t complexity_bruteforce(std::int64_t m_antennas, std::int64_t k_users, std::int64_t n_qam);

} // namespace lowadc
