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

#include "lowadc/rx.hpp"

#include "lowadc/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lowadc
{

namespace
{

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw capacity_error("complexity counter overflows 64 bits");
    return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out = 0;
    if (__builtin_add_overflow(a, b, &out))
        throw capacity_error("complexity counter overflows 64 bits");
    return out;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp)
{
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i)
        out = checked_mul(out, base);
    return out;
}

void require_positive(std::int64_t v, const char* name)
{
    if (v < 1)
        throw std::invalid_argument(std::string("complexity: ") + name + " must be positive");
}

// Fills digits with the base-n representation of index, most significant first.
void candidate_digits(std::size_t index, int n_qam, std::span<int> digits)
{
    for (std::size_t k = digits.size(); k-- > 0;)
    {
        digits[k] = static_cast<int>(index % static_cast<std::size_t>(n_qam));
        index /= static_cast<std::size_t>(n_qam);
    }
}

} // namespace

std::size_t candidate_count(int n_qam, int k_users, std::size_t limit)
{
    if (n_qam < 1 || k_users < 1)
        throw std::invalid_argument("candidate_count: arguments must be positive");
    std::size_t count = 1;
    for (int k = 0; k < k_users; ++k)
    {
        if (count > limit / static_cast<std::size_t>(n_qam))
            throw capacity_error("candidate table of " + std::to_string(n_qam) + "^" + std::to_string(k_users) +
                                 " entries exceeds the limit of " + std::to_string(limit));
        count *= static_cast<std::size_t>(n_qam);
    }
    return count;
}

DetectorTable::DetectorTable(TableMode mode, int k_users, int n_qam, std::vector<int> candidates,
                             std::vector<cdouble> predictions, Eigen::MatrixXcd a_matrix)
    : mode_(mode), k_users_(k_users), n_qam_(n_qam), candidates_(std::move(candidates)),
      predictions_(std::move(predictions)), a_matrix_(std::move(a_matrix))
{
    if (k_users_ < 1 || candidates_.size() % static_cast<std::size_t>(k_users_) != 0 ||
        predictions_.size() != candidates_.size())
        throw std::invalid_argument("DetectorTable: inconsistent dimensions");
    if (a_matrix_.rows() != k_users_ || a_matrix_.cols() != k_users_)
        throw std::invalid_argument("DetectorTable: A matrix must be K x K");
}

std::span<const int> DetectorTable::candidate(std::size_t i) const
{
    const auto k = static_cast<std::size_t>(k_users_);
    return std::span<const int>(candidates_).subspan(i * k, k);
}

std::span<const cdouble> DetectorTable::prediction(std::size_t i) const
{
    const auto k = static_cast<std::size_t>(k_users_);
    return std::span<const cdouble>(predictions_).subspan(i * k, k);
}

Eigen::VectorXcd mrc(const ChannelMatrix& channel, std::span<const cdouble> adc_out)
{
    if (static_cast<int>(adc_out.size()) != channel.m_antennas())
        throw std::invalid_argument("mrc: ADC output length does not match the antenna count");
    const Eigen::Map<const Eigen::VectorXcd> s(adc_out.data(), static_cast<Eigen::Index>(adc_out.size()));
    return channel.entries().adjoint() * s;
}

Eigen::MatrixXcd inverse_gram(const ChannelMatrix& channel)
{
    const Eigen::MatrixXcd gram = channel.entries().adjoint() * channel.entries();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > max_gram_condition)
        throw numeric_error("H^H H is singular or ill-conditioned");
    return gram.inverse();
}

DetectorTable build_table(const ChannelMatrix& channel, const QamConstellation& constellation, double gain,
                          TableMode mode, const std::optional<QuantizerSpec>& quantizer,
                          const std::optional<NoiseModel>& noise, std::size_t max_candidates)
{
    if (mode == TableMode::nld_aware && (!quantizer || !noise))
        throw std::invalid_argument("build_table: nld_aware mode needs a quantizer and a noise model");
    if (!std::isfinite(gain))
        throw std::invalid_argument("build_table: gain must be finite");

    const int k_users = channel.k_users();
    const int m_antennas = channel.m_antennas();
    const int n_qam = constellation.order();
    const std::size_t count = candidate_count(n_qam, k_users, max_candidates);
    const auto k = static_cast<std::size_t>(k_users);

    Eigen::MatrixXcd a_matrix = inverse_gram(channel);
    const Eigen::MatrixXcd& h = channel.entries();
    const Eigen::MatrixXcd gram = h.adjoint() * h;

    std::vector<int> candidates(count * k);
    std::vector<cdouble> predictions(count * k);
    Eigen::VectorXcd x(k_users);
    Eigen::VectorXcd s_l(m_antennas);
    Eigen::VectorXcd y(k_users);

    for (std::size_t i = 0; i < count; ++i)
    {
        std::span<int> digits(candidates.data() + i * k, k);
        candidate_digits(i, n_qam, digits);
        for (std::size_t u = 0; u < k; ++u)
            x(static_cast<Eigen::Index>(u)) = constellation.symbol(digits[u]);

        if (mode == TableMode::naive)
        {
            y.noalias() = gram * x;
            y *= gain;
        }
        else
        {
            s_l.noalias() = h * x;
            s_l *= gain;
            for (Eigen::Index m = 0; m < m_antennas; ++m)
                s_l(m) = etf_complex(*quantizer, *noise, s_l(m));
            y.noalias() = h.adjoint() * s_l;
        }
        for (std::size_t u = 0; u < k; ++u)
            predictions[i * k + u] = y(static_cast<Eigen::Index>(u));
    }

    return DetectorTable(mode, k_users, n_qam, std::move(candidates), std::move(predictions), std::move(a_matrix));
}

DetectionResult detect_quadratic(const DetectorTable& table, std::span<const cdouble> y)
{
    const int k_users = table.k_users();
    if (static_cast<int>(y.size()) != k_users)
        throw std::invalid_argument("detect_quadratic: MRC output length does not match the user count");

    const Eigen::MatrixXcd& a = table.a_matrix();
    std::vector<cdouble> diff(static_cast<std::size_t>(k_users));
    std::uint64_t multiplies = 0;

    DetectionResult best;
    best.metric = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < table.size(); ++i)
    {
        const auto pred = table.prediction(i);
        for (int u = 0; u < k_users; ++u)
            diff[static_cast<std::size_t>(u)] = y[static_cast<std::size_t>(u)] - pred[static_cast<std::size_t>(u)];

        // d^H (A d): K^2 multiplies for A d, K more for the inner product.
        double metric = 0.0;
        for (int r = 0; r < k_users; ++r)
        {
            cdouble ad = 0.0;
            for (int c = 0; c < k_users; ++c)
                ad += a(r, c) * diff[static_cast<std::size_t>(c)];
            metric += (std::conj(diff[static_cast<std::size_t>(r)]) * ad).real();
            multiplies += static_cast<std::uint64_t>(k_users) + 1;
        }
        if (metric < best.metric)
        {
            best.metric = metric;
            best.candidate = i;
        }
    }

    const auto chosen = table.candidate(best.candidate);
    best.symbol_indices.assign(chosen.begin(), chosen.end());
    best.complexity_charged = multiplies;
    return best;
}

DetectionResult detect_bruteforce_ml(const ChannelMatrix& channel, std::span<const cdouble> adc_out,
                                     const QuantizerSpec& quantizer, const NoiseModel& noise,
                                     const QamConstellation& constellation, double gain,
                                     std::size_t max_candidates)
{
    const int m_antennas = channel.m_antennas();
    const int k_users = channel.k_users();
    if (static_cast<int>(adc_out.size()) != m_antennas)
        throw std::invalid_argument("detect_bruteforce_ml: ADC output length does not match the antenna count");

    // Observed cells, as (lower, upper) edges per real and imaginary ADC.
    struct Cell
    {
        double lower;
        double upper;
    };
    std::vector<Cell> cells_re(static_cast<std::size_t>(m_antennas));
    std::vector<Cell> cells_im(static_cast<std::size_t>(m_antennas));
    for (int m = 0; m < m_antennas; ++m)
    {
        const auto re = quantizer.level_index(adc_out[static_cast<std::size_t>(m)].real());
        const auto im = quantizer.level_index(adc_out[static_cast<std::size_t>(m)].imag());
        if (!re || !im)
            throw std::invalid_argument("detect_bruteforce_ml: ADC output " + std::to_string(m) +
                                        " is not a quantizer output pair");
        cells_re[static_cast<std::size_t>(m)] = {quantizer.cell_lower(*re), quantizer.cell_upper(*re)};
        cells_im[static_cast<std::size_t>(m)] = {quantizer.cell_lower(*im), quantizer.cell_upper(*im)};
    }

    const int n_qam = constellation.order();
    const std::size_t count = candidate_count(n_qam, k_users, max_candidates);
    const auto k = static_cast<std::size_t>(k_users);
    const Eigen::MatrixXcd& h = channel.entries();
    const double sigma = noise.sigma();
    const auto log_prob = [sigma](const Cell& cell, double mean) {
        return std::log(std::max(interval_probability(cell.lower, cell.upper, mean, sigma), probability_floor));
    };

    std::vector<int> digits(k);
    std::vector<cdouble> x(k);
    std::uint64_t multiplies = 0;

    DetectionResult best;
    best.metric = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i)
    {
        candidate_digits(i, n_qam, digits);
        for (std::size_t u = 0; u < k; ++u)
            x[u] = gain * constellation.symbol(digits[u]);

        double log_likelihood = 0.0;
        for (int m = 0; m < m_antennas; ++m)
        {
            cdouble s_l = 0.0;
            for (int u = 0; u < k_users; ++u)
                s_l += h(m, u) * x[static_cast<std::size_t>(u)];
            log_likelihood += log_prob(cells_re[static_cast<std::size_t>(m)], s_l.real()) +
                              log_prob(cells_im[static_cast<std::size_t>(m)], s_l.imag());
        }
        multiplies += static_cast<std::uint64_t>(m_antennas) * (k + 1);

        if (log_likelihood > best.metric)
        {
            best.metric = log_likelihood;
            best.candidate = i;
            best.symbol_indices = digits;
        }
    }
    best.complexity_charged = multiplies;
    return best;
}

std::uint64_t complexity_naive(std::int64_t m_antennas, std::int64_t k_users, std::int64_t n_qam)
{
    require_positive(m_antennas, "M");
    require_positive(k_users, "K");
    require_positive(n_qam, "n_qam");
    const auto m = static_cast<std::uint64_t>(m_antennas);
    const auto k = static_cast<std::uint64_t>(k_users);
    const auto n = static_cast<std::uint64_t>(n_qam);
    const std::uint64_t dist = checked_add(checked_mul(k, k), k);
    return checked_add(checked_mul(m, k), checked_mul(dist, checked_pow(n, k)));
}

std::uint64_t complexity_bruteforce(std::int64_t m_antennas, std::int64_t k_users, std::int64_t n_qam)
{
    require_positive(m_antennas, "M");
    require_positive(k_users, "K");
    require_positive(n_qam, "n_qam");
    const auto m = static_cast<std::uint64_t>(m_antennas);
    const auto k = static_cast<std::uint64_t>(k_users);
    const auto n = static_cast<std::uint64_t>(n_qam);
    return checked_mul(checked_mul(m, checked_add(k, 1)), checked_pow(n, k));
}

} // namespace lowadc
