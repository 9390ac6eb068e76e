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

#include "lowadc/quant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lowadc
{

namespace
{

constexpr double inv_sqrt2 = 0.70710678118654752440;

// Beyond this |z| the double-precision erf is exactly +/-1.
constexpr double erf_saturation = 6.5;

void require_finite(double s, const char* what)
{
    if (!std::isfinite(s))
        throw std::invalid_argument(std::string(what) + ": input must be finite");
}

// Pr(a <= Z < b) for Z ~ N(0, 1/2) in erf units, i.e. 0.5 * (erf(b) - erf(a)).
double erf_interval(double a, double b)
{
    if (a >= 0.0)
        return 0.5 * (std::erfc(a) - std::erfc(b));
    if (b <= 0.0)
        return 0.5 * (std::erfc(-b) - std::erfc(-a));
    return 0.5 * (std::erf(b) - std::erf(a));
}

} // namespace

QuantizerSpec::QuantizerSpec(int bits, double delta)
    : bits_(bits), num_levels_(0), delta_(delta)
{
    if (bits < 1 || bits > max_bits)
        throw std::invalid_argument("QuantizerSpec: bits must lie in [1, 16], got " + std::to_string(bits));
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw std::invalid_argument("QuantizerSpec: delta must be positive and finite");

    num_levels_ = 1 << bits;
    levels_.resize(static_cast<std::size_t>(num_levels_));
    for (int r = 1; r <= num_levels_; ++r)
        levels_[static_cast<std::size_t>(r - 1)] = (2.0 * r - num_levels_ - 1.0) * delta_ / 2.0;
}

int QuantizerSpec::cell_index(double s) const
{
    require_finite(s, "quantize");
    const double half = num_levels_ / 2;
    const double k = std::clamp(std::floor(s / delta_), -half, half - 1.0);
    return static_cast<int>(k + half);
}

std::optional<int> QuantizerSpec::level_index(double v) const
{
    if (!std::isfinite(v))
        return std::nullopt;
    const double k = std::round(v / delta_ + num_levels_ / 2.0 - 0.5);
    if (k < 0.0 || k >= num_levels_)
        return std::nullopt;
    const int index = static_cast<int>(k);
    if (levels_[static_cast<std::size_t>(index)] != v)
        return std::nullopt;
    return index;
}

double QuantizerSpec::cell_lower(int index) const
{
    if (index < 0 || index >= num_levels_)
        throw std::invalid_argument("QuantizerSpec: level index out of range");
    if (index == 0)
        return -std::numeric_limits<double>::infinity();
    return (index - num_levels_ / 2) * delta_;
}

double QuantizerSpec::cell_upper(int index) const
{
    if (index < 0 || index >= num_levels_)
        throw std::invalid_argument("QuantizerSpec: level index out of range");
    if (index == num_levels_ - 1)
        return std::numeric_limits<double>::infinity();
    return (index + 1 - num_levels_ / 2) * delta_;
}

NoiseModel::NoiseModel(double sigma2) : sigma2_(sigma2)
{
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw std::invalid_argument("NoiseModel: sigma2 must be positive and finite");
}

double NoiseModel::sigma() const noexcept { return std::sqrt(sigma2_); }

QuantizerSpec make_quantizer(int bits, double delta) { return QuantizerSpec(bits, delta); }

double quantize_real(const QuantizerSpec& spec, double s) { return spec.level(spec.cell_index(s)); }

std::complex<double> quantize_complex(const QuantizerSpec& spec, std::complex<double> s)
{
    return {quantize_real(spec, s.real()), quantize_real(spec, s.imag())};
}

double output_probability(const QuantizerSpec& spec, const NoiseModel& noise, double s_l, int index)
{
    if (index < 0 || index >= spec.num_levels())
        throw std::invalid_argument("output_probability: level index out of range");
    require_finite(s_l, "output_probability");

    return interval_probability(spec.cell_lower(index), spec.cell_upper(index), s_l, noise.sigma());
}

double interval_probability(double lower, double upper, double mean, double sigma)
{
    const double scale = inv_sqrt2 / sigma;
    return erf_interval((lower - mean) * scale, (upper - mean) * scale);
}

double log_output_probability(const QuantizerSpec& spec, const NoiseModel& noise, double s_l, int index)
{
    return std::log(std::max(output_probability(spec, noise, s_l, index), probability_floor));
}

double etf_real(const QuantizerSpec& spec, double sigma2, double s_l)
{
    require_finite(s_l, "etf_real");
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2))
        throw std::invalid_argument("etf_real: sigma2 must be non-negative and finite");
    if (sigma2 == 0.0)
        return quantize_real(spec, s_l);

    // Thresholds come in mirrored pairs +/-t (plus t = 0), summed pairwise so
    // that F(-s) == -F(s) holds exactly. Terms outside the erf saturation
    // window are exactly +/-1 and skip the erf call.
    const double scale = inv_sqrt2 / std::sqrt(sigma2);
    const auto term = [scale](double offset) {
        const double z = offset * scale;
        if (z > erf_saturation)
            return 1.0;
        if (z < -erf_saturation)
            return -1.0;
        return std::erf(z);
    };

    const int half = spec.num_levels() / 2;
    double sum = term(s_l);
    for (int i = 1; i < half; ++i)
    {
        const double t = i * spec.delta();
        sum += term(s_l - t) + term(s_l + t);
    }
    return 0.5 * spec.delta() * sum;
}

double etf_real(const QuantizerSpec& spec, const NoiseModel& noise, double s_l)
{
    return etf_real(spec, noise.sigma2(), s_l);
}

std::complex<double> etf_complex(const QuantizerSpec& spec, double sigma2, std::complex<double> s_l)
{
    return {etf_real(spec, sigma2, s_l.real()), etf_real(spec, sigma2, s_l.imag())};
}

std::complex<double> etf_complex(const QuantizerSpec& spec, const NoiseModel& noise, std::complex<double> s_l)
{
    return etf_complex(spec, noise.sigma2(), s_l);
}

std::complex<double> equivalent_noise(const QuantizerSpec& spec, const NoiseModel& noise,
                                      std::complex<double> s_l, std::complex<double> s_o)
{
    if (!spec.level_index(s_o.real()) || !spec.level_index(s_o.imag()))
        throw std::invalid_argument("equivalent_noise: s_o is not a quantizer output");
    return s_o - etf_complex(spec, noise, s_l);
}

} // namespace lowadc
