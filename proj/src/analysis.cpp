// SPDX-License-Identifier: Apache-2.0
//
// frab-noma: NOMA downlink simulation with finite-resolution analog beamforming
// Copyright (C) 2026 The frab-noma authors
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

#include "frabnoma/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "frabnoma/channel.hpp"
#include "frabnoma/error.hpp"
#include "frabnoma/special_functions.hpp"

namespace frabnoma
{

namespace
{
ApproxProbability clamp_probability(double raw) noexcept
{
    return {std::clamp(raw, 0.0, 1.0), raw};
}

std::optional<double> threshold(double eps, double own_power, double later_power, double noise)
{
    const double denominator = own_power - eps * later_power;
    if (!(denominator > 0.0))
        return std::nullopt;
    return eps * noise / denominator;
}
} // namespace

Thresholds thresholds(const PowerAllocation &pa, const RatePair &rates, std::size_t antennas, double rho)
{
    if (!(rho > 0.0))
        throw ConfigError("transmit SNR rho must be positive");
    const double noise = static_cast<double>(antennas) / rho;
    return {threshold(rates.eps0(), pa.a0sq(), pa.a1sq(), noise), threshold(rates.eps1(), pa.a1sq(), 0.0, noise)};
}

ApproxProbability folded_sum_cdf_small(double z, std::size_t antennas)
{
    if (antennas == 0)
        throw InputError("folded_sum_cdf_small: M must be at least 1");
    if (!(z >= 0.0))
        throw InputError("folded_sum_cdf_small: z must be non-negative");
    if (z == 0.0)
        return {0.0, 0.0};
    const double m = static_cast<double>(antennas);
    const double log_value =
        m * std::numbers::ln2 - 0.5 * m * std::log(std::numbers::pi) + 0.5 * m * std::log(z) - std::lgamma(m + 1.0);
    return clamp_probability(std::exp(log_value));
}

ApproxProbability beam_gain_cdf_small(double y, std::size_t antennas, double distance, double alpha)
{
    if (antennas < 2)
        throw InputError("beam_gain_cdf_small: requires M >= 2");
    if (!(y >= 0.0))
        throw InputError("beam_gain_cdf_small: y must be non-negative");
    if (y == 0.0)
        return {0.0, 0.0};
    const double m = static_cast<double>(antennas);
    const double scaled = y * path_loss(distance, alpha);
    const double log_value = m * std::numbers::ln2 + 0.5 * (m + 1.0) * std::log(scaled) +
                             std::log(special::beta(1.5, 0.5 * m)) - 0.5 * m * std::log(std::numbers::pi) -
                             std::lgamma(m) - 0.5 * std::log(m) - std::log(special::gamma_half_integer(0.5));
    return clamp_probability(std::exp(log_value));
}

double z0_cdf(double z, std::size_t antennas, double distance, double alpha)
{
    if (antennas == 0)
        throw InputError("z0_cdf: M must be at least 1");
    const double x = path_loss(distance, alpha) * z / static_cast<double>(antennas);
    return special::lower_incomplete_gamma_half(x) / special::gamma_half_integer(0.5);
}

GaussChebyshevRule::GaussChebyshevRule(std::size_t nodes, double r1, double alpha)
{
    if (nodes == 0)
        throw InputError("Gauss-Chebyshev rule needs at least one node");
    const double n_total = static_cast<double>(nodes);
    eta_.reserve(nodes);
    w_.reserve(nodes);
    c_.reserve(nodes);
    for (std::size_t n = 1; n <= nodes; ++n)
    {
        const double eta = std::cos((2.0 * static_cast<double>(n) - 1.0) * std::numbers::pi / (2.0 * n_total));
        eta_.push_back(eta);
        w_.push_back(std::numbers::pi / (2.0 * n_total) * std::sqrt(1.0 - eta * eta) * (eta + 1.0));
        c_.push_back(1.0 + std::pow(0.5 * r1 * eta + 0.5 * r1, alpha));
    }
}

double GaussChebyshevRule::weight_sum() const noexcept
{
    double s = 0.0;
    for (double w : w_)
        s += w;
    return s;
}

double GaussChebyshevRule::cdf(double y, std::size_t antennas) const
{
    if (!(y >= 0.0))
        throw InputError("composite CDF argument must be non-negative");
    const double m = static_cast<double>(antennas);
    double sum = 0.0;
    for (std::size_t n = 0; n < w_.size(); ++n)
        sum += w_[n] * -std::expm1(-c_[n] * y / m);
    return sum;
}

ApproxProbability composite_cdf_gc(double y, std::size_t antennas, double alpha, double r1, std::size_t nodes)
{
    return clamp_probability(GaussChebyshevRule(nodes, r1, alpha).cdf(y, antennas));
}

ApproxProbability s1_outage_analytical(double rho, const PowerAllocation &pa, const RatePair &rates,
                                       std::size_t antennas, double distance, double alpha)
{
    const Thresholds t = thresholds(pa, rates, antennas, rho);
    if (!t.phi0)
        return {1.0, 1.0};
    return beam_gain_cdf_small(*t.phi0, antennas, distance, alpha);
}

ApproxProbability s2_outage_analytical(double rho, const PowerAllocation &pa, const RatePair &rates,
                                       std::size_t antennas, double alpha, double r1, std::size_t s2_size,
                                       std::size_t nodes)
{
    const Thresholds t = thresholds(pa, rates, antennas, rho);
    if (!t.feasible())
        return {1.0, 1.0};
    const double f = composite_cdf_gc(std::max(*t.phi0, *t.phi1), antennas, alpha, r1, nodes).unclamped;
    return clamp_probability(std::pow(f, static_cast<double>(s2_size)));
}

SlopeFit fit_diversity_slope(std::span<const CurvePoint> curve, IndexRange window)
{
    if (window.end > curve.size())
        throw InputError("slope window extends past the end of the curve");

    SlopeFit fit;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = window.begin; i < window.end; ++i)
    {
        const CurvePoint &p = curve[i];
        if (!(p.outage > 0.0) || !(p.rho > 0.0))
        {
            fit.warnings.push_back("excluded point " + std::to_string(i) + ": non-positive outage or rho");
            continue;
        }
        const double x = std::log10(p.rho);
        const double y = std::log10(p.outage);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++fit.used;
    }
    if (fit.used < 3)
        throw InsufficientData("slope fit needs at least 3 usable points, got " + std::to_string(fit.used));

    const double n = static_cast<double>(fit.used);
    const double denominator = n * sxx - sx * sx;
    if (!(denominator > 0.0))
        throw InsufficientData("slope fit needs at least two distinct rho values");
    fit.slope = (n * sxy - sx * sy) / denominator;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

IndexRange high_snr_window(std::span<const CurvePoint> curve, double floor)
{
    std::optional<std::size_t> last;
    for (std::size_t i = 0; i < curve.size(); ++i)
        if (curve[i].outage >= floor && curve[i].outage > 0.0)
            last = i;
    if (!last)
        return {};
    const double rho_low = curve[*last].rho / 10.0;
    std::size_t begin = *last;
    while (begin > 0 && curve[begin - 1].rho >= rho_low * (1.0 - 1e-12) && curve[begin - 1].outage >= floor)
        --begin;
    return {begin, *last + 1};
}

IndexRange outage_band_window(std::span<const CurvePoint> curve, double lo, double hi)
{
    IndexRange range{curve.size(), curve.size()};
    bool found = false;
    for (std::size_t i = 0; i < curve.size(); ++i)
    {
        if (curve[i].outage >= lo && curve[i].outage <= hi)
        {
            if (!found)
                range.begin = i;
            range.end = i + 1;
            found = true;
        }
    }
    return found ? range : IndexRange{};
}

} // namespace frabnoma
