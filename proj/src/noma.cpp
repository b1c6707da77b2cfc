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

#include "frabnoma/noma.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "frabnoma/error.hpp"
#include "frabnoma/kernels.hpp"

namespace frabnoma
{

namespace
{
constexpr double kPowerSumTolerance = 1e-9;

double noise_term(std::size_t antennas, double rho)
{
    if (!(rho > 0.0))
        throw ConfigError("transmit SNR rho must be positive");
    return static_cast<double>(antennas) / rho;
}

double inter_beam_interference(std::span<const double> gains, std::size_t beam)
{
    if (beam >= gains.size())
        throw InputError("beam index " + std::to_string(beam) + " out of range");
    double sum = 0.0;
    for (std::size_t l = 0; l < gains.size(); ++l)
        if (l != beam)
            sum += gains[l];
    return sum;
}

double superposed_sinr(std::span<const double> gains, std::size_t beam, const PowerAllocation &pa,
                       std::size_t antennas, double rho)
{
    const double noise = noise_term(antennas, rho);
    const double interference = inter_beam_interference(gains, beam);
    const double g = gains[beam];
    return g * pa.a0sq() / (g * pa.a1sq() + interference + noise);
}
} // namespace

PowerAllocation::PowerAllocation(double a0sq, double a1sq) : a0sq_(a0sq), a1sq_(a1sq)
{
    if (!(a0sq >= 0.0) || !(a1sq >= 0.0))
        throw ConfigError("power fractions must be non-negative");
    if (std::abs(a0sq + a1sq - 1.0) > kPowerSumTolerance)
        throw ConfigError("power split must sum to 1 (a0sq + a1sq = " + std::to_string(a0sq + a1sq) + ")");
    if (a0sq < a1sq)
        throw ConfigError("power ordering violated: a0sq must be >= a1sq");
}

double rate_threshold(double rate) noexcept
{
    return std::exp2(rate) - 1.0;
}

RatePair::RatePair(double r0, double r1) : r0_(r0), r1_(r1), eps0_(rate_threshold(r0)), eps1_(rate_threshold(r1))
{
    if (!(r0 > 0.0) || !(r1 > 0.0))
        throw ConfigError("target rates R0 and R1 must be positive");
}

double sinr_s1(std::span<const double> gains, std::size_t beam, const PowerAllocation &pa, std::size_t antennas,
               double rho)
{
    return superposed_sinr(gains, beam, pa, antennas, rho);
}

double sinr_sic(std::span<const double> gains, std::size_t beam, const PowerAllocation &pa, std::size_t antennas,
                double rho)
{
    return superposed_sinr(gains, beam, pa, antennas, rho);
}

double sinr_s2_postsic(std::span<const double> gains, std::size_t beam, const PowerAllocation &pa,
                       std::size_t antennas, double rho)
{
    const double noise = noise_term(antennas, rho);
    const double interference = inter_beam_interference(gains, beam);
    return gains[beam] * pa.a1sq() / (interference + noise);
}

std::size_t select_partner(std::size_t beam, const GainMatrix &s2_gains, const PowerAllocation &pa,
                           std::size_t antennas, double rho)
{
    if (s2_gains.rows() == 0)
        throw ConfigError("partner selection needs at least one S2 user");
    std::size_t best = 0;
    double best_sinr = sinr_sic(s2_gains.row(0), beam, pa, antennas, rho);
    for (std::size_t i = 1; i < s2_gains.rows(); ++i)
    {
        const double s = sinr_sic(s2_gains.row(i), beam, pa, antennas, rho);
        if (s > best_sinr)
        {
            best = i;
            best_sinr = s;
        }
    }
    return best;
}

void quantize_beams_into(const ComplexMatrix &s1_channels, const Codebook &codebook, ComplexMatrix &beams)
{
    if (beams.rows() != s1_channels.rows() || beams.cols() != s1_channels.cols())
        beams.resize(s1_channels.rows(), s1_channels.cols());
    for (std::size_t k = 0; k < s1_channels.rows(); ++k)
        quantize_into(s1_channels.row(k), codebook, beams.row(k));
}

ComplexMatrix quantize_beams(const ComplexMatrix &s1_channels, const Codebook &codebook)
{
    ComplexMatrix beams(s1_channels.rows(), s1_channels.cols());
    quantize_beams_into(s1_channels, codebook, beams);
    return beams;
}

void compute_link_gains(const ChannelRealization &channels, const ComplexMatrix &beams, LinkGains &out)
{
    const std::size_t n_beams = beams.rows();
    if (beams.cols() != channels.antennas() || channels.s2.cols() != channels.antennas())
        throw InputError("compute_link_gains: antenna count mismatch");

    out.s1.resize(channels.s1.rows(), n_beams);
    out.s2.resize(channels.s2.rows(), n_beams);

    // Column-at-a-time through the batched kernel, then scatter into row-major storage.
    std::vector<double> column(std::max(channels.s1.rows(), channels.s2.rows()));
    for (std::size_t l = 0; l < n_beams; ++l)
    {
        const auto f = beams.row(l);
        kernels::hermitian_gains(channels.s1, f, std::span(column).first(channels.s1.rows()));
        for (std::size_t k = 0; k < channels.s1.rows(); ++k)
            out.s1(k, l) = column[k];
        kernels::hermitian_gains(channels.s2, f, std::span(column).first(channels.s2.rows()));
        for (std::size_t i = 0; i < channels.s2.rows(); ++i)
            out.s2(i, l) = column[i];
    }
}

void evaluate_noma_into(const LinkGains &gains, const PowerAllocation &pa, const RatePair &rates,
                        std::size_t antennas, double rho, TrialOutcome &out)
{
    const std::size_t n_beams = gains.s1.cols();
    if (gains.s1.rows() != n_beams || gains.s2.cols() != n_beams)
        throw InputError("evaluate_noma: gain tables are inconsistent with the beam count");

    out.beams.resize(n_beams);
    for (std::size_t k = 0; k < n_beams; ++k)
    {
        BeamOutcome &b = out.beams[k];
        b.sinr_s1 = sinr_s1(gains.s1.row(k), k, pa, antennas, rho);
        b.partner = select_partner(k, gains.s2, pa, antennas, rho);
        const auto partner_gains = gains.s2.row(b.partner);
        b.sinr_sic = sinr_sic(partner_gains, k, pa, antennas, rho);
        b.sinr_s2 = sinr_s2_postsic(partner_gains, k, pa, antennas, rho);
        b.outage_s1 = b.sinr_s1 < rates.eps0();
        // The partner must cancel the S1 message before it can decode its own.
        b.outage_s2 = b.sinr_sic < rates.eps0() || b.sinr_s2 < rates.eps1();
    }
}

TrialOutcome evaluate_noma(const LinkGains &gains, const PowerAllocation &pa, const RatePair &rates,
                           std::size_t antennas, double rho)
{
    TrialOutcome out;
    evaluate_noma_into(gains, pa, rates, antennas, rho, out);
    return out;
}

bool single_user_outage(std::span<const double> gains, std::size_t beam, std::size_t antennas, double rho,
                        double rate)
{
    return sinr_s1(gains, beam, PowerAllocation::single_user(), antennas, rho) < rate_threshold(rate);
}

std::vector<std::uint8_t> evaluate_oma(const GainMatrix &s1_gains, const RatePair &rates, std::size_t antennas,
                                       double rho)
{
    std::vector<std::uint8_t> outage(s1_gains.cols());
    for (std::size_t k = 0; k < s1_gains.cols(); ++k)
        outage[k] = single_user_outage(s1_gains.row(k), k, antennas, rho, rates.r0() + rates.r1()) ? 1 : 0;
    return outage;
}

TrialOutcome run_trial(const ChannelRealization &channels, const Codebook &codebook, const PowerAllocation &pa,
                       const RatePair &rates, double rho)
{
    const ComplexMatrix beams = quantize_beams(channels.s1, codebook);
    LinkGains gains;
    compute_link_gains(channels, beams, gains);
    return evaluate_noma(gains, pa, rates, channels.antennas(), rho);
}

std::vector<std::uint8_t> run_trial_oma(const ChannelRealization &channels, const Codebook &codebook,
                                        const RatePair &rates, double rho)
{
    const ComplexMatrix beams = quantize_beams(channels.s1, codebook);
    LinkGains gains;
    compute_link_gains(channels, beams, gains);
    return evaluate_oma(gains.s1, rates, channels.antennas(), rho);
}

double noma_sum_rate(const TrialOutcome &outcome, const RatePair &rates) noexcept
{
    double rate = 0.0;
    for (const auto &b : outcome.beams)
        rate += (b.outage_s1 ? 0.0 : rates.r0()) + (b.outage_s2 ? 0.0 : rates.r1());
    return rate;
}

double oma_sum_rate(std::span<const std::uint8_t> outages, const RatePair &rates) noexcept
{
    double rate = 0.0;
    for (auto o : outages)
        rate += o ? 0.0 : rates.r0() + rates.r1();
    return rate;
}

} // namespace frabnoma
