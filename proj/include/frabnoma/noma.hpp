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

#ifndef FRABNOMA_NOMA_HPP
#define FRABNOMA_NOMA_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "frabnoma/channel.hpp"
#include "frabnoma/complex_matrix.hpp"
#include "frabnoma/frab.hpp"

namespace frabnoma
{

// Superposition power split on one beam: a0sq to the S1 message, a1sq to the S2 message.
// Invariants: a0sq + a1sq = 1, a0sq >= a1sq >= 0. a1sq = 0 degenerates to single-user transmission.
class PowerAllocation
{
public:
    PowerAllocation(double a0sq, double a1sq);

    static PowerAllocation single_user() { return PowerAllocation(1.0, 0.0); }

    double a0sq() const noexcept { return a0sq_; }
    double a1sq() const noexcept { return a1sq_; }

private:
    double a0sq_;
    double a1sq_;
};

// Target rates in bits per channel use and their SINR thresholds eps_i = 2^{R_i} - 1.
class RatePair
{
public:
    RatePair(double r0, double r1);

    double r0() const noexcept { return r0_; }
    double r1() const noexcept { return r1_; }
    double eps0() const noexcept { return eps0_; }
    double eps1() const noexcept { return eps1_; }

private:
    double r0_, r1_, eps0_, eps1_;
};

// SINR threshold for a rate: 2^R - 1.
double rate_threshold(double rate) noexcept;

// Dense row-major matrix of effective gains |x^H f_l|^2; column l is beam l.
class GainMatrix
{
public:
    GainMatrix() = default;
    GainMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    void resize(std::size_t rows, std::size_t cols)
    {
        rows_ = rows;
        cols_ = cols;
        data_.assign(rows * cols, 0.0);
    }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    double &operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// s1(k, l) = |h_k^H f_l|^2 and s2(i, l) = |g_i^H f_l|^2.
struct LinkGains
{
    GainMatrix s1;
    GainMatrix s2;
};

// SINR of the S1 user on beam k, treating its partner's message as noise:
//   g_k a0sq / (g_k a1sq + sum_{l != k} g_l + M/rho)
// `gains` holds the user's gain on every beam. Throws ConfigError for rho <= 0.
double sinr_s1(std::span<const double> gains, std::size_t beam, const PowerAllocation &pa, std::size_t antennas,
               double rho);

// SINR with which an S2 user decodes the S1 message of beam k (first SIC stage). Same form as sinr_s1.
double sinr_sic(std::span<const double> gains, std::size_t beam, const PowerAllocation &pa, std::size_t antennas,
                double rho);

// SINR of an S2 user's own message after cancelling the S1 message:
//   g_k a1sq / (sum_{l != k} g_l + M/rho)
double sinr_s2_postsic(std::span<const double> gains, std::size_t beam, const PowerAllocation &pa,
                       std::size_t antennas, double rho);

// S2 user maximizing sinr_sic on beam k; exact ties go to the lowest index. Several beams may pick
// the same user. Throws ConfigError if there are no S2 users.
std::size_t select_partner(std::size_t beam, const GainMatrix &s2_gains, const PowerAllocation &pa,
                           std::size_t antennas, double rho);

struct BeamOutcome
{
    std::size_t partner = 0;
    double sinr_s1 = 0.0;
    double sinr_sic = 0.0;
    double sinr_s2 = 0.0;
    bool outage_s1 = true;
    bool outage_s2 = true;
};

struct TrialOutcome
{
    std::vector<BeamOutcome> beams;
};

// One FRAB beam per S1 user (rows of the result).
ComplexMatrix quantize_beams(const ComplexMatrix &s1_channels, const Codebook &codebook);
void quantize_beams_into(const ComplexMatrix &s1_channels, const Codebook &codebook, ComplexMatrix &beams);

void compute_link_gains(const ChannelRealization &channels, const ComplexMatrix &beams, LinkGains &out);

void evaluate_noma_into(const LinkGains &gains, const PowerAllocation &pa, const RatePair &rates,
                        std::size_t antennas, double rho, TrialOutcome &out);
TrialOutcome evaluate_noma(const LinkGains &gains, const PowerAllocation &pa, const RatePair &rates,
                           std::size_t antennas, double rho);

// Outage of a user served alone on beam k at full power and the given target rate.
bool single_user_outage(std::span<const double> gains, std::size_t beam, std::size_t antennas, double rho,
                        double rate);

// Per-beam OMA outage: each beam carries only its S1 user at rate R0 + R1.
std::vector<std::uint8_t> evaluate_oma(const GainMatrix &s1_gains, const RatePair &rates, std::size_t antennas,
                                       double rho);

// Full NOMA chain for one realization: quantize beams, select partners, SINRs, outage flags.
TrialOutcome run_trial(const ChannelRealization &channels, const Codebook &codebook, const PowerAllocation &pa,
                       const RatePair &rates, double rho);

std::vector<std::uint8_t> run_trial_oma(const ChannelRealization &channels, const Codebook &codebook,
                                        const RatePair &rates, double rho);

// Rate delivered in one trial: sum over beams of R0 [S1 ok] + R1 [S2 ok].
double noma_sum_rate(const TrialOutcome &outcome, const RatePair &rates) noexcept;
// sum over beams of (R0 + R1) [no outage]
double oma_sum_rate(std::span<const std::uint8_t> outages, const RatePair &rates) noexcept;

} // namespace frabnoma

#endif
