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

#ifndef FRABNOMA_ANALYSIS_HPP
#define FRABNOMA_ANALYSIS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frabnoma/noma.hpp"

// Closed-form and asymptotic outage expressions for the single-beam, one-bit FRAB, Rayleigh case,
// plus the high-SNR slope fit used to read off diversity orders.

namespace frabnoma
{

// Gain thresholds below which decoding fails. phi_i is absent when
// a_i^2 <= eps_i * sum_{n > i} a_n^2: the corresponding outage probability is then identically one.
struct Thresholds
{
    std::optional<double> phi0;
    std::optional<double> phi1;

    bool feasible() const noexcept { return phi0.has_value() && phi1.has_value(); }
};

Thresholds thresholds(const PowerAllocation &pa, const RatePair &rates, std::size_t antennas, double rho);

// The asymptotic expressions overshoot 1 away from the origin. `value` is clamped to [0, 1];
// `unclamped` is the raw formula.
struct ApproxProbability
{
    double value;
    double unclamped;
};

// Small-z CDF of |sum_{m=1}^M z_m|^2 for M i.i.d. folded normals of variance 1/2:
//   (2^M / pi^{M/2}) z^{M/2} / M!
ApproxProbability folded_sum_cdf_small(double z, std::size_t antennas);

// Small-y CDF of the one-bit FRAB effective gain |h^H f|^2 of a Rayleigh user at distance d:
//   2^M [y(1+d^a)]^{(M+1)/2} B(3/2, M/2) / (pi^{M/2} (M-1)! sqrt(M) Gamma(1/2))
// Requires M >= 2; throws InputError otherwise.
ApproxProbability beam_gain_cdf_small(double y, std::size_t antennas, double distance, double alpha);

// CDF of z0 = |sum_m sign(Re h_m) Im h_m|^2: gamma(1/2, (1+d^a) z / M) / Gamma(1/2).
double z0_cdf(double z, std::size_t antennas, double distance, double alpha);

// N-node Gauss-Chebyshev rule that averages exp(-c y / M) over a user distance uniform on the disk.
class GaussChebyshevRule
{
public:
    GaussChebyshevRule(std::size_t nodes, double r1, double alpha);

    std::size_t size() const noexcept { return eta_.size(); }
    std::span<const double> nodes() const noexcept { return eta_; }
    std::span<const double> weights() const noexcept { return w_; }
    std::span<const double> rates() const noexcept { return c_; }
    double weight_sum() const noexcept;

    // sum_n w_n (1 - exp(-c_n y / M))
    double cdf(double y, std::size_t antennas) const;

private:
    std::vector<double> eta_;
    std::vector<double> w_;
    std::vector<double> c_;
};

// CDF of the composite gain |g^H f|^2 of a randomly placed S2 user.
ApproxProbability composite_cdf_gc(double y, std::size_t antennas, double alpha, double r1, std::size_t nodes);

// P(|h^H f|^2 < phi0) via beam_gain_cdf_small; 1 when phi0 is infeasible.
ApproxProbability s1_outage_analytical(double rho, const PowerAllocation &pa, const RatePair &rates,
                                       std::size_t antennas, double distance, double alpha);

// F(max(phi0, phi1))^{|S2|} with F the Gauss-Chebyshev composite CDF; 1 when infeasible.
ApproxProbability s2_outage_analytical(double rho, const PowerAllocation &pa, const RatePair &rates,
                                       std::size_t antennas, double alpha, double r1, std::size_t s2_size,
                                       std::size_t nodes);

struct CurvePoint
{
    double rho;    // linear
    double outage; // probability
};

// Half-open index range [begin, end).
struct IndexRange
{
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const noexcept { return end > begin ? end - begin : 0; }
};

struct SlopeFit
{
    double slope = 0.0;     // d log10(outage) / d log10(rho)
    double intercept = 0.0; // at log10(rho) = 0
    std::size_t used = 0;
    std::vector<std::string> warnings; // one per excluded point

    double diversity() const noexcept { return -slope; }
};

// Least-squares slope of log10(outage) against log10(rho) over `window`. Points with outage <= 0
// are skipped with a warning; fewer than three usable points throws InsufficientData.
SlopeFit fit_diversity_slope(std::span<const CurvePoint> curve, IndexRange window);

// Points with outage >= floor that lie within one decade of the largest such rho.
IndexRange high_snr_window(std::span<const CurvePoint> curve, double floor);

// Points with outage inside [lo, hi]; the curve is assumed non-increasing, so they are contiguous
// and the range spans the first to the last qualifying point.
IndexRange outage_band_window(std::span<const CurvePoint> curve, double lo, double hi);

} // namespace frabnoma

#endif
