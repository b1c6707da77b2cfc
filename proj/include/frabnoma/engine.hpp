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

#ifndef FRABNOMA_ENGINE_HPP
#define FRABNOMA_ENGINE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "frabnoma/analysis.hpp"
#include "frabnoma/channel.hpp"
#include "frabnoma/noma.hpp"

namespace frabnoma
{

// Every scenario parameter of one experiment.
struct SystemConfig
{
    std::size_t antennas = 30; // M
    std::size_t nq = 2;        // supported phase shifts
    std::size_t s1_size = 3;
    std::size_t s2_size = 300;
    ModelParams geometry;
    double a0sq = 0.75;
    double a1sq = 0.25;
    double rate0 = 1.0; // R0, BPCU
    double rate1 = 1.5; // R1, BPCU
    std::vector<double> tx_dbm;
    double noise_dbm = -30.0;
    std::size_t num_trials = 10000;
    std::uint64_t seed = 1;
    std::size_t gc_nodes = 100; // Gauss-Chebyshev nodes for the analytical S2 curve

    // Throws ConfigError naming the first violated invariant.
    void validate() const;

    PowerAllocation power() const { return PowerAllocation(a0sq, a1sq); }
    RatePair rates() const { return RatePair(rate0, rate1); }
    double rho(std::size_t sweep_index) const;
};

// Linear transmit-power-to-noise ratio from dBm values.
double rho_from_dbm(double tx_dbm, double noise_dbm) noexcept;

// Inclusive arithmetic sweep lo, lo+step, ..., up to hi (within 1e-9 of a step).
std::vector<double> make_sweep(double lo, double hi, double step);

// The closed forms cover one beam, one-bit FRAB and Rayleigh fading only.
bool analytical_applicable(const SystemConfig &config) noexcept;

// Ordered (key, value) listing of every field; the value strings round-trip exactly.
std::vector<std::pair<std::string, std::string>> config_fields(const SystemConfig &config);

// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

// FNV-1a over config_fields.
std::uint64_t config_hash(const SystemConfig &config);

enum class Provenance
{
    Simulated,
    Analytical
};

std::string_view to_string(Provenance provenance) noexcept;

struct Estimate
{
    double mean = 0.0;
    double ci95_half = 0.0;
};

struct Series
{
    std::string name;
    Provenance provenance = Provenance::Simulated;
    std::size_t n_trials = 0;
    std::vector<Estimate> values; // one per sweep point
};

struct CurveMetadata
{
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::size_t num_trials = 0;
};

// Sweep result. Simulated series:
//   outage_s1, outage_s2, outage_oma, outage_s1_perfect  (pooled over beams)
//   noma_sum_rate, oma_sum_rate                          (BPCU, summed over beams)
// Analytical series when analytical_applicable(): outage_s1_analytical, outage_s2_analytical.
struct OutageCurve
{
    std::vector<double> tx_dbm;
    std::vector<double> rho;
    std::vector<Series> series;
    CurveMetadata metadata;

    // Throws InputError if the series does not exist.
    const Series &get(std::string_view name) const;
    bool has(std::string_view name) const noexcept;
    std::vector<CurvePoint> points(std::string_view name) const;
};

// 95% half-width for an observed frequency: normal approximation, Wilson interval when fewer than
// ten events (or non-events) were seen.
double proportion_ci95(std::size_t events, std::size_t samples) noexcept;

struct RunOptions
{
    unsigned workers = 1; // 0 = hardware concurrency
};

// Monte Carlo sweep. Trials are split into fixed-size chunks whose tallies are reduced in chunk
// order, so the result is a pure function of the config regardless of worker count.
OutageCurve run_sweep(const SystemConfig &config, const RunOptions &options = {});

// Analytical series only (no simulation). Requires analytical_applicable().
OutageCurve analytical_curve(const SystemConfig &config);

} // namespace frabnoma

#endif
