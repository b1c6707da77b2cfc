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

#include "frabnoma/engine.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

#include "frabnoma/error.hpp"
#include "frabnoma/frab.hpp"
#include "frabnoma/random_stream.hpp"

namespace frabnoma
{

namespace
{
constexpr double kZ95 = 1.959963984540054;
constexpr std::size_t kChunkTrials = 256;

struct ChunkTally
{
    std::size_t trials = 0;
    std::size_t outage_s1 = 0;
    std::size_t outage_s2 = 0;
    std::size_t outage_oma = 0;
    std::size_t outage_perfect = 0;
    double noma_rate = 0.0;
    double noma_rate_sq = 0.0;
    double oma_rate = 0.0;
    double oma_rate_sq = 0.0;
};

// Per-worker scratch space, reused across trials.
class TrialRunner
{
public:
    explicit TrialRunner(const SystemConfig &config)
        : config_(config), codebook_(config.nq), pa_(config.power()), rates_(config.rates())
    {
    }

    ChunkTally run_chunk(std::uint32_t sweep_index, std::size_t first_trial, std::size_t count)
    {
        ChunkTally tally;
        const double rho = config_.rho(sweep_index);
        const std::size_t m = config_.antennas;
        for (std::size_t t = first_trial; t < first_trial + count; ++t)
        {
            RandomStream rng = stream_for_trial(config_.seed, sweep_index, t);
            draw_channels(config_.geometry, m, config_.s1_size, config_.s2_size, rng, channels_);
            quantize_beams_into(channels_.s1, codebook_, beams_);
            compute_link_gains(channels_, beams_, gains_);
            evaluate_noma_into(gains_, pa_, rates_, m, rho, outcome_);

            double oma_rate = 0.0;
            for (std::size_t k = 0; k < config_.s1_size; ++k)
            {
                const BeamOutcome &b = outcome_.beams[k];
                tally.outage_s1 += b.outage_s1 ? 1 : 0;
                tally.outage_s2 += b.outage_s2 ? 1 : 0;
                const bool oma_out = single_user_outage(gains_.s1.row(k), k, m, rho, rates_.r0() + rates_.r1());
                tally.outage_oma += oma_out ? 1 : 0;
                oma_rate += oma_out ? 0.0 : rates_.r0() + rates_.r1();
            }
            const double noma_rate = noma_sum_rate(outcome_, rates_);
            tally.noma_rate += noma_rate;
            tally.noma_rate_sq += noma_rate * noma_rate;
            tally.oma_rate += oma_rate;
            tally.oma_rate_sq += oma_rate * oma_rate;

            tally.outage_perfect += perfect_outages(rho);
            ++tally.trials;
        }
        return tally;
    }

private:
    // S1 outages on this realization if every beam were the ideal continuous-phase beamformer.
    std::size_t perfect_outages(double rho)
    {
        const std::size_t n = config_.s1_size;
        perfect_beams_.resize(n, config_.antennas);
        for (std::size_t k = 0; k < n; ++k)
            perfect_beamformer_into(channels_.s1.row(k), perfect_beams_.row(k));
        perfect_gains_.resize(n, n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l)
                perfect_gains_(k, l) = k == l ? perfect_gain(channels_.s1.row(k))
                                              : effective_gain(channels_.s1.row(k), perfect_beams_.row(l));
        std::size_t outages = 0;
        for (std::size_t k = 0; k < n; ++k)
            outages += sinr_s1(perfect_gains_.row(k), k, pa_, config_.antennas, rho) < rates_.eps0() ? 1 : 0;
        return outages;
    }

    const SystemConfig &config_;
    Codebook codebook_;
    PowerAllocation pa_;
    RatePair rates_;
    ChannelRealization channels_;
    ComplexMatrix beams_;
    ComplexMatrix perfect_beams_;
    GainMatrix perfect_gains_;
    LinkGains gains_;
    TrialOutcome outcome_;
};

Estimate proportion(std::size_t events, std::size_t samples)
{
    return {static_cast<double>(events) / static_cast<double>(samples), proportion_ci95(events, samples)};
}

Estimate sample_mean(double sum, double sum_sq, std::size_t n)
{
    const double dn = static_cast<double>(n);
    const double mean = sum / dn;
    if (n < 2)
        return {mean, 0.0};
    const double variance = std::max(0.0, (sum_sq - dn * mean * mean) / (dn - 1.0));
    return {mean, kZ95 * std::sqrt(variance / dn)};
}

void append_analytical(const SystemConfig &config, OutageCurve &curve)
{
    const PowerAllocation pa = config.power();
    const RatePair rates = config.rates();
    Series s1{"outage_s1_analytical", Provenance::Analytical, 0, {}};
    Series s2{"outage_s2_analytical", Provenance::Analytical, 0, {}};
    for (double rho : curve.rho)
    {
        s1.values.push_back({s1_outage_analytical(rho, pa, rates, config.antennas, config.geometry.ry,
                                                  config.geometry.pathloss_exponent)
                                 .value,
                             0.0});
        s2.values.push_back({s2_outage_analytical(rho, pa, rates, config.antennas, config.geometry.pathloss_exponent,
                                                  config.geometry.r1, config.s2_size, config.gc_nodes)
                                 .value,
                             0.0});
    }
    curve.series.push_back(std::move(s1));
    curve.series.push_back(std::move(s2));
}

OutageCurve empty_curve(const SystemConfig &config)
{
    OutageCurve curve;
    curve.tx_dbm = config.tx_dbm;
    for (std::size_t i = 0; i < config.tx_dbm.size(); ++i)
        curve.rho.push_back(config.rho(i));
    curve.metadata = {config_hash(config), config.seed, config.num_trials};
    return curve;
}
} // namespace

double rho_from_dbm(double tx_dbm, double noise_dbm) noexcept
{
    return std::pow(10.0, (tx_dbm - noise_dbm) / 10.0);
}

std::vector<double> make_sweep(double lo, double hi, double step)
{
    if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi))
        throw ConfigError("sweep needs lo <= hi and a positive step");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> sweep(count);
    for (std::size_t i = 0; i < count; ++i)
        sweep[i] = lo + static_cast<double>(i) * step;
    return sweep;
}

void SystemConfig::validate() const
{
    if (antennas < 1)
        throw ConfigError("antenna count M must be at least 1");
    if (nq < 2)
        throw ConfigError("phase-shift count nq must be at least 2");
    if (s1_size < 1)
        throw ConfigError("|S1| must be at least 1");
    if (s2_size < 1)
        throw ConfigError("|S2| must be at least 1");
    geometry.validate();
    (void)power();
    (void)rates();
    if (tx_dbm.empty())
        throw ConfigError("transmit-power sweep is empty");
    for (std::size_t i = 0; i < tx_dbm.size(); ++i)
    {
        if (!std::isfinite(tx_dbm[i]))
            throw ConfigError("transmit-power sweep contains a non-finite value");
        if (i > 0 && !(tx_dbm[i] > tx_dbm[i - 1]))
            throw ConfigError("transmit-power sweep must be strictly increasing");
    }
    if (!std::isfinite(noise_dbm))
        throw ConfigError("noise power must be finite");
    if (num_trials < 1)
        throw ConfigError("number of trials must be at least 1");
    if (gc_nodes < 1)
        throw ConfigError("Gauss-Chebyshev node count must be at least 1");
}

double SystemConfig::rho(std::size_t sweep_index) const
{
    return rho_from_dbm(tx_dbm.at(sweep_index), noise_dbm);
}

bool analytical_applicable(const SystemConfig &config) noexcept
{
    return config.s1_size == 1 && config.nq == 2 && config.geometry.model == ChannelModel::Rayleigh &&
           config.antennas >= 2;
}

std::string format_number(double value)
{
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::vector<std::pair<std::string, std::string>> config_fields(const SystemConfig &config)
{
    std::string sweep;
    for (std::size_t i = 0; i < config.tx_dbm.size(); ++i)
        sweep += (i ? "," : "") + format_number(config.tx_dbm[i]);
    return {
        {"antennas", std::to_string(config.antennas)},
        {"nq", std::to_string(config.nq)},
        {"s1_size", std::to_string(config.s1_size)},
        {"s2_size", std::to_string(config.s2_size)},
        {"model", std::string(to_string(config.geometry.model))},
        {"pathloss_exponent", format_number(config.geometry.pathloss_exponent)},
        {"r1", format_number(config.geometry.r1)},
        {"ry", format_number(config.geometry.ry)},
        {"a0sq", format_number(config.a0sq)},
        {"a1sq", format_number(config.a1sq)},
        {"rate0", format_number(config.rate0)},
        {"rate1", format_number(config.rate1)},
        {"tx_dbm", sweep},
        {"noise_dbm", format_number(config.noise_dbm)},
        {"trials", std::to_string(config.num_trials)},
        {"seed", std::to_string(config.seed)},
        {"gc_nodes", std::to_string(config.gc_nodes)},
    };
}

std::uint64_t config_hash(const SystemConfig &config)
{
    std::uint64_t hash = 0xcbf29ce484222325ull;
    const auto mix = [&hash](std::string_view text) {
        for (unsigned char c : text)
        {
            hash ^= c;
            hash *= 0x100000001b3ull;
        }
    };
    for (const auto &[key, value] : config_fields(config))
    {
        mix(key);
        mix("=");
        mix(value);
        mix("\n");
    }
    return hash;
}

std::string_view to_string(Provenance provenance) noexcept
{
    return provenance == Provenance::Simulated ? "simulated" : "analytical";
}

const Series &OutageCurve::get(std::string_view name) const
{
    for (const auto &s : series)
        if (s.name == name)
            return s;
    throw InputError("no series named '" + std::string(name) + "'");
}

bool OutageCurve::has(std::string_view name) const noexcept
{
    return std::any_of(series.begin(), series.end(), [&](const Series &s) { return s.name == name; });
}

std::vector<CurvePoint> OutageCurve::points(std::string_view name) const
{
    const Series &s = get(name);
    std::vector<CurvePoint> out;
    for (std::size_t i = 0; i < rho.size(); ++i)
        out.push_back({rho[i], s.values[i].mean});
    return out;
}

double proportion_ci95(std::size_t events, std::size_t samples) noexcept
{
    if (samples == 0)
        return 0.0;
    const double n = static_cast<double>(samples);
    const double p = static_cast<double>(events) / n;
    if (std::min(events, samples - events) >= 10)
        return kZ95 * std::sqrt(p * (1.0 - p) / n);
    const double z2 = kZ95 * kZ95;
    return kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
}

OutageCurve run_sweep(const SystemConfig &config, const RunOptions &options)
{
    config.validate();
    OutageCurve curve = empty_curve(config);

    const std::size_t points = config.tx_dbm.size();
    const std::size_t chunks_per_point = (config.num_trials + kChunkTrials - 1) / kChunkTrials;
    const std::size_t total_chunks = points * chunks_per_point;
    std::vector<ChunkTally> tallies(total_chunks);

    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        TrialRunner runner(config);
        for (std::size_t item = next++; item < total_chunks; item = next++)
        {
            const std::size_t point = item / chunks_per_point;
            const std::size_t chunk = item % chunks_per_point;
            const std::size_t first = chunk * kChunkTrials;
            const std::size_t count = std::min(kChunkTrials, config.num_trials - first);
            tallies[item] = runner.run_chunk(static_cast<std::uint32_t>(point), first, count);
        }
    };

    unsigned workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.workers;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, total_chunks));
    if (workers <= 1)
    {
        work();
    }
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }

    Series s1{"outage_s1", Provenance::Simulated, config.num_trials, {}};
    Series s2{"outage_s2", Provenance::Simulated, config.num_trials, {}};
    Series oma{"outage_oma", Provenance::Simulated, config.num_trials, {}};
    Series perfect{"outage_s1_perfect", Provenance::Simulated, config.num_trials, {}};
    Series noma_rate{"noma_sum_rate", Provenance::Simulated, config.num_trials, {}};
    Series oma_rate{"oma_sum_rate", Provenance::Simulated, config.num_trials, {}};

    const std::size_t beam_samples = config.num_trials * config.s1_size;
    for (std::size_t point = 0; point < points; ++point)
    {
        ChunkTally total;
        for (std::size_t chunk = 0; chunk < chunks_per_point; ++chunk)
        {
            const ChunkTally &t = tallies[point * chunks_per_point + chunk];
            total.trials += t.trials;
            total.outage_s1 += t.outage_s1;
            total.outage_s2 += t.outage_s2;
            total.outage_oma += t.outage_oma;
            total.outage_perfect += t.outage_perfect;
            total.noma_rate += t.noma_rate;
            total.noma_rate_sq += t.noma_rate_sq;
            total.oma_rate += t.oma_rate;
            total.oma_rate_sq += t.oma_rate_sq;
        }
        s1.values.push_back(proportion(total.outage_s1, beam_samples));
        s2.values.push_back(proportion(total.outage_s2, beam_samples));
        oma.values.push_back(proportion(total.outage_oma, beam_samples));
        perfect.values.push_back(proportion(total.outage_perfect, beam_samples));
        noma_rate.values.push_back(sample_mean(total.noma_rate, total.noma_rate_sq, total.trials));
        oma_rate.values.push_back(sample_mean(total.oma_rate, total.oma_rate_sq, total.trials));
    }

    curve.series = {std::move(s1), std::move(s2), std::move(oma), std::move(perfect), std::move(noma_rate),
                    std::move(oma_rate)};
    if (analytical_applicable(config))
        append_analytical(config, curve);
    return curve;
}

OutageCurve analytical_curve(const SystemConfig &config)
{
    config.validate();
    if (!analytical_applicable(config))
        throw ConfigError("analytical curves require |S1| = 1, nq = 2, Rayleigh fading and M >= 2");
    OutageCurve curve = empty_curve(config);
    curve.metadata.num_trials = 0;
    append_analytical(config, curve);
    return curve;
}

} // namespace frabnoma
