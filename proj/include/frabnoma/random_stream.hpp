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

#ifndef FRABNOMA_RANDOM_STREAM_HPP
#define FRABNOMA_RANDOM_STREAM_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <random>

#include "frabnoma/complex_matrix.hpp"

namespace frabnoma
{

// Philox4x32-10 block function (Salmon et al., SC'11). Pure: the same (counter, key) always
// produces the same four output words.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

// Counter-based random stream. The seed is the Philox key; the (sweep, trial) pair occupies the
// upper three counter words and the lowest word counts blocks. Two streams with different
// (seed, sweep, trial) triples never share a counter, so no stream depends on any other.
//
// Satisfies UniformRandomBitGenerator, so standard distributions can be driven from it.
class RandomStream
{
public:
    using result_type = std::uint32_t;

    RandomStream(std::uint64_t seed, std::uint32_t sweep_index, std::uint64_t trial_index) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        if (next_ == 4)
            refill();
        return buffer_[next_++];
    }

    // Uniform on [0, 1).
    double uniform() { return uniform_(*this); }
    // Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_(*this); }
    // Standard normal N(0, 1).
    double normal() { return normal_(*this); }
    // Circularly-symmetric complex Gaussian with E|x|^2 = variance.
    cdouble complex_normal(double variance = 1.0);

private:
    void refill() noexcept;

    PhiloxKey key_;
    PhiloxCounter counter_;
    std::array<result_type, 4> buffer_{};
    unsigned next_ = 4;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

// Independent, reproducible stream for one Monte Carlo trial.
inline RandomStream stream_for_trial(std::uint64_t seed, std::uint32_t sweep_index, std::uint64_t trial_index) noexcept
{
    return RandomStream(seed, sweep_index, trial_index);
}

} // namespace frabnoma

#endif
