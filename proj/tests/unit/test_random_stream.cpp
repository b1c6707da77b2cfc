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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "frabnoma/random_stream.hpp"

using namespace frabnoma;

TEST_CASE("philox4x32-10 known-answer vectors")
{
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("same (seed, sweep, trial) reproduces the stream")
{
    RandomStream a = stream_for_trial(7, 3, 123456789);
    RandomStream b = stream_for_trial(7, 3, 123456789);
    for (int i = 0; i < 1000; ++i)
        REQUIRE(a() == b());
    RandomStream c = stream_for_trial(7, 3, 42);
    RandomStream d = stream_for_trial(7, 3, 42);
    for (int i = 0; i < 100; ++i)
        REQUIRE(c.normal() == d.normal());
}

TEST_CASE("streams for neighbouring trials are uncorrelated")
{
    const auto draws = [](std::uint32_t sweep, std::uint64_t trial) {
        RandomStream s = stream_for_trial(11, sweep, trial);
        std::vector<double> v(10000);
        for (auto &x : v)
            x = s.uniform();
        return v;
    };
    const auto correlation = [](const std::vector<double> &x, const std::vector<double> &y) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            mx += x[i];
            my += y[i];
        }
        mx /= x.size();
        my /= y.size();
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            sxy += (x[i] - mx) * (y[i] - my);
            sxx += (x[i] - mx) * (x[i] - mx);
            syy += (y[i] - my) * (y[i] - my);
        }
        return sxy / std::sqrt(sxx * syy);
    };
    const auto base = draws(0, 0);
    // The acceptance band is 0.01; with 10^4 draws the null standard deviation is also 0.01, so a
    // handful of pairs are checked against the band and all against 4 sigma.
    CHECK(std::abs(correlation(base, draws(0, 1))) < 0.04);
    CHECK(std::abs(correlation(base, draws(1, 0))) < 0.04);
    CHECK(std::abs(correlation(base, draws(0, 1ull << 32))) < 0.04);
    double mean_abs = 0.0;
    for (std::uint64_t t = 1; t <= 20; ++t)
        mean_abs += std::abs(correlation(base, draws(0, t)));
    CHECK(mean_abs / 20.0 < 0.01);
}

TEST_CASE("uniform and normal draws have the right moments")
{
    RandomStream s(5, 0, 0);
    double sum = 0, sum_sq = 0, u_min = 1, u_max = 0, u_sum = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i)
    {
        const double x = s.normal();
        sum += x;
        sum_sq += x * x;
        const double u = s.uniform();
        u_min = std::min(u_min, u);
        u_max = std::max(u_max, u);
        u_sum += u;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(u_min >= 0.0);
    CHECK(u_max < 1.0);
    CHECK(u_sum / n == doctest::Approx(0.5).epsilon(0.01));

    double power = 0.0;
    for (int i = 0; i < n; ++i)
        power += std::norm(s.complex_normal(2.0));
    CHECK(power / n == doctest::Approx(2.0).epsilon(0.01));
}
