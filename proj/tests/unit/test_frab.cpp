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
#include <numbers>

#include "frabnoma/channel.hpp"
#include "frabnoma/error.hpp"
#include "frabnoma/frab.hpp"
#include "one_bit_example.hpp"
#include "oracles.hpp"

using namespace frabnoma;

namespace
{
ComplexVector rayleigh_vector(RandomStream &rng, std::size_t m)
{
    return gen_rayleigh(m, 0.0, 3.0, rng);
}

double wrapped_phase_gap(cdouble a, cdouble b)
{
    return std::abs(std::arg(a / b));
}
} // namespace

TEST_CASE("codebook entries are unit modulus and start at one")
{
    for (std::size_t nq : {2u, 3u, 4u, 8u, 16u, 64u})
    {
        const Codebook cb(nq);
        REQUIRE(cb.size() == nq);
        CHECK(cb[0] == cdouble{1.0, 0.0});
        for (std::size_t i = 0; i < nq; ++i)
        {
            CHECK(std::abs(std::abs(cb[i]) - 1.0) < 1e-12);
            CHECK(std::abs(cb[i] - std::polar(1.0, 2.0 * std::numbers::pi * i / nq)) < 1e-12);
        }
    }
    const Codebook four(4);
    CHECK(four[1] == cdouble{0.0, 1.0});
    CHECK(four[2] == cdouble{-1.0, 0.0});
    CHECK_THROWS_AS(Codebook(1), ConfigError);
    CHECK_THROWS_AS(Codebook(0), ConfigError);
}

TEST_CASE("one-bit example quantizes to the published signs")
{
    const Codebook cb(2);
    for (const auto &user : fixture::one_bit_users())
    {
        INFO(user.label);
        const auto beam = quantize(user.channel, cb);
        for (std::size_t m = 0; m < 4; ++m)
            CHECK(beam.coefficients[m] == cdouble{static_cast<double>(user.signs[m]), 0.0});
    }
}

TEST_CASE("nearest codeword examples")
{
    CHECK(nearest_codeword({1.0, 0.0}, Codebook(2)) == 0);
    CHECK(nearest_codeword({1.0, 0.0}, Codebook(7)) == 0);
    const Codebook four(4);
    CHECK(four[nearest_codeword({0.6, 0.8}, four)] == cdouble{0.0, 1.0});
    // Zero entries and exact boundaries fall back to the lowest index.
    CHECK(nearest_codeword({0.0, 0.0}, four) == 0);
    CHECK(nearest_codeword({0.0, 1.0}, Codebook(2)) == 0);
    CHECK(nearest_codeword({1.0, 1.0}, four) == 0);
}

TEST_CASE("quantizer agrees with an exhaustive phase search")
{
    RandomStream rng(21, 0, 0);
    for (std::size_t nq : {2u, 3u, 4u, 5u, 8u, 16u})
    {
        const Codebook cb(nq);
        for (int i = 0; i < 2000; ++i)
        {
            const cdouble h = rng.complex_normal(1.0);
            REQUIRE(nearest_codeword(h, cb) == oracle::nearest_phase_index(h, nq));
        }
    }
}

TEST_CASE("beamformer invariants and phase error bound")
{
    RandomStream rng(22, 0, 0);
    for (std::size_t nq : {2u, 4u, 8u})
    {
        const Codebook cb(nq);
        for (int trial = 0; trial < 200; ++trial)
        {
            const auto h = rayleigh_vector(rng, 16);
            const auto beam = quantize(h, cb);
            REQUIRE(beam.size() == h.size());
            for (std::size_t m = 0; m < h.size(); ++m)
            {
                CHECK(beam.coefficients[m] == cb[beam.codeword_indices[m]]);
                CHECK(std::abs(std::abs(beam.coefficients[m]) - 1.0) < 1e-12);
                CHECK(wrapped_phase_gap(beam.coefficients[m], h[m]) <= std::numbers::pi / nq + 1e-12);
            }
        }
    }
}

TEST_CASE("quantization is invariant to positive scaling")
{
    RandomStream rng(23, 0, 0);
    const Codebook cb(4);
    for (int trial = 0; trial < 200; ++trial)
    {
        auto h = rayleigh_vector(rng, 8);
        const auto reference = quantize(h, cb);
        const double c = std::exp(8.0 * (rng.uniform() - 0.5));
        for (auto &x : h)
            x *= c;
        CHECK(quantize(h, cb).codeword_indices == reference.codeword_indices);
    }
}

TEST_CASE("effective gain examples")
{
    const ComplexVector ones(4, {1.0, 0.0});
    CHECK(effective_gain(ones, ones) == doctest::Approx(16.0));
    const ComplexVector alternating{{1.0, 0.0}, {-1.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}};
    CHECK(effective_gain(ones, alternating) == doctest::Approx(0.0));
    // Conjugate on the channel side: h = j, f = j gives |(-j)(j)|^2 = 1.
    const ComplexVector j1{{0.0, 1.0}};
    CHECK(effective_gain(j1, j1) == doctest::Approx(1.0));
    CHECK_THROWS_AS(effective_gain(ones, ComplexVector(3)), InputError);

    CHECK(perfect_gain(ComplexVector{{1.0, 0.0}, {0.0, 1.0}}) == doctest::Approx(4.0));
    CHECK(perfect_gain(ComplexVector(2)) == 0.0);
}

TEST_CASE("one-bit gain splits into real and imaginary sums")
{
    RandomStream rng(24, 0, 0);
    const Codebook cb(2);
    for (int trial = 0; trial < 1000; ++trial)
    {
        const auto h = rayleigh_vector(rng, 1 + trial % 12);
        double abs_re = 0.0, signed_im = 0.0;
        for (const auto &x : h)
        {
            abs_re += std::abs(x.real());
            signed_im += (x.real() >= 0.0 ? 1.0 : -1.0) * x.imag();
        }
        const double expected = abs_re * abs_re + signed_im * signed_im;
        REQUIRE(std::abs(effective_gain(h, quantize(h, cb)) - expected) <= 1e-10 * (1.0 + expected));
    }
}

TEST_CASE("perfect beamformer dominates every codebook")
{
    RandomStream rng(25, 0, 0);
    for (int trial = 0; trial < 500; ++trial)
    {
        const auto h = rayleigh_vector(rng, 6);
        const double best = perfect_gain(h);
        CHECK(effective_gain(h, perfect_beamformer(h)) == doctest::Approx(best).epsilon(1e-12));
        for (std::size_t nq : {2u, 3u, 4u, 8u})
            CHECK(effective_gain(h, quantize(h, Codebook(nq))) <= best * (1.0 + 1e-12));
    }
}

TEST_CASE("mean gain grows with phase resolution")
{
    const std::size_t m = 8, draws = 10000;
    std::vector<ComplexVector> channels;
    RandomStream rng(26, 0, 0);
    for (std::size_t i = 0; i < draws; ++i)
        channels.push_back(rayleigh_vector(rng, m));

    double perfect = 0.0;
    for (const auto &h : channels)
        perfect += perfect_gain(h);
    perfect /= draws;

    double previous = 0.0;
    for (std::size_t nq : {2u, 4u, 8u, 16u})
    {
        const Codebook cb(nq);
        double mean = 0.0;
        for (const auto &h : channels)
            mean += effective_gain(h, quantize(h, cb));
        mean /= draws;
        INFO("nq = " << nq);
        CHECK(mean >= previous);
        CHECK(mean <= perfect);
        previous = mean;
    }
    // 16 phases lose under 1% of the ideal gain (sinc^2(1/16) ~ 0.987).
    CHECK(previous / perfect > 0.98);
}
