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

#include "frabnoma/frab.hpp"

#include <cmath>
#include <numbers>

#include "frabnoma/error.hpp"
#include "frabnoma/kernels.hpp"

namespace frabnoma
{

Codebook::Codebook(std::size_t nq)
{
    if (nq < 2)
        throw ConfigError("phase-shift count nq must be at least 2");
    codewords_.reserve(nq);
    for (std::size_t i = 0; i < nq; ++i)
    {
        // Quarter turns exactly, so that e.g. the one-bit alphabet is {+1, -1} with zero imaginary part.
        if ((4 * i) % nq == 0)
        {
            static constexpr cdouble quarter[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
            codewords_.push_back(quarter[(4 * i) / nq]);
        }
        else
        {
            codewords_.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) /
                                                     static_cast<double>(nq)));
        }
    }
}

std::size_t nearest_codeword(cdouble h, const Codebook &codebook) noexcept
{
    const double magnitude = std::abs(h);
    if (magnitude == 0.0)
        return 0;
    const cdouble u = h / magnitude;

    std::size_t best = 0;
    double best_distance = std::norm(codebook[0] - u);
    for (std::size_t i = 1; i < codebook.size(); ++i)
    {
        const double distance = std::norm(codebook[i] - u);
        if (distance < best_distance)
        {
            best = i;
            best_distance = distance;
        }
    }
    return best;
}

Beamformer quantize(std::span<const cdouble> h, const Codebook &codebook)
{
    Beamformer f;
    f.coefficients.resize(h.size());
    f.codeword_indices.resize(h.size());
    for (std::size_t m = 0; m < h.size(); ++m)
    {
        const std::size_t i = nearest_codeword(h[m], codebook);
        f.codeword_indices[m] = i;
        f.coefficients[m] = codebook[i];
    }
    return f;
}

void quantize_into(std::span<const cdouble> h, const Codebook &codebook, std::span<cdouble> out)
{
    if (out.size() != h.size())
        throw InputError("quantize_into: dimension mismatch");
    for (std::size_t m = 0; m < h.size(); ++m)
        out[m] = codebook[nearest_codeword(h[m], codebook)];
}

double effective_gain(std::span<const cdouble> h, std::span<const cdouble> f)
{
    return kernels::hermitian_gain(h, f);
}

double effective_gain(std::span<const cdouble> h, const Beamformer &f)
{
    return kernels::hermitian_gain(h, f.coefficients);
}

double perfect_gain(std::span<const cdouble> h) noexcept
{
    const double s = kernels::abs_sum(h);
    return s * s;
}

void perfect_beamformer_into(std::span<const cdouble> h, std::span<cdouble> out)
{
    if (out.size() != h.size())
        throw InputError("perfect_beamformer_into: dimension mismatch");
    for (std::size_t m = 0; m < h.size(); ++m)
    {
        const double magnitude = std::abs(h[m]);
        out[m] = magnitude == 0.0 ? cdouble{1.0, 0.0} : h[m] / magnitude;
    }
}

ComplexVector perfect_beamformer(std::span<const cdouble> h)
{
    ComplexVector f(h.size());
    perfect_beamformer_into(h, f);
    return f;
}

} // namespace frabnoma
