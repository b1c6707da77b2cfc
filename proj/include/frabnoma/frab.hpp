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

#ifndef FRABNOMA_FRAB_HPP
#define FRABNOMA_FRAB_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "frabnoma/complex_matrix.hpp"

namespace frabnoma
{

// The nq-phase alphabet of a finite-resolution phase shifter: codeword i is e^{j 2 pi i / nq},
// i = 0..nq-1 (codeword 0 is exactly 1). Quarter-turn codewords are stored exactly.
class Codebook
{
public:
    // Throws ConfigError for nq < 2.
    explicit Codebook(std::size_t nq);

    std::size_t size() const noexcept { return codewords_.size(); }
    const cdouble &operator[](std::size_t i) const noexcept { return codewords_[i]; }
    std::span<const cdouble> codewords() const noexcept { return codewords_; }

private:
    std::vector<cdouble> codewords_;
};

struct Beamformer
{
    ComplexVector coefficients;
    std::vector<std::size_t> codeword_indices;

    std::size_t size() const noexcept { return coefficients.size(); }
};

// Index of the codeword nearest (in Euclidean distance) to h/|h|. Exact ties go to the lowest
// index; h == 0 maps to index 0.
std::size_t nearest_codeword(cdouble h, const Codebook &codebook) noexcept;

// Element-wise nearest-codeword quantization of a channel vector into a unit-modulus beamformer.
Beamformer quantize(std::span<const cdouble> h, const Codebook &codebook);

// Writes only the coefficients; used on the hot path where indices are not needed.
void quantize_into(std::span<const cdouble> h, const Codebook &codebook, std::span<cdouble> out);

// |h^H f|^2. Throws InputError on dimension mismatch.
double effective_gain(std::span<const cdouble> h, std::span<const cdouble> f);
double effective_gain(std::span<const cdouble> h, const Beamformer &f);

// Gain of the ideal continuous-phase beamformer f_m = h_m/|h_m|: (sum_m |h_m|)^2.
double perfect_gain(std::span<const cdouble> h) noexcept;

// f_m = h_m/|h_m| (1 where h_m == 0).
ComplexVector perfect_beamformer(std::span<const cdouble> h);
void perfect_beamformer_into(std::span<const cdouble> h, std::span<cdouble> out);

} // namespace frabnoma

#endif
