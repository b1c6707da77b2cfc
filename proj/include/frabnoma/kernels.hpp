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

#ifndef FRABNOMA_KERNELS_HPP
#define FRABNOMA_KERNELS_HPP

#include <cstddef>
#include <span>
#include <string_view>

#include "frabnoma/complex_matrix.hpp"

// Data-parallel inner loops of the simulator. Every kernel has a scalar reference implementation
// and, where the CPU supports it, an AVX2+FMA variant selected once at start-up. The variants are
// equivalence-tested against the reference; they differ only in floating-point summation order.
//
// Set FRABNOMA_KERNELS=scalar in the environment to force the reference path.

namespace frabnoma::kernels
{

enum class Backend
{
    Scalar,
    Avx2
};

std::string_view backend_name(Backend backend) noexcept;
bool backend_available(Backend backend) noexcept;
Backend active_backend() noexcept;

// Throws InputError if the backend is not supported on this CPU.
void set_backend(Backend backend);

// h^H f = sum_m conj(h_m) f_m
cdouble hermitian_inner(std::span<const cdouble> h, std::span<const cdouble> f);

// |h^H f|^2
double hermitian_gain(std::span<const cdouble> h, std::span<const cdouble> f);

// |rows(i)^H f|^2 for every row; out.size() must equal rows.rows().
void hermitian_gains(const ComplexMatrix &rows, std::span<const cdouble> f, std::span<double> out);

// sum_m |h_m|
double abs_sum(std::span<const cdouble> h) noexcept;

// Per-backend entry points on interleaved (re, im) storage, n complex entries.
namespace scalar
{
void hermitian_inner(const double *h, const double *f, std::size_t n, double *re, double *im) noexcept;
double abs_sum(const double *h, std::size_t n) noexcept;
} // namespace scalar

namespace avx2
{
bool compiled() noexcept;
void hermitian_inner(const double *h, const double *f, std::size_t n, double *re, double *im) noexcept;
double abs_sum(const double *h, std::size_t n) noexcept;
} // namespace avx2

} // namespace frabnoma::kernels

#endif
