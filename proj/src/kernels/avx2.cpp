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

// Compiled with -mavx2 -mfma. Only raw pointers cross this boundary: no inline library code is
// instantiated here, so nothing built for AVX2 can be picked up by the linker for scalar callers.

#include <cmath>
#include <cstddef>

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#endif

namespace frabnoma::kernels::avx2
{

#if defined(__AVX2__) && defined(__FMA__)

bool compiled() noexcept { return true; }

namespace
{
inline double hsum(__m256d v) noexcept
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}
} // namespace

void hermitian_inner(const double *h, const double *f, std::size_t n, double *re, double *im) noexcept
{
    // Two complex entries per register: [hr0 hi0 hr1 hi1].
    // same = h*f        -> [hr fr, hi fi, ...]  sums to Re
    // swap = h*swap(f)  -> [hr fi, hi fr, ...]  alternating difference gives Im
    __m256d same0 = _mm256_setzero_pd(), same1 = _mm256_setzero_pd();
    __m256d swap0 = _mm256_setzero_pd(), swap1 = _mm256_setzero_pd();

    std::size_t m = 0;
    for (; m + 4 <= n; m += 4)
    {
        const __m256d h0 = _mm256_loadu_pd(h + 2 * m);
        const __m256d f0 = _mm256_loadu_pd(f + 2 * m);
        const __m256d h1 = _mm256_loadu_pd(h + 2 * m + 4);
        const __m256d f1 = _mm256_loadu_pd(f + 2 * m + 4);
        same0 = _mm256_fmadd_pd(h0, f0, same0);
        swap0 = _mm256_fmadd_pd(h0, _mm256_permute_pd(f0, 0b0101), swap0);
        same1 = _mm256_fmadd_pd(h1, f1, same1);
        swap1 = _mm256_fmadd_pd(h1, _mm256_permute_pd(f1, 0b0101), swap1);
    }
    for (; m + 2 <= n; m += 2)
    {
        const __m256d h0 = _mm256_loadu_pd(h + 2 * m);
        const __m256d f0 = _mm256_loadu_pd(f + 2 * m);
        same0 = _mm256_fmadd_pd(h0, f0, same0);
        swap0 = _mm256_fmadd_pd(h0, _mm256_permute_pd(f0, 0b0101), swap0);
    }

    const __m256d same = _mm256_add_pd(same0, same1);
    const __m256d swap = _mm256_mul_pd(_mm256_add_pd(swap0, swap1), _mm256_setr_pd(1.0, -1.0, 1.0, -1.0));
    double acc_re = hsum(same);
    double acc_im = hsum(swap);

    for (; m < n; ++m)
    {
        const double hr = h[2 * m], hi = h[2 * m + 1];
        const double fr = f[2 * m], fi = f[2 * m + 1];
        acc_re += hr * fr + hi * fi;
        acc_im += hr * fi - hi * fr;
    }
    *re = acc_re;
    *im = acc_im;
}

double abs_sum(const double *h, std::size_t n) noexcept
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t m = 0;
    for (; m + 4 <= n; m += 4)
    {
        const __m256d a = _mm256_loadu_pd(h + 2 * m);
        const __m256d b = _mm256_loadu_pd(h + 2 * m + 4);
        // hadd -> [|h0|^2, |h2|^2, |h1|^2, |h3|^2]
        const __m256d sq = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
        acc = _mm256_add_pd(acc, _mm256_sqrt_pd(sq));
    }
    double total = hsum(acc);
    for (; m < n; ++m)
        total += std::sqrt(h[2 * m] * h[2 * m] + h[2 * m + 1] * h[2 * m + 1]);
    return total;
}

#else

bool compiled() noexcept { return false; }

void hermitian_inner(const double *, const double *, std::size_t, double *re, double *im) noexcept
{
    *re = 0.0;
    *im = 0.0;
}

double abs_sum(const double *, std::size_t) noexcept { return 0.0; }

#endif

} // namespace frabnoma::kernels::avx2
