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

#include "frabnoma/kernels.hpp"

#include <cmath>

namespace frabnoma::kernels::scalar
{

void hermitian_inner(const double *h, const double *f, std::size_t n, double *re, double *im) noexcept
{
    double acc_re = 0.0;
    double acc_im = 0.0;
    for (std::size_t m = 0; m < n; ++m)
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
    double acc = 0.0;
    for (std::size_t m = 0; m < n; ++m)
        acc += std::sqrt(h[2 * m] * h[2 * m] + h[2 * m + 1] * h[2 * m + 1]);
    return acc;
}

} // namespace frabnoma::kernels::scalar
