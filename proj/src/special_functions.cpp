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

#include "frabnoma/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "frabnoma/error.hpp"

namespace frabnoma::special
{

namespace
{
// Returns k for x = k/2, or 0 if x is not a positive half-integer.
long half_integer_index(double x) noexcept
{
    if (!(x > 0.0) || !std::isfinite(x) || x > 1e6)
        return 0;
    const double twice = 2.0 * x;
    const double k = std::round(twice);
    return std::abs(twice - k) <= 1e-12 * std::max(1.0, twice) ? static_cast<long>(k) : 0;
}
} // namespace

double gamma_half_integer(double x)
{
    const long k = half_integer_index(x);
    if (k == 0)
        throw InputError("gamma_half_integer: " + std::to_string(x) + " is not a positive half-integer");

    // Start from Gamma(1/2) or Gamma(1) and climb in unit steps.
    double value = (k % 2 == 1) ? std::sqrt(std::numbers::pi) : 1.0;
    for (double t = (k % 2 == 1) ? 0.5 : 1.0; t < 0.5 * static_cast<double>(k) - 0.25; t += 1.0)
        value *= t;
    return value;
}

double beta(double a, double b)
{
    return gamma_half_integer(a) * gamma_half_integer(b) / gamma_half_integer(a + b);
}

double lower_incomplete_gamma_half(double x)
{
    if (!(x >= 0.0))
        throw InputError("lower_incomplete_gamma_half: argument must be non-negative");
    return std::sqrt(std::numbers::pi) * std::erf(std::sqrt(x));
}

double erf(double x) noexcept
{
    return std::erf(x);
}

} // namespace frabnoma::special
