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

#ifndef FRABNOMA_SPECIAL_FUNCTIONS_HPP
#define FRABNOMA_SPECIAL_FUNCTIONS_HPP

namespace frabnoma::special
{

// Gamma at a positive half-integer x = k/2, k >= 1, from Gamma(1/2) = sqrt(pi), Gamma(1) = 1 and
// Gamma(x + 1) = x Gamma(x). Throws InputError for any other argument.
double gamma_half_integer(double x);

// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b) for half-integer a, b >= 1/2.
double beta(double a, double b);

// Lower incomplete gamma of order 1/2: gamma(1/2, x) = sqrt(pi) erf(sqrt(x)), x >= 0.
double lower_incomplete_gamma_half(double x);

double erf(double x) noexcept;

} // namespace frabnoma::special

#endif
