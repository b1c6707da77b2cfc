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

#ifndef FRABNOMA_ERROR_HPP
#define FRABNOMA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace frabnoma
{

// A scenario parameter violates one of its invariants (bad counts, power split, rates, sweep).
class ConfigError : public std::invalid_argument
{
public:
    explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
};

// An argument handed to a numerical routine is outside its domain (dimension mismatch, unsupported order).
class InputError : public std::invalid_argument
{
public:
    explicit InputError(const std::string &what) : std::invalid_argument(what) {}
};

// Not enough usable points to fit a curve.
class InsufficientData : public std::runtime_error
{
public:
    explicit InsufficientData(const std::string &what) : std::runtime_error(what) {}
};

} // namespace frabnoma

#endif
