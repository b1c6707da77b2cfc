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

#ifndef FRABNOMA_CHANNEL_HPP
#define FRABNOMA_CHANNEL_HPP

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "frabnoma/complex_matrix.hpp"
#include "frabnoma/random_stream.hpp"

namespace frabnoma
{

enum class ChannelModel
{
    Rayleigh,
    MmWaveLos
};

std::string_view to_string(ChannelModel model) noexcept;
// Accepts "rayleigh" and "mmwave"; throws ConfigError otherwise.
ChannelModel parse_channel_model(std::string_view text);

enum class UserGroup
{
    S1, // strict-QoS users on the circle of radius ry
    S2  // opportunistic users, uniform over the disk of radius r1
};

struct UserGeometry
{
    UserGroup group;
    double distance; // meters
};

struct ModelParams
{
    double pathloss_exponent = 3.0; // alpha
    double r1 = 40.0;               // S2 disk radius, meters
    double ry = 40.0;               // S1 circle radius, meters
    ChannelModel model = ChannelModel::Rayleigh;

    // Throws ConfigError on alpha <= 0, r1 <= 0 or ry <= 0.
    void validate() const;
};

// One realization of every user's channel. Row k of s1 is h_k, row i of s2 is g_i.
struct ChannelRealization
{
    ChannelModel model = ChannelModel::Rayleigh;
    ComplexMatrix s1;
    ComplexMatrix s2;
    std::vector<UserGeometry> s1_geometry;
    std::vector<UserGeometry> s2_geometry;

    std::size_t antennas() const noexcept { return s1.cols(); }
};

// 1 + d^alpha
double path_loss(double distance, double alpha) noexcept;

// Distance of a point drawn uniformly over a disk of radius r1, from a uniform variate u in [0, 1].
double disk_distance(double r1, double u) noexcept;
double sample_s2_distance(double r1, RandomStream &rng);

// Rayleigh: i.i.d. CN(0, 1/(1+d^alpha)) entries (power path loss).
ComplexVector gen_rayleigh(std::size_t antennas, double distance, double alpha, RandomStream &rng);
void fill_rayleigh(std::span<cdouble> out, double distance, double alpha, RandomStream &rng);

// LOS steering vector a/(1+d^alpha) * [1, e^{-j pi theta}, ..., e^{-j pi (M-1) theta}] for given a, theta.
void fill_steering(std::span<cdouble> out, double distance, double alpha, cdouble gain, double direction) noexcept;
ComplexVector steering_channel(std::size_t antennas, double distance, double alpha, cdouble gain, double direction);

// mmWave LOS draw: gain ~ CN(0, 1), direction ~ U[-1, 1].
ComplexVector gen_mmwave(std::size_t antennas, double distance, double alpha, RandomStream &rng);
void fill_mmwave(std::span<cdouble> out, double distance, double alpha, RandomStream &rng);

// Draws S2 distances and all channel vectors for one trial. Reuses the storage in `out`.
void draw_channels(const ModelParams &params, std::size_t antennas, std::size_t s1_size, std::size_t s2_size,
                   RandomStream &rng, ChannelRealization &out);

} // namespace frabnoma

#endif
