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

#include "frabnoma/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "frabnoma/error.hpp"

namespace frabnoma
{

std::string_view to_string(ChannelModel model) noexcept
{
    return model == ChannelModel::Rayleigh ? "rayleigh" : "mmwave";
}

ChannelModel parse_channel_model(std::string_view text)
{
    if (text == "rayleigh")
        return ChannelModel::Rayleigh;
    if (text == "mmwave")
        return ChannelModel::MmWaveLos;
    throw ConfigError("unknown channel model '" + std::string(text) + "' (expected rayleigh or mmwave)");
}

void ModelParams::validate() const
{
    if (!(pathloss_exponent > 0.0))
        throw ConfigError("path-loss exponent must be positive");
    if (!(r1 > 0.0))
        throw ConfigError("S2 disk radius r1 must be positive");
    if (!(ry > 0.0))
        throw ConfigError("S1 circle radius ry must be positive");
}

double path_loss(double distance, double alpha) noexcept
{
    return 1.0 + std::pow(distance, alpha);
}

double disk_distance(double r1, double u) noexcept
{
    return r1 * std::sqrt(u);
}

double sample_s2_distance(double r1, RandomStream &rng)
{
    return disk_distance(r1, rng.uniform());
}

void fill_rayleigh(std::span<cdouble> out, double distance, double alpha, RandomStream &rng)
{
    const double variance = 1.0 / path_loss(distance, alpha);
    for (auto &entry : out)
        entry = rng.complex_normal(variance);
}

ComplexVector gen_rayleigh(std::size_t antennas, double distance, double alpha, RandomStream &rng)
{
    if (antennas == 0)
        throw ConfigError("antenna count M must be at least 1");
    ComplexVector h(antennas);
    fill_rayleigh(h, distance, alpha, rng);
    return h;
}

void fill_steering(std::span<cdouble> out, double distance, double alpha, cdouble gain, double direction) noexcept
{
    const cdouble amplitude = gain / path_loss(distance, alpha);
    for (std::size_t m = 0; m < out.size(); ++m)
        out[m] = amplitude * std::polar(1.0, -std::numbers::pi * static_cast<double>(m) * direction);
}

ComplexVector steering_channel(std::size_t antennas, double distance, double alpha, cdouble gain, double direction)
{
    if (antennas == 0)
        throw ConfigError("antenna count M must be at least 1");
    ComplexVector h(antennas);
    fill_steering(h, distance, alpha, gain, direction);
    return h;
}

void fill_mmwave(std::span<cdouble> out, double distance, double alpha, RandomStream &rng)
{
    const cdouble gain = rng.complex_normal(1.0);
    const double direction = rng.uniform(-1.0, 1.0);
    fill_steering(out, distance, alpha, gain, direction);
}

ComplexVector gen_mmwave(std::size_t antennas, double distance, double alpha, RandomStream &rng)
{
    if (antennas == 0)
        throw ConfigError("antenna count M must be at least 1");
    ComplexVector h(antennas);
    fill_mmwave(h, distance, alpha, rng);
    return h;
}

void draw_channels(const ModelParams &params, std::size_t antennas, std::size_t s1_size, std::size_t s2_size,
                   RandomStream &rng, ChannelRealization &out)
{
    if (antennas == 0)
        throw ConfigError("antenna count M must be at least 1");

    out.model = params.model;
    if (out.s1.rows() != s1_size || out.s1.cols() != antennas)
        out.s1.resize(s1_size, antennas);
    if (out.s2.rows() != s2_size || out.s2.cols() != antennas)
        out.s2.resize(s2_size, antennas);
    out.s1_geometry.assign(s1_size, UserGeometry{UserGroup::S1, params.ry});
    out.s2_geometry.resize(s2_size);

    const auto fill = [&](std::span<cdouble> row, double distance) {
        if (params.model == ChannelModel::Rayleigh)
            fill_rayleigh(row, distance, params.pathloss_exponent, rng);
        else
            fill_mmwave(row, distance, params.pathloss_exponent, rng);
    };

    for (std::size_t k = 0; k < s1_size; ++k)
        fill(out.s1.row(k), params.ry);
    for (std::size_t i = 0; i < s2_size; ++i)
    {
        const double d = sample_s2_distance(params.r1, rng);
        out.s2_geometry[i] = UserGeometry{UserGroup::S2, d};
        fill(out.s2.row(i), d);
    }
}

} // namespace frabnoma
