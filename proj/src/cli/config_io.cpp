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

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "frabnoma/cli.hpp"
#include "frabnoma/error.hpp"

namespace frabnoma::cli
{

namespace
{
std::string_view trim(std::string_view s) noexcept
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text)
{
    text = trim(text);
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
        throw ConfigError("invalid number '" + std::string(text) + "' for " + std::string(key));
    return value;
}

template <typename Unsigned>
Unsigned parse_unsigned(std::string_view key, std::string_view text)
{
    text = trim(text);
    Unsigned value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
        throw ConfigError("invalid count '" + std::string(text) + "' for " + std::string(key));
    return value;
}

std::vector<double> parse_sweep(std::string_view text)
{
    text = trim(text);
    if (text.find(':') != std::string_view::npos)
    {
        std::vector<double> parts;
        std::size_t start = 0;
        while (true)
        {
            const auto colon = text.find(':', start);
            parts.push_back(parse_double("tx_dbm", text.substr(start, colon - start)));
            if (colon == std::string_view::npos)
                break;
            start = colon + 1;
        }
        if (parts.size() != 3)
            throw ConfigError("tx_dbm range must be lo:hi:step");
        return make_sweep(parts[0], parts[1], parts[2]);
    }
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size())
    {
        const auto comma = text.find(',', start);
        values.push_back(parse_double("tx_dbm", text.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return values;
}

bool has_key(const KeyValues &kv, std::string_view key)
{
    return std::any_of(kv.begin(), kv.end(), [&](const auto &p) { return p.first == key; });
}
} // namespace

std::string_view preset_name(Preset preset) noexcept
{
    switch (preset)
    {
    case Preset::Fig1Rayleigh:
        return "fig1-rayleigh";
    case Preset::Fig1MmWave:
        return "fig1-mmwave";
    case Preset::Fig2:
        return "fig2";
    case Preset::Custom:
        break;
    }
    return "custom";
}

Preset parse_preset(std::string_view name)
{
    for (Preset p : {Preset::Fig1Rayleigh, Preset::Fig1MmWave, Preset::Fig2, Preset::Custom})
        if (preset_name(p) == name)
            return p;
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig1-rayleigh, fig1-mmwave, fig2, custom)");
}

SystemConfig make_preset(Preset preset)
{
    SystemConfig c;
    c.nq = 2;
    c.geometry.pathloss_exponent = 3.0;
    c.geometry.r1 = 40.0;
    c.a0sq = 0.75;
    c.a1sq = 0.25;
    c.noise_dbm = -30.0;
    c.num_trials = 10000;
    c.seed = 1;
    c.gc_nodes = 100;
    switch (preset)
    {
    case Preset::Fig1Rayleigh:
    case Preset::Fig1MmWave:
    case Preset::Custom:
        c.antennas = 30;
        c.s1_size = 3;
        c.s2_size = 300;
        c.geometry.ry = c.geometry.r1;
        c.geometry.model = preset == Preset::Fig1MmWave ? ChannelModel::MmWaveLos : ChannelModel::Rayleigh;
        c.rate0 = 1.0;
        c.rate1 = 1.5;
        c.tx_dbm = make_sweep(0.0, 40.0, 5.0);
        break;
    case Preset::Fig2:
        c.antennas = 4;
        c.s1_size = 1;
        c.s2_size = c.antennas;
        c.geometry.ry = c.geometry.r1 / 2.0;
        c.geometry.model = ChannelModel::Rayleigh;
        c.rate0 = 1.0;
        c.rate1 = 1.0;
        c.tx_dbm = make_sweep(10.0, 50.0, 5.0);
        break;
    }
    return c;
}

KeyValues parse_key_values(std::string_view text)
{
    KeyValues kv;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size())
    {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        start = end + 1;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        kv.emplace_back(std::string(key), std::string(value));
    }
    return kv;
}

KeyValues read_config_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    if (std::filesystem::path(path).extension() == ".json")
    {
        nlohmann::json doc;
        try
        {
            doc = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ConfigError("malformed JSON in '" + path + "': " + e.what());
        }
        if (!doc.contains("config") || !doc["config"].is_object())
            throw ConfigError("JSON file '" + path + "' has no \"config\" object");
        KeyValues kv;
        if (doc.contains("preset") && doc["preset"].is_string())
            kv.emplace_back("preset", doc["preset"].get<std::string>());
        for (const auto &[key, value] : doc["config"].items())
            kv.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
        return kv;
    }
    return parse_key_values(text);
}

void apply_key_value(SystemConfig &c, std::string_view key, std::string_view value)
{
    value = trim(value);
    if (key == "antennas" || key == "M")
        c.antennas = parse_unsigned<std::size_t>(key, value);
    else if (key == "nq")
        c.nq = parse_unsigned<std::size_t>(key, value);
    else if (key == "s1_size")
        c.s1_size = parse_unsigned<std::size_t>(key, value);
    else if (key == "s2_size")
        c.s2_size = parse_unsigned<std::size_t>(key, value);
    else if (key == "model")
        c.geometry.model = parse_channel_model(value);
    else if (key == "pathloss_exponent" || key == "alpha")
        c.geometry.pathloss_exponent = parse_double(key, value);
    else if (key == "r1")
        c.geometry.r1 = parse_double(key, value);
    else if (key == "ry")
        c.geometry.ry = parse_double(key, value);
    else if (key == "a0sq")
        c.a0sq = parse_double(key, value);
    else if (key == "a1sq")
        c.a1sq = parse_double(key, value);
    else if (key == "rate0")
        c.rate0 = parse_double(key, value);
    else if (key == "rate1")
        c.rate1 = parse_double(key, value);
    else if (key == "tx_dbm")
        c.tx_dbm = parse_sweep(value);
    else if (key == "noise_dbm")
        c.noise_dbm = parse_double(key, value);
    else if (key == "trials")
        c.num_trials = parse_unsigned<std::size_t>(key, value);
    else if (key == "seed")
        c.seed = parse_unsigned<std::uint64_t>(key, value);
    else if (key == "gc_nodes")
        c.gc_nodes = parse_unsigned<std::size_t>(key, value);
    else
        throw ConfigError("unknown config key '" + std::string(key) + "'");
}

ResolvedConfig resolve_config(const std::optional<std::string> &preset, const std::optional<std::string> &config_path,
                              const KeyValues &overrides, std::optional<Preset> fallback)
{
    KeyValues file_values;
    if (config_path)
        file_values = read_config_file(*config_path);

    ResolvedConfig resolved;
    std::optional<Preset> chosen;
    if (preset)
        chosen = parse_preset(*preset);
    for (const auto &[key, value] : file_values)
        if (key == "preset" && !chosen)
            chosen = parse_preset(value);
    if (!chosen && !config_path)
    {
        if (!fallback)
            throw ConfigError("no --preset or --config given");
        chosen = fallback;
    }
    resolved.preset = chosen.value_or(Preset::Custom);
    resolved.config = make_preset(resolved.preset);

    for (const auto &[key, value] : file_values)
        if (key != "preset")
            apply_key_value(resolved.config, key, value);
    for (const auto &[key, value] : overrides)
        apply_key_value(resolved.config, key, value);

    const auto explicit_key = [&](std::string_view key) { return has_key(file_values, key) || has_key(overrides, key); };
    if (resolved.preset == Preset::Fig2)
    {
        if (!explicit_key("s2_size"))
            resolved.config.s2_size = resolved.config.antennas;
        if (!explicit_key("ry"))
            resolved.config.geometry.ry = resolved.config.geometry.r1 / 2.0;
    }
    else if (resolved.preset != Preset::Custom && !explicit_key("ry"))
    {
        resolved.config.geometry.ry = resolved.config.geometry.r1;
    }

    if (resolved.preset != Preset::Custom)
        resolved.name = std::string(preset_name(resolved.preset));
    else if (config_path)
        resolved.name = std::filesystem::path(*config_path).stem().string();
    else
        resolved.name = "custom";
    return resolved;
}

} // namespace frabnoma::cli
