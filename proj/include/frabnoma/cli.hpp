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

#ifndef FRABNOMA_CLI_HPP
#define FRABNOMA_CLI_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frabnoma/engine.hpp"

namespace frabnoma::cli
{

enum ExitCode : int
{
    kExitOk = 0,
    kExitIo = 2,
    kExitConfig = 3,
};

class IoError : public std::runtime_error
{
public:
    explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

enum class Preset
{
    Fig1Rayleigh,
    Fig1MmWave,
    Fig2,
    Custom
};

std::string_view preset_name(Preset preset) noexcept;
// Throws ConfigError for unknown names.
Preset parse_preset(std::string_view name);

// Scenario of a preset with its default sweep (fig1: 0..40 dBm, fig2: 10..50 dBm, step 5).
SystemConfig make_preset(Preset preset);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Flat `key = value` text, `#` starts a comment. Throws ConfigError on malformed lines.
KeyValues parse_key_values(std::string_view text);

// Reads a key-value config file, or the "config" object of a JSON run sidecar (*.json).
// Throws IoError if the file cannot be read.
KeyValues read_config_file(const std::string &path);

// Sets one field. tx_dbm accepts `lo:hi:step` or a comma-separated list. Throws ConfigError.
void apply_key_value(SystemConfig &config, std::string_view key, std::string_view value);

struct ResolvedConfig
{
    std::string name; // output file stem
    Preset preset = Preset::Custom;
    SystemConfig config;
};

// Preset (or the one named by a `preset` key in the file), then file values, then overrides.
// Preset bindings are re-applied for fields not given explicitly: fig2 ties |S2| = M and
// ry = r1/2, fig1 ties ry = r1.
ResolvedConfig resolve_config(const std::optional<std::string> &preset, const std::optional<std::string> &config_path,
                              const KeyValues &overrides, std::optional<Preset> fallback);

// Long-format CSV: tx_dbm,rho_linear,series,mean,ci95_half,provenance,n_trials
inline constexpr std::string_view kCsvHeader = "tx_dbm,rho_linear,series,mean,ci95_half,provenance,n_trials";

void write_csv(const OutageCurve &curve, std::ostream &out);

struct CsvRow
{
    double tx_dbm;
    double rho_linear;
    std::string series;
    double mean;
    double ci95_half;
    std::string provenance;
    std::size_t n_trials;
};

// Throws InputError naming the offending line.
std::vector<CsvRow> read_csv(std::istream &in);

struct CommonRequest
{
    std::optional<std::string> preset;
    std::optional<std::string> config_path;
    KeyValues overrides;
    unsigned workers = 1;
    std::string output_dir = ".";
};

struct AnalysisRequest
{
    CommonRequest common;
    bool slope = false;
    std::vector<double> folded_sum_at;
    std::vector<double> beam_gain_at;
    std::vector<double> composite_at;
};

int cmd_run(const CommonRequest &request, std::ostream &out, std::ostream &err);
int cmd_validate(const CommonRequest &request, std::ostream &out, std::ostream &err);
int cmd_analysis(const AnalysisRequest &request, std::ostream &out, std::ostream &err);

// Full command-line entry point (`frab-noma run|validate|analysis ...`).
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace frabnoma::cli

#endif
