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

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "frabnoma/analysis.hpp"
#include "frabnoma/cli.hpp"
#include "frabnoma/error.hpp"
#include "frabnoma/kernels.hpp"

#ifndef FRABNOMA_GIT_DESCRIBE
#define FRABNOMA_GIT_DESCRIBE "unknown"
#endif

namespace frabnoma::cli
{

namespace
{
std::string hex64(std::uint64_t value)
{
    std::ostringstream s;
    s << std::hex << std::setw(16) << std::setfill('0') << value;
    return s.str();
}

nlohmann::json config_json(const SystemConfig &config)
{
    nlohmann::json j = nlohmann::json::object();
    for (const auto &[key, value] : config_fields(config))
        j[key] = value;
    return j;
}

std::filesystem::path prepare_output_dir(const std::string &dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError("cannot create output directory '" + dir + "'");
    return dir;
}

void write_file(const std::filesystem::path &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write '" + path.string() + "'");
    out << content;
    if (!out)
        throw IoError("write failed for '" + path.string() + "'");
}

std::string csv_text(const OutageCurve &curve)
{
    std::ostringstream s;
    write_csv(curve, s);
    return s.str();
}

void print_config(const ResolvedConfig &resolved, std::ostream &out)
{
    out << "# resolved config (" << resolved.name << ")\n";
    for (const auto &[key, value] : config_fields(resolved.config))
        out << key << " = " << value << '\n';
}

// Runs `body`, mapping errors onto exit codes.
template <typename Body>
int guarded(std::ostream &err, Body &&body)
{
    try
    {
        return body();
    }
    catch (const IoError &e)
    {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
    catch (const ConfigError &e)
    {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const InputError &e)
    {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
}

ResolvedConfig resolve(const CommonRequest &request, std::optional<Preset> fallback)
{
    ResolvedConfig resolved = resolve_config(request.preset, request.config_path, request.overrides, fallback);
    resolved.config.validate();
    return resolved;
}

// Names the users whose outage is one at every transmit power, or nothing when both thresholds exist.
std::string infeasibility_note(const SystemConfig &config)
{
    const Thresholds t = thresholds(config.power(), config.rates(), config.antennas, 1.0);
    if (!t.phi0)
        return "S1 and S2 (a0sq <= eps0 * a1sq)";
    if (!t.phi1)
        return "S2 (a1sq = 0)";
    return {};
}
} // namespace

int cmd_validate(const CommonRequest &request, std::ostream &out, std::ostream &err)
{
    return guarded(err, [&] {
        const ResolvedConfig resolved = resolve(request, std::nullopt);
        print_config(resolved, out);
        if (const std::string note = infeasibility_note(resolved.config); !note.empty())
            err << "warning: analytical outage ≡ 1 for " << note << '\n';
        out << "config ok\n";
        return static_cast<int>(kExitOk);
    });
}

int cmd_run(const CommonRequest &request, std::ostream &out, std::ostream &err)
{
    return guarded(err, [&] {
        const ResolvedConfig resolved = resolve(request, std::nullopt);
        const auto dir = prepare_output_dir(request.output_dir);

        const auto start = std::chrono::steady_clock::now();
        const OutageCurve curve = run_sweep(resolved.config, RunOptions{request.workers});
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        const auto csv_path = dir / (resolved.name + ".csv");
        write_file(csv_path, csv_text(curve));

        nlohmann::json sidecar;
        sidecar["name"] = resolved.name;
        sidecar["preset"] = std::string(preset_name(resolved.preset));
        sidecar["config"] = config_json(resolved.config);
        sidecar["seed"] = resolved.config.seed;
        sidecar["num_trials"] = resolved.config.num_trials;
        sidecar["config_hash"] = hex64(curve.metadata.config_hash);
        sidecar["git_describe"] = FRABNOMA_GIT_DESCRIBE;
        sidecar["kernel_backend"] = std::string(kernels::backend_name(kernels::active_backend()));
        sidecar["workers"] = request.workers;
        sidecar["wall_clock_seconds"] = seconds;
        sidecar["csv"] = csv_path.filename().string();
        nlohmann::json names = nlohmann::json::array();
        for (const auto &s : curve.series)
            names.push_back(s.name);
        sidecar["series"] = names;
        write_file(dir / (resolved.name + ".json"), sidecar.dump(2) + "\n");

        out << "wrote " << csv_path.string() << " (" << curve.tx_dbm.size() << " sweep points, "
            << curve.series.size() << " series, " << std::fixed << std::setprecision(2) << seconds << " s)\n";
        return static_cast<int>(kExitOk);
    });
}

int cmd_analysis(const AnalysisRequest &request, std::ostream &out, std::ostream &err)
{
    return guarded(err, [&] {
        const ResolvedConfig resolved = resolve(request.common, Preset::Fig2);
        const SystemConfig &c = resolved.config;
        if (c.s1_size != 1)
            throw ConfigError("scope violation: analytical curves cover a single beam (|S1| = 1), got |S1| = " +
                              std::to_string(c.s1_size));
        if (!analytical_applicable(c))
            throw ConfigError("scope violation: analytical curves need nq = 2, Rayleigh fading and M >= 2");

        const OutageCurve curve = analytical_curve(c);
        const auto dir = prepare_output_dir(request.common.output_dir);
        const auto csv_path = dir / (resolved.name + "_analysis.csv");
        write_file(csv_path, csv_text(curve));

        nlohmann::json sidecar;
        sidecar["name"] = resolved.name + "_analysis";
        sidecar["preset"] = std::string(preset_name(resolved.preset));
        sidecar["config"] = config_json(c);
        sidecar["config_hash"] = hex64(curve.metadata.config_hash);
        sidecar["git_describe"] = FRABNOMA_GIT_DESCRIBE;
        sidecar["csv"] = csv_path.filename().string();

        if (request.slope)
        {
            nlohmann::json slopes = nlohmann::json::object();
            for (const char *name : {"outage_s1_analytical", "outage_s2_analytical"})
            {
                const auto points = curve.points(name);
                const IndexRange window = high_snr_window(points, 1e-12);
                try
                {
                    const SlopeFit fit = fit_diversity_slope(points, window);
                    out << "slope " << name << " = " << std::fixed << std::setprecision(4) << fit.slope
                        << " (diversity " << fit.diversity() << ", " << fit.used << " points)\n";
                    slopes[name] = {{"slope", fit.slope}, {"points", fit.used}};
                    for (const auto &w : fit.warnings)
                        err << "warning: " << name << ": " << w << '\n';
                }
                catch (const InsufficientData &e)
                {
                    err << "warning: " << name << ": " << e.what() << '\n';
                    slopes[name] = nullptr;
                }
            }
            sidecar["slopes"] = slopes;
        }
        write_file(dir / (resolved.name + "_analysis.json"), sidecar.dump(2) + "\n");

        if (!request.folded_sum_at.empty() || !request.beam_gain_at.empty() || !request.composite_at.empty())
        {
            out << std::defaultfloat << std::setprecision(10);
            out << "function,argument,value,unclamped\n";
            for (double z : request.folded_sum_at)
            {
                const auto p = folded_sum_cdf_small(z, c.antennas);
                out << "folded_sum," << z << ',' << p.value << ',' << p.unclamped << '\n';
            }
            for (double y : request.beam_gain_at)
            {
                const auto p = beam_gain_cdf_small(y, c.antennas, c.geometry.ry, c.geometry.pathloss_exponent);
                out << "beam_gain," << y << ',' << p.value << ',' << p.unclamped << '\n';
            }
            for (double y : request.composite_at)
            {
                const auto p = composite_cdf_gc(y, c.antennas, c.geometry.pathloss_exponent, c.geometry.r1, c.gc_nodes);
                out << "composite," << y << ',' << p.value << ',' << p.unclamped << '\n';
            }
        }
        out << "wrote " << csv_path.string() << '\n';
        return static_cast<int>(kExitOk);
    });
}

namespace
{
// Flags shared by all subcommands; each named flag becomes a key = value override.
struct SharedFlags
{
    std::optional<std::string> preset;
    std::optional<std::string> config;
    std::vector<std::string> sets;
    std::vector<std::pair<std::string, std::optional<std::string>>> named;
    unsigned workers = 1;
    std::string output = ".";

    void attach(CLI::App &app)
    {
        app.add_option("--preset", preset, "fig1-rayleigh | fig1-mmwave | fig2 | custom");
        app.add_option("--config", config, "key = value config file, or a JSON run sidecar");
        app.add_option("--workers", workers, "worker threads (results do not depend on this)");
        app.add_option("-o,--output", output, "output directory");
        app.add_option("--set", sets, "override any config key: key=value")->take_all();
        named = {{"seed", {}},      {"trials", {}}, {"tx_dbm", {}},   {"gc_nodes", {}}, {"antennas", {}},
                 {"s1_size", {}},   {"s2_size", {}}, {"nq", {}},      {"model", {}},    {"pathloss_exponent", {}},
                 {"r1", {}},        {"ry", {}},      {"a0sq", {}},    {"a1sq", {}},     {"rate0", {}},
                 {"rate1", {}},     {"noise_dbm", {}}};
        const std::pair<const char *, const char *> flags[] = {
            {"--seed", "64-bit RNG seed"},
            {"--trials", "Monte Carlo trials per sweep point"},
            {"--tx-dbm", "transmit-power sweep lo:hi:step (dBm)"},
            {"--gc-nodes", "Gauss-Chebyshev nodes N"},
            {"--antennas,-M", "base-station antennas M"},
            {"--s1-size", "|S1|"},
            {"--s2-size", "|S2|"},
            {"--nq", "supported phase shifts"},
            {"--model", "rayleigh | mmwave"},
            {"--alpha", "path-loss exponent"},
            {"--r1", "S2 disk radius (m)"},
            {"--ry", "S1 circle radius (m)"},
            {"--a0sq", "power fraction of the S1 message"},
            {"--a1sq", "power fraction of the S2 message"},
            {"--rate0", "S1 target rate R0 (BPCU)"},
            {"--rate1", "S2 target rate R1 (BPCU)"},
            {"--noise-dbm", "noise power (dBm)"},
        };
        for (std::size_t i = 0; i < named.size(); ++i)
            app.add_option(flags[i].first, named[i].second, flags[i].second);
    }

    CommonRequest request() const
    {
        CommonRequest r;
        r.preset = preset;
        r.config_path = config;
        r.workers = workers;
        r.output_dir = output;
        for (const auto &s : sets)
        {
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                throw ConfigError("--set expects key=value, got '" + s + "'");
            r.overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
        }
        for (const auto &[key, value] : named)
            if (value)
                r.overrides.emplace_back(key, *value);
        return r;
    }
};
} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"NOMA downlink with finite-resolution analog beamforming: Monte Carlo and closed-form outage"};
    app.name("frab-noma");
    app.require_subcommand(1);

    SharedFlags run_flags, validate_flags, analysis_flags;
    auto *run = app.add_subcommand("run", "simulate a sweep and write <name>.csv and <name>.json");
    run_flags.attach(*run);
    auto *validate = app.add_subcommand("validate", "check a configuration without running it");
    validate_flags.attach(*validate);
    auto *analysis = app.add_subcommand("analysis", "closed-form outage curves for a single beam");
    analysis_flags.attach(*analysis);
    AnalysisRequest analysis_request;
    analysis->add_flag("--slope", analysis_request.slope, "fit high-SNR slopes of the analytical curves");
    analysis->add_option("--folded-sum-cdf", analysis_request.folded_sum_at, "evaluate the folded-normal-sum CDF at z");
    analysis->add_option("--beam-gain-cdf", analysis_request.beam_gain_at, "evaluate the FRAB effective-gain CDF at y");
    analysis->add_option("--composite", analysis_request.composite_at, "evaluate the composite S2 gain CDF at y");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &)
    {
        out << app.help();
        return kExitOk;
    }
    catch (const CLI::CallForAllHelp &)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    }
    catch (const CLI::ParseError &e)
    {
        err << e.what() << '\n';
        return kExitConfig;
    }

    return guarded(err, [&] {
        if (run->parsed())
            return cmd_run(run_flags.request(), out, err);
        if (validate->parsed())
            return cmd_validate(validate_flags.request(), out, err);
        analysis_request.common = analysis_flags.request();
        return cmd_analysis(analysis_request, out, err);
    });
}

} // namespace frabnoma::cli
