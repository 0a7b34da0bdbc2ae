// SPDX-License-Identifier: Apache-2.0
//
// bpms - beamforming for joint bistatic positioning and monostatic sensing
// Copyright (C) 2026 The bpms authors
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
// ------------------------------------------------------------------------

#include "bpms/harness.hpp"
#include "bpms/error.hpp"
#include "bpms/fim.hpp"
#include "bpms/optimize/beampattern.hpp"
#include "bpms/optimize/codebook.hpp"
#include "bpms/optimize/mismatch.hpp"
#include "bpms/optimize/recovery.hpp"
#include "bpms/optimize/wcrb.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace bpms
{

namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct SchemeLabel
{
    Scheme scheme;
    const char *name;
};

constexpr SchemeLabel kLabels[] = {
    {Scheme::FdbWcrb, "FDB-WCRB"}, {Scheme::FdbWbf, "FDB-WBF"}, {Scheme::FdbWvm, "FDB-WVM"},
    {Scheme::CpaWcrb, "CPA-WCRB"}, {Scheme::CpaWbf, "CPA-WBF"}, {Scheme::CpaWvm, "CPA-WVM"},
    {Scheme::Apa, "APA"},          {Scheme::Isotropic, "isotropic"},
};

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(trim(item));
    return out;
}

bool uses_rho(Scheme s) { return s != Scheme::Apa && s != Scheme::Isotropic; }
bool is_cpa(Scheme s) { return s == Scheme::CpaWcrb || s == Scheme::CpaWbf || s == Scheme::CpaWvm; }
bool is_wcrb(Scheme s) { return s == Scheme::FdbWcrb || s == Scheme::CpaWcrb; }

// Runs body(0..count-1) on a bounded pool. body must not throw.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)> &body)
{
    if (count == 0)
        return;
    std::size_t n = workers > 0 ? static_cast<std::size_t>(workers) : std::thread::hardware_concurrency();
    n = std::clamp<std::size_t>(n, 1, count);
    if (n == 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++)
                body(i);
        });
}

struct Solved
{
    CMatrix V;
    double time_s = 0.0;
    std::string status = "ok";
};

struct Row
{
    Scheme scheme;
    std::optional<double> rho;
    Solved solved;
    double bp = kNaN;
    double ms = kNaN;
};

struct Realization
{
    Scenario scenario;
    std::uint64_t seed = 0;
    FimMaps maps;
    opt::Codebook codebook;
    std::vector<double> rhos[2]; // WCRB points needed, FDB then CPA
    std::vector<Solved> solved[2];

    const Solved &at(bool cpa, double rho) const
    {
        const auto &r = rhos[cpa];
        const auto it = std::find(r.begin(), r.end(), rho);
        return solved[cpa][static_cast<std::size_t>(it - r.begin())];
    }
};

std::string error_status(const Error &e)
{
    if (dynamic_cast<const UnidentifiableError *>(&e))
        return "unidentifiable";
    if (dynamic_cast<const DegenerateMismatchError *>(&e))
        return "degenerate";
    if (dynamic_cast<const ConfigError *>(&e))
        return "infeasible";
    return "solver_error";
}

Solved solve_wcrb(const Realization &z, bool cpa, double rho, const sdp::Options &options)
{
    const SystemConfig &sys = z.scenario.system;
    Solved out;
    try
    {
        const opt::CovarianceSolution s =
            cpa ? opt::solve_wcrb_cpa(z.maps, z.codebook, rho, sys.total_power_watts, sys.num_subcarriers, options)
                      .covariance
                : opt::solve_wcrb_fdb(z.maps, rho, sys.total_power_watts, sys.num_subcarriers, options);
        out.V = s.V;
        out.time_s = s.solve_time_s;
        if (!s.ok())
            out.status = sdp::status_name(s.status);
    }
    catch (const Error &e)
    {
        out.status = error_status(e);
    }
    return out;
}

double safe_weighted_crb(const FimMaps &maps, const CMatrix &V, double rho)
{
    try
    {
        return opt::weighted_crb(maps, V, rho);
    }
    catch (const UnidentifiableError &)
    {
        return std::numeric_limits<double>::infinity();
    }
}

// W with W W^H = V when possible, else the best randomised draw for `rho`.
CMatrix beamformers(const Realization &z, const CMatrix &V, double rho, std::mt19937_64 &rng, int trials)
{
    const auto objective = [&](const CMatrix &W) { return safe_weighted_crb(z.maps, W * W.adjoint(), rho); };
    return opt::recover_beamformers(V, z.scenario.system.num_slots, objective, trials, rng).W;
}

Solved derive(const Realization &z, Scheme scheme, double rho, const HarnessOptions &options)
{
    const bool cpa = is_cpa(scheme);
    const Solved &bp_end = z.at(cpa, 1.0);
    const Solved &ms_end = z.at(cpa, 0.0);
    Solved out;
    if (!bp_end.V.size() || !ms_end.V.size() || bp_end.status != "ok" || ms_end.status != "ok")
    {
        out.status = "endpoint_failed";
        return out;
    }
    const SystemConfig &sys = z.scenario.system;
    // streams keyed by (realization, scheme, slot) so rows do not depend on scheduling
    const auto stream = [&](std::uint32_t slot) {
        std::seed_seq seq{static_cast<std::uint32_t>(z.seed), static_cast<std::uint32_t>(z.seed >> 32),
                          static_cast<std::uint32_t>(scheme), slot};
        return std::mt19937_64(seq);
    };
    const auto start = std::chrono::steady_clock::now();
    try
    {
        if (scheme == Scheme::FdbWbf || scheme == Scheme::CpaWbf)
        {
            auto rng_bp = stream(1);
            auto rng_ms = stream(2);
            const CMatrix W_bp = beamformers(z, bp_end.V, 1.0, rng_bp, options.recovery_trials);
            const CMatrix W_ms = beamformers(z, ms_end.V, 0.0, rng_ms, options.recovery_trials);
            const CMatrix W = opt::solve_wbf(W_bp, W_ms, rho, sys.total_power_watts, sys.num_subcarriers);
            out.V = W * W.adjoint();
        }
        else
        {
            const CMatrix V = opt::solve_wvm(bp_end.V, ms_end.V, rho, sys.total_power_watts, sys.num_subcarriers);
            auto rng = stream(3 + static_cast<std::uint32_t>(std::llround(rho * 1e6)));
            const CMatrix W = beamformers(z, V, rho, rng, options.recovery_trials);
            out.V = W * W.adjoint();
        }
    }
    catch (const Error &e)
    {
        out.status = error_status(e);
    }
    out.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

void evaluate(const Realization &z, Row &row)
{
    if (row.solved.status != "ok")
        return;
    try
    {
        row.bp = std::sqrt(z.maps.bp.crb(row.solved.V));
        row.ms = std::sqrt(z.maps.ms.crb(row.solved.V));
    }
    catch (const Error &e)
    {
        row.solved.status = error_status(e);
        row.bp = row.ms = kNaN;
    }
}

// Every row of every realization; rows follow the scheme order, rho ascending.
std::vector<std::vector<Row>> compute(const std::vector<Scenario> &scenarios, const std::vector<Scheme> &schemes,
                                      const std::vector<double> &grid, const HarnessOptions &options)
{
    std::vector<Realization> zs(scenarios.size());
    for (std::size_t r = 0; r < scenarios.size(); ++r)
    {
        Realization &z = zs[r];
        z.scenario = scenarios[r];
        z.seed = scenarios[r].system.rng_seed;
        z.maps = build_fim_maps(z.scenario);
        z.codebook = opt::build_cpa_codebook(z.scenario.geometry, z.scenario.system);
        for (int cpa = 0; cpa < 2; ++cpa)
        {
            auto &rh = z.rhos[cpa];
            for (Scheme s : schemes)
            {
                if (is_cpa(s) != static_cast<bool>(cpa) || !uses_rho(s))
                    continue;
                if (is_wcrb(s))
                    rh.insert(rh.end(), grid.begin(), grid.end());
                else
                    rh.insert(rh.end(), {0.0, 1.0});
            }
            std::sort(rh.begin(), rh.end());
            rh.erase(std::unique(rh.begin(), rh.end()), rh.end());
            z.solved[cpa].resize(rh.size());
        }
    }

    struct Task
    {
        std::size_t r;
        int cpa;
        std::size_t i;
    };
    std::vector<Task> tasks;
    for (std::size_t r = 0; r < zs.size(); ++r)
        for (int cpa = 0; cpa < 2; ++cpa)
            for (std::size_t i = 0; i < zs[r].rhos[cpa].size(); ++i)
                tasks.push_back({r, cpa, i});
    // the slow ones first
    std::stable_sort(tasks.begin(), tasks.end(), [](const Task &a, const Task &b) { return a.cpa < b.cpa; });
    parallel_for(tasks.size(), options.workers, [&](std::size_t k) {
        const Task &t = tasks[k];
        Realization &z = zs[t.r];
        z.solved[t.cpa][t.i] = solve_wcrb(z, t.cpa == 1, z.rhos[t.cpa][t.i], options.solver);
    });

    std::vector<std::vector<Row>> out(zs.size());
    parallel_for(zs.size(), options.workers, [&](std::size_t r) {
        const Realization &z = zs[r];
        const SystemConfig &sys = z.scenario.system;
        for (Scheme s : schemes)
        {
            if (!uses_rho(s))
            {
                Row row{s, std::nullopt, {}, kNaN, kNaN};
                if (s == Scheme::Apa)
                    row.solved.V = opt::apa(z.codebook, sys.total_power_watts, sys.num_subcarriers);
                else
                {
                    const int n = sys.tx_array.num_elements;
                    row.solved.V = CMatrix::Identity(n, n) * (sys.power_budget() / n);
                }
                evaluate(z, row);
                out[r].push_back(std::move(row));
                continue;
            }
            for (double rho : grid)
            {
                Row row{s, rho, {}, kNaN, kNaN};
                row.solved = is_wcrb(s) ? z.at(is_cpa(s), rho) : derive(z, s, rho, options);
                evaluate(z, row);
                out[r].push_back(std::move(row));
            }
        }
    });
    return out;
}

std::vector<Scenario> realizations(const LoadedScenario &config, int count)
{
    if (count < 1)
        throw ConfigError("phase averages must be at least 1");
    std::vector<Scenario> out;
    for (int r = 0; r < count; ++r)
    {
        LoadedScenario copy = config;
        reseed(copy, config.scenario.system.rng_seed + static_cast<std::uint64_t>(r));
        out.push_back(copy.scenario);
    }
    return out;
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

std::string rho_tag(double rho)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", rho);
    return buf;
}

void ensure_directory(const std::string &dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
}

void write_file(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write " + path.string());
    out << text;
}

PointRecord record(const TradeoffPoint &p)
{
    return {scheme_name(p.scheme), p.rho, p.status, p.solve_time_s, p.crb_bp_sqrt_m, p.crb_ms_sqrt_m};
}

nlohmann::json config_snapshot(const std::string &path, const LoadedScenario &config)
{
    std::ifstream in(path);
    nlohmann::json input = nlohmann::json::parse(in, nullptr, false);
    return {{"path", path}, {"input", input}, {"resolved", scenario_to_json(config.scenario)}};
}

} // namespace

const char *scheme_name(Scheme scheme)
{
    for (const auto &l : kLabels)
        if (l.scheme == scheme)
            return l.name;
    return "unknown";
}

Scheme parse_scheme(const std::string &name)
{
    for (const auto &l : kLabels)
        if (name == l.name)
            return l.scheme;
    throw ConfigError("unknown scheme '" + name + "'");
}

std::vector<Scheme> parse_scheme_list(const std::string &list)
{
    std::vector<Scheme> out;
    for (const auto &item : split(list))
    {
        if (item.empty())
            continue;
        const Scheme s = parse_scheme(item);
        if (std::find(out.begin(), out.end(), s) == out.end())
            out.push_back(s);
    }
    if (out.empty())
        throw ConfigError("scheme list is empty");
    return out;
}

std::vector<double> default_rho_grid(int count)
{
    if (count < 2)
        throw ConfigError("a rho grid needs at least 2 points");
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i)
    {
        const double t = static_cast<double>(i) / (count - 1);
        grid[i] = t <= 0.5 ? 4.0 * t * t * t : 1.0 - 4.0 * (1.0 - t) * (1.0 - t) * (1.0 - t);
    }
    grid.front() = 0.0;
    grid.back() = 1.0;
    return grid;
}

std::vector<double> parse_rho_grid(const std::string &text)
{
    const std::string t = trim(text);
    if (t.empty())
        throw ConfigError("rho grid is empty");
    if (t.find(',') == std::string::npos && t.find('.') == std::string::npos)
    {
        char *end = nullptr;
        const long n = std::strtol(t.c_str(), &end, 10);
        if (*end != '\0')
            throw ConfigError("cannot parse rho grid '" + text + "'");
        return default_rho_grid(static_cast<int>(n));
    }
    std::vector<double> grid;
    for (const auto &item : split(t))
    {
        char *end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || *end != '\0')
            throw ConfigError("cannot parse rho value '" + item + "'");
        if (!(v >= 0.0 && v <= 1.0))
            throw ConfigError("rho values must lie in [0, 1]");
        grid.push_back(v);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

HarnessOptions HarnessOptions::from_environment()
{
    HarnessOptions o;
    if (const char *tol = std::getenv("BPMS_SOLVER_TOL"))
    {
        char *end = nullptr;
        const double v = std::strtod(tol, &end);
        if (*end != '\0' || !(v > 0.0) || v >= 1.0)
            throw ConfigError("BPMS_SOLVER_TOL must be a number in (0, 1)");
        o.solver.tolerance = v;
        o.solver.accept_tolerance = std::max(o.solver.accept_tolerance, v);
    }
    if (const char *w = std::getenv("BPMS_WORKERS"))
    {
        char *end = nullptr;
        const long v = std::strtol(w, &end, 10);
        if (*end != '\0' || v < 1 || v > 1024)
            throw ConfigError("BPMS_WORKERS must be a positive integer");
        o.workers = static_cast<int>(v);
    }
    return o;
}

std::vector<TradeoffPoint> sweep(const LoadedScenario &config, const std::vector<Scheme> &schemes,
                                 const std::vector<double> &rho_grid, const HarnessOptions &options)
{
    if (schemes.empty())
        throw ConfigError("scheme list is empty");
    if (rho_grid.empty() && std::any_of(schemes.begin(), schemes.end(), uses_rho))
        throw ConfigError("rho grid is empty");
    for (double rho : rho_grid)
        if (!(rho >= 0.0 && rho <= 1.0))
            throw ConfigError("rho values must lie in [0, 1]");

    const auto rows = compute(realizations(config, options.phase_averages), schemes, rho_grid, options);
    std::vector<TradeoffPoint> out;
    for (std::size_t i = 0; i < rows.front().size(); ++i)
    {
        TradeoffPoint p;
        p.scheme = rows.front()[i].scheme;
        p.rho = rows.front()[i].rho;
        double bp = 0.0, ms = 0.0;
        for (const auto &rr : rows)
        {
            const Row &row = rr[i];
            p.solve_time_s += row.solved.time_s;
            if (p.ok() && row.solved.status != "ok")
                p.status = row.solved.status;
            bp += row.bp;
            ms += row.ms;
        }
        const double n = static_cast<double>(rows.size());
        p.crb_bp_sqrt_m = p.ok() ? bp / n : kNaN;
        p.crb_ms_sqrt_m = p.ok() ? ms / n : kNaN;
        out.push_back(p);
    }
    return out;
}

void write_tradeoff_csv(std::ostream &out, const std::vector<TradeoffPoint> &points)
{
    out << "scheme,rho,crb_bp_sqrt_m,crb_ms_sqrt_m,solve_time_s,status\n";
    for (const auto &p : points)
        out << scheme_name(p.scheme) << ',' << (p.rho ? format_number(*p.rho) : std::string()) << ','
            << format_number(p.crb_bp_sqrt_m) << ',' << format_number(p.crb_ms_sqrt_m) << ','
            << format_number(p.solve_time_s) << ',' << p.status << '\n';
}

BeampatternSample beampattern_for(const LoadedScenario &config, Scheme scheme, double rho, double step_deg,
                                  const HarnessOptions &options)
{
    if (!(rho >= 0.0 && rho <= 1.0))
        throw ConfigError("rho must lie in [0, 1]");
    const std::vector<double> deg = opt::angle_grid_deg(step_deg);
    const auto rows = compute({config.scenario}, {scheme}, {rho}, options);
    const Row &row = rows.front().front();

    BeampatternSample out;
    out.point = {row.scheme, row.rho, row.bp, row.ms, row.solved.time_s, row.solved.status};
    out.angle_deg = deg;
    if (row.solved.status != "ok" && row.solved.V.size() == 0)
        return out;
    out.V = row.solved.V;
    std::vector<double> rad;
    for (double d : deg)
        rad.push_back(d * kPi / 180.0);
    out.power_db = opt::normalized_db(opt::beampattern(out.V, config.scenario.system.tx_array, rad));
    return out;
}

void write_beampattern_csv(std::ostream &out, const BeampatternSample &sample)
{
    out << "angle_deg,power_db\n";
    for (std::size_t i = 0; i < sample.power_db.size(); ++i)
        out << format_number(sample.angle_deg[i]) << ',' << format_number(sample.power_db[i]) << '\n';
}

std::map<std::string, double> aods_deg(const Scenario &scenario)
{
    std::map<std::string, double> out;
    const auto ms = derive_ms_params(scenario.geometry, scenario.system);
    for (std::size_t k = 0; k < ms.size(); ++k)
        out[k == 0 ? std::string("ue") : "target_" + std::to_string(k)] = ms[k].aod_rad * 180.0 / kPi;
    return out;
}

bool RunOutcome::all_ok() const
{
    return std::all_of(points.begin(), points.end(), [](const TradeoffPoint &p) { return p.ok(); });
}

RunOutcome run_sweep(const std::string &config_path, const std::vector<Scheme> &schemes,
                     const std::vector<double> &rho_grid, const std::string &out_dir, const HarnessOptions &options,
                     std::optional<std::uint64_t> seed)
{
    if (schemes.empty())
        throw ConfigError("scheme list is empty");
    LoadedScenario config = load_scenario(config_path);
    if (seed)
        reseed(config, *seed);

    RunOutcome outcome;
    outcome.points = sweep(config, schemes, rho_grid, options);

    ensure_directory(out_dir);
    const std::filesystem::path dir(out_dir);
    std::ostringstream csv;
    write_tradeoff_csv(csv, outcome.points);
    write_file(dir / "tradeoff.csv", csv.str());

    RunManifest &m = outcome.manifest;
    m.tool_version = kToolVersion;
    m.command = "sweep";
    m.config = config_snapshot(config_path, config);
    m.seed = config.scenario.system.rng_seed;
    m.phase_averages = options.phase_averages;
    for (Scheme s : schemes)
        m.schemes.push_back(scheme_name(s));
    m.rho_grid = rho_grid;
    for (const auto &p : outcome.points)
        m.points.push_back(record(p));
    m.outputs = {(dir / "tradeoff.csv").string(), (dir / "manifest.json").string()};
    m.aods_deg = aods_deg(config.scenario);
    write_file(dir / "manifest.json", serialize(m));
    return outcome;
}

RunOutcome run_beampattern(const std::string &config_path, Scheme scheme, double rho, double step_deg,
                           const std::string &out_dir, const HarnessOptions &options)
{
    const LoadedScenario config = load_scenario(config_path);
    opt::angle_grid_deg(step_deg); // validate before any work

    const BeampatternSample sample = beampattern_for(config, scheme, rho, step_deg, options);
    RunOutcome outcome;
    outcome.points = {sample.point};

    ensure_directory(out_dir);
    const std::filesystem::path dir(out_dir);
    const std::string stem = std::string("beampattern_") + scheme_name(scheme) + "_rho" + rho_tag(rho);
    std::vector<std::string> outputs;
    if (!sample.power_db.empty())
    {
        std::ostringstream csv;
        write_beampattern_csv(csv, sample);
        write_file(dir / (stem + ".csv"), csv.str());
        outputs.push_back((dir / (stem + ".csv")).string());
    }
    outputs.push_back((dir / (stem + ".manifest.json")).string());

    RunManifest &m = outcome.manifest;
    m.tool_version = kToolVersion;
    m.command = "beampattern";
    m.config = config_snapshot(config_path, config);
    m.seed = config.scenario.system.rng_seed;
    m.schemes = {scheme_name(scheme)};
    if (uses_rho(scheme))
        m.rho_grid = {rho};
    m.points = {record(sample.point)};
    m.outputs = outputs;
    m.aods_deg = aods_deg(config.scenario);
    write_file(dir / (stem + ".manifest.json"), serialize(m));
    return outcome;
}

} // namespace bpms
