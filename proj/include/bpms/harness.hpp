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

#pragma once

#include "bpms/config.hpp"
#include "bpms/manifest.hpp"
#include "bpms/sdp/solver.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bpms
{

inline constexpr const char *kToolVersion = "0.1.0";

enum class Scheme
{
    FdbWcrb,
    FdbWbf,
    FdbWvm,
    CpaWcrb,
    CpaWbf,
    CpaWvm,
    Apa,
    Isotropic, ///< (P/M) I / M_T; beampattern debugging only
};

const char *scheme_name(Scheme scheme);
/// Exact labels ("FDB-WCRB", ..., "APA", "isotropic"). Throws ConfigError.
Scheme parse_scheme(const std::string &name);
/// Comma separated, whitespace tolerant, duplicates dropped. Throws
/// ConfigError for unknown names or an empty list.
std::vector<Scheme> parse_scheme_list(const std::string &list);

/// n points on [0, 1], dense near both ends: 4t^3 below t = 1/2, mirrored above.
std::vector<double> default_rho_grid(int count = 21);
/// "n" gives default_rho_grid(n); otherwise a comma separated list in [0, 1],
/// returned sorted and de-duplicated.
std::vector<double> parse_rho_grid(const std::string &text);

struct HarnessOptions
{
    sdp::Options solver{};
    int workers = 0;            ///< 0: hardware concurrency
    int phase_averages = 1;     ///< realizations use seeds seed, seed + 1, ...
    int recovery_trials = 64;

    /// BPMS_SOLVER_TOL and BPMS_WORKERS override the defaults.
    static HarnessOptions from_environment();
};

struct TradeoffPoint
{
    Scheme scheme = Scheme::FdbWcrb;
    std::optional<double> rho;
    double crb_bp_sqrt_m = 0.0; ///< mean over realizations
    double crb_ms_sqrt_m = 0.0;
    double solve_time_s = 0.0;  ///< summed over realizations
    std::string status = "ok";

    bool ok() const { return status == "ok"; }
};

/// One row per (scheme, rho) in the order the schemes were given, rho
/// ascending; APA contributes a single row. Solver failures are recorded in
/// the row status with NaN bounds.
std::vector<TradeoffPoint> sweep(const LoadedScenario &config, const std::vector<Scheme> &schemes,
                                 const std::vector<double> &rho_grid, const HarnessOptions &options);

/// Rows `scheme,rho,crb_bp_sqrt_m,crb_ms_sqrt_m,solve_time_s,status`.
void write_tradeoff_csv(std::ostream &out, const std::vector<TradeoffPoint> &points);

struct BeampatternSample
{
    std::vector<double> angle_deg;
    std::vector<double> power_db; ///< 0 dB at the peak
    TradeoffPoint point;
    CMatrix V;
};

BeampatternSample beampattern_for(const LoadedScenario &config, Scheme scheme, double rho, double step_deg,
                                  const HarnessOptions &options);

void write_beampattern_csv(std::ostream &out, const BeampatternSample &sample);

/// BS departure angles in degrees: "ue", then "target_1".."target_K".
std::map<std::string, double> aods_deg(const Scenario &scenario);

struct RunOutcome
{
    RunManifest manifest;
    std::vector<TradeoffPoint> points;
    bool all_ok() const;
};

/// Writes tradeoff.csv and manifest.json into out_dir. Argument errors throw
/// ConfigError before anything is created.
RunOutcome run_sweep(const std::string &config_path, const std::vector<Scheme> &schemes,
                     const std::vector<double> &rho_grid, const std::string &out_dir, const HarnessOptions &options,
                     std::optional<std::uint64_t> seed = std::nullopt);

/// Writes beampattern_<scheme>_rho<rho>.csv and its manifest into out_dir.
RunOutcome run_beampattern(const std::string &config_path, Scheme scheme, double rho, double step_deg,
                           const std::string &out_dir, const HarnessOptions &options);

} // namespace bpms
