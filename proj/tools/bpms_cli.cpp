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

// Tradeoff sweeps and beampatterns from a JSON scenario.
#include "bpms/error.hpp"
#include "bpms/harness.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

int report(const bpms::RunOutcome &outcome)
{
    for (const auto &path : outcome.manifest.outputs)
        std::cout << "wrote " << path << '\n';
    int failed = 0;
    for (const auto &p : outcome.points)
        if (!p.ok())
        {
            ++failed;
            std::cerr << "warning: " << bpms::scheme_name(p.scheme) << " rho=" << (p.rho ? std::to_string(*p.rho) : "-")
                      << " status " << p.status << '\n';
        }
    return failed ? kExitPartial : kExitOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Bistatic positioning / monostatic sensing beamforming tradeoffs"};
    app.set_version_flag("--version", bpms::kToolVersion);
    app.require_subcommand(1);

    std::string config, schemes, rho_grid = "21", out;
    int phase_averages = 1;
    std::uint64_t seed = 0;
    auto *sweep = app.add_subcommand("sweep", "scheme x rho tradeoff sweep");
    sweep->add_option("--config", config, "scenario JSON")->required();
    sweep->add_option("--schemes", schemes, "comma separated scheme labels")->required();
    sweep->add_option("--rho-grid", rho_grid, "point count or comma separated values")->capture_default_str();
    sweep->add_option("--out", out, "output directory")->required();
    sweep->add_option("--phase-averages", phase_averages, "gain phase realizations to average")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto *seed_opt = sweep->add_option("--seed", seed, "overrides the configured seed");

    std::string scheme;
    double rho = 1.0, step_deg = 1.0;
    auto *pattern = app.add_subcommand("beampattern", "transmit beampattern of one design");
    pattern->add_option("--config", config, "scenario JSON")->required();
    pattern->add_option("--scheme", scheme, "scheme label, or 'isotropic'")->required();
    pattern->add_option("--rho", rho, "weight in [0, 1]")->capture_default_str();
    pattern->add_option("--step-deg", step_deg, "angle step in (0, 5]")->capture_default_str();
    pattern->add_option("--out", out, "output directory")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try
    {
        bpms::HarnessOptions options = bpms::HarnessOptions::from_environment();
        if (*sweep)
        {
            options.phase_averages = phase_averages;
            const auto list = bpms::parse_scheme_list(schemes);
            const auto grid = bpms::parse_rho_grid(rho_grid);
            std::optional<std::uint64_t> override;
            if (*seed_opt)
                override = seed;
            return report(bpms::run_sweep(config, list, grid, out, options, override));
        }
        return report(bpms::run_beampattern(config, bpms::parse_scheme(scheme), rho, step_deg, out, options));
    }
    catch (const bpms::ConfigError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const bpms::Error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
