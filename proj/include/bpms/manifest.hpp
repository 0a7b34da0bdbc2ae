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

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bpms
{

/// One emitted CSV row (sweep) or the single pattern a beampattern run drew.
struct PointRecord
{
    std::string scheme;
    std::optional<double> rho; ///< empty for APA and the isotropic pattern
    std::string status;
    double solve_time_s = 0.0;
    double crb_bp_sqrt_m = 0.0;
    double crb_ms_sqrt_m = 0.0;
};

struct RunManifest
{
    std::string tool_version;
    std::string command; ///< "sweep" or "beampattern"
    nlohmann::json config;
    std::uint64_t seed = 0;
    int phase_averages = 1;
    std::vector<std::string> schemes;
    std::vector<double> rho_grid;
    std::vector<PointRecord> points;
    std::vector<std::string> outputs;
    std::map<std::string, double> aods_deg; ///< "ue", "target_1", ...
};

/// NaN compares equal to NaN so that failed rows survive a round trip.
bool operator==(const PointRecord &a, const PointRecord &b);
bool operator==(const RunManifest &a, const RunManifest &b);

nlohmann::json to_json(const RunManifest &manifest);
/// Throws ConfigError on a malformed document.
RunManifest manifest_from_json(const nlohmann::json &doc);

std::string serialize(const RunManifest &manifest);
RunManifest parse_manifest(const std::string &text);

} // namespace bpms
