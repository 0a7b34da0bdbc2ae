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

#include "bpms/scenario.hpp"

#include <json.hpp>

#include <string>

namespace bpms
{

/// A scenario plus whether its gain phases were fixed by the configuration
/// (otherwise they are drawn from the seed).
struct LoadedScenario
{
    Scenario scenario;
    bool phases_from_config = false;
};

/// Nested JSON with "system" and "geometry" sections. Omitted keys take the
/// reference-deployment defaults; unknown keys are rejected.
LoadedScenario scenario_from_json(const nlohmann::json &doc);
LoadedScenario load_scenario(const std::string &path);

/// Full snapshot including the phases in use.
nlohmann::json scenario_to_json(const Scenario &scenario);

/// Replaces the seed and, unless the phases were configured, redraws them.
void reseed(LoadedScenario &loaded, std::uint64_t seed);

} // namespace bpms
