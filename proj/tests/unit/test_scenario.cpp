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

#include "bpms/config.hpp"
#include "bpms/error.hpp"
#include "bpms/scenario.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace bpms;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("system quantities follow from the spec")
{
    const SystemConfig s = SystemConfig::from(SystemSpec{});
    CHECK_THAT(s.subcarrier_spacing_hz, WithinRel(120e6 / 1024, 1e-15));
    CHECK_THAT(s.wavelength_m, WithinRel(kSpeedOfLight / 28e9, 1e-15));
    CHECK_THAT(s.total_power_watts, WithinRel(1e-5, 1e-12));
    CHECK_THAT(s.power_dbm(), WithinAbs(-20.0, 1e-12));
    // -173.855 + 10 + 10 log10(117187.5) dBm
    const double expect = dbm_to_watts(-173.855 + 10.0 + 10.0 * std::log10(120e6 / 1024));
    CHECK_THAT(s.noise_power_watts, WithinRel(expect, 1e-12));
    CHECK_THAT(s.power_budget(), WithinRel(1e-5 / 1024, 1e-12));
}

TEST_CASE("dBm conversions invert each other")
{
    CHECK_THAT(dbm_to_watts(30.0), WithinRel(1.0, 1e-14));
    CHECK_THAT(dbm_to_watts(0.0), WithinRel(1e-3, 1e-14));
    for (double dbm : {-120.0, -20.0, 7.5})
        CHECK_THAT(watts_to_dbm(dbm_to_watts(dbm)), WithinAbs(dbm, 1e-12));
}

TEST_CASE("broadside angles")
{
    CHECK_THAT(broadside_angle(Vec2(0.0, 1.0)), WithinAbs(0.0, 1e-15));
    CHECK_THAT(broadside_angle(Vec2(-1.0, 0.0)), WithinAbs(kPi / 2, 1e-15));
    CHECK_THAT(broadside_angle(Vec2(1.0, 0.0)), WithinAbs(-kPi / 2, 1e-15));
    CHECK_THAT(broadside_angle(Vec2(-5.0, 20.0)), WithinAbs(std::atan(0.25), 1e-14));
    // rotating the device by a quarter turn moves broadside to -x
    CHECK_THAT(broadside_angle(Vec2(-1.0, 0.0), kPi / 2), WithinAbs(0.0, 1e-15));
    CHECK_THAT(wrap_angle(3 * kPi / 2), WithinAbs(-kPi / 2, 1e-15));
    CHECK_THAT(wrap_angle(-kPi), WithinAbs(kPi, 1e-15));
}

TEST_CASE("path parameters of an axis-aligned layout")
{
    const SystemConfig s = SystemConfig::from(SystemSpec{});
    GeometryConfig g;
    g.ue_position = Vec2(0.0, 10.0);
    g.orientation_rad = kPi; // UE array faces the BS
    g.clock_bias_s = 1e-6;
    g.ue_rcs_ms = 10.0;
    g.targets = {Target{Vec2(-6.0, 8.0), 100.0, 100.0}};
    g.phase_bp = {0.0, 0.5};
    g.phase_ms = {0.25, -1.0};

    const auto bp = derive_bp_params(g, s);
    REQUIRE(bp.size() == 2);
    CHECK_THAT(bp[0].delay_s, WithinRel(10.0 / kSpeedOfLight + 1e-6, 1e-14));
    CHECK_THAT(bp[0].aod_rad, WithinAbs(0.0, 1e-14));
    CHECK_THAT(bp[0].aoa_rad, WithinAbs(0.0, 1e-14));
    CHECK_THAT(std::abs(bp[0].gain), WithinRel(s.wavelength_m / (4 * kPi * 10.0), 1e-14));
    CHECK_THAT(std::arg(bp[1].gain), WithinAbs(0.5, 1e-14));
    // bounce: 10 m out, sqrt(36 + 4) m back
    CHECK_THAT(bp[1].delay_s, WithinRel((10.0 + std::sqrt(40.0)) / kSpeedOfLight + 1e-6, 1e-14));
    CHECK_THAT(bp[1].aod_rad, WithinAbs(std::atan2(6.0, 8.0), 1e-14));

    const auto ms = derive_ms_params(g, s);
    REQUIRE(ms.size() == 2);
    CHECK_THAT(ms[0].delay_s, WithinRel(20.0 / kSpeedOfLight, 1e-14));
    CHECK_THAT(ms[1].delay_s, WithinRel(20.0 / kSpeedOfLight, 1e-14));
    CHECK_THAT(std::arg(ms[0].gain), WithinAbs(0.25, 1e-14));
    // radar gains fall with d^2 and the target is stronger than the UE
    CHECK(std::abs(ms[1].gain) > std::abs(ms[0].gain));
}

TEST_CASE("geometry validation")
{
    Scenario sc = default_scenario(3, 1);
    REQUIRE_NOTHROW(sc.geometry.validate());
    GeometryConfig g = sc.geometry;
    g.targets[0].position = g.bs_position;
    CHECK_THROWS_AS(g.validate(), DegenerateGeometryError);
    g = sc.geometry;
    g.phase_bp.pop_back();
    CHECK_THROWS_AS(g.validate(), Error);
}

TEST_CASE("phases are seeded and bounded")
{
    const Scenario a = default_scenario(3, 5), b = default_scenario(3, 5), c = default_scenario(3, 6);
    CHECK(a.geometry.phase_bp == b.geometry.phase_bp);
    CHECK(a.geometry.phase_ms == b.geometry.phase_ms);
    CHECK(a.geometry.phase_bp != c.geometry.phase_bp);
    for (double p : a.geometry.phase_bp)
        CHECK(std::abs(p) <= kPi);
    CHECK(default_scenario(2, 1).geometry.num_targets() == 2);
}

TEST_CASE("configuration documents")
{
    using nlohmann::json;
    const LoadedScenario base = scenario_from_json(json::object());
    CHECK(base.scenario.geometry.num_targets() == 3);
    CHECK_FALSE(base.phases_from_config);

    CHECK_THROWS_AS(scenario_from_json(json{{"sytem", json::object()}}), ConfigError);
    CHECK_THROWS_AS(scenario_from_json(json{{"system", {{"num_subcarriers", "many"}}}}), ConfigError);
    CHECK_THROWS_AS(scenario_from_json(json{{"geometry", {{"phase_bp", {0, 0, 0, 0}}}}}), ConfigError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/config.json"), ConfigError);

    // a full snapshot reloads to the same scenario with its phases pinned
    const json snap = scenario_to_json(base.scenario);
    const LoadedScenario again = scenario_from_json(snap);
    CHECK(again.phases_from_config);
    CHECK(scenario_to_json(again.scenario) == snap);

    LoadedScenario pinned = again;
    reseed(pinned, 9);
    CHECK(pinned.scenario.geometry.phase_bp == again.scenario.geometry.phase_bp);
    LoadedScenario drawn = base;
    reseed(drawn, 9);
    CHECK(drawn.scenario.geometry.phase_bp == default_scenario(3, 9).geometry.phase_bp);
}
