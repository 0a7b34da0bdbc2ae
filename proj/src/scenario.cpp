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

#include "bpms/scenario.hpp"
#include "bpms/error.hpp"

#include <cmath>
#include <random>
#include <string>

namespace bpms
{

namespace
{

// (4 pi)^{3/2}, the bistatic radar-equation amplitude denominator.
const double kFourPi32 = std::pow(4.0 * kPi, 1.5);

double checked_distance(const Vec2 &a, const Vec2 &b, const char *what)
{
    const double d = (a - b).norm();
    if (!(d > 0.0) || !std::isfinite(d))
        throw DegenerateGeometryError(std::string("coincident points: ") + what);
    return d;
}

} // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double noise_power(double noise_figure_db, double noise_psd_dbm_per_hz, double subcarrier_spacing_hz)
{
    if (!(subcarrier_spacing_hz > 0.0))
        throw ConfigError("subcarrier spacing must be positive");
    return dbm_to_watts(noise_figure_db + noise_psd_dbm_per_hz + 10.0 * std::log10(subcarrier_spacing_hz));
}

SystemConfig SystemConfig::from(const SystemSpec &spec)
{
    if (!(spec.carrier_frequency_hz > 0.0) || !(spec.bandwidth_hz > 0.0))
        throw ConfigError("carrier frequency and bandwidth must be positive");
    if (spec.num_subcarriers < 1 || spec.num_symbols < 1 || spec.num_slots < 1)
        throw ConfigError("subcarrier, symbol and slot counts must be positive");
    spec.tx_array.validate();
    spec.rx_array.validate();
    spec.ue_array.validate();

    SystemConfig s;
    s.carrier_frequency_hz = spec.carrier_frequency_hz;
    s.bandwidth_hz = spec.bandwidth_hz;
    s.num_subcarriers = spec.num_subcarriers;
    s.subcarrier_spacing_hz = spec.bandwidth_hz / spec.num_subcarriers;
    s.num_symbols = spec.num_symbols;
    s.num_slots = spec.num_slots;
    s.total_power_watts = dbm_to_watts(spec.power_dbm);
    s.noise_figure_db = spec.noise_figure_db;
    s.noise_psd_dbm_per_hz = spec.noise_psd_dbm_per_hz;
    s.noise_power_watts = noise_power(spec.noise_figure_db, spec.noise_psd_dbm_per_hz, s.subcarrier_spacing_hz);
    s.wavelength_m = kSpeedOfLight / spec.carrier_frequency_hz;
    s.rng_seed = spec.rng_seed;
    s.tx_array = spec.tx_array;
    s.rx_array = spec.rx_array;
    s.ue_array = spec.ue_array;
    return s;
}

double SystemConfig::power_dbm() const { return watts_to_dbm(total_power_watts); }

void GeometryConfig::validate() const
{
    const int K = num_targets();
    checked_distance(bs_position, ue_position, "BS and UE");
    for (int k = 0; k < K; ++k)
    {
        const std::string label = "target " + std::to_string(k + 1);
        checked_distance(targets[k].position, bs_position, (label + " and BS").c_str());
        checked_distance(targets[k].position, ue_position, (label + " and UE").c_str());
        if (!(targets[k].rcs_bp > 0.0) || !(targets[k].rcs_ms > 0.0))
            throw ConfigError(label + ": radar cross sections must be positive");
    }
    if (!(ue_rcs_ms > 0.0))
        throw ConfigError("UE radar cross section must be positive");
    if (static_cast<int>(phase_bp.size()) != K + 1 || static_cast<int>(phase_ms.size()) != K + 1)
        throw ConfigError("expected K+1 gain phases per link");
    for (const auto *phases : {&phase_bp, &phase_ms})
        for (double p : *phases)
            if (!(std::abs(p) <= kPi))
                throw ConfigError("gain phases must lie in [-pi, pi]");
}

void draw_phases(GeometryConfig &geometry, std::uint64_t seed)
{
    const int n = geometry.num_targets() + 1;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-kPi, kPi);
    geometry.phase_bp.resize(n);
    geometry.phase_ms.resize(n);
    for (auto &p : geometry.phase_bp)
        p = uniform(rng);
    for (auto &p : geometry.phase_ms)
        p = uniform(rng);
}

Scenario default_scenario(int num_targets, std::uint64_t seed)
{
    if (num_targets < 0 || num_targets > 3)
        throw ConfigError("the reference deployment has between 0 and 3 targets");

    SystemSpec spec;
    spec.rng_seed = seed;

    GeometryConfig g;
    g.bs_position = Vec2(0.0, 0.0);
    g.ue_position = Vec2(-5.0, 20.0);
    g.orientation_rad = 110.0 / 180.0 * kPi;
    g.clock_bias_s = 1e-6;
    g.ue_rcs_ms = 10.0;
    const Vec2 positions[] = {Vec2(-10.0, 15.0), Vec2(5.0, 15.0), Vec2(0.0, 17.0)};
    for (int k = 0; k < num_targets; ++k)
        g.targets.push_back(Target{positions[k], 100.0, 100.0});
    draw_phases(g, seed);

    return Scenario{SystemConfig::from(spec), std::move(g)};
}

double wrap_angle(double angle)
{
    double a = std::remainder(angle, 2.0 * kPi);
    if (a <= -kPi)
        a += 2.0 * kPi;
    return a;
}

double broadside_angle(const Vec2 &direction, double orientation)
{
    return wrap_angle(std::atan2(direction.y(), direction.x()) - orientation - 0.5 * kPi);
}

std::vector<PathParamsBP> derive_bp_params(const GeometryConfig &geometry, const SystemConfig &system)
{
    geometry.validate();
    const int K = geometry.num_targets();
    const double lambda = system.wavelength_m;
    const Vec2 &pb = geometry.bs_position;
    const Vec2 &pu = geometry.ue_position;

    std::vector<PathParamsBP> paths(K + 1);
    const double d0 = checked_distance(pb, pu, "BS and UE");
    paths[0].gain = std::polar(lambda / (4.0 * kPi * d0), geometry.phase_bp[0]);
    paths[0].delay_s = d0 / kSpeedOfLight + geometry.clock_bias_s;
    paths[0].aod_rad = broadside_angle(pu - pb);
    paths[0].aoa_rad = broadside_angle(pb - pu, geometry.orientation_rad);

    for (int k = 1; k <= K; ++k)
    {
        const Target &t = geometry.targets[k - 1];
        const double d_bt = checked_distance(pb, t.position, "BS and target");
        const double d_tu = checked_distance(t.position, pu, "target and UE");
        const double amplitude = std::sqrt(t.rcs_bp) * lambda / (kFourPi32 * d_tu * d_bt);
        paths[k].gain = std::polar(amplitude, geometry.phase_bp[k]);
        paths[k].delay_s = (d_bt + d_tu) / kSpeedOfLight + geometry.clock_bias_s;
        paths[k].aod_rad = broadside_angle(t.position - pb);
        paths[k].aoa_rad = broadside_angle(t.position - pu, geometry.orientation_rad);
    }
    return paths;
}

std::vector<PathParamsMS> derive_ms_params(const GeometryConfig &geometry, const SystemConfig &system)
{
    geometry.validate();
    const int K = geometry.num_targets();
    const double lambda = system.wavelength_m;
    const Vec2 &pb = geometry.bs_position;

    std::vector<PathParamsMS> paths(K + 1);
    for (int k = 0; k <= K; ++k)
    {
        const Vec2 &p = k == 0 ? geometry.ue_position : geometry.targets[k - 1].position;
        const double rcs = k == 0 ? geometry.ue_rcs_ms : geometry.targets[k - 1].rcs_ms;
        const double d = checked_distance(pb, p, "BS and radar target");
        const double amplitude = std::sqrt(rcs) * lambda / (kFourPi32 * d * d);
        paths[k].gain = std::polar(amplitude, geometry.phase_ms[k]);
        paths[k].delay_s = 2.0 * d / kSpeedOfLight;
        paths[k].aod_rad = broadside_angle(p - pb);
    }
    return paths;
}

} // namespace bpms
