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

#include "bpms/array.hpp"
#include "bpms/types.hpp"

#include <cstdint>
#include <vector>

namespace bpms
{

/// Inputs from which a SystemConfig is derived. Only independent quantities
/// live here; spacing, noise power and wavelength are computed.
struct SystemSpec
{
    double carrier_frequency_hz = 28e9;
    double bandwidth_hz = 120e6;
    int num_subcarriers = 1024;
    int num_symbols = 100;
    int num_slots = 16;
    double power_dbm = -20.0;
    double noise_figure_db = 10.0;
    double noise_psd_dbm_per_hz = -173.855;
    ArraySpec tx_array{};
    ArraySpec rx_array{};
    ArraySpec ue_array{};
    std::uint64_t rng_seed = 1;
};

struct SystemConfig
{
    double carrier_frequency_hz = 0.0;
    double bandwidth_hz = 0.0;
    int num_subcarriers = 0;
    double subcarrier_spacing_hz = 0.0;
    int num_symbols = 0;
    int num_slots = 0;
    double total_power_watts = 0.0;
    double noise_figure_db = 0.0;
    double noise_psd_dbm_per_hz = 0.0;
    double noise_power_watts = 0.0;
    double wavelength_m = 0.0;
    std::uint64_t rng_seed = 0;
    ArraySpec tx_array{};
    ArraySpec rx_array{};
    ArraySpec ue_array{};

    static SystemConfig from(const SystemSpec &spec);

    /// Per-subcarrier power budget P/M, the trace bound on every covariance.
    double power_budget() const { return total_power_watts / num_subcarriers; }
    double power_dbm() const;
};

struct Target
{
    Vec2 position = Vec2::Zero();
    double rcs_bp = 0.0; ///< m^2, seen by the UE through the bistatic NLOS path
    double rcs_ms = 0.0; ///< m^2, seen by the BS radar
};

struct GeometryConfig
{
    Vec2 bs_position = Vec2::Zero();
    Vec2 ue_position = Vec2::Zero();
    double orientation_rad = 0.0;
    double clock_bias_s = 0.0;
    std::vector<Target> targets;
    double ue_rcs_ms = 0.0;
    std::vector<double> phase_bp; ///< K+1 entries, LOS first
    std::vector<double> phase_ms; ///< K+1 entries, UE first

    int num_targets() const { return static_cast<int>(targets.size()); }

    /// Throws DegenerateGeometryError / ConfigError when an invariant is broken.
    void validate() const;
};

/// Draws all gain phases uniformly on [-pi, pi] from one seeded stream:
/// phase_bp[0..K] first, then phase_ms[0..K].
void draw_phases(GeometryConfig &geometry, std::uint64_t seed);

struct Scenario
{
    SystemConfig system;
    GeometryConfig geometry;
};

/// The reference deployment (16-element arrays, K = 3 targets) with phases
/// drawn from `seed`. `num_targets` keeps the first targets only.
Scenario default_scenario(int num_targets = 3, std::uint64_t seed = 1);

struct PathParamsBP
{
    cd gain;
    double delay_s = 0.0;
    double aod_rad = 0.0; ///< BS frame
    double aoa_rad = 0.0; ///< UE frame
};

struct PathParamsMS
{
    cd gain;
    double delay_s = 0.0; ///< round trip
    double aod_rad = 0.0;
};

/// Linear watts from F [dB] + N0 [dBm/Hz] + 10 log10(df) [dB].
double noise_power(double noise_figure_db, double noise_psd_dbm_per_hz, double subcarrier_spacing_hz);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Angle of `direction` from the broadside of an array lying along the local
/// x-axis of a device rotated by `orientation` (radians), wrapped to (-pi, pi].
double broadside_angle(const Vec2 &direction, double orientation = 0.0);

double wrap_angle(double angle);

/// Index 0 is the LOS path, index k >= 1 the single bounce off target k.
std::vector<PathParamsBP> derive_bp_params(const GeometryConfig &geometry, const SystemConfig &system);

/// Index 0 is the UE seen as a radar target, index k >= 1 target k.
std::vector<PathParamsMS> derive_ms_params(const GeometryConfig &geometry, const SystemConfig &system);

} // namespace bpms
