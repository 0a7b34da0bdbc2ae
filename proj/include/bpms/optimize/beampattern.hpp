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

#include <vector>

namespace bpms::opt
{

/// p(theta) = a_T(theta)^H V a_T(theta), watts.
std::vector<double> beampattern(const CMatrix &V, const ArraySpec &array, const std::vector<double> &angles_rad);

/// Uniform grid over [-90, 90] degrees with the given step, endpoints included.
std::vector<double> angle_grid_deg(double step_deg);

/// 10 log10(p / max p); entries below the peak by more than `floor_db` are clamped.
std::vector<double> normalized_db(const std::vector<double> &power, double floor_db = -300.0);

} // namespace bpms::opt
