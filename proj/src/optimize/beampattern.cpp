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

#include "bpms/optimize/beampattern.hpp"
#include "bpms/error.hpp"

#include <algorithm>
#include <cmath>

namespace bpms::opt
{

std::vector<double> beampattern(const CMatrix &V, const ArraySpec &array, const std::vector<double> &angles_rad)
{
    if (angles_rad.empty())
        throw PreconditionError("angle grid is empty");
    if (V.rows() != array.num_elements || V.cols() != array.num_elements)
        throw DimensionError("covariance does not match the array");
    std::vector<double> p;
    p.reserve(angles_rad.size());
    for (double theta : angles_rad)
    {
        const CVector a = steering(array, theta);
        p.push_back(a.dot(V * a).real());
    }
    return p;
}

std::vector<double> angle_grid_deg(double step_deg)
{
    if (!(step_deg > 0.0) || step_deg > 5.0)
        throw ConfigError("angle step must lie in (0, 5] degrees");
    const int count = static_cast<int>(std::floor(180.0 / step_deg + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (int i = 0; i < count; ++i)
        grid.push_back(-90.0 + i * step_deg);
    return grid;
}

std::vector<double> normalized_db(const std::vector<double> &power, double floor_db)
{
    if (power.empty())
        throw PreconditionError("empty beampattern");
    const double peak = *std::max_element(power.begin(), power.end());
    if (!(peak > 0.0))
        throw PreconditionError("beampattern has no positive power");
    std::vector<double> db;
    db.reserve(power.size());
    for (double p : power)
        db.push_back(p > 0.0 ? std::max(floor_db, 10.0 * std::log10(p / peak)) : floor_db);
    return db;
}

} // namespace bpms::opt
