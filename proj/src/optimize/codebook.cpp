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

#include "bpms/optimize/codebook.hpp"
#include "bpms/array.hpp"
#include "bpms/error.hpp"

namespace bpms::opt
{

CMatrix Codebook::covariance() const
{
    if (!allocated())
        throw PreconditionError("codebook has no power allocation");
    return U * allocation.cast<cd>().asDiagonal() * U.adjoint();
}

Codebook build_cpa_codebook(const GeometryConfig &geometry, const SystemConfig &system)
{
    const auto paths = derive_ms_params(geometry, system);
    const int n = static_cast<int>(paths.size());
    Codebook cb;
    cb.U.resize(system.tx_array.num_elements, 2 * n);
    cb.raw_norms.resize(2 * n);
    for (int k = 0; k < n; ++k)
    {
        cb.U.col(k) = steering(system.tx_array, paths[k].aod_rad);
        cb.U.col(n + k) = steering_derivative(system.tx_array, paths[k].aod_rad);
    }
    for (int c = 0; c < 2 * n; ++c)
    {
        cb.raw_norms[c] = cb.U.col(c).norm();
        if (!(cb.raw_norms[c] > 0.0))
            throw DegenerateGeometryError("codebook column vanishes (target at endfire)");
        cb.U.col(c) /= cb.raw_norms[c];
    }
    return cb;
}

CMatrix apa(const Codebook &codebook, double total_power, int num_subcarriers)
{
    if (!(total_power > 0.0) || num_subcarriers < 1)
        throw PreconditionError("power budget must be positive");
    const CMatrix raw = codebook.U * codebook.raw_norms.cast<cd>().asDiagonal();
    CMatrix V = raw * raw.adjoint();
    V *= (total_power / num_subcarriers) / V.trace().real();
    return 0.5 * (V + V.adjoint());
}

} // namespace bpms::opt
