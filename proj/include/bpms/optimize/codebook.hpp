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
#include "bpms/types.hpp"

namespace bpms::opt
{

/// Columns [a_T(theta_B,0..K), da_T/dtheta(theta_B,0..K)], each scaled to unit
/// norm. `raw_norms` keeps the norms before scaling.
struct Codebook
{
    CMatrix U;
    RVector raw_norms;
    RVector allocation; ///< watts per unit-norm column; empty until allocated

    int size() const { return static_cast<int>(U.cols()); }
    bool allocated() const { return allocation.size() == U.cols(); }

    /// U diag(allocation) U^H.
    CMatrix covariance() const;
};

Codebook build_cpa_codebook(const GeometryConfig &geometry, const SystemConfig &system);

/// Equal power on every codebook direction as the raw (unnormalised) columns
/// carry it, rescaled to trace P/M.
CMatrix apa(const Codebook &codebook, double total_power, int num_subcarriers);

} // namespace bpms::opt
