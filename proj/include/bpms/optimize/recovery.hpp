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

#include "bpms/types.hpp"

#include <functional>
#include <random>

namespace bpms::opt
{

/// Scores a candidate beamformer matrix; lower is better.
using BeamformerObjective = std::function<double(const CMatrix &W)>;

struct Recovery
{
    CMatrix W;               ///< M_T x L
    bool randomized = false; ///< false when W W^H = V exactly
    double objective = 0.0;  ///< objective(W) for the randomized branch, 0 otherwise
    int rank = 0;            ///< numerical rank of V
};

/// Beamformers with W W^H = V when rank(V) <= L (eigenvalues below 1e-9 tr V
/// count as zero); otherwise the best of `trials` Gaussian draws V^{1/2} G
/// rescaled to tr V. Ties keep the first candidate. Draws consume `rng`.
Recovery recover_beamformers(const CMatrix &V, int num_slots, const BeamformerObjective &objective, int trials,
                             std::mt19937_64 &rng);

} // namespace bpms::opt
