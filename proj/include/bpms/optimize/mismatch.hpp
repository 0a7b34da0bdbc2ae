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

#include "bpms/sdp/solver.hpp"
#include "bpms/types.hpp"

namespace bpms::opt
{

/// rho ||W - W_bp||_F^2 + (1 - rho) ||W - W_ms||_F^2.
double beamformer_mismatch(const CMatrix &W, const CMatrix &W_bp, const CMatrix &W_ms, double rho);

/// Minimiser of the beamformer mismatch on the sphere tr(W W^H) = P/M:
/// sqrt(P/M) Xi / ||Xi||_F with Xi = rho W_bp + (1 - rho) W_ms.
/// Throws DegenerateMismatchError when Xi vanishes.
CMatrix solve_wbf(const CMatrix &W_bp, const CMatrix &W_ms, double rho, double total_power, int num_subcarriers);

/// Optimal mismatch value on the sphere, P/M - 2 sqrt(P/M) ||Xi|| + rho ||W_bp||^2 + (1 - rho) ||W_ms||^2.
double wbf_optimal_mismatch(const CMatrix &W_bp, const CMatrix &W_ms, double rho, double total_power,
                            int num_subcarriers);

struct LiftedWbfResult
{
    sdp::Status status = sdp::Status::NumericalFailure;
    CMatrix W;          ///< first column of each lifted block
    double mismatch = 0.0; ///< SDP objective plus the constant terms
};

/// Per-slot semidefinite lift: blocks [[1, w_l^H], [w_l, w_l w_l^H]] relaxed to
/// psd with unit corners and total trace P/M + L.
LiftedWbfResult solve_wbf_lifted(const CMatrix &W_bp, const CMatrix &W_ms, double rho, double total_power,
                                 int num_subcarriers, const sdp::Options &options = {});

/// rho V_bp + (1 - rho) V_ms; both inputs must carry trace P/M (1e-6 relative).
CMatrix solve_wvm(const CMatrix &V_bp, const CMatrix &V_ms, double rho, double total_power, int num_subcarriers);

struct WvmSdpResult
{
    sdp::Status status = sdp::Status::NumericalFailure;
    CMatrix V;
};

/// rho ||V - V_bp||^2 + (1 - rho) ||V - V_ms||^2 over V psd, tr V = P/M, as a
/// conic program (second-order epigraph written as an arrow LMI).
WvmSdpResult solve_wvm_sdp(const CMatrix &V_bp, const CMatrix &V_ms, double rho, double total_power,
                           int num_subcarriers, const sdp::Options &options = {});

} // namespace bpms::opt
