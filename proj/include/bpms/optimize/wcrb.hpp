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

#include "bpms/fim.hpp"
#include "bpms/optimize/codebook.hpp"
#include "bpms/sdp/solver.hpp"

namespace bpms::opt
{

struct CovarianceSolution
{
    CMatrix V;
    sdp::Status status = sdp::Status::NumericalFailure;
    double objective = 0.0; ///< normalised SDP objective
    double relative_gap = 0.0;
    int iterations = 0;
    double solve_time_s = 0.0;
    double projection_distance = 0.0; ///< ||V_raw - psd(V_raw)||_F
    bool projection_flagged = false;  ///< distance above 1e-6 tr(V)

    bool ok() const { return status == sdp::Status::Optimal; }
};

/// rho CRB_BP(V) + (1 - rho) CRB_MS(V).
double weighted_crb(const FimMaps &maps, const CMatrix &V, double rho);

/// min rho tr(U_BP^-1) + (1 - rho) tr(U_MS^-1) over V psd with tr V <= P/M,
/// subject to the Schur-complement LMIs of both links. Zero-weight links are
/// left out of the program. Throws ConfigError when the solver reports the
/// program infeasible or unbounded.
CovarianceSolution solve_wcrb_fdb(const FimMaps &maps, double rho, double total_power, int num_subcarriers,
                                  const sdp::Options &options = {});

struct CpaSolution
{
    Codebook codebook; ///< with allocation set
    CovarianceSolution covariance;
};

/// The same program with V = U diag(p) U^H, p >= 0.
CpaSolution solve_wcrb_cpa(const FimMaps &maps, const Codebook &codebook, double rho, double total_power,
                           int num_subcarriers, const sdp::Options &options = {});

} // namespace bpms::opt
