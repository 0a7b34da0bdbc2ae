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

#include "bpms/sdp/problem.hpp"

#include <string>
#include <vector>

namespace bpms::sdp
{

enum class Status
{
    Optimal,
    PrimalInfeasible,
    DualInfeasible,
    MaxIterations,
    NumericalFailure
};

const char *status_name(Status status);

struct Options
{
    double tolerance = 1e-9;        ///< requested relative gap and infeasibility
    double accept_tolerance = 1e-7; ///< still reported Optimal if stalled below this
    int max_iterations = 100;
    double step_fraction = 0.98;
    bool verbose = false;
};

struct Result
{
    Status status = Status::NumericalFailure;
    std::vector<RMatrix> X;
    RVector y;
    std::vector<RMatrix> S;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double relative_gap = 0.0;
    double primal_infeasibility = 0.0;
    double dual_infeasibility = 0.0;
    int iterations = 0;

    bool ok() const { return status == Status::Optimal; }
};

/// Infeasible-start primal-dual interior point method (HKM direction with
/// Mehrotra predictor-corrector).
Result solve(const Problem &problem, const Options &options = {});

struct LmiResult
{
    Status status = Status::NumericalFailure;
    RVector x;
    double objective = 0.0;
    double relative_gap = 0.0;
    int iterations = 0;
    /// Multipliers of the LMI blocks (the primal iterate of the standard form).
    std::vector<RMatrix> multipliers;

    bool ok() const { return status == Status::Optimal; }
};

LmiResult solve(const LmiProblem &problem, const Options &options = {});

} // namespace bpms::sdp
