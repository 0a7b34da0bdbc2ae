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

#include "bpms/optimize/mismatch.hpp"
#include "bpms/error.hpp"
#include "bpms/optimize/basis.hpp"

#include <cmath>

namespace bpms::opt
{

namespace
{

double budget_of(double total_power, int num_subcarriers)
{
    if (!(total_power > 0.0) || num_subcarriers < 1)
        throw PreconditionError("power budget must be positive");
    return total_power / num_subcarriers;
}

void check_pair(const CMatrix &A, const CMatrix &B, double rho)
{
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw DimensionError("endpoint matrices differ in shape");
    if (!(rho >= 0.0 && rho <= 1.0))
        throw PreconditionError("rho must lie in [0, 1]");
}

} // namespace

double beamformer_mismatch(const CMatrix &W, const CMatrix &W_bp, const CMatrix &W_ms, double rho)
{
    return rho * (W - W_bp).squaredNorm() + (1.0 - rho) * (W - W_ms).squaredNorm();
}

CMatrix solve_wbf(const CMatrix &W_bp, const CMatrix &W_ms, double rho, double total_power, int num_subcarriers)
{
    check_pair(W_bp, W_ms, rho);
    const double budget = budget_of(total_power, num_subcarriers);
    const CMatrix Xi = rho * W_bp + (1.0 - rho) * W_ms;
    const double norm = Xi.norm();
    if (!(norm > 1e-12 * std::sqrt(budget)))
        throw DegenerateMismatchError("weighted beamformer sum vanishes (antipodal endpoints)");
    return (std::sqrt(budget) / norm) * Xi;
}

double wbf_optimal_mismatch(const CMatrix &W_bp, const CMatrix &W_ms, double rho, double total_power,
                            int num_subcarriers)
{
    check_pair(W_bp, W_ms, rho);
    const double budget = budget_of(total_power, num_subcarriers);
    const double xi = (rho * W_bp + (1.0 - rho) * W_ms).norm();
    return budget - 2.0 * std::sqrt(budget) * xi + rho * W_bp.squaredNorm() + (1.0 - rho) * W_ms.squaredNorm();
}

LiftedWbfResult solve_wbf_lifted(const CMatrix &W_bp, const CMatrix &W_ms, double rho, double total_power,
                                 int num_subcarriers, const sdp::Options &options)
{
    check_pair(W_bp, W_ms, rho);
    const double budget = budget_of(total_power, num_subcarriers);
    const int n = static_cast<int>(W_bp.rows());
    const int L = static_cast<int>(W_bp.cols());
    const int h = n + 1;

    // solved in units of sqrt(P/M) so the data is O(1)
    const CMatrix Xi = (rho * W_bp + (1.0 - rho) * W_ms) / std::sqrt(budget);

    sdp::Problem problem(std::vector<int>(L, 2 * h));
    for (int l = 0; l < L; ++l)
    {
        CMatrix H = CMatrix::Zero(h, h);
        H.block(1, 0, n, 1) = -Xi.col(l);
        H.block(0, 1, 1, n) = -Xi.col(l).adjoint();
        H.bottomRightCorner(n, n).setIdentity();
        problem.objective(l) = 0.5 * real_embedding(H);

        const int corner = problem.add_constraint(1.0);
        problem.add_entry(corner, l, 0, 0, 0.5);
        problem.add_entry(corner, l, h, h, 0.5);
    }
    const int trace = problem.add_constraint(1.0 + L);
    for (int l = 0; l < L; ++l)
        for (int i = 0; i < 2 * h; ++i)
            problem.add_entry(trace, l, i, i, 0.5);

    const sdp::Result r = sdp::solve(problem, options);

    LiftedWbfResult out;
    out.status = r.status;
    out.W.resize(n, L);
    for (int l = 0; l < L; ++l)
    {
        const CMatrix Y = complex_from_embedding(r.X[l]);
        out.W.col(l) = std::sqrt(budget) * Y.block(1, 0, n, 1) / Y(0, 0).real();
    }
    out.mismatch = budget * r.primal_objective + rho * W_bp.squaredNorm() + (1.0 - rho) * W_ms.squaredNorm();
    return out;
}

CMatrix solve_wvm(const CMatrix &V_bp, const CMatrix &V_ms, double rho, double total_power, int num_subcarriers)
{
    check_pair(V_bp, V_ms, rho);
    const double budget = budget_of(total_power, num_subcarriers);
    for (const CMatrix *V : {&V_bp, &V_ms})
        if (std::abs(V->trace().real() - budget) > 1e-6 * budget)
            throw PreconditionError("endpoint covariance does not carry the full power budget");
    return rho * V_bp + (1.0 - rho) * V_ms;
}

WvmSdpResult solve_wvm_sdp(const CMatrix &V_bp, const CMatrix &V_ms, double rho, double total_power,
                           int num_subcarriers, const sdp::Options &options)
{
    check_pair(V_bp, V_ms, rho);
    const double budget = budget_of(total_power, num_subcarriers);
    const int n = static_cast<int>(V_bp.rows());
    const int nn = n * n;
    const int last = n - 1; // diagonal coordinate eliminated by the trace equality

    // rho||V - V_bp||^2 + (1 - rho)||V - V_ms||^2 = ||V - V_c||^2 + const
    const RVector c = hermitian_coordinates((rho * V_bp + (1.0 - rho) * V_ms) / budget);
    const auto basis = hermitian_basis(n);

    // variables: free coordinates z (all but `last`), then the epigraph t
    auto var_of = [&](int k) { return k < last ? k : k - 1; };
    const int t = nn - 1;
    sdp::LmiProblem lmi(nn);
    lmi.cost()[t] = 1.0;

    const int psd = lmi.add_block(2 * n);
    lmi.constant(psd) = real_embedding(basis[last]);
    for (int k = 0; k < nn; ++k)
    {
        if (k == last)
            continue;
        RMatrix F = real_embedding(basis[k]);
        if (k < n)
            F -= real_embedding(basis[last]);
        add_sparse(lmi, var_of(k), psd, F);
    }

    // [[t, g^T], [g, t I]] psd  <=>  t >= ||g||,  g = x - c
    const int arrow = lmi.add_block(nn + 1);
    RMatrix &F0 = lmi.constant(arrow);
    for (int k = 0; k < nn; ++k)
        F0(0, 1 + k) = F0(1 + k, 0) = (k == last ? 1.0 : 0.0) - c[k];
    for (int k = 0; k < nn; ++k)
    {
        if (k == last)
            continue;
        lmi.add_entry(var_of(k), arrow, 0, 1 + k, 1.0);
        if (k < n)
            lmi.add_entry(var_of(k), arrow, 0, 1 + last, -1.0);
    }
    for (int i = 0; i <= nn; ++i)
        lmi.add_entry(t, arrow, i, i, 1.0);

    const sdp::LmiResult r = sdp::solve(lmi, options);

    RVector x(nn);
    double diag_sum = 0.0;
    for (int k = 0; k < nn; ++k)
    {
        if (k == last)
            continue;
        x[k] = r.x[var_of(k)];
        if (k < n)
            diag_sum += x[k];
    }
    x[last] = 1.0 - diag_sum;

    WvmSdpResult out;
    out.status = r.status;
    out.V = budget * hermitian_from_coordinates(x, n);
    return out;
}

} // namespace bpms::opt
