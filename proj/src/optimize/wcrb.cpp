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

#include "bpms/optimize/wcrb.hpp"
#include "bpms/error.hpp"
#include "bpms/optimize/basis.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>

namespace bpms::opt
{

double weighted_crb(const FimMaps &maps, const CMatrix &V, double rho)
{
    double value = 0.0;
    if (rho > 0.0)
        value += rho * maps.bp.crb(V);
    if (rho < 1.0)
        value += (1.0 - rho) * maps.ms.crb(V);
    return value;
}

namespace
{

enum class Cone
{
    Hermitian,  // atoms form an orthonormal Hermitian basis, V psd via embedding
    Nonnegative // V = sum_k p_k atom_k with p_k >= 0
};

struct LinkTerms
{
    const LinkModel *model;
    double weight;
};

// Variables: atom coordinates, then (U~, T~) symmetric coordinates per active link.
// Every block is equilibrated at Vref.
CovarianceSolution solve_once(const FimMaps &maps, const std::vector<CMatrix> &atoms, Cone cone, double rho,
                              double power_budget, const CMatrix &Vref, const sdp::Options &options,
                              RVector *coordinates)
{
    const auto t0 = std::chrono::steady_clock::now();
    const int n = maps.bp.position.array_size();
    const int na = static_cast<int>(atoms.size());
    const double sV = power_budget;

    std::vector<LinkTerms> links;
    if (rho > 0.0)
        links.push_back({&maps.bp, rho});
    if (rho < 1.0)
        links.push_back({&maps.ms, 1.0 - rho});

    int num_vars = na;
    std::vector<int> offsets;
    for (const auto &l : links)
    {
        offsets.push_back(num_vars);
        num_vars += 2 * symmetric_dimension(l.model->num_interest());
    }

    sdp::LmiProblem lmi(num_vars);

    // V psd
    if (cone == Cone::Hermitian)
    {
        const int blk = lmi.add_block(2 * n);
        for (int k = 0; k < na; ++k)
            add_sparse(lmi, k, blk, real_embedding(atoms[k]));
    }
    else
        for (int k = 0; k < na; ++k)
        {
            const int blk = lmi.add_block(1);
            lmi.add_entry(k, blk, 0, 0, 1.0);
        }

    // tr V <= P/M
    {
        const int blk = lmi.add_block(1);
        lmi.constant(blk)(0, 0) = 1.0;
        for (int k = 0; k < na; ++k)
        {
            const double tr = atoms[k].trace().real();
            if (tr != 0.0)
                lmi.add_entry(k, blk, 0, 0, -tr);
        }
    }

    double weight_norm = 0.0;
    std::vector<double> scales;
    for (std::size_t li = 0; li < links.size(); ++li)
    {
        const LinkModel &model = *links[li].model;
        const int ne = model.position.num_params();
        const int nf = model.num_interest();
        const int nsym = symmetric_dimension(nf);
        const int u0 = offsets[li], t0v = offsets[li] + nsym;

        // congruence scaling by the reference information keeps every block O(1)
        const PositionFim ref = model.fim(Vref);
        RVector d(ne);
        for (int i = 0; i < ne; ++i)
        {
            if (!(ref.info(i, i) > 0.0))
                throw UnidentifiableError(std::string(link_name(model.link)) + " parameter carries no information", 1);
            d[i] = 1.0 / std::sqrt(ref.info(i, i));
        }
        const double scale = crb(ref);
        scales.push_back(scale);
        weight_norm += links[li].weight * scale;

        // Lower block-triangular C with C^T I_p(Vref) C = I. Such a congruence
        // leaves diag(U~, 0) alone and maps the Schur complement to
        // C11^T EFIM C11, so the LMI keeps its meaning while every block, Schur
        // complement included, is O(1) at the reference.
        const RMatrix scaled = d.asDiagonal() * ref.info * d.asDiagonal();
        const int nz = ne - nf;
        const RMatrix B = scaled.topRightCorner(nf, nz);
        const Eigen::LLT<RMatrix> zllt(scaled.bottomRightCorner(nz, nz));
        const RMatrix ZiBt = zllt.solve(B.transpose());
        const RMatrix efim = scaled.topLeftCorner(nf, nf) - B * ZiBt;
        const auto inv_sqrt = [](const RMatrix &A) {
            Eigen::SelfAdjointEigenSolver<RMatrix> eig(0.5 * (A + A.transpose()));
            if (eig.eigenvalues().minCoeff() <= 0.0)
                throw UnidentifiableError("reference information is singular", 1);
            return RMatrix(eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                           eig.eigenvectors().transpose());
        };
        const RMatrix G = inv_sqrt(efim);
        RMatrix C = RMatrix::Zero(ne, ne);
        C.topLeftCorner(nf, nf) = G;
        C.bottomLeftCorner(nz, nf) = -ZiBt * G;
        C.bottomRightCorner(nz, nz) = inv_sqrt(scaled.bottomRightCorner(nz, nz));
        const RMatrix CtD = C.transpose() * d.asDiagonal();

        const auto sym = symmetric_basis(nf);

        // C^T D I_p(V) D C - diag(U~, 0) psd
        const int schur = lmi.add_block(ne);
        for (int k = 0; k < na; ++k)
        {
            RMatrix F = CtD * model.position.evaluate(sV * atoms[k]) * CtD.transpose();
            lmi.add_dense(k, schur, 0.5 * (F + F.transpose()));
        }
        for (int j = 0; j < nsym; ++j)
            add_sparse(lmi, u0 + j, schur, -sym[j]);

        // [[T~, K^T], [K, U~]] psd  =>  T~ >= K^T U~^-1 K, K = C11^T D_F / sqrt(scale)
        const RMatrix K = G * d.head(nf).asDiagonal() / std::sqrt(scale);
        const int epi = lmi.add_block(2 * nf);
        for (int i = 0; i < nf; ++i)
            for (int j = 0; j < nf; ++j)
                lmi.constant(epi)(i, nf + j) = lmi.constant(epi)(nf + j, i) = K(j, i);
        for (int j = 0; j < nsym; ++j)
        {
            add_sparse(lmi, t0v + j, epi, sym[j]);
            add_sparse(lmi, u0 + j, epi, sym[j], nf);
        }
    }

    for (std::size_t li = 0; li < links.size(); ++li)
    {
        const int nf = links[li].model->num_interest();
        const int t0v = offsets[li] + symmetric_dimension(nf);
        for (int j = 0; j < nf; ++j)
            lmi.cost()[t0v + j] = links[li].weight * scales[li] / weight_norm;
    }

    const sdp::LmiResult r = sdp::solve(lmi, options);
    if (r.status == sdp::Status::PrimalInfeasible || r.status == sdp::Status::DualInfeasible)
        throw ConfigError(std::string("weighted CRB program is ") + sdp::status_name(r.status));

    CovarianceSolution sol;
    sol.status = r.status;
    sol.objective = r.objective;
    sol.relative_gap = r.relative_gap;
    sol.iterations = r.iterations;

    CMatrix V = CMatrix::Zero(n, n);
    for (int k = 0; k < na; ++k)
        V += (sV * r.x[k]) * atoms[k];
    if (coordinates)
        *coordinates = r.x.head(na);

    V = project_psd(V, &sol.projection_distance);
    const double tr = V.trace().real();
    sol.projection_flagged = sol.projection_distance > 1e-6 * std::max(tr, power_budget);
    // the bound is strictly decreasing in power, so the budget is active at the optimum
    if (tr > 0.0)
        V *= power_budget / tr;
    sol.V = V;
    sol.solve_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sol;
}

CovarianceSolution solve_weighted(const FimMaps &maps, const std::vector<CMatrix> &atoms, Cone cone, double rho,
                                  double power_budget, const sdp::Options &options, RVector *coordinates)
{
    if (!(rho >= 0.0 && rho <= 1.0))
        throw PreconditionError("rho must lie in [0, 1]");
    if (!(power_budget > 0.0))
        throw PreconditionError("power budget must be positive");
    const int n = maps.bp.position.array_size();
    const CMatrix iso = CMatrix::Identity(n, n) * (power_budget / n);
    return solve_once(maps, atoms, cone, rho, power_budget, iso, options, coordinates);
}

} // namespace

CovarianceSolution solve_wcrb_fdb(const FimMaps &maps, double rho, double total_power, int num_subcarriers,
                                  const sdp::Options &options)
{
    if (num_subcarriers < 1)
        throw PreconditionError("subcarrier count must be positive");
    const int n = maps.bp.position.array_size();
    return solve_weighted(maps, hermitian_basis(n), Cone::Hermitian, rho, total_power / num_subcarriers, options,
                          nullptr);
}

CpaSolution solve_wcrb_cpa(const FimMaps &maps, const Codebook &codebook, double rho, double total_power,
                           int num_subcarriers, const sdp::Options &options)
{
    if (num_subcarriers < 1)
        throw PreconditionError("subcarrier count must be positive");
    std::vector<CMatrix> atoms;
    for (int k = 0; k < codebook.size(); ++k)
        atoms.push_back(codebook.U.col(k) * codebook.U.col(k).adjoint());

    const double budget = total_power / num_subcarriers;
    CpaSolution out;
    RVector p;
    out.covariance = solve_weighted(maps, atoms, Cone::Nonnegative, rho, budget, options, &p);
    out.codebook = codebook;
    // same rescaling as applied to V inside solve_weighted
    RVector alloc = (budget * p).cwiseMax(0.0);
    const double total = alloc.sum();
    if (total > 0.0)
        alloc *= budget / total;
    out.codebook.allocation = alloc;
    out.covariance.V = out.codebook.covariance();
    return out;
}

} // namespace bpms::opt
