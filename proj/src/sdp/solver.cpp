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

#include "bpms/sdp/solver.hpp"
#include "bpms/error.hpp"
#include "bpms/kernels/kernels.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace bpms::sdp
{

const char *status_name(Status status)
{
    switch (status)
    {
    case Status::Optimal:
        return "optimal";
    case Status::PrimalInfeasible:
        return "primal_infeasible";
    case Status::DualInfeasible:
        return "dual_infeasible";
    case Status::MaxIterations:
        return "max_iterations";
    case Status::NumericalFailure:
        return "numerical_failure";
    }
    return "unknown";
}

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

// One constraint's coefficient inside one block, after scaling. Sparse terms
// hold the full symmetric entry list and the distinct columns it touches.
struct Coef
{
    int con;
    bool dense;
    RMatrix matrix;
    std::vector<Entry> full;
    std::vector<int> cols;

    double inner(const RMatrix &Y) const
    {
        if (dense)
            return kernels::inner(matrix, Y);
        double s = 0.0;
        for (const auto &e : full)
            s += e.value * Y(e.row, e.col);
        return s;
    }

    void add_to(RMatrix &Y, double scale) const
    {
        if (dense)
            Y.noalias() += scale * matrix;
        else
            for (const auto &e : full)
                Y(e.row, e.col) += scale * e.value;
    }

    // P = X A S^{-1}
    RMatrix product(const RMatrix &X, const RMatrix &Sinv) const
    {
        if (dense)
            return X * matrix * Sinv;
        const int n = static_cast<int>(X.rows());
        RMatrix P = RMatrix::Zero(n, n);
        RVector col(n);
        for (int d : cols)
        {
            col.setZero();
            for (const auto &e : full)
                if (e.col == d)
                    col.noalias() += e.value * X.col(e.row);
            P.noalias() += col * Sinv.row(d);
        }
        return P;
    }
};

struct Block
{
    int size;
    RMatrix C;
    std::vector<Coef> coefs; // sorted by constraint
    bool all_sparse = true;
};

struct Scaled
{
    std::vector<Block> blocks;
    RVector b;
    RVector row_norm;
    double beta = 1.0;
    double gamma = 1.0;
    int total_dim = 0;
};

Scaled prepare(const Problem &problem)
{
    Scaled s;
    const int m = problem.num_constraints();
    s.row_norm = RVector::Zero(m);
    for (int i = 0; i < m; ++i)
        for (const auto &t : problem.terms(i))
        {
            if (t.dense)
                s.row_norm[i] += t.matrix.squaredNorm();
            else
                s.row_norm[i] += t.to_dense(problem.block_size(t.block)).squaredNorm();
        }
    for (int i = 0; i < m; ++i)
    {
        if (!(s.row_norm[i] > 0.0))
            throw SolverError("constraint " + std::to_string(i) + " has no coefficients");
        s.row_norm[i] = std::sqrt(s.row_norm[i]);
    }

    s.b = problem.rhs().cwiseQuotient(s.row_norm);
    s.beta = std::max(1.0, s.b.norm());
    s.b /= s.beta;

    double cnorm2 = 0.0;
    for (int b = 0; b < problem.num_blocks(); ++b)
        cnorm2 += problem.objective(b).squaredNorm();
    s.gamma = std::max(1.0, std::sqrt(cnorm2));

    s.blocks.resize(problem.num_blocks());
    for (int b = 0; b < problem.num_blocks(); ++b)
    {
        s.blocks[b].size = problem.block_size(b);
        s.blocks[b].C = problem.objective(b) / s.gamma;
        s.total_dim += problem.block_size(b);
    }
    for (int i = 0; i < m; ++i)
        for (const auto &t : problem.terms(i))
        {
            Coef c;
            c.con = i;
            c.dense = t.dense;
            const double scale = 1.0 / s.row_norm[i];
            if (t.dense)
                c.matrix = t.matrix * scale;
            else
            {
                // merge duplicates through a dense scratch, then list nonzeros
                const RMatrix A = t.to_dense(problem.block_size(t.block)) * scale;
                for (int col = 0; col < A.cols(); ++col)
                {
                    bool used = false;
                    for (int row = 0; row < A.rows(); ++row)
                        if (A(row, col) != 0.0)
                        {
                            c.full.push_back({row, col, A(row, col)});
                            used = true;
                        }
                    if (used)
                        c.cols.push_back(col);
                }
            }
            Block &blk = s.blocks[t.block];
            blk.all_sparse = blk.all_sparse && !t.dense;
            blk.coefs.push_back(std::move(c));
        }
    return s;
}

using Blocks = std::vector<RMatrix>;

RVector apply_A(const Scaled &s, const Blocks &Y, int m)
{
    RVector v = RVector::Zero(m);
    for (std::size_t b = 0; b < s.blocks.size(); ++b)
        for (const auto &c : s.blocks[b].coefs)
            v[c.con] += c.inner(Y[b]);
    return v;
}

Blocks apply_At(const Scaled &s, const RVector &y)
{
    Blocks out;
    for (const auto &blk : s.blocks)
    {
        RMatrix Y = RMatrix::Zero(blk.size, blk.size);
        for (const auto &c : blk.coefs)
            c.add_to(Y, y[c.con]);
        out.push_back(std::move(Y));
    }
    return out;
}

double inner(const Blocks &A, const Blocks &B)
{
    double s = 0.0;
    for (std::size_t b = 0; b < A.size(); ++b)
        s += kernels::inner(A[b], B[b]);
    return s;
}

double norm(const Blocks &A)
{
    double s = 0.0;
    for (const auto &a : A)
        s += a.squaredNorm();
    return std::sqrt(s);
}

RMatrix symmetrize(const RMatrix &A) { return 0.5 * (A + A.transpose()); }

// Largest alpha with X + alpha dX psd (infinity if unbounded).
double max_step(const RMatrix &X, const RMatrix &dX)
{
    if (X.rows() == 1)
        return dX(0, 0) < 0.0 ? -X(0, 0) / dX(0, 0) : kInf;
    RMatrix R;
    Eigen::LLT<RMatrix> llt(X);
    if (llt.info() == Eigen::Success)
    {
        R = llt.matrixL().solve(dX);
        R = llt.matrixL().solve(RMatrix(R.transpose()));
    }
    else
    {
        // nearly singular but still positive: go through the eigenbasis
        Eigen::SelfAdjointEigenSolver<RMatrix> eig(X);
        if (!(eig.eigenvalues()[0] > 0.0))
            return 0.0;
        const RVector w = eig.eigenvalues().cwiseSqrt().cwiseInverse();
        R = w.asDiagonal() * (eig.eigenvectors().transpose() * dX * eig.eigenvectors()) * w.asDiagonal();
    }
    const double lmin = Eigen::SelfAdjointEigenSolver<RMatrix>(symmetrize(R), Eigen::EigenvaluesOnly).eigenvalues()[0];
    return lmin < 0.0 ? -1.0 / lmin : kInf;
}

void schur_block(const Block &blk, const RMatrix &X, const RMatrix &Sinv, RMatrix &M)
{
    const int n = blk.size;
    const auto &coefs = blk.coefs;
    for (std::size_t jj = 0; jj < coefs.size(); ++jj)
    {
        const Coef &cj = coefs[jj];
        bool direct = false;
        if (blk.all_sparse)
        {
            double direct_cost = 0.0, product_cost = static_cast<double>(n) * n * cj.cols.size();
            for (std::size_t ii = 0; ii <= jj; ++ii)
            {
                direct_cost += static_cast<double>(coefs[ii].full.size()) * cj.full.size();
                product_cost += coefs[ii].full.size();
            }
            direct = direct_cost < product_cost;
        }

        if (direct)
        {
            // tr(A_i X A_j S^{-1}) entry by entry
            for (std::size_t ii = 0; ii <= jj; ++ii)
            {
                double v = 0.0;
                for (const auto &a : coefs[ii].full)
                    for (const auto &c : cj.full)
                        v += a.value * X(a.col, c.row) * c.value * Sinv(c.col, a.row);
                M(coefs[ii].con, cj.con) += v;
            }
        }
        else
        {
            const RMatrix P = cj.product(X, Sinv);
            for (std::size_t ii = 0; ii <= jj; ++ii)
                M(coefs[ii].con, cj.con) += coefs[ii].inner(P);
        }
    }
}

} // namespace

Result solve(const Problem &problem, const Options &options)
{
    const int m = problem.num_constraints();
    if (m == 0)
        throw SolverError("problem has no constraints");
    const Scaled s = prepare(problem);
    const int nb = static_cast<int>(s.blocks.size());
    const double n_tot = s.total_dim;

    // infeasible start, scaled to the data
    Blocks X(nb), S(nb);
    for (int b = 0; b < nb; ++b)
    {
        const auto &blk = s.blocks[b];
        const double n = blk.size;
        double amax = 0.0, ratio = 0.0;
        for (const auto &c : blk.coefs)
        {
            const double an = c.dense ? c.matrix.norm() : [&] {
                double q = 0.0;
                for (const auto &e : c.full)
                    q += e.value * e.value;
                return std::sqrt(q);
            }();
            amax = std::max(amax, an);
            ratio = std::max(ratio, (1.0 + std::abs(s.b[c.con])) / (1.0 + an));
        }
        const double xi = std::max({10.0, std::sqrt(n), n * ratio});
        const double eta = std::max({10.0, std::sqrt(n), amax, blk.C.norm()});
        X[b] = xi * RMatrix::Identity(blk.size, blk.size);
        S[b] = eta * RMatrix::Identity(blk.size, blk.size);
    }
    RVector y = RVector::Zero(m);

    Blocks C(nb);
    for (int b = 0; b < nb; ++b)
        C[b] = s.blocks[b].C;
    const double bnorm = s.b.norm();
    const double cnorm = norm(C);

    Result res;
    res.status = Status::MaxIterations;
    double progress_ref = kInf;
    int stall = 0;

    // best iterate seen, returned when the method stalls short of the tolerance
    struct Snapshot
    {
        Blocks X, S;
        RVector y;
        double gap = kInf, pinf = kInf, dinf = kInf, metric = kInf;
    } best;

    auto finish = [&](Status status) {
        res.status = status;
        res.X.resize(nb);
        res.S.resize(nb);
        for (int b = 0; b < nb; ++b)
        {
            res.X[b] = s.beta * X[b];
            res.S[b] = s.gamma * S[b];
        }
        res.y = (s.gamma * y).cwiseQuotient(s.row_norm);
        res.primal_objective = 0.0;
        for (int b = 0; b < problem.num_blocks(); ++b)
            res.primal_objective += kernels::inner(problem.objective(b), res.X[b]);
        res.dual_objective = problem.rhs().dot(res.y);
        return res;
    };

    for (int it = 0; it < options.max_iterations; ++it)
    {
        res.iterations = it;
        const RVector Rp = s.b - apply_A(s, X, m);
        Blocks Aty = apply_At(s, y);
        Blocks Rd(nb);
        for (int b = 0; b < nb; ++b)
            Rd[b] = C[b] - Aty[b] - S[b];

        const double xs = inner(X, S);
        const double mu = xs / n_tot;
        const double pobj = inner(C, X);
        const double dobj = s.b.dot(y);
        const double denom = 1.0 + std::abs(pobj) + std::abs(dobj);
        res.relative_gap = std::max(std::abs(pobj - dobj), std::abs(xs)) / denom;
        res.primal_infeasibility = Rp.norm() / (1.0 + bnorm);
        res.dual_infeasibility = norm(Rd) / (1.0 + cnorm);
        const double metric = std::max({res.relative_gap, res.primal_infeasibility, res.dual_infeasibility});

        if (options.verbose)
            std::fprintf(stderr, "%3d  p=% .10e  d=% .10e  gap=%.2e  pinf=%.2e  dinf=%.2e\n", it, pobj, dobj,
                         res.relative_gap, res.primal_infeasibility, res.dual_infeasibility);

        if (!std::isfinite(metric))
            return finish(Status::NumericalFailure);
        if (metric <= options.tolerance)
            return finish(Status::Optimal);

        // infeasibility certificates along diverging iterates
        if (dobj > 0.0)
        {
            Blocks ray = Aty;
            for (int b = 0; b < nb; ++b)
                ray[b] += S[b];
            if (norm(ray) / dobj < 1e-8 && dobj > 1e6)
                return finish(Status::PrimalInfeasible);
        }
        if (pobj < 0.0)
        {
            const double ax = apply_A(s, X, m).norm();
            if (ax / -pobj < 1e-8 && -pobj > 1e6)
                return finish(Status::DualInfeasible);
        }

        if (metric < best.metric)
            best = Snapshot{X, S, y, res.relative_gap, res.primal_infeasibility, res.dual_infeasibility, metric};
        if (metric < 0.5 * progress_ref)
        {
            progress_ref = metric;
            stall = 0;
        }
        else if (++stall >= 8 && metric < 1e-4)
            break;

        Blocks Sinv(nb);
        bool ok = true;
        for (int b = 0; b < nb; ++b)
        {
            Eigen::LLT<RMatrix> llt(S[b]);
            if (llt.info() != Eigen::Success)
            {
                ok = false;
                break;
            }
            Sinv[b] = symmetrize(llt.solve(RMatrix::Identity(S[b].rows(), S[b].cols())));
        }
        if (!ok)
        {
            if (options.verbose)
                std::fprintf(stderr, "dual slack lost definiteness\n");
            break;
        }

        RMatrix M = RMatrix::Zero(m, m);
        for (int b = 0; b < nb; ++b)
            schur_block(s.blocks[b], X[b], Sinv[b], M);
        M.triangularView<Eigen::StrictlyLower>() = M.transpose().triangularView<Eigen::StrictlyLower>();

        Eigen::LLT<RMatrix> chol(M);
        if (chol.info() != Eigen::Success)
        {
            const double reg = 1e-13 * M.diagonal().cwiseAbs().maxCoeff();
            M.diagonal().array() += reg;
            chol.compute(M);
            if (chol.info() != Eigen::Success)
            {
                if (options.verbose)
                    std::fprintf(stderr, "schur matrix not positive definite\n");
                break;
            }
        }

        Blocks XRdSinv(nb);
        for (int b = 0; b < nb; ++b)
            XRdSinv[b] = X[b] * Rd[b] * Sinv[b];
        const RVector base = Rp + apply_A(s, XRdSinv, m);

        auto direction = [&](const Blocks &Rc, RVector &dy, Blocks &dX, Blocks &dS) {
            dy = chol.solve(base - apply_A(s, Rc, m));
            dX.resize(nb);
            dS.resize(nb);
            // refinement against the unformed operator corrects rounding in M
            for (int pass = 0; pass < 3; ++pass)
            {
                const Blocks Atdy = apply_At(s, dy);
                for (int b = 0; b < nb; ++b)
                {
                    dS[b] = Rd[b] - Atdy[b];
                    dX[b] = symmetrize(Rc[b] - X[b] * dS[b] * Sinv[b]);
                }
                if (pass == 2)
                    break;
                dy += chol.solve(Rp - apply_A(s, dX, m));
            }
        };
        auto step_lengths = [&](const Blocks &dX, const Blocks &dS, double &ap, double &ad) {
            ap = kInf;
            ad = kInf;
            for (int b = 0; b < nb; ++b)
            {
                ap = std::min(ap, max_step(X[b], dX[b]));
                ad = std::min(ad, max_step(S[b], dS[b]));
            }
        };

        // predictor
        Blocks Rc(nb);
        for (int b = 0; b < nb; ++b)
            Rc[b] = -X[b];
        RVector dy;
        Blocks dX, dS;
        direction(Rc, dy, dX, dS);
        double ap, ad;
        step_lengths(dX, dS, ap, ad);
        ap = std::min(1.0, ap);
        ad = std::min(1.0, ad);

        double mu_aff = 0.0;
        for (int b = 0; b < nb; ++b)
            mu_aff += kernels::inner(X[b] + ap * dX[b], S[b] + ad * dS[b]);
        mu_aff /= n_tot;
        const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

        // corrector
        for (int b = 0; b < nb; ++b)
            Rc[b] = sigma * mu * Sinv[b] - X[b] - dX[b] * dS[b] * Sinv[b];
        direction(Rc, dy, dX, dS);
        step_lengths(dX, dS, ap, ad);
        ap = std::min(1.0, options.step_fraction * ap);
        ad = std::min(1.0, options.step_fraction * ad);
        if (options.verbose)
            std::fprintf(stderr, "     sigma=%.2e  ap=%.3e  ad=%.3e\n", sigma, ap, ad);
        if (!(ap > 1e-12) && !(ad > 1e-12))
            break;

        for (int b = 0; b < nb; ++b)
        {
            X[b] = symmetrize(X[b] + ap * dX[b]);
            S[b] = symmetrize(S[b] + ad * dS[b]);
        }
        y += ad * dy;
        res.iterations = it + 1;
    }

    // out of iterations or stalled: fall back to the best iterate
    const bool exhausted = res.iterations >= options.max_iterations;
    if (best.metric < kInf)
    {
        X = best.X;
        S = best.S;
        y = best.y;
        res.relative_gap = best.gap;
        res.primal_infeasibility = best.pinf;
        res.dual_infeasibility = best.dinf;
    }
    if (best.metric <= options.accept_tolerance)
        return finish(Status::Optimal);
    return finish(exhausted ? Status::MaxIterations : Status::NumericalFailure);
}

LmiResult solve(const LmiProblem &problem, const Options &options)
{
    const Result r = solve(problem.to_standard(), options);
    LmiResult out;
    out.status = r.status;
    out.x = r.y;
    out.objective = problem.cost().dot(r.y);
    out.relative_gap = r.relative_gap;
    out.iterations = r.iterations;
    out.multipliers = r.X;
    return out;
}

} // namespace bpms::sdp
