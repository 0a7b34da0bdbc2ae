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

#include "bpms/optimize/recovery.hpp"
#include "bpms/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace bpms::opt
{

Recovery recover_beamformers(const CMatrix &V, int num_slots, const BeamformerObjective &objective, int trials,
                             std::mt19937_64 &rng)
{
    if (V.rows() != V.cols())
        throw DimensionError("covariance must be square");
    if (num_slots < 1 || trials < 1)
        throw PreconditionError("slot and trial counts must be positive");

    const int n = static_cast<int>(V.rows());
    const CMatrix H = 0.5 * (V + V.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(H);
    const RVector lam = eig.eigenvalues().cwiseMax(0.0); // ascending
    const CMatrix &Q = eig.eigenvectors();
    const double tr = H.trace().real();

    Recovery out;
    for (int i = 0; i < n; ++i)
        if (lam[i] > 1e-9 * tr)
            ++out.rank;

    if (out.rank <= num_slots)
    {
        // the largest min(L, n) eigenpairs reproduce V, up to the clipped negatives
        out.W = CMatrix::Zero(n, num_slots);
        const int keep = std::min(num_slots, n);
        for (int c = 0; c < keep; ++c)
            out.W.col(c) = std::sqrt(lam[n - 1 - c]) * Q.col(n - 1 - c);
        return out;
    }

    if (!objective)
        throw PreconditionError("randomised recovery needs an objective");
    const CMatrix root = Q * lam.cwiseSqrt().asDiagonal() * Q.adjoint();
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));

    out.randomized = true;
    out.objective = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t)
    {
        CMatrix G(n, num_slots);
        for (int c = 0; c < num_slots; ++c)
            for (int r = 0; r < n; ++r)
            {
                const double re = normal(rng);
                const double im = normal(rng);
                G(r, c) = cd(re, im);
            }
        CMatrix W = root * G;
        const double p = W.squaredNorm();
        if (!(p > 0.0))
            continue;
        W *= std::sqrt(tr / p);
        const double f = objective(W);
        if (f < out.objective)
        {
            out.objective = f;
            out.W = std::move(W);
        }
    }
    if (out.W.size() == 0)
        throw PreconditionError("no usable randomisation candidate");
    return out;
}

} // namespace bpms::opt
