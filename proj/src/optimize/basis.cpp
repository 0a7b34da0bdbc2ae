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

#include "bpms/optimize/basis.hpp"
#include "bpms/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace bpms::opt
{

namespace
{
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

std::vector<CMatrix> hermitian_basis(int n)
{
    std::vector<CMatrix> basis;
    basis.reserve(static_cast<std::size_t>(n) * n);
    for (int p = 0; p < n; ++p)
    {
        CMatrix B = CMatrix::Zero(n, n);
        B(p, p) = 1.0;
        basis.push_back(std::move(B));
    }
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
        {
            CMatrix S = CMatrix::Zero(n, n);
            S(p, q) = S(q, p) = kInvSqrt2;
            basis.push_back(std::move(S));

            CMatrix A = CMatrix::Zero(n, n);
            A(p, q) = cd(0.0, kInvSqrt2);
            A(q, p) = cd(0.0, -kInvSqrt2);
            basis.push_back(std::move(A));
        }
    return basis;
}

RVector hermitian_coordinates(const CMatrix &V)
{
    const int n = static_cast<int>(V.rows());
    RVector x(static_cast<Eigen::Index>(n) * n);
    int k = 0;
    for (int p = 0; p < n; ++p)
        x[k++] = V(p, p).real();
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
        {
            // Re tr(B V) for the symmetric and antisymmetric members
            x[k++] = (V(q, p).real() + V(p, q).real()) * kInvSqrt2;
            x[k++] = (V(p, q).imag() - V(q, p).imag()) * kInvSqrt2;
        }
    return x;
}

CMatrix hermitian_from_coordinates(const RVector &x, int n)
{
    if (x.size() != static_cast<Eigen::Index>(n) * n)
        throw DimensionError("coordinate vector does not match n^2");
    CMatrix V = CMatrix::Zero(n, n);
    int k = 0;
    for (int p = 0; p < n; ++p)
        V(p, p) = x[k++];
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
        {
            const double s = x[k++] * kInvSqrt2;
            const double a = x[k++] * kInvSqrt2;
            V(p, q) = cd(s, a);
            V(q, p) = cd(s, -a);
        }
    return V;
}

std::vector<RMatrix> symmetric_basis(int n)
{
    std::vector<RMatrix> basis;
    for (int p = 0; p < n; ++p)
    {
        RMatrix B = RMatrix::Zero(n, n);
        B(p, p) = 1.0;
        basis.push_back(std::move(B));
    }
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
        {
            RMatrix B = RMatrix::Zero(n, n);
            B(p, q) = B(q, p) = kInvSqrt2;
            basis.push_back(std::move(B));
        }
    return basis;
}

RMatrix real_embedding(const CMatrix &H)
{
    const Eigen::Index n = H.rows();
    RMatrix E(2 * n, 2 * n);
    E.topLeftCorner(n, n) = H.real();
    E.topRightCorner(n, n) = -H.imag();
    E.bottomLeftCorner(n, n) = H.imag();
    E.bottomRightCorner(n, n) = H.real();
    return E;
}

CMatrix complex_from_embedding(const RMatrix &E)
{
    const Eigen::Index n = E.rows() / 2;
    const RMatrix re = 0.5 * (E.topLeftCorner(n, n) + E.bottomRightCorner(n, n));
    const RMatrix im = 0.5 * (E.bottomLeftCorner(n, n) - E.topRightCorner(n, n));
    CMatrix H(n, n);
    H.real() = re;
    H.imag() = im;
    return H;
}

void add_sparse(sdp::LmiProblem &lmi, int var, int block, const RMatrix &F, int offset)
{
    for (int c = 0; c < F.cols(); ++c)
        for (int r = 0; r <= c; ++r)
            if (F(r, c) != 0.0)
                lmi.add_entry(var, block, offset + r, offset + c, F(r, c));
}

CMatrix project_psd(const CMatrix &V, double *distance)
{
    const CMatrix H = 0.5 * (V + V.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(H);
    const RVector lam = eig.eigenvalues().cwiseMax(0.0);
    CMatrix P = eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().adjoint();
    P = 0.5 * (P + P.adjoint());
    if (distance)
        *distance = (V - P).norm();
    return P;
}

} // namespace bpms::opt
