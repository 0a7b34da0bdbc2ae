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
#include "bpms/types.hpp"

#include <vector>

namespace bpms::opt
{

/// Orthonormal basis of the n x n Hermitian matrices under Re tr(A^H B):
/// E_pp first, then for every p < q the pair (E_pq + E_qp)/sqrt2, j(E_pq - E_qp)/sqrt2.
std::vector<CMatrix> hermitian_basis(int n);

/// x_k = Re tr(B_k V) for the basis above.
RVector hermitian_coordinates(const CMatrix &V);

CMatrix hermitian_from_coordinates(const RVector &x, int n);

/// Orthonormal basis of the real symmetric n x n matrices: E_pp, then (E_pq + E_qp)/sqrt2.
std::vector<RMatrix> symmetric_basis(int n);

inline int symmetric_dimension(int n) { return n * (n + 1) / 2; }

/// [[Re H, -Im H], [Im H, Re H]]; psd iff H is psd.
RMatrix real_embedding(const CMatrix &H);

/// Inverse of real_embedding after averaging the redundant copies.
CMatrix complex_from_embedding(const RMatrix &E);

/// Adds the nonzero upper-triangle entries of `F` at `offset` in an LMI block.
void add_sparse(sdp::LmiProblem &lmi, int var, int block, const RMatrix &F, int offset = 0);

/// Nearest psd matrix in Frobenius norm; `distance` receives ||V - P||_F.
CMatrix project_psd(const CMatrix &V, double *distance = nullptr);

} // namespace bpms::opt
