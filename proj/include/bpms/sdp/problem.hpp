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

#include <vector>

namespace bpms::sdp
{

struct Entry
{
    int row;
    int col;
    double value;
};

/// Symmetric block coefficient, dense or as a list of upper-triangle entries
/// (row <= col; off-diagonal entries stand for both (r,c) and (c,r)).
struct BlockTerm
{
    int block = 0;
    bool dense = false;
    RMatrix matrix;
    std::vector<Entry> entries;

    int nonzeros() const;
    RMatrix to_dense(int size) const;
    double inner(const RMatrix &X) const;
};

/// min <C, X>  s.t.  <A_i, X> = b_i,  X = diag(X_1, ..., X_B) psd.
/// Dual: max b^T y  s.t.  C - sum_i y_i A_i = S psd.
class Problem
{
  public:
    explicit Problem(std::vector<int> block_sizes);

    int num_blocks() const { return static_cast<int>(sizes_.size()); }
    int block_size(int b) const { return sizes_[b]; }
    const std::vector<int> &block_sizes() const { return sizes_; }
    int num_constraints() const { return static_cast<int>(b_.size()); }

    RMatrix &objective(int block) { return C_[block]; }
    const RMatrix &objective(int block) const { return C_[block]; }

    /// Appends an empty constraint <A_i, X> = rhs and returns i.
    int add_constraint(double rhs);
    void add_dense(int constraint, int block, const RMatrix &A);
    /// Accumulates into A_i(r,c) and A_i(c,r).
    void add_entry(int constraint, int block, int row, int col, double value);

    const std::vector<BlockTerm> &terms(int constraint) const { return A_[constraint]; }
    const RVector &rhs() const { return b_; }
    void set_rhs(int constraint, double value) { b_[constraint] = value; }

  private:
    BlockTerm &term(int constraint, int block, bool dense);

    std::vector<int> sizes_;
    std::vector<RMatrix> C_;
    std::vector<std::vector<BlockTerm>> A_;
    RVector b_;
};

/// min c^T x  s.t.  F_0^b + sum_i x_i F_i^b psd for every block b.
class LmiProblem
{
  public:
    explicit LmiProblem(int num_vars);

    int num_vars() const { return static_cast<int>(c_.size()); }
    RVector &cost() { return c_; }
    const RVector &cost() const { return c_; }

    int add_block(int size);
    int num_blocks() const { return static_cast<int>(sizes_.size()); }
    int block_size(int b) const { return sizes_[b]; }

    RMatrix &constant(int block) { return F0_[block]; }
    void add_dense(int var, int block, const RMatrix &F);
    void add_entry(int var, int block, int row, int col, double value);

    /// Standard form with y = x: C = F_0, A_i = -F_i, b = -c.
    Problem to_standard() const;

  private:
    std::vector<int> sizes_;
    std::vector<RMatrix> F0_;
    struct Coef
    {
        int var;
        int block;
        bool dense;
        RMatrix matrix;
        Entry entry;
    };
    std::vector<Coef> coefs_;
    RVector c_;
};

} // namespace bpms::sdp
