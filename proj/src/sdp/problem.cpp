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

#include "bpms/sdp/problem.hpp"
#include "bpms/error.hpp"
#include "bpms/kernels/kernels.hpp"

#include <utility>

namespace bpms::sdp
{

int BlockTerm::nonzeros() const
{
    if (dense)
        return static_cast<int>(matrix.size());
    int n = 0;
    for (const auto &e : entries)
        n += e.row == e.col ? 1 : 2;
    return n;
}

RMatrix BlockTerm::to_dense(int size) const
{
    if (dense)
        return matrix;
    RMatrix A = RMatrix::Zero(size, size);
    for (const auto &e : entries)
    {
        A(e.row, e.col) += e.value;
        if (e.row != e.col)
            A(e.col, e.row) += e.value;
    }
    return A;
}

double BlockTerm::inner(const RMatrix &X) const
{
    if (dense)
        return kernels::inner(matrix, X);
    double s = 0.0;
    for (const auto &e : entries)
        s += e.row == e.col ? e.value * X(e.row, e.col) : e.value * (X(e.row, e.col) + X(e.col, e.row));
    return s;
}

Problem::Problem(std::vector<int> block_sizes) : sizes_(std::move(block_sizes))
{
    for (int n : sizes_)
    {
        if (n < 1)
            throw DimensionError("PSD blocks must have positive size");
        C_.push_back(RMatrix::Zero(n, n));
    }
}

int Problem::add_constraint(double rhs)
{
    A_.emplace_back();
    b_.conservativeResize(b_.size() + 1);
    b_[b_.size() - 1] = rhs;
    return static_cast<int>(A_.size()) - 1;
}

BlockTerm &Problem::term(int constraint, int block, bool dense)
{
    if (constraint < 0 || constraint >= num_constraints() || block < 0 || block >= num_blocks())
        throw DimensionError("constraint or block index out of range");
    auto &terms = A_[constraint];
    for (auto &t : terms)
        if (t.block == block)
        {
            if (dense && !t.dense)
            {
                t.matrix = t.to_dense(sizes_[block]);
                t.entries.clear();
                t.dense = true;
            }
            return t;
        }
    BlockTerm t;
    t.block = block;
    t.dense = dense;
    if (dense)
        t.matrix = RMatrix::Zero(sizes_[block], sizes_[block]);
    terms.push_back(std::move(t));
    return terms.back();
}

void Problem::add_dense(int constraint, int block, const RMatrix &A)
{
    if (A.rows() != sizes_[block] || A.cols() != sizes_[block])
        throw DimensionError("dense coefficient has the wrong size");
    term(constraint, block, true).matrix += 0.5 * (A + A.transpose());
}

void Problem::add_entry(int constraint, int block, int row, int col, double value)
{
    if (row > col)
        std::swap(row, col);
    if (row < 0 || col >= sizes_[block])
        throw DimensionError("entry outside its block");
    BlockTerm &t = term(constraint, block, false);
    if (t.dense)
    {
        t.matrix(row, col) += value;
        if (row != col)
            t.matrix(col, row) += value;
    }
    else
        t.entries.push_back({row, col, value});
}

LmiProblem::LmiProblem(int num_vars) : c_(RVector::Zero(num_vars))
{
    if (num_vars < 1)
        throw DimensionError("an LMI problem needs at least one variable");
}

int LmiProblem::add_block(int size)
{
    if (size < 1)
        throw DimensionError("LMI blocks must have positive size");
    sizes_.push_back(size);
    F0_.push_back(RMatrix::Zero(size, size));
    return static_cast<int>(sizes_.size()) - 1;
}

void LmiProblem::add_dense(int var, int block, const RMatrix &F)
{
    if (var < 0 || var >= num_vars() || block < 0 || block >= num_blocks())
        throw DimensionError("variable or block index out of range");
    coefs_.push_back({var, block, true, F, {}});
}

void LmiProblem::add_entry(int var, int block, int row, int col, double value)
{
    if (var < 0 || var >= num_vars() || block < 0 || block >= num_blocks())
        throw DimensionError("variable or block index out of range");
    coefs_.push_back({var, block, false, {}, {row, col, value}});
}

Problem LmiProblem::to_standard() const
{
    Problem p(sizes_);
    for (int b = 0; b < num_blocks(); ++b)
        p.objective(b) = 0.5 * (F0_[b] + F0_[b].transpose());
    for (int i = 0; i < num_vars(); ++i)
        p.add_constraint(-c_[i]);
    for (const auto &c : coefs_)
    {
        if (c.dense)
            p.add_dense(c.var, c.block, -c.matrix);
        else
            p.add_entry(c.var, c.block, c.entry.row, c.entry.col, -c.entry.value);
    }
    return p;
}

} // namespace bpms::sdp
