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

#include <cstddef>

namespace bpms::kernels
{

enum class Isa
{
    Scalar,
    Avx2
};

/// Hot inner loops. Every table entry must agree with the scalar reference to
/// rounding (dot) or to ~1e-12 relative (phase_moments).
struct KernelTable
{
    const char *name;
    Isa isa;

    /// sum_i a[i] * b[i]
    double (*dot)(const double *a, const double *b, std::size_t n);

    /// out[p] = sum_{m=1}^{count} m^p exp(-j m omega), p = 0, 1, 2.
    void (*phase_moments)(double omega, int count, cd out[3]);
};

const KernelTable &scalar_table();

/// nullptr when the library was built without AVX2 support.
const KernelTable *avx2_table();

/// CPU feature test at runtime (AVX2 and FMA).
bool cpu_has_avx2();

/// Selected once: BPMS_SIMD=scalar|avx2|auto (default auto).
const KernelTable &active();

/// Overrides the selection for the rest of the process (tests, benchmarks).
void force(Isa isa);

/// Re sum conj(a) .* b over all entries, for matrices of equal shape.
double real_inner(const CMatrix &a, const CMatrix &b);

/// Frobenius inner product of real matrices of equal shape.
double inner(const RMatrix &a, const RMatrix &b);

} // namespace bpms::kernels
