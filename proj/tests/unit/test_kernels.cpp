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

#include "bpms/kernels/kernels.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace bpms;
using namespace bpms::kernels;

namespace
{

void naive_moments(double omega, int count, cd out[3])
{
    out[0] = out[1] = out[2] = 0.0;
    for (int m = 1; m <= count; ++m)
    {
        const cd e = std::polar(1.0, -m * omega);
        out[0] += e;
        out[1] += double(m) * e;
        out[2] += double(m) * m * e;
    }
}

double moment_error(const cd a[3], const cd b[3], int count)
{
    // each moment scaled by its largest possible magnitude
    double worst = 0.0;
    for (int p = 0; p < 3; ++p)
        worst = std::max(worst, std::abs(a[p] - b[p]) / std::pow(double(count), p + 1));
    return worst;
}

} // namespace

TEST_CASE("scalar phase moments match the direct sum")
{
    const KernelTable &s = scalar_table();
    for (int count : {1, 7, 64, 1024})
        for (double omega : {0.0, 1e-9, 0.013, 1.7, -2.9})
        {
            cd got[3], want[3];
            s.phase_moments(omega, count, got);
            naive_moments(omega, count, want);
            CHECK(moment_error(got, want, count) < 1e-12);
        }
}

TEST_CASE("AVX2 kernels are equivalent to the scalar reference")
{
    const KernelTable *v = avx2_table();
    if (v == nullptr || !cpu_has_avx2())
        SKIP("AVX2 not available on this build or CPU");
    const KernelTable &s = scalar_table();
    std::mt19937_64 rng(4);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 256u, 1001u})
    {
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            a[i] = normal(rng);
            b[i] = normal(rng);
        }
        const double ref = s.dot(a.data(), b.data(), n);
        double mag = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            mag += std::abs(a[i] * b[i]);
        CHECK(std::abs(v->dot(a.data(), b.data(), n) - ref) <= 1e-13 * (mag + 1.0));
    }
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int t = 0; t < 50; ++t)
    {
        const int count = 1 + t * 37;
        const double omega = angle(rng);
        cd ref[3], got[3];
        s.phase_moments(omega, count, ref);
        v->phase_moments(omega, count, got);
        CHECK(moment_error(got, ref, count) < 1e-12);
    }
}

TEST_CASE("dispatch can be forced to the scalar path")
{
    force(Isa::Scalar);
    CHECK(active().isa == Isa::Scalar);
    if (cpu_has_avx2() && avx2_table() != nullptr)
    {
        force(Isa::Avx2);
        CHECK(active().isa == Isa::Avx2);
    }
}

TEST_CASE("inner products")
{
    std::mt19937_64 rng(9);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix a(5, 7), b(5, 7);
    for (int i = 0; i < a.size(); ++i)
    {
        a.data()[i] = cd(normal(rng), normal(rng));
        b.data()[i] = cd(normal(rng), normal(rng));
    }
    const double want = (a.conjugate().cwiseProduct(b)).sum().real();
    CHECK_THAT(real_inner(a, b), Catch::Matchers::WithinAbs(want, 1e-12));
    const RMatrix x = a.real(), y = b.imag();
    CHECK_THAT(inner(x, y), Catch::Matchers::WithinAbs(x.cwiseProduct(y).sum(), 1e-12));
}
