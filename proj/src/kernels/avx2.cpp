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

#include "kernels_impl.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace bpms::kernels::detail
{

namespace
{

double hsum(__m256d v)
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Rotation steps between exact re-anchoring of the phasors.
constexpr int kAnchorInterval = 16;

} // namespace

double dot_avx2(const double *a, const double *b, std::size_t n)
{
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    __m256d acc3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16)
    {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
        acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double s = hsum(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
    for (; i < n; ++i)
        s += a[i] * b[i];
    return s;
}

void phase_moments_avx2(double omega, int count, cd out[3])
{
    __m256d s0r = _mm256_setzero_pd(), s0i = _mm256_setzero_pd();
    __m256d s1r = _mm256_setzero_pd(), s1i = _mm256_setzero_pd();
    __m256d s2r = _mm256_setzero_pd(), s2i = _mm256_setzero_pd();

    // four consecutive subcarriers per vector; each step rotates by exp(-j 4 omega)
    const __m256d rr = _mm256_set1_pd(std::cos(4.0 * omega));
    const __m256d ri = _mm256_set1_pd(-std::sin(4.0 * omega));
    const __m256d four = _mm256_set1_pd(4.0);

    int m = 1;
    while (m + 3 <= count)
    {
        alignas(32) double er[4], ei[4];
        for (int l = 0; l < 4; ++l)
        {
            er[l] = std::cos(omega * (m + l));
            ei[l] = -std::sin(omega * (m + l));
        }
        __m256d vr = _mm256_load_pd(er);
        __m256d vi = _mm256_load_pd(ei);
        __m256d mv = _mm256_set_pd(m + 3.0, m + 2.0, m + 1.0, m + 0.0);

        const int steps = std::min(kAnchorInterval, (count - m + 1) / 4);
        for (int s = 0; s < steps; ++s)
        {
            const __m256d m2 = _mm256_mul_pd(mv, mv);
            s0r = _mm256_add_pd(s0r, vr);
            s0i = _mm256_add_pd(s0i, vi);
            s1r = _mm256_fmadd_pd(mv, vr, s1r);
            s1i = _mm256_fmadd_pd(mv, vi, s1i);
            s2r = _mm256_fmadd_pd(m2, vr, s2r);
            s2i = _mm256_fmadd_pd(m2, vi, s2i);

            const __m256d nr = _mm256_fmsub_pd(vr, rr, _mm256_mul_pd(vi, ri));
            const __m256d ni = _mm256_fmadd_pd(vr, ri, _mm256_mul_pd(vi, rr));
            vr = nr;
            vi = ni;
            mv = _mm256_add_pd(mv, four);
        }
        m += 4 * steps;
    }

    cd t0(hsum(s0r), hsum(s0i)), t1(hsum(s1r), hsum(s1i)), t2(hsum(s2r), hsum(s2i));
    for (; m <= count; ++m)
    {
        const cd e = std::polar(1.0, -omega * m);
        const double md = m;
        t0 += e;
        t1 += md * e;
        t2 += md * md * e;
    }
    out[0] = t0;
    out[1] = t1;
    out[2] = t2;
}

} // namespace bpms::kernels::detail
