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

#include <cmath>

namespace bpms::kernels::detail
{

double dot_scalar(const double *a, const double *b, std::size_t n)
{
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
    {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    for (; i < n; ++i)
        s0 += a[i] * b[i];
    return (s0 + s1) + (s2 + s3);
}

void phase_moments_scalar(double omega, int count, cd out[3])
{
    cd s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int m = 1; m <= count; ++m)
    {
        const cd e = std::polar(1.0, -omega * m);
        const double md = m;
        s0 += e;
        s1 += md * e;
        s2 += md * md * e;
    }
    out[0] = s0;
    out[1] = s1;
    out[2] = s2;
}

} // namespace bpms::kernels::detail
