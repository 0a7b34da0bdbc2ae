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
#include "bpms/error.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace bpms::kernels
{

namespace
{

const KernelTable kScalar{"scalar", Isa::Scalar, detail::dot_scalar, detail::phase_moments_scalar};

#if defined(BPMS_HAVE_AVX2_KERNELS)
const KernelTable kAvx2{"avx2", Isa::Avx2, detail::dot_avx2, detail::phase_moments_avx2};
#endif

const KernelTable *select_from_environment()
{
    const char *env = std::getenv("BPMS_SIMD");
    const std::string choice = env ? env : "auto";
    if (choice == "scalar")
        return &kScalar;
    if (choice == "avx2")
    {
        if (!avx2_table() || !cpu_has_avx2())
            throw ConfigError("BPMS_SIMD=avx2 requested but AVX2/FMA is unavailable");
        return avx2_table();
    }
    if (choice != "auto")
        throw ConfigError("BPMS_SIMD must be scalar, avx2 or auto");
    if (avx2_table() && cpu_has_avx2())
        return avx2_table();
    return &kScalar;
}

std::atomic<const KernelTable *> g_active{nullptr};

} // namespace

const KernelTable &scalar_table() { return kScalar; }

const KernelTable *avx2_table()
{
#if defined(BPMS_HAVE_AVX2_KERNELS)
    return &kAvx2;
#else
    return nullptr;
#endif
}

bool cpu_has_avx2()
{
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable &active()
{
    const KernelTable *t = g_active.load(std::memory_order_acquire);
    if (!t)
    {
        t = select_from_environment();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

void force(Isa isa)
{
    if (isa == Isa::Scalar)
    {
        g_active.store(&kScalar);
        return;
    }
    if (!avx2_table() || !cpu_has_avx2())
        throw ConfigError("AVX2 kernels are unavailable on this machine");
    g_active.store(avx2_table());
}

double real_inner(const CMatrix &a, const CMatrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("real_inner: shape mismatch");
    // Re(conj(x) y) = xr yr + xi yi, i.e. a plain dot over the interleaved storage
    return active().dot(reinterpret_cast<const double *>(a.data()), reinterpret_cast<const double *>(b.data()),
                        2 * static_cast<std::size_t>(a.size()));
}

double inner(const RMatrix &a, const RMatrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("inner: shape mismatch");
    return active().dot(a.data(), b.data(), static_cast<std::size_t>(a.size()));
}

} // namespace bpms::kernels
