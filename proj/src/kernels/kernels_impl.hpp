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

#include "bpms/kernels/kernels.hpp"

namespace bpms::kernels::detail
{

double dot_scalar(const double *a, const double *b, std::size_t n);
void phase_moments_scalar(double omega, int count, cd out[3]);

#if defined(BPMS_HAVE_AVX2_KERNELS)
double dot_avx2(const double *a, const double *b, std::size_t n);
void phase_moments_avx2(double omega, int count, cd out[3]);
#endif

} // namespace bpms::kernels::detail
