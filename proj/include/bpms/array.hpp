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

namespace bpms
{

/// Uniform linear array. Element 0 is the phase reference; angles are measured
/// from broadside in the owning device's local frame.
struct ArraySpec
{
    int num_elements = 16;
    double element_spacing_wavelengths = 0.5;

    void validate() const;
};

/// a(theta)[i] = exp(j 2 pi d i sin(theta)), d in wavelengths.
CVector steering(const ArraySpec &spec, double theta);

/// Exact derivative of steering() with respect to theta.
CVector steering_derivative(const ArraySpec &spec, double theta);

} // namespace bpms
