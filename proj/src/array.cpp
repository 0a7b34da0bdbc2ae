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

#include "bpms/array.hpp"
#include "bpms/error.hpp"

#include <cmath>

namespace bpms
{

void ArraySpec::validate() const
{
    if (num_elements < 1)
        throw ConfigError("array needs at least one element");
    if (!(element_spacing_wavelengths > 0.0))
        throw ConfigError("array element spacing must be positive");
}

CVector steering(const ArraySpec &spec, double theta)
{
    const double k = 2.0 * kPi * spec.element_spacing_wavelengths * std::sin(theta);
    CVector a(spec.num_elements);
    for (int i = 0; i < spec.num_elements; ++i)
        a[i] = std::polar(1.0, k * i);
    return a;
}

CVector steering_derivative(const ArraySpec &spec, double theta)
{
    const double k = 2.0 * kPi * spec.element_spacing_wavelengths;
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    CVector d(spec.num_elements);
    for (int i = 0; i < spec.num_elements; ++i)
        d[i] = cd(0.0, k * i * c) * std::polar(1.0, k * s * i);
    return d;
}

} // namespace bpms
