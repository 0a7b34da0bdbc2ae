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

#include "bpms/channel.hpp"
#include "bpms/array.hpp"
#include "bpms/error.hpp"

#include <cmath>

namespace bpms
{

namespace
{

void check_subcarrier(const SystemConfig &system, int m)
{
    if (m < 1 || m > system.num_subcarriers)
        throw DimensionError("subcarrier index out of range");
}

cd delay_phase(const SystemConfig &system, int m, double delay)
{
    return std::polar(1.0, -2.0 * kPi * m * system.subcarrier_spacing_hz * delay);
}

} // namespace

const char *link_name(Link link) { return link == Link::BP ? "BP" : "MS"; }

CMatrix bp_channel(const std::vector<PathParamsBP> &params, const SystemConfig &system, int m)
{
    check_subcarrier(system, m);
    CMatrix H = CMatrix::Zero(system.ue_array.num_elements, system.tx_array.num_elements);
    for (const auto &p : params)
    {
        const CVector aU = steering(system.ue_array, p.aoa_rad);
        const CVector aT = steering(system.tx_array, p.aod_rad);
        H.noalias() += (p.gain * delay_phase(system, m, p.delay_s)) * aU * aT.adjoint();
    }
    return H;
}

CMatrix ms_channel(const std::vector<PathParamsMS> &params, const SystemConfig &system, int m)
{
    check_subcarrier(system, m);
    CMatrix H = CMatrix::Zero(system.rx_array.num_elements, system.tx_array.num_elements);
    for (const auto &p : params)
    {
        const CVector aR = steering(system.rx_array, p.aod_rad);
        const CVector aT = steering(system.tx_array, p.aod_rad);
        H.noalias() += (p.gain * delay_phase(system, m, p.delay_s)) * aR * aT.adjoint();
    }
    return H;
}

CMatrix ChannelPartial::evaluate(const SystemConfig &system, int m) const
{
    check_subcarrier(system, m);
    const double w = 2.0 * kPi * m * system.subcarrier_spacing_hz;
    cd scale = gain * delay_phase(system, m, delay_s);
    for (int p = 0; p < delay_order; ++p)
        scale *= cd(0.0, -w);

    CMatrix D = CMatrix::Zero(terms.front().rx.size(), terms.front().tx.size());
    for (const auto &t : terms)
        D.noalias() += t.rx * t.tx.adjoint();
    return scale * D;
}

CMatrix ChannelDerivativeSet::evaluate(int index, const SystemConfig &system, int m) const
{
    if (index < 0 || index >= size())
        throw DimensionError("channel parameter index out of range");
    return partials[index].evaluate(system, m);
}

ChannelDerivativeSet channel_derivatives(const std::vector<PathParamsBP> &params, const SystemConfig &system)
{
    const int n = static_cast<int>(params.size());
    ChannelDerivativeSet set;
    set.link = Link::BP;
    set.num_paths = n;
    set.rx_size = system.ue_array.num_elements;
    set.tx_size = system.tx_array.num_elements;
    set.partials.resize(5 * n);

    for (int k = 0; k < n; ++k)
    {
        const auto &p = params[k];
        const CVector aU = steering(system.ue_array, p.aoa_rad);
        const CVector aT = steering(system.tx_array, p.aod_rad);
        const CVector daU = steering_derivative(system.ue_array, p.aoa_rad);
        const CVector daT = steering_derivative(system.tx_array, p.aod_rad);

        set.partials[k] = {p.gain, p.delay_s, 0, {{aU, daT}}};
        set.partials[n + k] = {p.gain, p.delay_s, 0, {{daU, aT}}};
        set.partials[2 * n + k] = {p.gain, p.delay_s, 1, {{aU, aT}}};
        set.partials[3 * n + k] = {cd(1.0, 0.0), p.delay_s, 0, {{aU, aT}}};
        set.partials[4 * n + k] = {cd(0.0, 1.0), p.delay_s, 0, {{aU, aT}}};
    }
    return set;
}

ChannelDerivativeSet channel_derivatives(const std::vector<PathParamsMS> &params, const SystemConfig &system)
{
    const int n = static_cast<int>(params.size());
    ChannelDerivativeSet set;
    set.link = Link::MS;
    set.num_paths = n;
    set.rx_size = system.rx_array.num_elements;
    set.tx_size = system.tx_array.num_elements;
    set.partials.resize(4 * n);

    for (int k = 0; k < n; ++k)
    {
        const auto &p = params[k];
        const CVector aR = steering(system.rx_array, p.aod_rad);
        const CVector aT = steering(system.tx_array, p.aod_rad);
        const CVector daR = steering_derivative(system.rx_array, p.aod_rad);
        const CVector daT = steering_derivative(system.tx_array, p.aod_rad);

        // the same angle drives both ends of the round trip
        set.partials[k] = {p.gain, p.delay_s, 0, {{daR, aT}, {aR, daT}}};
        set.partials[n + k] = {p.gain, p.delay_s, 1, {{aR, aT}}};
        set.partials[2 * n + k] = {cd(1.0, 0.0), p.delay_s, 0, {{aR, aT}}};
        set.partials[3 * n + k] = {cd(0.0, 1.0), p.delay_s, 0, {{aR, aT}}};
    }
    return set;
}

} // namespace bpms
