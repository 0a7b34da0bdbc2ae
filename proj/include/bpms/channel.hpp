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

#include "bpms/scenario.hpp"
#include "bpms/types.hpp"

#include <vector>

namespace bpms
{

enum class Link
{
    BP,
    MS
};

const char *link_name(Link link);

/// H_m = sum_k alpha_k exp(-j 2 pi m df tau_k) a_U(theta_U,k) a_T(theta_B,k)^H, 1 <= m <= M.
CMatrix bp_channel(const std::vector<PathParamsBP> &params, const SystemConfig &system, int m);

/// H_m = sum_k beta_k exp(-j 2 pi m df kappa_k) a_R(theta_B,k) a_T(theta_B,k)^H, 1 <= m <= M.
CMatrix ms_channel(const std::vector<PathParamsMS> &params, const SystemConfig &system, int m);

struct OuterTerm
{
    CVector rx;
    CVector tx;
};

/// One channel partial, stored in factored form. At subcarrier m it evaluates to
///   gain * (-j 2 pi m df)^delay_order * exp(-j 2 pi m df delay_s) * sum_t rx_t tx_t^H.
struct ChannelPartial
{
    cd gain{1.0, 0.0};
    double delay_s = 0.0;
    int delay_order = 0;
    std::vector<OuterTerm> terms;

    CMatrix evaluate(const SystemConfig &system, int m) const;
};

/// Partials with respect to xi_BP = [theta_B; theta_U; tau; alpha_R; alpha_I]
/// or xi_MS = [theta_B; kappa; beta_R; beta_I], each group holding K+1 entries.
struct ChannelDerivativeSet
{
    Link link = Link::BP;
    int num_paths = 0;
    int rx_size = 0;
    int tx_size = 0;
    std::vector<ChannelPartial> partials;

    int size() const { return static_cast<int>(partials.size()); }
    CMatrix evaluate(int index, const SystemConfig &system, int m) const;
};

ChannelDerivativeSet channel_derivatives(const std::vector<PathParamsBP> &params, const SystemConfig &system);
ChannelDerivativeSet channel_derivatives(const std::vector<PathParamsMS> &params, const SystemConfig &system);

} // namespace bpms
