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

#include "bpms/channel.hpp"
#include "bpms/scenario.hpp"
#include "bpms/types.hpp"

#include <vector>

namespace bpms
{

/// The linear map V -> I(V), I(V)_ij = Re tr(Q_ij V), stored as one complex
/// M_T x M_T coefficient per parameter pair. Q_ji = Q_ij^H.
class FimCoefficients
{
  public:
    FimCoefficients() = default;
    FimCoefficients(int num_params, int array_size);

    int num_params() const { return n_; }
    int array_size() const { return t_; }

    const CMatrix &coefficient(int i, int j) const { return q_[static_cast<std::size_t>(i) * n_ + j]; }
    CMatrix &coefficient(int i, int j) { return q_[static_cast<std::size_t>(i) * n_ + j]; }

    RMatrix evaluate(const CMatrix &V) const;

    /// Coefficients of J^T I(V) J, i.e. R_ab = sum_ij J_ia J_jb Q_ij.
    FimCoefficients transform(const RMatrix &J) const;

  private:
    int n_ = 0;
    int t_ = 0;
    std::vector<CMatrix> q_;
};

/// Closed-form subcarrier sums of the Slepian-Bangs terms for one link.
FimCoefficients fim_coefficients(const ChannelDerivativeSet &derivs, const SystemConfig &system);

/// [I_c]_ij = (2N / sigma^2) sum_m Re tr(dH_m/dxi_j V dH_m/dxi_i^H).
RMatrix channel_fim(const ChannelDerivativeSet &derivs, const CMatrix &V, const SystemConfig &system);

/// d xi / d eta with eta_BP = [p_U; phi; p_1..p_K; dt; alpha_R; alpha_I].
RMatrix jacobian_bp(const GeometryConfig &geometry, const SystemConfig &system);

/// d xi / d eta with eta_MS = [p_U; p_1..p_K; beta_R; beta_I].
RMatrix jacobian_ms(const GeometryConfig &geometry, const SystemConfig &system);

/// Number of leading position-domain parameters whose CRB is reported.
int interest_size(Link link, int num_targets);

struct PositionFim
{
    RMatrix info;
    int num_interest = 0;

    RMatrix F() const { return info.topLeftCorner(num_interest, num_interest); }
    RMatrix G() const { return info.topRightCorner(num_interest, info.cols() - num_interest); }
    RMatrix Z() const { return info.bottomRightCorner(info.rows() - num_interest, info.cols() - num_interest); }
};

/// Z is treated as invertible when its diagonally equilibrated condition
/// number stays below this value.
inline constexpr double kMaxConditionNumber = 1e12;

PositionFim position_fim(const RMatrix &channel_info, const RMatrix &jacobian, int num_interest);

/// Equivalent information F - G Z^{-1} G^T. Throws UnidentifiableError when
/// Z or the result is numerically singular.
RMatrix equivalent_fim(const PositionFim &fim);

/// tr((F - G Z^{-1} G^T)^{-1}), in m^2.
double crb(const PositionFim &fim);

/// tr of the leading block of I_p^{-1}; the reference route for crb().
double crb_direct(const PositionFim &fim);

/// Precomputed channel and position maps of one link for a fixed scenario.
struct LinkModel
{
    Link link = Link::BP;
    int num_targets = 0;
    FimCoefficients channel;
    RMatrix jacobian;
    FimCoefficients position;

    int num_interest() const { return interest_size(link, num_targets); }
    PositionFim fim(const CMatrix &V) const;
    double crb(const CMatrix &V) const;
};

LinkModel build_link_model(Link link, const GeometryConfig &geometry, const SystemConfig &system);

struct FimMaps
{
    LinkModel bp;
    LinkModel ms;
};

FimMaps build_fim_maps(const Scenario &scenario);

} // namespace bpms
