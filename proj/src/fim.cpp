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

#include "bpms/fim.hpp"
#include "bpms/error.hpp"
#include "bpms/kernels/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace bpms
{

FimCoefficients::FimCoefficients(int num_params, int array_size)
    : n_(num_params), t_(array_size),
      q_(static_cast<std::size_t>(num_params) * num_params, CMatrix::Zero(array_size, array_size))
{
}

RMatrix FimCoefficients::evaluate(const CMatrix &V) const
{
    if (V.rows() != t_ || V.cols() != t_)
        throw DimensionError("covariance size does not match the transmit array");
    // Re tr(Q V) = Re sum conj((V^H)_ab) Q_ab
    const CMatrix Vh = V.adjoint();
    RMatrix I(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            I(i, j) = kernels::real_inner(Vh, coefficient(i, j));
    return I;
}

FimCoefficients FimCoefficients::transform(const RMatrix &J) const
{
    if (J.rows() != n_)
        throw DimensionError("Jacobian rows must match the channel parameter count");
    const int p = static_cast<int>(J.cols());

    // T_ib = sum_j Q_ij J_jb, then R_ab = sum_i J_ia T_ib; J is sparse
    std::vector<CMatrix> T(static_cast<std::size_t>(n_) * p, CMatrix::Zero(t_, t_));
    for (int i = 0; i < n_; ++i)
        for (int b = 0; b < p; ++b)
            for (int j = 0; j < n_; ++j)
                if (J(j, b) != 0.0)
                    T[static_cast<std::size_t>(i) * p + b] += J(j, b) * coefficient(i, j);

    FimCoefficients out(p, t_);
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            for (int i = 0; i < n_; ++i)
                if (J(i, a) != 0.0)
                    out.coefficient(a, b) += J(i, a) * T[static_cast<std::size_t>(i) * p + b];
    return out;
}

FimCoefficients fim_coefficients(const ChannelDerivativeSet &derivs, const SystemConfig &system)
{
    const int n = derivs.size();
    const int t = derivs.tx_size;
    const auto &kt = kernels::active();
    const double df = system.subcarrier_spacing_hz;
    const double prefactor = 2.0 * system.num_symbols / system.noise_power_watts;
    const cd up(0.0, 2.0 * kPi * df), down(0.0, -2.0 * kPi * df);

    FimCoefficients out(n, t);
    for (int i = 0; i < n; ++i)
    {
        const ChannelPartial &pi = derivs.partials[i];
        for (int j = i; j < n; ++j)
        {
            const ChannelPartial &pj = derivs.partials[j];
            cd moments[3];
            kt.phase_moments(2.0 * kPi * df * (pj.delay_s - pi.delay_s), system.num_subcarriers, moments);

            cd coef = prefactor * std::conj(pi.gain) * pj.gain * moments[pi.delay_order + pj.delay_order];
            for (int k = 0; k < pi.delay_order; ++k)
                coef *= up;
            for (int k = 0; k < pj.delay_order; ++k)
                coef *= down;

            CMatrix &Q = out.coefficient(i, j);
            for (const auto &s : pi.terms)
                for (const auto &u : pj.terms)
                    Q.noalias() += (coef * s.rx.dot(u.rx)) * s.tx * u.tx.adjoint();
            if (j != i)
                out.coefficient(j, i) = Q.adjoint();
        }
    }
    return out;
}

RMatrix channel_fim(const ChannelDerivativeSet &derivs, const CMatrix &V, const SystemConfig &system)
{
    if (V.rows() != derivs.tx_size || V.cols() != derivs.tx_size)
        throw DimensionError("covariance size does not match the transmit array");
    return fim_coefficients(derivs, system).evaluate(V);
}

namespace
{

// gradient of atan2(v_y, v_x) with respect to v
Eigen::RowVector2d bearing_gradient(const Vec2 &v) { return Eigen::RowVector2d(-v.y(), v.x()) / v.squaredNorm(); }

Eigen::RowVector2d unit_row(const Vec2 &v) { return v.transpose() / v.norm(); }

} // namespace

RMatrix jacobian_bp(const GeometryConfig &geometry, const SystemConfig &)
{
    geometry.validate();
    const int K = geometry.num_targets();
    const int n = K + 1;
    const Vec2 &pb = geometry.bs_position;
    const Vec2 &pu = geometry.ue_position;
    const double c = kSpeedOfLight;
    const int col_phi = 2, col_dt = 2 * K + 3, col_gain = 2 * K + 4;

    RMatrix J = RMatrix::Zero(5 * n, 4 * K + 6);

    J.block<1, 2>(0, 0) = bearing_gradient(pu - pb);
    J.block<1, 2>(n, 0) = -bearing_gradient(pb - pu);
    J(n, col_phi) = -1.0;
    J.block<1, 2>(2 * n, 0) = unit_row(pu - pb) / c;
    J(2 * n, col_dt) = 1.0;

    for (int k = 1; k <= K; ++k)
    {
        const Vec2 &p = geometry.targets[k - 1].position;
        const int col = 3 + 2 * (k - 1);
        J.block<1, 2>(k, col) = bearing_gradient(p - pb);
        J.block<1, 2>(n + k, col) = bearing_gradient(p - pu);
        J.block<1, 2>(n + k, 0) = -bearing_gradient(p - pu);
        J(n + k, col_phi) = -1.0;
        J.block<1, 2>(2 * n + k, col) = (unit_row(p - pb) + unit_row(p - pu)) / c;
        J.block<1, 2>(2 * n + k, 0) = unit_row(pu - p) / c;
        J(2 * n + k, col_dt) = 1.0;
    }
    for (int k = 0; k < 2 * n; ++k)
        J(3 * n + k, col_gain + k) = 1.0;
    return J;
}

RMatrix jacobian_ms(const GeometryConfig &geometry, const SystemConfig &)
{
    geometry.validate();
    const int K = geometry.num_targets();
    const int n = K + 1;
    const Vec2 &pb = geometry.bs_position;

    RMatrix J = RMatrix::Zero(4 * n, 4 * n);
    for (int k = 0; k < n; ++k)
    {
        const Vec2 &p = k == 0 ? geometry.ue_position : geometry.targets[k - 1].position;
        J.block<1, 2>(k, 2 * k) = bearing_gradient(p - pb);
        J.block<1, 2>(n + k, 2 * k) = 2.0 * unit_row(p - pb) / kSpeedOfLight;
    }
    for (int k = 0; k < 2 * n; ++k)
        J(2 * n + k, 2 * n + k) = 1.0;
    return J;
}

int interest_size(Link link, int num_targets) { return link == Link::BP ? 2 : 2 * num_targets + 2; }

PositionFim position_fim(const RMatrix &channel_info, const RMatrix &jacobian, int num_interest)
{
    if (channel_info.rows() != jacobian.rows() || channel_info.cols() != jacobian.rows())
        throw DimensionError("channel FIM and Jacobian are not conformable");
    if (num_interest < 1 || num_interest > jacobian.cols())
        throw DimensionError("invalid parameter-of-interest count");
    return PositionFim{jacobian.transpose() * channel_info * jacobian, num_interest};
}

namespace
{

// Inverse of a symmetric matrix after diagonal equilibration; throws when the
// equilibrated matrix is not safely positive definite.
RMatrix checked_inverse(const RMatrix &A, const char *what)
{
    const int n = static_cast<int>(A.rows());
    RVector d(n);
    for (int i = 0; i < n; ++i)
    {
        if (!(A(i, i) > 0.0))
            throw UnidentifiableError(std::string(what) + " has a non-positive diagonal entry", 1);
        d[i] = 1.0 / std::sqrt(A(i, i));
    }
    RMatrix E = d.asDiagonal() * A * d.asDiagonal();
    E = 0.5 * (E + E.transpose());

    Eigen::SelfAdjointEigenSolver<RMatrix> eig(E);
    const RVector &lam = eig.eigenvalues();
    const double lmax = lam.maxCoeff();
    if (!(lam.minCoeff() > 0.0) || lmax / lam.minCoeff() >= kMaxConditionNumber)
    {
        int null_dim = 0;
        for (int i = 0; i < n; ++i)
            if (lam[i] <= lmax / kMaxConditionNumber)
                ++null_dim;
        throw UnidentifiableError(std::string(what) + " is singular", null_dim);
    }
    const RMatrix &U = eig.eigenvectors();
    const RMatrix Einv = U * lam.cwiseInverse().asDiagonal() * U.transpose();
    return d.asDiagonal() * Einv * d.asDiagonal();
}

} // namespace

RMatrix equivalent_fim(const PositionFim &fim)
{
    const int f = fim.num_interest;
    if (f == fim.info.rows())
        return fim.F();
    const RMatrix G = fim.G();
    const RMatrix Zinv = checked_inverse(fim.Z(), "nuisance block Z");
    RMatrix E = fim.F() - G * Zinv * G.transpose();
    return 0.5 * (E + E.transpose());
}

double crb(const PositionFim &fim) { return checked_inverse(equivalent_fim(fim), "equivalent FIM").trace(); }

double crb_direct(const PositionFim &fim)
{
    const RMatrix inv = checked_inverse(fim.info, "position FIM");
    return inv.topLeftCorner(fim.num_interest, fim.num_interest).trace();
}

PositionFim LinkModel::fim(const CMatrix &V) const { return PositionFim{position.evaluate(V), num_interest()}; }

double LinkModel::crb(const CMatrix &V) const { return bpms::crb(fim(V)); }

LinkModel build_link_model(Link link, const GeometryConfig &geometry, const SystemConfig &system)
{
    LinkModel model;
    model.link = link;
    model.num_targets = geometry.num_targets();
    if (link == Link::BP)
    {
        model.channel = fim_coefficients(channel_derivatives(derive_bp_params(geometry, system), system), system);
        model.jacobian = jacobian_bp(geometry, system);
    }
    else
    {
        model.channel = fim_coefficients(channel_derivatives(derive_ms_params(geometry, system), system), system);
        model.jacobian = jacobian_ms(geometry, system);
    }
    model.position = model.channel.transform(model.jacobian);
    return model;
}

FimMaps build_fim_maps(const Scenario &scenario)
{
    return FimMaps{build_link_model(Link::BP, scenario.geometry, scenario.system),
                   build_link_model(Link::MS, scenario.geometry, scenario.system)};
}

} // namespace bpms
