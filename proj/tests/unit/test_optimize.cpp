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

#include "bpms/error.hpp"
#include "bpms/optimize/basis.hpp"
#include "bpms/optimize/beampattern.hpp"
#include "bpms/optimize/codebook.hpp"
#include "bpms/optimize/mismatch.hpp"
#include "bpms/optimize/wcrb.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

using namespace bpms;
using namespace bpms::opt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
double min_eig(const CMatrix &V) { return Eigen::SelfAdjointEigenSolver<CMatrix>(V).eigenvalues()[0]; }

struct Fixture
{
    Scenario sc = default_scenario(3, 1);
    FimMaps maps = build_fim_maps(sc);
    double P = sc.system.total_power_watts;
    int M = sc.system.num_subcarriers;
    double budget = sc.system.power_budget();
};

const Fixture &fixture()
{
    static const Fixture f;
    return f;
}
} // namespace

TEST_CASE("Hermitian coordinates are orthonormal and invertible")
{
    const int n = 4;
    const auto basis = hermitian_basis(n);
    REQUIRE(basis.size() == 16);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            CHECK_THAT((basis[i] * basis[j]).trace().real(), WithinAbs(i == j ? 1.0 : 0.0, 1e-15));
    std::mt19937_64 rng(3);
    const CMatrix V = test::random_psd(rng, n, 2.0);
    const RVector x = hermitian_coordinates(V);
    CHECK((hermitian_from_coordinates(x, n) - V).norm() < 1e-14);
    CHECK_THAT(x[1], WithinAbs((basis[1] * V).trace().real(), 1e-14));
    CHECK_THROWS_AS(hermitian_from_coordinates(x, 3), DimensionError);

    CHECK(symmetric_dimension(5) == 15);
    CHECK(symmetric_basis(5).size() == 15);
    CHECK((complex_from_embedding(real_embedding(V)) - V).norm() < 1e-15);
    // the real embedding has each eigenvalue twice
    CHECK_THAT(Eigen::SelfAdjointEigenSolver<RMatrix>(real_embedding(V)).eigenvalues()[0],
               WithinAbs(min_eig(V), 1e-12));
}

TEST_CASE("psd projection clips negative eigenvalues")
{
    CMatrix V = CMatrix::Identity(3, 3);
    V(2, 2) = -0.5;
    double dist = 0.0;
    const CMatrix P = project_psd(V, &dist);
    CHECK_THAT(dist, WithinAbs(0.5, 1e-14));
    CHECK(min_eig(P) > -1e-15);
}

TEST_CASE("codebook and the all-path allocation")
{
    const auto &f = fixture();
    const Codebook cb = build_cpa_codebook(f.sc.geometry, f.sc.system);
    REQUIRE(cb.size() == 8);
    for (int c = 0; c < cb.size(); ++c)
        CHECK_THAT(cb.U.col(c).norm(), WithinRel(1.0, 1e-14));
    CHECK_THAT(cb.raw_norms[0], WithinRel(4.0, 1e-14));
    const CMatrix V = apa(cb, f.P, f.M);
    CHECK_THAT(V.trace().real(), WithinRel(f.budget, 1e-12));
    CHECK(min_eig(V) > -1e-12 * f.budget);
    CHECK_THROWS_AS(apa(cb, 0.0, f.M), PreconditionError);
}

TEST_CASE("fully digital weighted CRB solutions")
{
    const auto &f = fixture();
    const auto bp = solve_wcrb_fdb(f.maps, 1.0, f.P, f.M);
    const auto ms = solve_wcrb_fdb(f.maps, 0.0, f.P, f.M);
    const auto mid = solve_wcrb_fdb(f.maps, 0.5, f.P, f.M);
    REQUIRE(bp.ok());
    REQUIRE(ms.ok());
    REQUIRE(mid.ok());
    for (const auto *s : {&bp, &ms, &mid})
    {
        CHECK_THAT(s->V.trace().real(), WithinRel(f.budget, 1e-6));
        CHECK(min_eig(s->V) > -1e-9 * f.budget);
        CHECK_FALSE(s->projection_flagged);
    }
    // each endpoint beats the other endpoint and the baselines on its own link
    const CMatrix iso = CMatrix::Identity(16, 16) * (f.budget / 16.0);
    const CMatrix V_apa = apa(build_cpa_codebook(f.sc.geometry, f.sc.system), f.P, f.M);
    CHECK(f.maps.bp.crb(bp.V) <= f.maps.bp.crb(ms.V));
    CHECK(f.maps.bp.crb(bp.V) <= f.maps.bp.crb(iso));
    CHECK(f.maps.bp.crb(bp.V) <= f.maps.bp.crb(V_apa));
    CHECK(f.maps.ms.crb(ms.V) <= f.maps.ms.crb(bp.V));
    CHECK(f.maps.ms.crb(ms.V) <= f.maps.ms.crb(V_apa));
    // optimality in the weighted sense against the endpoints
    CHECK(weighted_crb(f.maps, mid.V, 0.5) <= weighted_crb(f.maps, bp.V, 0.5) * (1 + 1e-6));
    CHECK(weighted_crb(f.maps, mid.V, 0.5) <= weighted_crb(f.maps, ms.V, 0.5) * (1 + 1e-6));
    // no feasible perturbation improves the weighted bound
    std::mt19937_64 rng(5);
    for (int t = 0; t < 5; ++t)
    {
        const CMatrix D = test::random_psd(rng, 16, f.budget);
        const CMatrix V = 0.95 * mid.V + 0.05 * D;
        CHECK(weighted_crb(f.maps, mid.V, 0.5) <= weighted_crb(f.maps, V, 0.5) * (1 + 1e-7));
    }
    CHECK_THROWS_AS(solve_wcrb_fdb(f.maps, 1.5, f.P, f.M), Error);
}

TEST_CASE("codebook power allocation")
{
    const auto &f = fixture();
    const Codebook cb = build_cpa_codebook(f.sc.geometry, f.sc.system);
    const auto cpa = solve_wcrb_cpa(f.maps, cb, 1.0, f.P, f.M);
    REQUIRE(cpa.covariance.ok());
    REQUIRE(cpa.codebook.allocated());
    CHECK(cpa.codebook.allocation.minCoeff() >= -1e-12 * f.budget);
    CHECK((cpa.codebook.covariance() - cpa.covariance.V).norm() < 1e-9 * f.budget);
    CHECK_THAT(cpa.covariance.V.trace().real(), WithinRel(f.budget, 1e-6));
    // a restriction of the full problem cannot do better
    const auto fdb = solve_wcrb_fdb(f.maps, 1.0, f.P, f.M);
    CHECK(f.maps.bp.crb(cpa.covariance.V) >= f.maps.bp.crb(fdb.V) * (1 - 1e-6));
}

TEST_CASE("weighted beamformer and covariance closed forms")
{
    const auto &f = fixture();
    std::mt19937_64 rng(12);
    const CMatrix Vb = test::random_psd(rng, 16, f.budget, 4), Vm = test::random_psd(rng, 16, f.budget, 6);
    CHECK((solve_wvm(Vb, Vm, 0.3, f.P, f.M) - (0.3 * Vb + 0.7 * Vm)).norm() < 1e-15 * Vb.norm() + 1e-20);
    CHECK_THROWS_AS(solve_wvm(2.0 * Vb, Vm, 0.3, f.P, f.M), PreconditionError);

    const CMatrix Wb = Vb.llt().matrixL(), Wm = CMatrix::Identity(16, 16) * std::sqrt(f.budget / 16.0);
    const CMatrix W = solve_wbf(Wb, Wm, 0.4, f.P, f.M);
    CHECK_THAT(W.squaredNorm(), WithinRel(f.budget, 1e-12));
    // the closed-form objective is attained by W and no worse than random feasible points
    const double best = wbf_optimal_mismatch(Wb, Wm, 0.4, f.P, f.M);
    CHECK_THAT(beamformer_mismatch(W, Wb, Wm, 0.4), WithinAbs(best, 1e-12 * f.budget));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int t = 0; t < 5; ++t)
    {
        CMatrix X(16, 16);
        for (int i = 0; i < X.size(); ++i)
            X.data()[i] = cd(normal(rng), normal(rng));
        X *= std::sqrt(f.budget) / X.norm();
        CHECK(beamformer_mismatch(X, Wb, Wm, 0.4) >= best - 1e-12 * f.budget);
    }
}

TEST_CASE("beampattern helpers")
{
    const auto grid = angle_grid_deg(1.0);
    REQUIRE(grid.size() == 181);
    CHECK(grid.front() == -90.0);
    CHECK(grid.back() == 90.0);
    CHECK(angle_grid_deg(0.5).size() == 361);
    CHECK_THROWS_AS(angle_grid_deg(0.0), ConfigError);
    CHECK_THROWS_AS(angle_grid_deg(6.0), ConfigError);

    const ArraySpec spec{};
    const CVector a = steering(spec, 0.2);
    const std::vector<double> angles{-0.5, 0.0, 0.2, 0.6};
    const auto p = beampattern(a * a.adjoint(), spec, angles);
    CHECK_THAT(p[2], WithinRel(256.0, 1e-12));
    const auto db = normalized_db(p);
    CHECK(db[2] == 0.0);
    for (double v : db)
        CHECK(v <= 0.0);
    CHECK_THROWS_AS(beampattern(CMatrix::Identity(4, 4), spec, angles), DimensionError);
}
