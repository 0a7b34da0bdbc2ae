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
#include "bpms/fim.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace bpms;

namespace
{
const SystemConfig kSmall = test::system_with_subcarriers(64);
}

TEST_CASE("closed-form subcarrier sums match the per-subcarrier loop")
{
    const Scenario sc = default_scenario(3, 2);
    std::mt19937_64 rng(1);
    const auto dbp = channel_derivatives(derive_bp_params(sc.geometry, kSmall), kSmall);
    const auto dms = channel_derivatives(derive_ms_params(sc.geometry, kSmall), kSmall);
    for (int t = 0; t < 3; ++t)
    {
        const CMatrix V = test::random_psd(rng, 16, kSmall.power_budget(), 2 + 5 * t);
        CHECK(test::relative_max_error(channel_fim(dbp, V, kSmall), test::brute_force_channel_fim(dbp, V, kSmall)) <
              1e-10);
        CHECK(test::relative_max_error(channel_fim(dms, V, kSmall), test::brute_force_channel_fim(dms, V, kSmall)) <
              1e-10);
    }
}

TEST_CASE("coefficients evaluate linearly and transform by congruence")
{
    const Scenario sc = default_scenario(2, 4);
    const auto derivs = channel_derivatives(derive_ms_params(sc.geometry, sc.system), sc.system);
    const FimCoefficients q = fim_coefficients(derivs, sc.system);
    std::mt19937_64 rng(8);
    const CMatrix A = test::random_psd(rng, 16, 1.0), B = test::random_psd(rng, 16, 2.0);
    CHECK(test::relative_max_error(q.evaluate(A + 3.0 * B), q.evaluate(A) + 3.0 * q.evaluate(B)) < 1e-12);

    const RMatrix J = jacobian_ms(sc.geometry, sc.system);
    const RMatrix direct = J.transpose() * q.evaluate(A) * J;
    CHECK(test::relative_max_error(q.transform(J).evaluate(A), direct) < 1e-10);
}

TEST_CASE("Jacobians agree with central differences")
{
    const SystemConfig s = SystemConfig::from(SystemSpec{});
    std::mt19937_64 rng(21);
    for (int t = 0; t < 4; ++t)
    {
        const GeometryConfig g = test::random_geometry(rng, 1 + t % 3);
        const int n = g.num_targets() + 1;
        const RMatrix Jb = jacobian_bp(g, s), Jm = jacobian_ms(g, s);
        CHECK(Jb.rows() == 5 * n);
        CHECK(Jb.cols() == 4 * g.num_targets() + 6);
        CHECK(Jm.rows() == 4 * n);
        CHECK(Jm.cols() == 4 * n);
        CHECK(test::grouped_error(test::fd_jacobian_bp(g, s), Jb, n) < 1e-6);
        CHECK(test::grouped_error(test::fd_jacobian_ms(g, s), Jm, n) < 1e-6);
    }
}

TEST_CASE("Schur complement and direct inverse give the same bound")
{
    const FimMaps maps = build_fim_maps(default_scenario(3, 1));
    std::mt19937_64 rng(30);
    for (int t = 0; t < 4; ++t)
    {
        const CMatrix V = test::random_psd(rng, 16, 1e-8);
        for (const auto *link : {&maps.bp, &maps.ms})
        {
            const PositionFim f = link->fim(V);
            CHECK(f.num_interest == link->num_interest());
            CHECK_THAT(crb(f), Catch::Matchers::WithinRel(crb_direct(f), 1e-8));
            CHECK(link->crb(V) == crb(f));
        }
    }
    CHECK(interest_size(Link::BP, 3) == 2);
    CHECK(interest_size(Link::MS, 3) == 8);
}

TEST_CASE("no illumination is unidentifiable")
{
    const FimMaps maps = build_fim_maps(default_scenario(3, 1));
    CHECK_THROWS_AS(maps.bp.crb(CMatrix::Zero(16, 16)), UnidentifiableError);
    CHECK_THROWS_AS(maps.ms.crb(CMatrix::Zero(16, 16)), UnidentifiableError);
}
