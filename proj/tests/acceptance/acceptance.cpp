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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "bpms/config.hpp"
#include "bpms/error.hpp"
#include "bpms/fim.hpp"
#include "bpms/harness.hpp"
#include "bpms/optimize/mismatch.hpp"
#include "oracles.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

using namespace bpms;

namespace
{

struct Verdict
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

LoadedScenario default_config() { return load_scenario(std::string(BPMS_CONFIG_DIR) + "/default_k3.json"); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// ---- channel partials and Jacobians against central differences

Verdict derivatives()
{
    const SystemConfig system = SystemConfig::from(SystemSpec{});
    std::mt19937_64 rng(2024);
    const int subcarriers[] = {1, 97, 512, system.num_subcarriers};
    double channel_err = 0.0, jac_err = 0.0;
    for (int g = 0; g < 10; ++g)
    {
        const GeometryConfig geom = test::random_geometry(rng, 3);
        const auto bp = derive_bp_params(geom, system);
        const auto ms = derive_ms_params(geom, system);
        const auto dbp = channel_derivatives(bp, system);
        const auto dms = channel_derivatives(ms, system);
        for (int m : subcarriers)
        {
            for (int i = 0; i < dbp.size(); ++i)
            {
                const CMatrix a = dbp.evaluate(i, system, m);
                channel_err = std::max(channel_err, (test::fd_channel_partial(bp, system, i, m) - a).norm() / a.norm());
            }
            for (int i = 0; i < dms.size(); ++i)
            {
                const CMatrix a = dms.evaluate(i, system, m);
                channel_err = std::max(channel_err, (test::fd_channel_partial(ms, system, i, m) - a).norm() / a.norm());
            }
        }
        const int n = geom.num_targets() + 1;
        jac_err = std::max(jac_err, test::grouped_error(test::fd_jacobian_bp(geom, system), jacobian_bp(geom, system), n));
        jac_err = std::max(jac_err, test::grouped_error(test::fd_jacobian_ms(geom, system), jacobian_ms(geom, system), n));
    }
    return {channel_err < 1e-6 && jac_err < 1e-6, fmt("max rel err: partials %.2e, Jacobians %.2e", channel_err, jac_err)};
}

// ---- FIM algebra on random covariances

Verdict fim_algebra()
{
    const LoadedScenario cfg = default_config();
    const Scenario &sc = cfg.scenario;
    const SystemConfig &system = sc.system;
    const FimMaps maps = build_fim_maps(sc);
    const auto dbp = channel_derivatives(derive_bp_params(sc.geometry, system), system);
    const auto dms = channel_derivatives(derive_ms_params(sc.geometry, system), system);
    std::mt19937_64 rng(7);
    const int nt = system.tx_array.num_elements;
    const double budget = system.power_budget();

    double closed_vs_brute = 0.0, asym = 0.0, neg_eig = 0.0, additivity = 0.0, schur = 0.0;
    for (int t = 0; t < 20; ++t)
    {
        const CMatrix V1 = test::random_psd(rng, nt, budget, 1 + t % nt);
        const CMatrix V2 = test::random_psd(rng, nt, budget);
        for (const auto *link : {&maps.bp, &maps.ms})
        {
            const auto &derivs = link->link == Link::BP ? dbp : dms;
            const RMatrix Ic = channel_fim(derivs, V1, system);
            closed_vs_brute = std::max(closed_vs_brute,
                                       test::relative_max_error(Ic, test::brute_force_channel_fim(derivs, V1, system)));

            const PositionFim f1 = link->fim(V1);
            const PositionFim f2 = link->fim(V2);
            const PositionFim f12 = link->fim(V1 + V2);
            const double scale = f1.info.cwiseAbs().maxCoeff();
            asym = std::max(asym, (f1.info - f1.info.transpose()).cwiseAbs().maxCoeff() / scale);
            const RMatrix sym = 0.5 * (f1.info + f1.info.transpose());
            const double min_eig = Eigen::SelfAdjointEigenSolver<RMatrix>(sym).eigenvalues().minCoeff();
            neg_eig = std::max(neg_eig, -min_eig / sym.trace());
            additivity = std::max(additivity, test::relative_max_error(f1.info + f2.info, f12.info));
            schur = std::max(schur, rel(crb(f2), crb_direct(f2)));
        }
    }
    const bool ok = closed_vs_brute < 1e-8 && asym < 1e-8 && neg_eig <= 1e-9 && additivity < 1e-8 && schur < 1e-8;
    std::ostringstream d;
    d << fmt("closed form vs per-subcarrier %.2e, asymmetry %.2e, ", closed_vs_brute, asym)
      << fmt("-min eig/tr %.2e, additivity %.2e, ", neg_eig, additivity) << fmt("Schur vs direct %.2e", schur);
    return {ok, d.str()};
}

// ---- sqrt CRB(gamma V) = sqrt CRB(V) / sqrt gamma

Verdict scaling_law()
{
    const LoadedScenario cfg = default_config();
    const FimMaps maps = build_fim_maps(cfg.scenario);
    std::mt19937_64 rng(11);
    const int nt = cfg.scenario.system.tx_array.num_elements;
    double worst = 0.0;
    for (int t = 0; t < 5; ++t)
    {
        const CMatrix V = test::random_psd(rng, nt, cfg.scenario.system.power_budget());
        for (const auto *link : {&maps.bp, &maps.ms})
        {
            const double base = std::sqrt(link->crb(V));
            for (double gamma : {0.5, 2.0, 10.0})
                worst = std::max(worst, rel(std::sqrt(link->crb(gamma * V)), base / std::sqrt(gamma)));
        }
    }
    return {worst < 1e-10, fmt("max rel err %.2e", worst)};
}

// ---- weighted-covariance SDP against the convex combination

Verdict wvm_closed_form()
{
    const SystemConfig system = SystemConfig::from(SystemSpec{});
    std::mt19937_64 rng(5);
    const int nt = system.tx_array.num_elements;
    const double budget = system.power_budget();
    const CMatrix Vbp = test::random_psd(rng, nt, budget, 3);
    const CMatrix Vms = test::random_psd(rng, nt, budget, 5);
    double worst = 0.0;
    bool solved = true;
    for (double rho : {0.25, 0.5, 0.75})
    {
        const auto r = opt::solve_wvm_sdp(Vbp, Vms, rho, system.total_power_watts, system.num_subcarriers);
        solved = solved && r.status == sdp::Status::Optimal;
        const CMatrix expect = rho * Vbp + (1.0 - rho) * Vms;
        worst = std::max(worst, (r.V - expect).norm() / expect.norm());
    }
    return {solved && worst < 1e-6, fmt("max rel Frobenius err %.2e", worst)};
}

// ---- lifted beamformer SDP against the sphere-constrained closed form

Verdict wbf_closed_form()
{
    const SystemConfig system = SystemConfig::from(SystemSpec{});
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int nt = system.tx_array.num_elements, L = system.num_slots;
    const double budget = system.power_budget();
    auto draw = [&] {
        CMatrix W(nt, L);
        for (int c = 0; c < L; ++c)
            for (int r = 0; r < nt; ++r)
            {
                const double re = normal(rng);
                const double im = normal(rng);
                W(r, c) = cd(re, im);
            }
        return CMatrix(W * std::sqrt(budget) / W.norm());
    };
    // mismatches are compared in units of the per-subcarrier budget
    double worst = 0.0;
    bool solved = true;
    for (int t = 0; t < 5; ++t)
    {
        const CMatrix Wbp = draw(), Wms = draw();
        const double rho = unit(rng);
        const auto lifted = opt::solve_wbf_lifted(Wbp, Wms, rho, system.total_power_watts, system.num_subcarriers);
        solved = solved && lifted.status == sdp::Status::Optimal;
        const double closed =
            opt::wbf_optimal_mismatch(Wbp, Wms, rho, system.total_power_watts, system.num_subcarriers);
        worst = std::max(worst, std::abs(lifted.mismatch - closed) / budget);
    }
    return {solved && worst < 1e-6, fmt("max abs objective err %.2e (budget units)", worst)};
}

// ---- trade-off curves of the default scenario, shared by three criteria

struct Curves
{
    std::map<Scheme, std::vector<TradeoffPoint>> by_scheme;
    bool all_ok = true;
    std::string failure;
};

Curves run_curves(const std::vector<Scheme> &schemes, int averages)
{
    LoadedScenario cfg = default_config();
    HarnessOptions options = HarnessOptions::from_environment();
    options.phase_averages = averages;
    Curves out;
    for (const auto &p : sweep(cfg, schemes, default_rho_grid(21), options))
    {
        if (!p.ok() && out.all_ok)
        {
            out.all_ok = false;
            out.failure = std::string(scheme_name(p.scheme)) + " rho=" + std::to_string(p.rho.value_or(-1)) + " " +
                          p.status;
        }
        out.by_scheme[p.scheme].push_back(p);
    }
    return out;
}

const Curves &seed_one_curves()
{
    static const Curves curves = run_curves(
        {Scheme::FdbWcrb, Scheme::FdbWbf, Scheme::FdbWvm, Scheme::CpaWcrb, Scheme::CpaWbf, Scheme::CpaWvm}, 1);
    return curves;
}

Verdict monotonicity()
{
    const Curves &c = seed_one_curves();
    if (!c.all_ok)
        return {false, "sweep row failed: " + c.failure};
    const auto &w = c.by_scheme.at(Scheme::FdbWcrb);
    double worst_bp = 0.0, worst_ms = 0.0;
    for (std::size_t i = 1; i < w.size(); ++i)
    {
        worst_bp = std::max(worst_bp, (w[i].crb_bp_sqrt_m - w[i - 1].crb_bp_sqrt_m) / w[i - 1].crb_bp_sqrt_m);
        worst_ms = std::max(worst_ms, (w[i - 1].crb_ms_sqrt_m - w[i].crb_ms_sqrt_m) / w[i - 1].crb_ms_sqrt_m);
    }
    // CRB ordering equals sqrt-CRB ordering
    int dominated = 0;
    for (Scheme s : {Scheme::FdbWbf, Scheme::FdbWvm})
        for (const auto &q : c.by_scheme.at(s))
            for (const auto &p : w)
                if (q.crb_bp_sqrt_m < p.crb_bp_sqrt_m * (1.0 - 1e-4) && q.crb_ms_sqrt_m < p.crb_ms_sqrt_m * (1.0 - 1e-4))
                    ++dominated;
    const bool ok = worst_bp <= 1e-6 && worst_ms <= 1e-6 && dominated == 0;
    return {ok, fmt("max BP increase %.2e, max MS decrease %.2e, dominating pairs %.0f", worst_bp, worst_ms,
                    static_cast<double>(dominated))};
}

Verdict endpoints()
{
    const Curves &c = seed_one_curves();
    if (!c.all_ok)
        return {false, "sweep row failed: " + c.failure};
    double worst = 0.0;
    const std::pair<Scheme, std::vector<Scheme>> families[] = {{Scheme::FdbWcrb, {Scheme::FdbWbf, Scheme::FdbWvm}},
                                                               {Scheme::CpaWcrb, {Scheme::CpaWbf, Scheme::CpaWvm}}};
    for (const auto &[base, derived] : families)
    {
        const auto &w = c.by_scheme.at(base);
        for (Scheme s : derived)
        {
            const auto &d = c.by_scheme.at(s);
            for (std::size_t i : {std::size_t{0}, d.size() - 1})
            {
                worst = std::max(worst, rel(d[i].crb_bp_sqrt_m, w[i].crb_bp_sqrt_m));
                worst = std::max(worst, rel(d[i].crb_ms_sqrt_m, w[i].crb_ms_sqrt_m));
            }
        }
    }
    return {worst < 1e-4, fmt("max rel endpoint err %.2e", worst)};
}

// area enclosed by a derived curve and the boundary; both run from rho = 0 to 1
// and share their endpoints, so the closed polygon is curve forward, boundary back
double enclosed_area(const std::vector<TradeoffPoint> &curve, const std::vector<TradeoffPoint> &boundary)
{
    std::vector<std::pair<double, double>> poly;
    for (const auto &p : curve)
        poly.emplace_back(p.crb_bp_sqrt_m, p.crb_ms_sqrt_m);
    for (auto it = boundary.rbegin(); it != boundary.rend(); ++it)
        poly.emplace_back(it->crb_bp_sqrt_m, it->crb_ms_sqrt_m);
    double twice = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
    {
        const auto &a = poly[i];
        const auto &b = poly[(i + 1) % poly.size()];
        twice += a.first * b.second - b.first * a.second;
    }
    return 0.5 * std::abs(twice);
}

Verdict area_ordering()
{
    const Curves &c = seed_one_curves();
    if (!c.all_ok)
        return {false, "sweep row failed: " + c.failure};
    const auto &s = c.by_scheme;
    const double fdb_wvm = enclosed_area(s.at(Scheme::FdbWvm), s.at(Scheme::FdbWcrb));
    const double fdb_wbf = enclosed_area(s.at(Scheme::FdbWbf), s.at(Scheme::FdbWcrb));
    const double cpa_wvm = enclosed_area(s.at(Scheme::CpaWvm), s.at(Scheme::CpaWcrb));
    const double cpa_wbf = enclosed_area(s.at(Scheme::CpaWbf), s.at(Scheme::CpaWcrb));
    return {fdb_wvm <= fdb_wbf && cpa_wvm <= cpa_wbf,
            fmt("areas [m^2]: FDB WVM %.3e vs WBF %.3e, CPA WVM %.3e vs WBF %.3e", fdb_wvm, fdb_wbf, cpa_wvm,
                cpa_wbf)};
}

// ---- reference trade-off values, averaged over gain-phase draws

Verdict reference_values()
{
    const Curves c = run_curves({Scheme::FdbWcrb, Scheme::CpaWcrb, Scheme::Apa}, 10);
    if (!c.all_ok)
        return {false, "sweep row failed: " + c.failure};
    const auto &fdb = c.by_scheme.at(Scheme::FdbWcrb);
    const auto &cpa = c.by_scheme.at(Scheme::CpaWcrb);
    const auto &apa = c.by_scheme.at(Scheme::Apa).front();
    const double bp1 = fdb.back().crb_bp_sqrt_m, ms0 = fdb.front().crb_ms_sqrt_m;
    const double e_bp = rel(bp1, 0.0619), e_ms = rel(ms0, 0.1068);
    const double e_apa = std::max(rel(apa.crb_bp_sqrt_m, 0.1902), rel(apa.crb_ms_sqrt_m, 0.1857));
    bool above_right = cpa.size() == fdb.size();
    for (std::size_t i = 0; above_right && i < fdb.size(); ++i)
        above_right = cpa[i].crb_bp_sqrt_m > fdb[i].crb_bp_sqrt_m && cpa[i].crb_ms_sqrt_m > fdb[i].crb_ms_sqrt_m;
    std::ostringstream d;
    d << fmt("FDB BP(rho=1) %.4f m (%+.1f%%), ", bp1, 100.0 * (bp1 / 0.0619 - 1.0))
      << fmt("FDB MS(rho=0) %.4f m (%+.1f%%), ", ms0, 100.0 * (ms0 / 0.1068 - 1.0))
      << fmt("APA (%.4f, %.4f) m, ", apa.crb_bp_sqrt_m, apa.crb_ms_sqrt_m)
      << "CPA above-right at every rho: " << (above_right ? "yes" : "no");
    return {e_bp <= 0.2 && e_ms <= 0.2 && e_apa <= 0.2 && above_right, d.str()};
}

// ---- beampattern peaks at the departure angles

Verdict beampattern_peaks()
{
    const LoadedScenario cfg = default_config();
    const HarnessOptions options = HarnessOptions::from_environment();
    const auto aods = aods_deg(cfg.scenario);
    const double step = 0.1;

    const auto one = beampattern_for(cfg, Scheme::FdbWcrb, 1.0, step, options);
    const auto peak = std::max_element(one.power_db.begin(), one.power_db.end()) - one.power_db.begin();
    const double peak_err = std::abs(one.angle_deg[peak] - aods.at("ue"));

    const auto zero = beampattern_for(cfg, Scheme::FdbWcrb, 0.0, step, options);
    const auto &p = zero.power_db;
    std::vector<double> maxima;
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        const bool left = i == 0 || p[i] >= p[i - 1];
        const bool right = i + 1 == p.size() || p[i] >= p[i + 1];
        if (left && right)
            maxima.push_back(zero.angle_deg[i]);
    }
    double worst = 0.0;
    for (const auto &[name, angle] : aods)
    {
        double best = 180.0;
        for (double m : maxima)
            best = std::min(best, std::abs(m - angle));
        worst = std::max(worst, best);
    }
    const bool ok = one.point.ok() && zero.point.ok() && peak_err <= 3.0 && worst <= 3.0;
    return {ok, fmt("rho=1 peak %.1f deg from UE AoD; rho=0 worst AoD-to-local-max distance %.1f deg", peak_err,
                    worst)};
}

struct Criterion
{
    const char *name;
    double budget_s;
    std::function<Verdict()> run;
};

} // namespace

int main()
{
    const Criterion criteria[] = {
        {"derivative correctness", 30.0, derivatives},
        {"FIM algebra", 30.0, fim_algebra},
        {"scaling law", 30.0, scaling_law},
        {"WVM closed-form equivalence", 60.0, wvm_closed_form},
        {"WBF closed-form equivalence", 60.0, wbf_closed_form},
        {"weak-Pareto monotonicity", 300.0, monotonicity},
        {"endpoint coincidence", 300.0, endpoints},
        {"reference trade-off values", 900.0, reference_values},
        {"beampattern peaks", 300.0, beampattern_peaks},
        {"WVM vs WBF area ordering", 300.0, area_ordering},
    };
    int failures = 0;
    for (const auto &c : criteria)
    {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try
        {
            v = c.run();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budget_s)
        {
            v.pass = false;
            v.detail += fmt("; over the %.0f s budget", c.budget_s);
        }
        failures += v.pass ? 0 : 1;
        std::printf("%s  %-30s %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", c.name, v.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
    return failures == 0 ? 0 : 1;
}
