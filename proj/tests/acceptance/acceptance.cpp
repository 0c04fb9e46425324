// SPDX-License-Identifier: Apache-2.0
//
// irsdm: beamforming simulator for multi-IRS multi-stream links
// Copyright (C) 2026 The irsdm authors
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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include "irsdm/harness.hpp"
#include "irsdm/max_tr_svd.hpp"
#include "irsdm/nsp_zf_pa.hpp"
#include "irsdm/rate.hpp"
#include "irsdm/wmmse_pc.hpp"

#include "test_support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace irsdm;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string g(double v) { return fmt("%.6g", v); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// 1. NSP and ZF residuals at K=4, M=Nu=8.
Outcome zf_nsp_exactness()
{
    const SceneConfig cfg = default_scene(4, 16);
    const ChannelSet cs = synthesize_channels(cfg);
    const auto r = solve_nsp_zf_pa(cs, cfg);
    double leak = 0.0;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            if (i != k)
                leak = std::max(leak, (cs.G_k[k] * r.solution.U.col(i)).norm() / cs.G_k[k].norm());
    const double worst = std::max({r.report.nsp_residual, r.report.zf_residual, leak});
    return {worst <= 1e-9, "max NSP residual " + g(r.report.nsp_residual) + ", max ZF leakage " + g(leak)};
}

// 2. IRS power equality (NSP-ZF-PA, Max-TR-SVD) and both WMMSE-PC constraints.
Outcome power_constraints()
{
    const SceneConfig cfg = default_scene(4, 16);
    const ChannelSet cs = synthesize_channels(cfg);

    const auto n = solve_nsp_zf_pa(cs, cfg);
    double nsp = 0.0;
    for (int k = 0; k < 4; ++k)
    {
        const CVector hv = cs.H_k[k] * n.solution.V.col(k);
        const CVector &th = n.solution.theta[k];
        const double p = hv.cwiseProduct(th).squaredNorm() + th.squaredNorm() * cfg.sigma_k_sq;
        nsp = std::max(nsp, rel(p, cfg.irs_power(k)));
    }

    const auto m = solve_max_tr_svd(cs, cfg);
    const CVector d = cs.H * m.solution.V * CVector::Ones(4) / 2.0;
    const CVector th = m.solution.stacked_theta();
    const double pm = d.cwiseProduct(th).squaredNorm() + th.squaredNorm() * cfg.sigma_n_sq();
    const double maxtr = rel(pm, cfg.P_I);

    const auto w = solve_wmmse_pc(cs, cfg);
    const double bs = w.solution.V.squaredNorm() / cfg.P_B - 1.0;
    const double irs = irs_reflected_power(w.solution.stacked_theta(), w.solution.V, cs, cfg.sigma_n_sq()) / cfg.P_I - 1.0;

    const bool ok = nsp <= 1e-9 && maxtr <= 1e-9 && bs <= 1e-8 && irs <= 1e-8;
    return {ok, "NSP-ZF-PA rel dev " + g(nsp) + ", Max-TR-SVD rel dev " + g(maxtr) + ", WMMSE-PC BS excess " +
                    g(bs) + ", IRS excess " + g(irs)};
}

// 3. WMMSE-PC convergence at K=4, N_I in {16, 32, 64}.
Outcome wmmse_convergence()
{
    std::string detail;
    bool ok = true;
    double prev_rate = -1.0;
    for (int n_i : {16, 32, 64})
    {
        const SceneConfig cfg = default_scene(4, n_i / 4);
        const ChannelSet cs = synthesize_channels(cfg);
        const auto w = solve_wmmse_pc(cs, cfg);
        const auto &t = w.report.objective_trace;
        double worst_drop = 0.0;
        double last = w.report.initial_objective;
        for (double v : t)
        {
            worst_drop = std::max(worst_drop, (last - v) / std::abs(last));
            last = v;
        }
        const bool mono = worst_drop <= 1e-7;
        const bool fast = w.report.converged && w.report.iterations <= 50;
        const double rate = w.report.objective;
        ok = ok && mono && rate > prev_rate && (n_i == 64 || fast);
        detail += "N_I=" + std::to_string(n_i) + ": " + std::to_string(w.report.iterations) + " it" +
                  (w.report.converged ? "" : " (not converged)") + ", rate " + g(rate) + ", max rel drop " +
                  g(std::max(worst_drop, 0.0)) + "; ";
        prev_rate = rate;
    }
    return {ok, detail};
}

// 4. MM inner loop against an exhaustive 1000 x 1000 phase grid at N_I = 2.
Outcome mm_grid_oracle()
{
    std::string detail;
    bool ok = true;
    for (std::uint64_t seed : {11u, 12u, 13u})
    {
        SceneConfig cfg = default_scene(2, 1);
        cfg.M = cfg.Nu = 2;
        cfg.P_B = 1.0;
        cfg.P_I = 1.0;
        cfg.sigma_k_sq = cfg.sigma_z_sq = 0.05;
        const ChannelSet cs = testing::random_channels(2, 1, 2, 2, seed);
        const LinkBudget b = LinkBudget::stacked(cfg);
        std::mt19937_64 rng(seed);
        const CMatrix V = testing::random_cmatrix(2, 2, rng) * 0.5;
        CVector th0 = testing::random_phases(2, rng);
        th0 *= std::sqrt(cfg.P_I / irs_reflected_power(th0, V, cs, b.sigma_irs_sq));
        const CMatrix U = update_u(V, th0, cs, b);
        const CMatrix W = update_w(mse_matrix(U, V, th0, cs, b));
        const MmTerms terms = mm_terms(W, U, V, cs, b);
        const MmResult mm = update_theta_mm(terms, V, th0, cs, b);

        double best = std::numeric_limits<double>::infinity();
        const int grid = 1000;
        CVector th(2);
        for (int a = 0; a < grid; ++a)
            for (int c = 0; c < grid; ++c)
            {
                th[0] = std::polar(mm.gamma, 2.0 * pi * a / grid);
                th[1] = std::polar(mm.gamma, 2.0 * pi * c / grid);
                best = std::min(best, mm_objective(terms, th));
            }
        const double f = mm.f_trace.back();
        const double gap = f - best;
        ok = ok && gap <= 1e-4;
        detail += "f_MM - f_grid = " + g(gap) + " (f_grid " + g(best) + "); ";
    }
    return {ok, detail};
}

// 5. Dual-bisection V-step against an accelerated projected-gradient oracle.
Outcome qcqp_oracle()
{
    double worst = 0.0;
    int both_active = 0, one_active = 0;
    for (int inst = 0; inst < 10; ++inst)
    {
        const std::uint64_t seed = 100 + inst;
        SceneConfig cfg = default_scene(2, 4);
        cfg.M = 4;
        cfg.Nu = 4;
        cfg.sigma_k_sq = cfg.sigma_z_sq = 0.1;
        cfg.P_B = 0.5 + 0.2 * inst;
        const ChannelSet cs = testing::random_channels(2, 4, 4, 4, seed, 0.6);
        std::mt19937_64 rng(seed);
        CMatrix V0 = testing::random_cmatrix(4, 2, rng);
        V0 *= std::sqrt(cfg.P_B) / V0.norm();
        const CVector th = testing::random_phases(8, rng) * 0.8;
        // noise floor plus a fraction of the reflected signal power of V0
        const double floor = th.squaredNorm() * cfg.sigma_n_sq();
        cfg.P_I = floor + (th.asDiagonal() * cs.H * V0).squaredNorm() * (0.2 + 0.15 * inst);
        const LinkBudget b = LinkBudget::stacked(cfg);
        const CMatrix U = update_u(V0, th, cs, b);
        const CMatrix W = update_w(mse_matrix(U, V0, th, cs, b));

        const VStepResult vs = update_v_qcqp(W, U, th, cs, b);
        const CMatrix F = U.adjoint() * cs.G.adjoint() * th.asDiagonal() * cs.H;
        const CMatrix D = th.asDiagonal() * cs.H;
        const CMatrix Vo = testing::projected_gradient_qcqp(F.adjoint() * W * F, F.adjoint() * W, D, cfg.P_B,
                                                            cfg.P_I - th.squaredNorm() * b.sigma_irs_sq);
        const double fb = weighted_mse(W, U, vs.V, th, cs, b);
        const double fo = weighted_mse(W, U, Vo, th, cs, b);
        worst = std::max(worst, std::abs(fb - fo) / std::abs(fo));
        const int active = (vs.mu_bs > 0.0) + (vs.mu_irs > 0.0);
        both_active += active == 2;
        one_active += active == 1;
    }
    return {worst <= 1e-6, "worst |f_bisection - f_oracle|/|f_oracle| = " + g(worst) + " over 10 instances (" +
                               std::to_string(both_active) + " with both constraints active, " +
                               std::to_string(one_active) + " with one)"};
}

// 6. Rate ceiling in P_I at K=4, N_I=64.
Outcome rate_ceiling()
{
    const std::vector<double> dbm{0, 10, 20, 40, 60, 80};
    std::vector<double> nsp, wm;
    double nsp_limit = 0.0, wm_limit = 0.0;
    for (double p : dbm)
    {
        SceneConfig cfg = default_scene(4, 16);
        cfg.P_I = dbm_to_watt(p);
        const ChannelSet cs = synthesize_channels(cfg);
        const auto n = solve_nsp_zf_pa(cs, cfg);
        const RateBreakdown rn = evaluate_rates(n.solution, cs, cfg);
        nsp.push_back(rn.sum_rate);
        const auto w = solve_wmmse_pc(cs, cfg);
        const RateBreakdown rw = evaluate_rates(w.solution, cs, cfg);
        wm.push_back(rw.sum_rate);
        if (p == dbm.back())
        {
            for (double gi : rn.asymptotic_gamma)
                nsp_limit += std::log2(1.0 + gi);
            wm_limit = rw.asymptotic_rate;
        }
    }
    bool mono_nsp = true, mono_wm = true;
    for (std::size_t i = 1; i < dbm.size(); ++i)
    {
        mono_nsp = mono_nsp && nsp[i] >= nsp[i - 1];
        mono_wm = mono_wm && wm[i] >= wm[i - 1] * (1.0 - 1e-7);
    }
    const double gap_nsp = rel(nsp.back(), nsp_limit), gap_wm = rel(wm.back(), wm_limit);
    std::string detail = "NSP-ZF-PA rates";
    for (double v : nsp)
        detail += " " + fmt("%.4f", v);
    detail += " (limit " + g(nsp_limit) + ", gap " + g(gap_nsp) + "); WMMSE-PC rates";
    for (double v : wm)
        detail += " " + fmt("%.4f", v);
    detail += " (limit " + g(wm_limit) + ", gap " + g(gap_wm) + ")";
    return {mono_nsp && mono_wm && gap_nsp <= 0.02 && gap_wm <= 0.02, detail};
}

// 7. NSP-ZF-PA multi-IRS gain at N_I=256, M=Nu=24.
Outcome multi_irs_gain()
{
    std::vector<double> r;
    for (int K : {1, 2, 4})
    {
        SceneConfig cfg = default_scene(K, 256 / K);
        cfg.M = cfg.Nu = 24;
        const ChannelSet cs = synthesize_channels(cfg);
        const auto n = solve_nsp_zf_pa(cs, cfg);
        r.push_back(evaluate_rates(n.solution, cs, cfg).sum_rate);
    }
    const double ratio = r[2] / r[0];
    const bool ok = r[0] < r[1] && r[1] < r[2] && ratio >= 2.0 && ratio <= 5.5;
    return {ok, "rates K=1,2,4: " + fmt("%.4f", r[0]) + ", " + fmt("%.4f", r[1]) + ", " + fmt("%.4f", r[2]) +
                    "; ratio K4/K1 = " + fmt("%.4f", ratio)};
}

// 8. Method ordering at K=4, N_I=256.
Outcome method_ordering()
{
    const SceneConfig cfg = default_scene(4, 64);
    const ChannelSet cs = synthesize_channels(cfg);
    const auto n = solve_nsp_zf_pa(cs, cfg);
    const auto w = solve_wmmse_pc(cs, cfg);
    const auto m = solve_max_tr_svd(cs, cfg);
    const double rn = evaluate_rates(n.solution, cs, cfg).sum_rate;
    const double rw = evaluate_rates(w.solution, cs, cfg).sum_rate;
    const RateBreakdown rm = evaluate_rates(m.solution, cs, cfg);
    return {rn > rm.sum_rate && rw > rm.sum_rate,
            "NSP-ZF-PA " + fmt("%.4f", rn) + ", WMMSE-PC " + fmt("%.4f", rw) + ", Max-TR-SVD " +
                fmt("%.4f", rm.sum_rate) + " (its joint-decoding determinant rate: " + fmt("%.4f", rm.rate_det) + ")"};
}

// 9. gamma_u / gamma_0 constant in P_B and equal to C1.
Outcome proportionality()
{
    std::vector<double> ratio;
    double worst_c1 = 0.0;
    for (double pb : {20.0, 30.0, 40.0})
    {
        SceneConfig cfg = default_scene(4, 16);
        cfg.P_B = dbm_to_watt(pb);
        cfg.P_I = dbm_to_watt(80.0);
        const ChannelSet cs = synthesize_channels(cfg);
        const auto n = solve_nsp_zf_pa(cs, cfg);
        for (int k = 0; k < 4; ++k)
        {
            const IrsSinrRelation r = irs_sinr_relation(cs, n.solution, cfg.P_B, cfg.sigma_k_sq, k);
            if (k == 0)
                ratio.push_back(r.gammaU / r.gamma0);
            worst_c1 = std::max(worst_c1, rel(r.gammaU / r.gamma0, r.C1));
        }
    }
    const double spread = std::max(rel(ratio[1], ratio[0]), rel(ratio[2], ratio[0]));
    return {spread <= 1e-8 && worst_c1 <= 1e-8,
            "ratio spread across P_B " + g(spread) + ", max |ratio - C1|/C1 " + g(worst_c1)};
}

// 10. Determinant rate with the MMSE receiver equals the receiver-free rate.
Outcome mmse_lossless()
{
    double worst = 0.0;
    for (int inst = 0; inst < 20; ++inst)
    {
        const std::uint64_t seed = 500 + inst;
        std::mt19937_64 rng(seed);
        const int K = 2 + inst % 3, Nk = 3 + inst % 4, M = K + 2, Nu = K + 1 + inst % 2;
        const ChannelSet cs = testing::random_channels(K, Nk, M, Nu, seed);
        LinkBudget b;
        b.sigma_irs_sq = 0.05 + 0.01 * inst;
        b.sigma_z_sq = 0.1;
        const CMatrix V = testing::random_cmatrix(M, K, rng);
        const CVector th = testing::random_cvector(K * Nk, rng);
        const CMatrix U = update_u(V, th, cs, b);
        const double r33 = rate_determinant(U, V, th, cs, b.sigma_irs_sq, b.sigma_z_sq);
        const double r35 = rate_unconstrained_receiver(V, th, cs, b.sigma_irs_sq, b.sigma_z_sq);
        worst = std::max(worst, rel(r33, r35));
    }
    return {worst <= 1e-8, "worst relative difference " + g(worst) + " over 20 instances"};
}

// 11. Byte-identical CSV on rerun, independent of the worker count.
Outcome determinism()
{
    ExperimentSpec spec;
    spec.base = default_scene(4, 4);
    spec.base.placement_jitter_m = 0.5;
    spec.axis = SweepAxis::P_I;
    spec.values = {0.01, 0.04, 0.1};
    spec.repetitions = 2;
    spec.seed = 7;
    spec.jobs = 1;
    const std::string a = format_csv(run_sweep(spec));
    const std::string b = format_csv(run_sweep(spec));
    spec.jobs = 3;
    const std::string c = format_csv(run_sweep(spec));
    return {a == b && a == c, std::to_string(std::count(a.begin(), a.end(), '\n')) +
                                  " CSV lines; rerun identical: " + (a == b ? "yes" : "no") +
                                  ", 3 workers identical: " + (a == c ? "yes" : "no")};
}

} // namespace

int main()
{
    struct Criterion
    {
        const char *name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"1 ZF/NSP exactness", 1.0, zf_nsp_exactness},
        {"2 power-constraint equality", 5.0, power_constraints},
        {"3 WMMSE-PC convergence", 120.0, wmmse_convergence},
        {"4 MM inner-loop grid oracle", 30.0, mm_grid_oracle},
        {"5 QCQP V-step oracle", 60.0, qcqp_oracle},
        {"6 rate ceiling in P_I", 120.0, rate_ceiling},
        {"7 multi-IRS gain", 120.0, multi_irs_gain},
        {"8 method ordering", 60.0, method_ordering},
        {"9 IRS/user SINR proportionality", 10.0, proportionality},
        {"10 MMSE losslessness", 30.0, mmse_lossless},
        {"11 determinism", 60.0, determinism},
    };
    int failed = 0;
    for (const auto &c : criteria)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = dt <= c.budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("[%s] criterion %s: %s [%.2f s of %.0f s budget%s]\n", pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str(), dt, c.budget_s, in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
