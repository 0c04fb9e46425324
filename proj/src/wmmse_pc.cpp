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

#include "irsdm/wmmse_pc.hpp"
#include "irsdm/errors.hpp"
#include "irsdm/max_tr_svd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <string>

namespace irsdm
{

namespace
{

void check_shapes(const CMatrix &U, const CMatrix &V, const CVector &theta, const ChannelSet &cs)
{
    if (V.rows() != cs.M() || U.rows() != cs.Nu() || U.cols() != V.cols() ||
        theta.size() != cs.total_elements())
        throw Error(ErrorKind::dimension, "WMMSE iterate shapes do not match the channel set");
}

// U^H G^H diag(theta), K x N_I
CMatrix receive_cascade(const CMatrix &U, const CVector &theta, const ChannelSet &cs)
{
    return U.adjoint() * cs.G.adjoint() * theta.asDiagonal();
}

} // namespace

CMatrix mse_matrix(const CMatrix &U, const CMatrix &V, const CVector &theta, const ChannelSet &cs,
                   const LinkBudget &b)
{
    check_shapes(U, V, theta, cs);
    const Eigen::Index K = V.cols();
    const CMatrix UGT = receive_cascade(U, theta, cs);
    const CMatrix FVmI = UGT * cs.H * V - CMatrix::Identity(K, K);
    const CMatrix E = FVmI * FVmI.adjoint() + b.sigma_irs_sq * UGT * UGT.adjoint() + b.sigma_z_sq * U.adjoint() * U;
    return hermitian_part(E);
}

CMatrix update_u(const CMatrix &V, const CVector &theta, const ChannelSet &cs, const LinkBudget &b)
{
    if (V.rows() != cs.M() || theta.size() != cs.total_elements())
        throw Error(ErrorKind::dimension, "update_u: shapes do not match the channel set");
    const CMatrix GT = cs.G.adjoint() * theta.asDiagonal();
    const CMatrix S = GT * cs.H * V;
    const CMatrix R = S * S.adjoint() + b.sigma_irs_sq * GT * GT.adjoint() +
                      b.sigma_z_sq * CMatrix::Identity(cs.Nu(), cs.Nu());
    Eigen::LLT<CMatrix> llt(hermitian_part(R));
    if (llt.info() != Eigen::Success)
        throw Error(ErrorKind::conditioning, "update_u: receive covariance is not positive definite");
    return llt.solve(S);
}

CMatrix update_w(const CMatrix &E)
{
    require_square(E, "update_w input");
    const CMatrix Eh = hermitian_part(E);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(Eh);
    if (es.info() != Eigen::Success)
        throw Error(ErrorKind::conditioning, "update_w: eigensolver failed");
    const auto &ev = es.eigenvalues();
    if (!(ev[0] > 1e-12 * std::max(1.0, ev[ev.size() - 1])))
        throw Error(ErrorKind::conditioning, "update_w: MSE matrix is singular");
    return hermitian_part(es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().adjoint());
}

double wmmse_utility(const CMatrix &W, const CMatrix &E)
{
    return log_det_hpd(W) - (W * E).trace().real() + static_cast<double>(W.rows());
}

double weighted_mse(const CMatrix &W, const CMatrix &U, const CMatrix &V, const CVector &theta,
                    const ChannelSet &cs, const LinkBudget &b)
{
    return (W * mse_matrix(U, V, theta, cs, b)).trace().real();
}

double irs_reflected_power(const CVector &theta, const CMatrix &V, const ChannelSet &cs, double sigma_n_sq)
{
    return (theta.asDiagonal() * (cs.H * V)).squaredNorm() + theta.squaredNorm() * sigma_n_sq;
}

namespace
{

// Precoder family V(mu1, mu2) = (Q + mu2 R + mu1 I)^{-1} Bm for fixed mu2,
// diagonalised once so the BS-power bisection on mu1 is cheap.
struct PencilSlice
{
    RVector lambda;  // eigenvalues of Q + mu2 R, clamped at 0
    CMatrix basis;
    CMatrix coeff;   // basis^H Bm
    RVector weight;  // squared row norms of coeff
    double zero_tol = 0.0;

    PencilSlice(const CMatrix &Q, const CMatrix &R, const CMatrix &Bm, double mu2)
    {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(Q + mu2 * R));
        if (es.info() != Eigen::Success)
            throw Error(ErrorKind::conditioning, "update_v_qcqp: eigensolver failed");
        lambda = es.eigenvalues().cwiseMax(0.0);
        basis = es.eigenvectors();
        coeff = basis.adjoint() * Bm;
        weight = coeff.rowwise().squaredNorm();
        zero_tol = 1e-13 * std::max(lambda.maxCoeff(), 0.0);
    }

    bool skip(Eigen::Index i, double mu1) const { return mu1 == 0.0 && lambda[i] <= zero_tol; }

    double norm_sq(double mu1) const
    {
        double s = 0.0;
        for (Eigen::Index i = 0; i < lambda.size(); ++i)
            if (!skip(i, mu1))
            {
                const double d = lambda[i] + mu1;
                s += weight[i] / (d * d);
            }
        return s;
    }

    CMatrix precoder(double mu1) const
    {
        RVector inv(lambda.size());
        for (Eigen::Index i = 0; i < lambda.size(); ++i)
            inv[i] = skip(i, mu1) ? 0.0 : 1.0 / (lambda[i] + mu1);
        return basis * inv.asDiagonal() * coeff;
    }
};

} // namespace

VStepResult update_v_qcqp(const CMatrix &W, const CMatrix &U, const CVector &theta, const ChannelSet &cs,
                          const LinkBudget &b, const WmmseOptions &opts)
{
    if (W.rows() != U.cols() || W.cols() != U.cols() || U.rows() != cs.Nu() || theta.size() != cs.total_elements())
        throw Error(ErrorKind::dimension, "update_v_qcqp: shapes do not match");

    const double irs_noise = theta.squaredNorm() * b.sigma_irs_sq;
    const double irs_avail = b.P_I - irs_noise;
    if (irs_avail < 0.0)
        throw Error(ErrorKind::infeasible, "IRS power constraint: reflected noise " + std::to_string(irs_noise) +
                                               " W exceeds P_I = " + std::to_string(b.P_I) + " W");

    const CMatrix D = theta.asDiagonal() * cs.H;  // N_I x M
    const CMatrix F = receive_cascade(U, theta, cs) * cs.H;
    const CMatrix Q = F.adjoint() * W * F;
    const CMatrix R = D.adjoint() * D;
    const CMatrix Bm = F.adjoint() * W;

    const double tol = opts.bisection_rel_tol;
    const int max_iter = opts.bisection_max_iter;

    // Smallest mu1 >= 0 with ||V||^2 <= P_B, and the corresponding V.
    auto bs_feasible = [&](double mu2, double &mu1_out) {
        const PencilSlice s(Q, R, Bm, mu2);
        double mu1 = 0.0;
        if (s.norm_sq(0.0) > b.P_B)
        {
            double lo = 0.0;
            double hi = std::sqrt(s.weight.sum() / b.P_B);
            for (int it = 0; it < max_iter && hi - lo > tol * hi; ++it)
            {
                const double mid = 0.5 * (lo + hi);
                (s.norm_sq(mid) > b.P_B ? lo : hi) = mid;
            }
            mu1 = hi;
        }
        mu1_out = mu1;
        return s.precoder(mu1);
    };
    auto irs_power = [&](const CMatrix &V) { return (D * V).squaredNorm(); };

    VStepResult out;
    double mu1 = 0.0;
    CMatrix V = bs_feasible(0.0, mu1);
    double mu2 = 0.0;
    if (irs_power(V) > irs_avail)
    {
        const double rmax = hermitian_lambda_max(R);
        double lo = 0.0;
        double hi = rmax > 0.0 ? std::max(hermitian_lambda_max(Q), 1e-300) / rmax : 1.0;
        double mu1_hi = 0.0;
        CMatrix V_hi = bs_feasible(hi, mu1_hi);
        for (int it = 0; it < 2100 && irs_power(V_hi) > irs_avail; ++it)
        {
            lo = hi;
            hi *= 2.0;
            V_hi = bs_feasible(hi, mu1_hi);
        }
        for (int it = 0; it < max_iter && hi - lo > tol * hi; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            double mu1_mid = 0.0;
            CMatrix V_mid = bs_feasible(mid, mu1_mid);
            if (irs_power(V_mid) > irs_avail)
                lo = mid;
            else
            {
                hi = mid;
                V_hi = std::move(V_mid);
                mu1_hi = mu1_mid;
            }
        }
        mu2 = hi;
        mu1 = mu1_hi;
        V = std::move(V_hi);
    }
    out.V = std::move(V);
    out.mu_bs = mu1;
    out.mu_irs = mu2;
    out.bs_power = out.V.squaredNorm();
    out.irs_power = irs_power(out.V) + irs_noise;
    return out;
}

MmTerms mm_terms(const CMatrix &W, const CMatrix &U, const CMatrix &V, const ChannelSet &cs, const LinkBudget &b)
{
    const CMatrix GU = cs.G * U;   // N_I x K
    const CMatrix HV = cs.H * V;   // N_I x K
    const CMatrix A = GU * W * GU.adjoint();
    const CMatrix B = HV * HV.adjoint();
    MmTerms t;
    t.Omega = A.cwiseProduct(B.transpose());
    t.Omega.diagonal() += b.sigma_irs_sq * A.diagonal();
    t.Omega = hermitian_part(t.Omega);
    // c_i = C_ii with C = -H V W U^H G^H
    t.c = -(HV * W).cwiseProduct(GU.conjugate()).rowwise().sum();
    return t;
}

double mm_objective(const MmTerms &t, const CVector &theta)
{
    return theta.dot(t.Omega * theta).real() + 2.0 * theta.dot(t.c.conjugate()).real();
}

MmResult update_theta_mm(const MmTerms &terms, const CMatrix &V, const CVector &theta_init, const ChannelSet &cs,
                         const LinkBudget &b, const WmmseOptions &opts)
{
    const Eigen::Index n = cs.total_elements();
    if (theta_init.size() != n || terms.Omega.rows() != n || terms.c.size() != n)
        throw Error(ErrorKind::dimension, "update_theta_mm: shapes do not match");

    MmResult r;
    r.lambda_max = hermitian_lambda_max(terms.Omega);
    if (!std::isfinite(r.lambda_max))
        throw Error(ErrorKind::conditioning, "update_theta_mm: non-finite largest eigenvalue");
    r.gamma = std::sqrt(b.P_I / ((cs.H * V).squaredNorm() + static_cast<double>(n) * b.sigma_irs_sq));

    auto unit_phase = [](cdouble z) { return z == cdouble(0.0, 0.0) ? cdouble(1.0, 0.0) : z / std::abs(z); };

    CVector theta(n);
    for (Eigen::Index i = 0; i < n; ++i)
        theta[i] = r.gamma * unit_phase(theta_init[i]);
    double f = mm_objective(terms, theta);
    r.f_trace.push_back(f);

    const CVector c_conj = terms.c.conjugate();
    for (int t = 0; t < opts.mm_max_iter; ++t)
    {
        const CVector q = r.lambda_max * theta - terms.Omega * theta - c_conj;
        CVector next(n);
        for (Eigen::Index i = 0; i < n; ++i)
            next[i] = r.gamma * unit_phase(q[i]);
        const double f_next = mm_objective(terms, next);
        r.f_trace.push_back(f_next);
        ++r.iterations;
        const double change = std::abs(f_next - f);
        theta = std::move(next);
        f = f_next;
        if (change <= opts.mm_eps * std::abs(f_next) || change == 0.0)
            break;
    }
    r.theta = std::move(theta);
    return r;
}

MmResult update_theta_mm(const CMatrix &W, const CMatrix &U, const CMatrix &V, const CVector &theta_init,
                         const ChannelSet &cs, const LinkBudget &b, const WmmseOptions &opts)
{
    return update_theta_mm(mm_terms(W, U, V, cs, b), V, theta_init, cs, b, opts);
}

WmmseResult solve_wmmse_pc(const ChannelSet &cs, const SceneConfig &cfg, const WmmseOptions &opts)
{
    const auto t0 = std::chrono::steady_clock::now();
    const int K = cs.K();
    if (K != cfg.K || cs.M() != cfg.M || cs.Nu() != cfg.Nu)
        throw Error(ErrorKind::dimension, "solve_wmmse_pc: channel set does not match the scene");
    if (opts.max_outer < 1)
        throw Error(ErrorKind::config, "solve_wmmse_pc: max_outer must be >= 1");
    const LinkBudget b = LinkBudget::stacked(cfg);
    const Eigen::Index n = cs.total_elements();

    WmmseResult res;
    WmmseState &st = res.state;

    // V: top-K right singular vectors of H at full BS power.
    const SvdResult dec = svd(cs.H, true);
    st.V = dec.V.leftCols(K) * std::sqrt(cfg.P_B / K);

    // theta: unit-modulus phases scaled so the IRS budget is met with equality.
    st.theta.resize(n);
    if (opts.init == WmmseInit::max_trace)
    {
        const CVector t = theta_max_trace(cs.H, cs.G, st.V, SymbolMode::expected, cfg.P_I, b.sigma_irs_sq).theta;
        for (Eigen::Index i = 0; i < n; ++i)
            st.theta[i] = t[i] == cdouble(0.0, 0.0) ? cdouble(1.0, 0.0) : t[i] / std::abs(t[i]);
    }
    else
    {
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
        for (Eigen::Index i = 0; i < n; ++i)
            st.theta[i] = std::polar(1.0, phase(rng));
    }
    st.theta *= std::sqrt(cfg.P_I / irs_reflected_power(st.theta, st.V, cs, b.sigma_irs_sq));

    auto objective = [&](const CMatrix &V, const CVector &theta) {
        return rate_unconstrained_receiver(V, theta, cs, b.sigma_irs_sq, b.sigma_z_sq);
    };

    SolverReport &rep = res.report;
    double prev = objective(st.V, st.theta);
    rep.initial_objective = prev;
    rep.converged = false;

    for (int s = 1; s <= opts.max_outer; ++s)
    {
        try
        {
            st.U = update_u(st.V, st.theta, cs, b);
            st.E = mse_matrix(st.U, st.V, st.theta, cs, b);
            st.W = update_w(st.E);

            const VStepResult vs = update_v_qcqp(st.W, st.U, st.theta, cs, b, opts);
            st.V = vs.V;
            rep.diagnostics["mu_bs"] = vs.mu_bs;
            rep.diagnostics["mu_irs"] = vs.mu_irs;
            res.step_objectives.push_back(objective(st.V, st.theta));

            const MmTerms terms = mm_terms(st.W, st.U, st.V, cs, b);
            const MmResult mm = update_theta_mm(terms, st.V, st.theta, cs, b, opts);
            // The MM feasible set fixes |theta_i| = gamma(V); keep the previous
            // (still feasible) vector if it scores better on the same model.
            if (mm_objective(terms, mm.theta) <= mm_objective(terms, st.theta))
                st.theta = mm.theta;
            else
                ++res.theta_fallbacks;
            rep.diagnostics["mm_iterations_last"] = mm.iterations;
        }
        catch (const Error &e)
        {
            throw e.with_context("iteration " + std::to_string(s));
        }

        const double obj = objective(st.V, st.theta);
        res.step_objectives.push_back(obj);
        st.objective_trace.push_back(obj);
        rep.iterations = s;

        const double rel = prev != 0.0 ? std::abs(obj - prev) / std::abs(prev) : std::abs(obj - prev);
        prev = obj;
        if (rel < opts.outer_eps)
        {
            rep.converged = true;
            break;
        }
    }

    // Final MMSE receiver for the returned iterate.
    st.U = update_u(st.V, st.theta, cs, b);
    st.E = mse_matrix(st.U, st.V, st.theta, cs, b);

    BeamformerSolution &sol = res.solution;
    sol.method = Method::wmmse_pc;
    sol.V = st.V;
    sol.U = st.U;
    for (int k = 0; k < K; ++k)
    {
        const double nrm = sol.U.col(k).norm();
        if (nrm > 0.0)
            sol.U.col(k) /= nrm;
    }
    sol.stream_power = 1.0;
    sol.theta.resize(K);
    sol.rho.resize(K);
    for (int k = 0; k < K; ++k)
    {
        sol.theta[k] = st.theta.segment(cs.offset(k), cs.elements(k));
        sol.rho[k] = sol.theta[k].norm();
    }

    rep.objective_trace = st.objective_trace;
    rep.objective = prev;
    rep.bs_power_residual = std::max(0.0, st.V.squaredNorm() / cfg.P_B - 1.0);
    const double irs_p = irs_reflected_power(st.theta, st.V, cs, b.sigma_irs_sq);
    rep.power_residual = std::max(0.0, irs_p / cfg.P_I - 1.0);
    rep.diagnostics["irs_power_ratio"] = irs_p / cfg.P_I;
    rep.diagnostics["bs_power_ratio"] = st.V.squaredNorm() / cfg.P_B;
    rep.diagnostics["theta_fallbacks"] = res.theta_fallbacks;
    rep.sinr = per_stream_sinr(sol, cs, b.sigma_irs_sq, b.sigma_z_sq);
    rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

} // namespace irsdm
