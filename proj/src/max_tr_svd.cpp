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

#include "irsdm/max_tr_svd.hpp"
#include "irsdm/errors.hpp"
#include "irsdm/rate.hpp"

#include <chrono>
#include <cmath>
#include <string>

namespace irsdm
{

std::pair<CMatrix, CMatrix> svd_beamformers(const CMatrix &H, const CMatrix &G, int K, double P_B)
{
    if (K < 1 || K > H.cols() || K > G.cols())
        throw Error(ErrorKind::dimension, "svd_beamformers: K = " + std::to_string(K) + " exceeds the array sizes");
    if (!(P_B > 0.0))
        throw Error(ErrorKind::domain, "svd_beamformers: P_B must be positive");
    const int rH = numerical_rank(H), rG = numerical_rank(G);
    if (rH < K || rG < K)
        throw Error(ErrorKind::degenerate, "svd_beamformers: rank(H) = " + std::to_string(rH) +
                                               ", rank(G) = " + std::to_string(rG) + " below K = " +
                                               std::to_string(K));
    const SvdResult dh = svd(H, true);
    const SvdResult dg = svd(G.adjoint(), true);
    CMatrix V = dh.V.leftCols(K) * std::sqrt(P_B / K);
    CMatrix U = dg.U.leftCols(K);
    return {std::move(V), std::move(U)};
}

std::pair<CMatrix, RVector> max_trace_quotient(const CMatrix &H, const CMatrix &G, const CMatrix &V, SymbolMode mode,
                                               double P_I, double sigma_n_sq)
{
    if (H.rows() != G.rows() || H.cols() != V.rows())
        throw Error(ErrorKind::dimension, "max_trace_quotient: inconsistent shapes");
    if (!(P_I > 0.0) || sigma_n_sq < 0.0)
        throw Error(ErrorKind::domain, "max_trace_quotient: need P_I > 0 and sigma_n^2 >= 0");
    const double K = static_cast<double>(V.cols());
    const CMatrix GG = G * G.adjoint();
    CMatrix num;
    RVector gain;
    if (mode == SymbolMode::fixed)
    {
        const CVector d = H * V * CVector::Ones(V.cols()) / std::sqrt(K);
        num = d.conjugate().asDiagonal() * GG * d.asDiagonal();
        gain = d.cwiseAbs2();
    }
    else
    {
        const CMatrix HV = H * V;
        const CMatrix B = HV * HV.adjoint() / K;
        num = GG.cwiseProduct(B.transpose());
        gain = B.diagonal().real();
    }
    if (!(gain.maxCoeff() > 0.0))
        throw Error(ErrorKind::degenerate, "max_trace_quotient: effective signal H V s is zero");
    RVector den = (gain.array() + sigma_n_sq) / P_I;
    return {hermitian_part(num), std::move(den)};
}

MaxTraceTheta theta_max_trace(const CMatrix &H, const CMatrix &G, const CMatrix &V, SymbolMode mode, double P_I,
                              double sigma_n_sq)
{
    auto [num, den] = max_trace_quotient(H, G, V, mode, P_I, sigma_n_sq);
    MaxTraceTheta out;
    out.theta_hat = generalized_rayleigh_max(num, den);
    const double load = (out.theta_hat.cwiseAbs2().array() * den.array()).sum() * P_I;
    out.rho_hat = std::sqrt(P_I / load);
    out.theta = out.rho_hat * out.theta_hat;
    out.objective = out.theta.dot(num * out.theta).real();
    out.num = std::move(num);
    out.den = std::move(den);
    return out;
}

MaxTrSvdResult solve_max_tr_svd(const ChannelSet &cs, const SceneConfig &cfg, SymbolMode mode)
{
    const auto t0 = std::chrono::steady_clock::now();
    const int K = cs.K();
    if (K != cfg.K || cs.M() != cfg.M || cs.Nu() != cfg.Nu)
        throw Error(ErrorKind::dimension, "solve_max_tr_svd: channel set does not match the scene");
    const DofReport dof = dof_bound(cs, cfg.M, cfg.Nu, K);
    if (dof.bound < K)
        throw Error(ErrorKind::degenerate, "solve_max_tr_svd: DoF bound below K");

    MaxTrSvdResult res;
    auto [V, U] = svd_beamformers(cs.H, cs.G, K, cfg.P_B);
    res.theta = theta_max_trace(cs.H, cs.G, V, mode, cfg.P_I, cfg.sigma_n_sq());

    BeamformerSolution &sol = res.solution;
    sol.method = Method::max_tr_svd;
    sol.V = std::move(V);
    sol.U = std::move(U);
    sol.stream_power = 1.0;
    sol.theta.resize(K);
    sol.rho.resize(K);
    for (int k = 0; k < K; ++k)
    {
        sol.theta[k] = res.theta.theta.segment(cs.offset(k), cs.elements(k));
        sol.rho[k] = sol.theta[k].norm();
    }

    SolverReport &rep = res.report;
    const double load = (res.theta.theta.cwiseAbs2().array() * res.theta.den.array()).sum();
    rep.power_residual = std::abs(load - 1.0);
    rep.bs_power_residual = std::abs(sol.V.squaredNorm() / cfg.P_B - 1.0);
    rep.objective = res.theta.objective;
    rep.initial_objective = rep.objective;
    rep.objective_trace = {rep.objective};
    rep.iterations = 1;
    rep.diagnostics["rho_hat"] = res.theta.rho_hat;
    rep.sinr = per_stream_sinr(sol, cs, cfg.sigma_n_sq(), cfg.sigma_z_sq);
    rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

} // namespace irsdm
