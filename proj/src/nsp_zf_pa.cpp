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

#include "irsdm/nsp_zf_pa.hpp"
#include "irsdm/errors.hpp"
#include "irsdm/rate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace irsdm
{

namespace
{

// Rows of all blocks except `skip`, stacked.
CMatrix stack_except(const std::vector<CMatrix> &blocks, int skip)
{
    Eigen::Index rows = 0;
    for (std::size_t j = 0; j < blocks.size(); ++j)
        if (static_cast<int>(j) != skip)
            rows += blocks[j].rows();
    CMatrix out(rows, blocks.at(0).cols());
    Eigen::Index r = 0;
    for (std::size_t j = 0; j < blocks.size(); ++j)
    {
        if (static_cast<int>(j) == skip)
            continue;
        out.middleRows(r, blocks[j].rows()) = blocks[j];
        r += blocks[j].rows();
    }
    return out;
}

// I - A^H (A A^H)^+ A : orthogonal projector onto null(A).
CMatrix null_projector(const CMatrix &A)
{
    const Eigen::Index n = A.cols();
    if (A.rows() == 0)
        return CMatrix::Identity(n, n);
    return CMatrix::Identity(n, n) - A.adjoint() * pseudo_inverse(A * A.adjoint()) * A;
}

// Shared by the transmit and receive sides: maximise ||C x|| over unit x in null(interf).
CVector projected_principal(const CMatrix &C, const CMatrix &interf, const char *side)
{
    const CMatrix T = null_projector(interf);
    const CMatrix CT = C * T;
    const CMatrix B = CT.adjoint() * CT;
    const EigPair top = hermitian_eig_max(B);
    const double scale = C.squaredNorm();
    if (!(top.value > 1e-20 * scale))
        throw Error(ErrorKind::degenerate, std::string(side) + " channel lies in the span of the other streams");
    CVector x = T * top.vector;
    const double n = x.norm();
    if (n < 1e-12)
        throw Error(ErrorKind::degenerate, std::string(side) + " null-space projection collapsed");
    x /= n;
    fix_phase(x);
    return x;
}

void check_index(std::size_t count, int k)
{
    if (count == 0 || k < 0 || k >= static_cast<int>(count))
        throw Error(ErrorKind::dimension, "stream index " + std::to_string(k) + " out of range");
}

} // namespace

CVector transmit_nsp(const std::vector<CMatrix> &H_blocks, int k)
{
    check_index(H_blocks.size(), k);
    return projected_principal(H_blocks[k], stack_except(H_blocks, k), "transmit");
}

CVector receive_zf(const std::vector<CMatrix> &G_blocks, int k)
{
    check_index(G_blocks.size(), k);
    // u^H G_j^H = 0  <=>  G_j u = 0; objective u^H G_k^H G_k u.
    return projected_principal(G_blocks[k], stack_except(G_blocks, k), "receive");
}

PhaseAlignment phase_align(const CMatrix &H_k, const CMatrix &G_k, const CVector &v, const CVector &u, double P_Ik,
                           double sigma_k_sq)
{
    if (H_k.rows() != G_k.rows() || H_k.cols() != v.size() || G_k.cols() != u.size())
        throw Error(ErrorKind::dimension, "phase_align: inconsistent shapes");
    const CVector hv = H_k * v;
    // r_n = (u^H G_k^H)_n (H_k v)_n, so that u^H G_k^H diag(theta) H_k v = r^T theta
    const CVector r = (G_k * u).conjugate().cwiseProduct(hv);
    const double rn = r.norm();
    if (rn < 1e-15)
        throw Error(ErrorKind::degenerate, "phase_align: zero cascade gain");

    PhaseAlignment out;
    out.theta_tilde = r.conjugate() / rn;
    out.rho = std::sqrt(P_Ik / (hv.cwiseProduct(out.theta_tilde).squaredNorm() + sigma_k_sq));
    out.theta = out.rho * out.theta_tilde;
    return out;
}

NspZfPaResult solve_nsp_zf_pa(const ChannelSet &cs, const SceneConfig &cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    const int K = cs.K();
    if (K != cfg.K || cs.M() != cfg.M || cs.Nu() != cfg.Nu)
        throw Error(ErrorKind::dimension, "solve_nsp_zf_pa: channel set does not match the scene");
    const DofReport dof = dof_bound(cs, cfg.M, cfg.Nu, K);
    if (dof.bound < K || dof.rank_H < K || dof.rank_G < K)
        throw Error(ErrorKind::degenerate, "solve_nsp_zf_pa: channels support fewer than K = " + std::to_string(K) +
                                               " streams (rank H " + std::to_string(dof.rank_H) + ", rank G " +
                                               std::to_string(dof.rank_G) + ")");

    NspZfPaResult res;
    BeamformerSolution &sol = res.solution;
    sol.method = Method::nsp_zf_pa;
    sol.V.resize(cfg.M, K);
    sol.U.resize(cfg.Nu, K);
    sol.theta.resize(K);
    sol.rho.resize(K);
    sol.stream_power = cfg.P_B / K;

    SolverReport &rep = res.report;
    for (int k = 0; k < K; ++k)
    {
        try
        {
            sol.V.col(k) = transmit_nsp(cs.H_k, k);
            sol.U.col(k) = receive_zf(cs.G_k, k);
            const PhaseAlignment pa =
                phase_align(cs.H_k[k], cs.G_k[k], sol.V.col(k), sol.U.col(k), cfg.irs_power(k), cfg.sigma_k_sq);
            sol.theta[k] = pa.theta;
            sol.rho[k] = pa.rho;

            const CVector hv = cs.H_k[k] * sol.V.col(k);
            const double reflected =
                pa.rho * pa.rho * (hv.cwiseProduct(pa.theta_tilde).squaredNorm() + cfg.sigma_k_sq);
            rep.power_residual =
                std::max(rep.power_residual, std::abs(reflected - cfg.irs_power(k)) / cfg.irs_power(k));
        }
        catch (const Error &e)
        {
            throw e.with_context("stream " + std::to_string(k));
        }
    }

    for (int k = 0; k < K; ++k)
    {
        if (K > 1)
        {
            const CMatrix Hm = stack_except(cs.H_k, k);
            rep.nsp_residual = std::max(rep.nsp_residual, (Hm * sol.V.col(k)).norm() / Hm.norm());
        }
        for (int i = 0; i < K; ++i)
            if (i != k)
                rep.zf_residual =
                    std::max(rep.zf_residual, (cs.G_k[k] * sol.U.col(i)).norm() / cs.G_k[k].norm());
    }

    rep.sinr = per_stream_sinr(sol, cs, cfg.sigma_k_sq, cfg.sigma_z_sq);
    rep.objective = sum_rate_streams(rep.sinr);
    rep.initial_objective = rep.objective;
    rep.objective_trace = {rep.objective};
    rep.iterations = 1;
    rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

} // namespace irsdm
