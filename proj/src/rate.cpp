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

#include "irsdm/rate.hpp"
#include "irsdm/errors.hpp"

#include <cmath>
#include <limits>

namespace irsdm
{

namespace
{

constexpr double ln2 = 0.69314718055994530942;

void check_theta(const CVector &theta, const ChannelSet &cs)
{
    if (theta.size() != cs.total_elements())
        throw Error(ErrorKind::dimension, "theta length " + std::to_string(theta.size()) +
                                              " does not match " + std::to_string(cs.total_elements()) +
                                              " IRS elements");
}

} // namespace

LinkBudget LinkBudget::per_irs(const SceneConfig &cfg)
{
    return {cfg.P_B, cfg.P_I, cfg.sigma_k_sq, cfg.sigma_z_sq};
}

LinkBudget LinkBudget::stacked(const SceneConfig &cfg)
{
    return {cfg.P_B, cfg.P_I, cfg.sigma_n_sq(), cfg.sigma_z_sq};
}

std::vector<double> per_stream_sinr(const BeamformerSolution &sol, const ChannelSet &cs, double sigma_irs_sq,
                                    double sigma_z_sq)
{
    const CVector theta = sol.stacked_theta();
    check_theta(theta, cs);
    const CMatrix P = sol.precoder();
    const CMatrix GhTheta = cs.G.adjoint() * theta.asDiagonal();  // Nu x N_I
    const CMatrix cascade = GhTheta * cs.H;                     // Nu x M

    const int K = sol.streams();
    std::vector<double> gamma(K, 0.0);
    for (int k = 0; k < K; ++k)
    {
        const CVector u = sol.U.col(k);
        const Eigen::RowVectorXcd uT = u.adjoint() * cascade;
        const Eigen::RowVectorXcd uGT = u.adjoint() * GhTheta;
        double signal = 0.0, interference = 0.0;
        for (int i = 0; i < K; ++i)
        {
            const double p = std::norm((uT * P.col(i)).value());
            (i == k ? signal : interference) += p;
        }
        const double noise = sigma_irs_sq * uGT.squaredNorm() + sigma_z_sq * u.squaredNorm();
        const double denom = interference + noise;
        gamma[k] = denom > 0.0 ? signal / denom : 0.0;
    }
    return gamma;
}

double sum_rate_streams(const std::vector<double> &gamma)
{
    double r = 0.0;
    for (double g : gamma)
        r += std::log2(1.0 + g);
    return r;
}

double rate_determinant(const CMatrix &U, const CMatrix &V, const CVector &theta, const ChannelSet &cs,
                        double sigma_n_sq, double sigma_z_sq)
{
    check_theta(theta, cs);
    const CMatrix UGT = U.adjoint() * cs.G.adjoint() * theta.asDiagonal();  // K x N_I
    const CMatrix S = UGT * cs.H * V;
    const CMatrix A = S * S.adjoint();
    const CMatrix B = sigma_n_sq * UGT * UGT.adjoint() + sigma_z_sq * U.adjoint() * U;
    return log_det_ratio(A, B) / ln2;
}

double rate_unconstrained_receiver(const CMatrix &V, const CVector &theta, const ChannelSet &cs, double sigma_n_sq,
                                   double sigma_z_sq)
{
    check_theta(theta, cs);
    const CMatrix GT = cs.G.adjoint() * theta.asDiagonal();  // Nu x N_I
    const CMatrix S = GT * cs.H * V;
    const CMatrix C = sigma_n_sq * GT * GT.adjoint() + sigma_z_sq * CMatrix::Identity(cs.Nu(), cs.Nu());
    return log_det_ratio(S * S.adjoint(), C) / ln2;
}

AsymptoticSinr asymptotic_sinr_limit(int k, const ChannelSet &cs, const BeamformerSolution &sol, double P_B,
                                     double sigma_k_sq)
{
    if (k < 0 || k >= cs.K())
        throw Error(ErrorKind::dimension, "stream index out of range");
    const CVector v = sol.V.col(k);
    const CVector u = sol.U.col(k);
    const double rho = sol.theta[k].norm();
    if (rho == 0.0)
        throw Error(ErrorKind::degenerate, "IRS " + std::to_string(k) + " has zero reflection vector");
    const CVector theta_t = sol.theta[k] / rho;

    const Eigen::RowVectorXcd ug = u.adjoint() * cs.G_k[k].adjoint();
    const CVector hv = cs.H_k[k] * v;
    const double denom = (hv.cwiseProduct(theta_t)).squaredNorm() + sigma_k_sq;
    // ||diag(theta~)||_2^2, the spectral norm of the diagonal matrix
    const double diag_norm_sq = theta_t.cwiseAbs2().maxCoeff();

    AsymptoticSinr out;
    out.A1 = ug.squaredNorm() * diag_norm_sq * hv.squaredNorm() / denom;
    out.A3 = sigma_k_sq * ug.squaredNorm() * diag_norm_sq / denom;
    const double K = static_cast<double>(sol.streams());
    if (out.A3 <= 0.0)
    {
        out.unbounded = true;
        out.gamma_inf = std::numeric_limits<double>::infinity();
    }
    else
    {
        out.gamma_inf = P_B * out.A1 / (K * out.A3);
    }
    return out;
}

double asymptotic_rate_limit(const CMatrix &U, const CMatrix &V, const CVector &theta_tilde, const ChannelSet &cs,
                             double sigma_n_sq)
{
    check_theta(theta_tilde, cs);
    const CMatrix UGT = U.adjoint() * cs.G.adjoint() * theta_tilde.asDiagonal();
    const CMatrix S = UGT * cs.H * V;
    const double scale = (theta_tilde.asDiagonal() * cs.H * V).squaredNorm() + theta_tilde.squaredNorm() * sigma_n_sq;
    if (!(scale > 0.0))
        throw Error(ErrorKind::conditioning, "asymptotic_rate_limit: zero normalisation");
    const CMatrix Q1 = S * S.adjoint() / scale;
    const CMatrix Q2 = sigma_n_sq * UGT * UGT.adjoint() / scale;
    return log_det_ratio(Q1, Q2) / ln2;
}

IrsSinrRelation irs_sinr_relation(const ChannelSet &cs, const BeamformerSolution &sol, double P_B,
                                  double sigma_i_sq, int k)
{
    if (k < 0 || k >= cs.K())
        throw Error(ErrorKind::dimension, "stream index out of range");
    const CVector a = (sol.U.col(k).adjoint() * cs.G_k[k].adjoint()).transpose();  // u^H g_k(n)
    const CVector b = cs.H_k[k] * sol.V.col(k);                                    // h_k^H(n) v_k
    const double Nk = static_cast<double>(cs.elements(k));

    const double sum_b = b.squaredNorm();
    const double sum_a = a.squaredNorm();
    const double sum_ab = a.cwiseProduct(b).squaredNorm();

    IrsSinrRelation r;
    r.gamma0 = P_B * sum_b / (Nk * sigma_i_sq);
    r.gammaU = P_B * sum_ab / (sigma_i_sq * sum_a);
    r.C1 = (sum_ab / Nk) / ((sum_a / Nk) * (sum_b / Nk));
    r.consistent = std::abs(r.gammaU - r.C1 * r.gamma0) <= 1e-8 * std::abs(r.gammaU);
    return r;
}

FlopCount flops_order(Method method, int K, int Nk, int M, int Nu, int L1, int L2)
{
    if (K < 1 || Nk < 1 || M < 1 || Nu < 1)
        throw Error(ErrorKind::domain, "flops_order: sizes must be positive");
    const double k = K, n = Nk, m = M, nu = Nu;
    FlopCount f;
    switch (method)
    {
    case Method::max_tr_svd:
        f.count = std::pow(k * n, 3) + nu * k * k * n * n + k * m * m * n;
        f.expression = "K^3 Nk^3 + Nu K^2 Nk^2 + K M^2 Nk";
        break;
    case Method::nsp_zf_pa:
        f.count = k * (2.0 * std::pow(k * n, 3) + n * n);
        f.expression = "K (2 K^3 Nk^3 + Nk^2)";
        break;
    case Method::wmmse_pc:
        if (L1 < 1 || L2 < 1)
            throw Error(ErrorKind::domain, "flops_order: L1 and L2 must be positive for wmmse-pc");
        f.count = L1 * (std::pow(k * n, 3.5) + L2 * std::pow(k * n, 3) + 2.0 * k * k * k);
        f.expression = "L1 (K^3.5 Nk^3.5 + L2 K^3 Nk^3 + 2 K^3)";
        break;
    default:
        throw Error(ErrorKind::domain, "flops_order: unknown method");
    }
    return f;
}

RateBreakdown evaluate_rates(const BeamformerSolution &sol, const ChannelSet &cs, const SceneConfig &cfg)
{
    RateBreakdown r;
    const CVector theta = sol.stacked_theta();
    const CMatrix P = sol.precoder();
    if (sol.method == Method::nsp_zf_pa)
    {
        const LinkBudget b = LinkBudget::per_irs(cfg);
        r.gamma = per_stream_sinr(sol, cs, b.sigma_irs_sq, b.sigma_z_sq);
        r.rate_streams = sum_rate_streams(r.gamma);
        r.rate_det = rate_determinant(sol.U, P, theta, cs, b.sigma_irs_sq, b.sigma_z_sq);
        r.rate_det_nofix = rate_unconstrained_receiver(P, theta, cs, b.sigma_irs_sq, b.sigma_z_sq);
        r.sum_rate = r.rate_streams;
        for (int k = 0; k < sol.streams(); ++k)
        {
            r.asymptotic_gamma.push_back(asymptotic_sinr_limit(k, cs, sol, cfg.P_B, cfg.sigma_k_sq).gamma_inf);
            const IrsSinrRelation rel = irs_sinr_relation(cs, sol, cfg.P_B, cfg.sigma_k_sq, k);
            r.gamma0.push_back(rel.gamma0);
            r.gammaU.push_back(rel.gammaU);
            r.C1.push_back(rel.C1);
        }
    }
    else
    {
        const LinkBudget b = LinkBudget::stacked(cfg);
        r.gamma = per_stream_sinr(sol, cs, b.sigma_irs_sq, b.sigma_z_sq);
        r.rate_streams = sum_rate_streams(r.gamma);
        r.rate_det = rate_determinant(sol.U, P, theta, cs, b.sigma_irs_sq, b.sigma_z_sq);
        r.rate_det_nofix = rate_unconstrained_receiver(P, theta, cs, b.sigma_irs_sq, b.sigma_z_sq);
        // Max-TR-SVD detects each stream on its own SVD receive beam.
        r.sum_rate = sol.method == Method::max_tr_svd ? r.rate_streams : r.rate_det;
        r.asymptotic_rate = asymptotic_rate_limit(sol.U, P, theta, cs, b.sigma_irs_sq);
    }
    return r;
}

} // namespace irsdm
