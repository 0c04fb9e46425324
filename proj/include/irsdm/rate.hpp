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

// SINR and rate evaluation, large-P_I limits, the IRS/user SINR
// proportionality and leading-order complexity counts.

#ifndef IRSDM_RATE_HPP
#define IRSDM_RATE_HPP

#include "irsdm/scene.hpp"
#include "irsdm/solution.hpp"

#include <string>
#include <vector>

namespace irsdm
{

/// Power budgets and noise variances of one link evaluation, in watts.
struct LinkBudget
{
    double P_B = 1.0;
    double P_I = 0.04;
    double sigma_irs_sq = 1e-7;  // per-element IRS noise (sigma_k^2 or the stacked sigma_n^2)
    double sigma_z_sq = 1e-7;

    /// Per-IRS view: sigma_irs_sq = sigma_k^2.
    static LinkBudget per_irs(const SceneConfig &cfg);
    /// Stacked virtual-IRS view: sigma_irs_sq = K sigma_k^2.
    static LinkBudget stacked(const SceneConfig &cfg);
};

/// Per-stream SINR with a linear receiver u_k, counting every residual
/// cross-stream term, reflected IRS noise and receiver noise. Symbols have
/// unit power; stream power is carried by solution.precoder().
std::vector<double> per_stream_sinr(const BeamformerSolution &sol, const ChannelSet &cs,
                                    double sigma_irs_sq, double sigma_z_sq);

/// sum_k log2(1 + gamma_k).
double sum_rate_streams(const std::vector<double> &gamma);

/// log2 det(I_K + B^{-1} A) with A = U^H G^H Th H V V^H H^H Th^H G U and
/// B = sigma_n^2 U^H G^H Th Th^H G U + sigma_z^2 U^H U. V carries power.
double rate_determinant(const CMatrix &U, const CMatrix &V, const CVector &theta, const ChannelSet &cs,
                        double sigma_n_sq, double sigma_z_sq);

/// The receiver-free form over the N_u-dimensional observation:
/// log2 det(I_Nu + C^{-1} G^H Th H V V^H H^H Th^H G), C = sigma_n^2 G^H Th Th^H G + sigma_z^2 I.
double rate_unconstrained_receiver(const CMatrix &V, const CVector &theta, const ChannelSet &cs,
                                   double sigma_n_sq, double sigma_z_sq);

struct AsymptoticSinr
{
    double gamma_inf = 0.0;
    bool unbounded = false;  // reflected-noise term vanished
    double A1 = 0.0;
    double A3 = 0.0;
};

/// P_I -> infinity SINR ceiling of stream k of a per-IRS solution: P_B A1 / (K A3).
AsymptoticSinr asymptotic_sinr_limit(int k, const ChannelSet &cs, const BeamformerSolution &sol, double P_B,
                                     double sigma_k_sq);

/// P_I -> infinity rate ceiling log2 det(I + Q2^{-1} Q1) for a stacked solution
/// with reflection direction theta_tilde (any nonzero scaling).
double asymptotic_rate_limit(const CMatrix &U, const CMatrix &V, const CVector &theta_tilde, const ChannelSet &cs,
                             double sigma_n_sq);

struct IrsSinrRelation
{
    double gamma0 = 0.0;  // average input SINR at IRS k
    double gammaU = 0.0;  // stream-k SINR at the user in the large-P_I regime
    double C1 = 0.0;      // element-average proportionality constant
    bool consistent = false;  // gammaU == C1 * gamma0 within 1e-8 relative
};

/// gamma_0, gamma_u and C1 for stream k of a per-IRS solution; the expectations
/// in C1 are element averages over the N_k elements of IRS k.
IrsSinrRelation irs_sinr_relation(const ChannelSet &cs, const BeamformerSolution &sol, double P_B,
                                  double sigma_i_sq, int k);

struct FlopCount
{
    double count = 0.0;
    std::string expression;
};

/// Leading-order floating-point operation counts of the three methods.
/// L1, L2: outer WMMSE and inner MM iteration counts (ignored by the closed forms).
FlopCount flops_order(Method method, int K, int Nk, int M, int Nu, int L1, int L2);

struct RateBreakdown
{
    std::vector<double> gamma;
    double rate_streams = 0.0;
    double rate_det = 0.0;
    double rate_det_nofix = 0.0;
    double sum_rate = 0.0;  // headline: rate_det for WMMSE-PC, rate_streams otherwise

    std::vector<double> asymptotic_gamma;  // per stream, NSP-ZF-PA only
    double asymptotic_rate = 0.0;          // stacked methods only

    std::vector<double> gamma0, gammaU, C1;  // per stream, NSP-ZF-PA only
};

/// Fills every applicable RateBreakdown field for a solution of any method.
RateBreakdown evaluate_rates(const BeamformerSolution &sol, const ChannelSet &cs, const SceneConfig &cfg);

} // namespace irsdm

#endif
