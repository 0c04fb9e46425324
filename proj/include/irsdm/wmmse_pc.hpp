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

// Weighted-MMSE alternating optimisation over the stacked (virtual) IRS with
// a BS power budget and an aggregate IRS reflected-power budget.
//
// One outer iteration: MMSE receiver U, weight W = E^{-1}, precoder V from the
// two-constraint QCQP, reflection vector theta by majorisation-minimisation.
// All rates are in bits/s/Hz; the WMMSE utility h uses natural logarithms.

#ifndef IRSDM_WMMSE_PC_HPP
#define IRSDM_WMMSE_PC_HPP

#include "irsdm/rate.hpp"
#include "irsdm/scene.hpp"
#include "irsdm/solution.hpp"

#include <cstdint>
#include <vector>

namespace irsdm
{

/// Starting reflection phases. max_trace takes the phases of the expected-symbol
/// trace maximiser for the initial V; random_phase draws them uniformly from seed.
enum class WmmseInit
{
    max_trace,
    random_phase
};

struct WmmseOptions
{
    int max_outer = 200;
    double outer_eps = 1e-5;
    double mm_eps = 1e-6;
    int mm_max_iter = 2000;
    double bisection_rel_tol = 1e-14;
    int bisection_max_iter = 300;
    WmmseInit init = WmmseInit::max_trace;
    std::uint64_t seed = 1;
};

struct WmmseState
{
    CMatrix V;      // M x K, carries power
    CMatrix U;      // Nu x K
    CVector theta;  // K Nk
    CMatrix W;      // K x K
    CMatrix E;      // K x K
    std::vector<double> objective_trace;
};

/// MSE matrix E = (F V - I)(F V - I)^H + sigma_n^2 U^H G^H Th Th^H G U + sigma_z^2 U^H U, F = U^H G^H Th H.
CMatrix mse_matrix(const CMatrix &U, const CMatrix &V, const CVector &theta, const ChannelSet &cs,
                   const LinkBudget &b);

/// MMSE receiver (G^H Th H V V^H H^H Th^H G + C)^{-1} G^H Th H V.
CMatrix update_u(const CMatrix &V, const CVector &theta, const ChannelSet &cs, const LinkBudget &b);

/// W = E^{-1}; throws ErrorKind::conditioning if E is numerically singular.
CMatrix update_w(const CMatrix &E);

/// ln det W - Tr(W E) + K.
double wmmse_utility(const CMatrix &W, const CMatrix &E);

/// Tr(W E) for the given iterate.
double weighted_mse(const CMatrix &W, const CMatrix &U, const CMatrix &V, const CVector &theta,
                    const ChannelSet &cs, const LinkBudget &b);

struct VStepResult
{
    CMatrix V;
    double mu_bs = 0.0;
    double mu_irs = 0.0;
    double bs_power = 0.0;   // ||V||_F^2
    double irs_power = 0.0;  // ||Th H V||_F^2 + ||theta||^2 sigma_n^2
};

/// Minimises Tr(W E) over V s.t. ||V||_F^2 <= P_B and ||Th H V||_F^2 + ||theta||^2 sigma_n^2 <= P_I.
/// Closed-form V(mu1, mu2) with nested bisection on the multipliers.
/// Throws ErrorKind::infeasible if the IRS noise alone exceeds P_I.
VStepResult update_v_qcqp(const CMatrix &W, const CMatrix &U, const CVector &theta, const ChannelSet &cs,
                          const LinkBudget &b, const WmmseOptions &opts = {});

/// Quadratic model f(theta) = theta^H Omega theta + 2 Re{theta^H conj(c)} of Tr(W E) in theta (up to a constant).
struct MmTerms
{
    CMatrix Omega;
    CVector c;
};

MmTerms mm_terms(const CMatrix &W, const CMatrix &U, const CMatrix &V, const ChannelSet &cs, const LinkBudget &b);

double mm_objective(const MmTerms &t, const CVector &theta);

struct MmResult
{
    CVector theta;                // gamma * exp(j phases)
    double gamma = 0.0;
    double lambda_max = 0.0;
    std::vector<double> f_trace;  // f(theta^t), t = 0..iterations
    int iterations = 0;
};

/// Majorisation-minimisation over theta = gamma * exp(j phi), where gamma is
/// chosen so the IRS power constraint holds with equality for V. The initial
/// phases come from theta_init (arg 0 := 0).
MmResult update_theta_mm(const MmTerms &terms, const CMatrix &V, const CVector &theta_init, const ChannelSet &cs,
                         const LinkBudget &b, const WmmseOptions &opts = {});

/// Same, building the quadratic model from (W, U, V).
MmResult update_theta_mm(const CMatrix &W, const CMatrix &U, const CMatrix &V, const CVector &theta_init,
                         const ChannelSet &cs, const LinkBudget &b, const WmmseOptions &opts = {});

/// Stacked IRS power ||Th H V||_F^2 + ||theta||^2 sigma_n^2.
double irs_reflected_power(const CVector &theta, const CMatrix &V, const ChannelSet &cs, double sigma_n_sq);

struct WmmseResult
{
    BeamformerSolution solution;
    SolverReport report;
    WmmseState state;
    // Receiver-free rate after the V-step and after the theta-step of every outer iteration.
    std::vector<double> step_objectives;
    int theta_fallbacks = 0;  // theta-steps that kept the previous reflection vector
};

WmmseResult solve_wmmse_pc(const ChannelSet &cs, const SceneConfig &cfg, const WmmseOptions &opts = {});

} // namespace irsdm

#endif
