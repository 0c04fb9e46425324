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

// Low-complexity baseline: SVD transmit/receive beams and a reflection vector
// maximising the received signal trace under the IRS power budget.

#ifndef IRSDM_MAX_TR_SVD_HPP
#define IRSDM_MAX_TR_SVD_HPP

#include "irsdm/scene.hpp"
#include "irsdm/solution.hpp"

#include <utility>

namespace irsdm
{

/// How the symbol vector s enters the trace objective.
enum class SymbolMode
{
    fixed,    // s = ones(K) / sqrt(K)
    expected  // E[s s^H] = I / K, averaged in closed form
};

/// V: top-K right singular vectors of H with ||V||_F^2 = P_B (P_B / K per column).
/// U: top-K left singular vectors of G^H. Throws ErrorKind::degenerate if
/// either matrix has numerical rank below K.
std::pair<CMatrix, CMatrix> svd_beamformers(const CMatrix &H, const CMatrix &G, int K, double P_B);

struct MaxTraceTheta
{
    CVector theta;      // rho_hat * theta_hat
    CVector theta_hat;  // unit norm
    double rho_hat = 0.0;
    double objective = 0.0;  // theta^H Num theta, the received signal trace
    CMatrix num;             // quotient numerator
    RVector den;             // quotient denominator diagonal (already divided by P_I)
};

/// Quotient matrices for the given mode: Num and the diagonal of the denominator.
std::pair<CMatrix, RVector> max_trace_quotient(const CMatrix &H, const CMatrix &G, const CMatrix &V, SymbolMode mode,
                                               double P_I, double sigma_n_sq);

/// theta_hat = argmax of the generalized Rayleigh quotient, rho_hat sets the
/// IRS power term to P_I exactly. Throws ErrorKind::degenerate when H V s = 0.
MaxTraceTheta theta_max_trace(const CMatrix &H, const CMatrix &G, const CMatrix &V, SymbolMode mode, double P_I,
                              double sigma_n_sq);

struct MaxTrSvdResult
{
    BeamformerSolution solution;
    SolverReport report;
    MaxTraceTheta theta;
};

MaxTrSvdResult solve_max_tr_svd(const ChannelSet &cs, const SceneConfig &cfg, SymbolMode mode = SymbolMode::fixed);

} // namespace irsdm

#endif
