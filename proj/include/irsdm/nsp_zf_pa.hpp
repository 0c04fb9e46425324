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

// Per-stream closed form: null-space projected transmit beams, zero-forcing
// receive beams, and phase-aligned reflection vectors with one IRS per stream.

#ifndef IRSDM_NSP_ZF_PA_HPP
#define IRSDM_NSP_ZF_PA_HPP

#include "irsdm/scene.hpp"
#include "irsdm/solution.hpp"

#include <utility>
#include <vector>

namespace irsdm
{

/// Unit transmit beam of stream k that maximises ||H_k v|| subject to
/// H_j v = 0 for all j != k. Throws ErrorKind::degenerate when H_k has no
/// component outside the interferers' row space.
CVector transmit_nsp(const std::vector<CMatrix> &H_blocks, int k);

/// Unit receive beam of stream k that maximises ||G_k u|| subject to
/// u^H G_j^H = 0 for all j != k.
CVector receive_zf(const std::vector<CMatrix> &G_blocks, int k);

struct PhaseAlignment
{
    CVector theta;        // rho * theta_tilde
    CVector theta_tilde;  // unit norm
    double rho = 0.0;
};

/// Reflection vector of IRS k that makes u^H G_k^H diag(theta) H_k v real and
/// maximal, with amplitude set so rho^2 (||diag(H_k v) theta~||^2 + sigma_k^2) = P_Ik.
PhaseAlignment phase_align(const CMatrix &H_k, const CMatrix &G_k, const CVector &v, const CVector &u, double P_Ik,
                           double sigma_k_sq);

struct NspZfPaResult
{
    BeamformerSolution solution;
    SolverReport report;
};

NspZfPaResult solve_nsp_zf_pa(const ChannelSet &cs, const SceneConfig &cfg);

} // namespace irsdm

#endif
