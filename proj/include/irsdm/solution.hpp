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

#ifndef IRSDM_SOLUTION_HPP
#define IRSDM_SOLUTION_HPP

#include "irsdm/numerics.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace irsdm
{

enum class Method
{
    nsp_zf_pa,
    wmmse_pc,
    max_tr_svd
};

const char *to_string(Method m);

/// Parses "nsp-zf-pa", "wmmse-pc" or "max-tr-svd". Throws ErrorKind::config otherwise.
Method parse_method(std::string_view name);

/// Transmit/receive beamformers and IRS reflection vectors produced by one method.
struct BeamformerSolution
{
    Method method = Method::nsp_zf_pa;

    CMatrix V;  // M x K
    CMatrix U;  // Nu x K, unit-norm columns

    std::vector<CVector> theta;  // per IRS, Theta_k = diag(theta[k])
    std::vector<double> rho;     // per IRS, ||theta[k]||

    // Power of each symbol stream as fed into V. NSP-ZF-PA keeps unit-norm
    // columns and carries P_B / K here; the other methods fold power into V
    // and use 1.
    double stream_power = 1.0;

    /// sqrt(stream_power) * V, the matrix actually applied to unit-power symbols.
    CMatrix precoder() const;

    /// theta[0..K-1] concatenated, length K Nk.
    CVector stacked_theta() const;

    int streams() const { return static_cast<int>(V.cols()); }
};

struct SolverReport
{
    int iterations = 0;
    std::vector<double> objective_trace;  // per completed outer iteration
    double initial_objective = 0.0;
    double objective = 0.0;
    bool converged = true;

    double nsp_residual = 0.0;    // max_k ||H_{-k} v_k|| / ||H_{-k}||
    double zf_residual = 0.0;     // max_{i != k} ||u_i^H G_k^H|| / ||G_k||
    double power_residual = 0.0;  // max relative deviation from the IRS power target
    double bs_power_residual = 0.0;

    std::vector<double> sinr;  // per stream, linear
    double runtime_s = 0.0;

    std::map<std::string, double> diagnostics;
};

} // namespace irsdm

#endif
