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

#include "irsdm/solution.hpp"
#include "irsdm/errors.hpp"

#include <cmath>

namespace irsdm
{

const char *to_string(Method m)
{
    switch (m)
    {
    case Method::nsp_zf_pa: return "nsp-zf-pa";
    case Method::wmmse_pc: return "wmmse-pc";
    case Method::max_tr_svd: return "max-tr-svd";
    }
    return "unknown";
}

Method parse_method(std::string_view name)
{
    if (name == "nsp-zf-pa")
        return Method::nsp_zf_pa;
    if (name == "wmmse-pc")
        return Method::wmmse_pc;
    if (name == "max-tr-svd")
        return Method::max_tr_svd;
    throw Error(ErrorKind::config, "unknown method '" + std::string(name) + "'");
}

CMatrix BeamformerSolution::precoder() const
{
    return std::sqrt(stream_power) * V;
}

CVector BeamformerSolution::stacked_theta() const
{
    Eigen::Index n = 0;
    for (const auto &t : theta)
        n += t.size();
    CVector out(n);
    Eigen::Index r = 0;
    for (const auto &t : theta)
    {
        out.segment(r, t.size()) = t;
        r += t.size();
    }
    return out;
}

} // namespace irsdm
