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

// Experiment plumbing: key-value scene configs, parameter sweeps over a
// worker pool, CSV output and convergence traces.

#ifndef IRSDM_HARNESS_HPP
#define IRSDM_HARNESS_HPP

#include "irsdm/scene.hpp"
#include "irsdm/solution.hpp"
#include "irsdm/wmmse_pc.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace irsdm
{

/// Parses a flat "key = value" scene file. '#' starts a comment. Power and
/// noise keys accept an optional "dBm" suffix; points are "x,y"; irs_pos is a
/// ';'-separated point list; per_irs_power_split is ','-separated. Keys not
/// present keep their default_scene(4, 16) values. Unknown or repeated keys,
/// malformed values and invalid scenes throw ErrorKind::config.
SceneConfig parse_config(std::istream &in, const std::string &origin = "<config>");

/// parse_config on a file; unreadable paths throw ErrorKind::io.
SceneConfig load_config(const std::string &path);

/// Canonical text form of a config (IRS positions resolved), readable by parse_config.
std::string format_config(const SceneConfig &cfg);

enum class SweepAxis
{
    N_I,
    K,
    P_I,
    beta,
    distance
};

const char *to_string(SweepAxis axis);

/// "N_I", "K", "P_I", "beta" or "distance"; ErrorKind::config otherwise.
SweepAxis parse_axis(std::string_view name);

/// Comma-separated axis values. P_I entries accept a "dBm" suffix; an empty
/// beta list yields the default grid 0.05, 0.10, ..., 0.95.
std::vector<double> parse_axis_values(std::string_view text, SweepAxis axis);

struct ExperimentSpec
{
    SceneConfig base;
    std::vector<Method> methods{Method::nsp_zf_pa, Method::wmmse_pc, Method::max_tr_svd};
    SweepAxis axis = SweepAxis::P_I;
    std::vector<double> values;  // strictly increasing; P_I in watts, distance in meters
    double P_T = 1.0;            // total power of beta sweeps, watts
    int repetitions = 1;
    std::uint64_t seed = 1;
    int jobs = 1;
    bool timing = false;  // record wall-clock seconds (otherwise written as 0)
    WmmseOptions wmmse;

    /// Throws ErrorKind::config for an unusable spec, including every point config.
    void validate() const;
};

/// Scene of one sweep point, before seeding.
SceneConfig point_config(const ExperimentSpec &spec, double axis_value);

/// Seed of a sweep point: base seed XOR point index.
std::uint64_t point_seed(std::uint64_t base_seed, std::size_t point_index);

struct ResultRow
{
    Method method = Method::nsp_zf_pa;
    SweepAxis axis = SweepAxis::P_I;
    double axis_value = 0.0;
    int repetition = 0;
    double sum_rate = 0.0;  // bits/s/Hz, the method's headline rate
    double rate_det = 0.0;  // bits/s/Hz, determinant form
    std::vector<double> sinr;
    int iterations = 0;
    double residual_power = 0.0;
    double residual_zf = 0.0;
    double runtime_s = 0.0;
    std::uint64_t seed = 0;
    std::string status = "ok";
};

/// Solves and evaluates one method on one scene. Solver errors are caught and
/// recorded in status.
ResultRow run_point(Method method, const SceneConfig &cfg, const WmmseOptions &wmmse, bool timing);

/// Every (axis value, method, repetition) point, ordered by axis value, then
/// method order in the spec, then repetition.
std::vector<ResultRow> run_sweep(const ExperimentSpec &spec);

/// Header plus one line per row, numbers with 12 significant digits.
std::string format_csv(const std::vector<ResultRow> &rows);
void write_csv(const std::vector<ResultRow> &rows, const std::string &path);

/// Inverse of format_csv (SINRs are not part of the file).
std::vector<ResultRow> parse_csv(std::istream &in);

/// (iteration, objective) pairs. WMMSE-PC yields one pair per outer iteration
/// of the receiver-free rate; closed-form methods yield their sum rate once.
std::vector<std::pair<int, double>> convergence_trace(Method method, const SceneConfig &cfg,
                                                      const WmmseOptions &wmmse = {});

std::string format_trace_csv(const std::vector<std::pair<int, double>> &trace);

} // namespace irsdm

#endif
