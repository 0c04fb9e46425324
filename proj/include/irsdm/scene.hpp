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

#ifndef IRSDM_SCENE_HPP
#define IRSDM_SCENE_HPP

#include "irsdm/numerics.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace irsdm
{

/// x dBm in watts.
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

struct Point2
{
    double x = 0.0;
    double y = 0.0;
};

double distance(Point2 a, Point2 b);

/// Link geometry and budgets. All powers and noise levels in watts, distances in meters.
struct SceneConfig
{
    int M = 8;   // BS antennas
    int Nu = 8;  // user antennas
    int K = 4;   // number of IRSs
    int Nk = 16; // elements per IRS

    Point2 bs_pos{0.0, 0.0};
    Point2 user_pos{100.0, 0.0};
    std::vector<Point2> irs_pos;

    double P_B = 1.0;                         // 30 dBm
    double P_I = 0.04;
    std::vector<double> per_irs_power_split;  // empty means uniform 1/K
    double sigma_k_sq = 1e-7;                 // -40 dBm
    double sigma_z_sq = 1e-7;                 // -40 dBm
    double pathloss_alpha = 1e-2;
    double pathloss_exp = 2.0;
    double element_spacing = 0.5;             // wavelengths
    double placement_jitter_m = 0.0;          // uniform jitter on IRS positions, off by default
    std::uint64_t seed = 1;

    int total_elements() const { return K * Nk; }

    /// Noise of the stacked virtual IRS, K * sigma_k_sq.
    double sigma_n_sq() const { return K * sigma_k_sq; }

    /// Reflected-power budget of IRS k.
    double irs_power(int k) const;

    /// Throws ErrorKind::config on any violated invariant.
    void validate() const;
};

/// IRS placement used when a config does not list positions: the fixed
/// coordinates for K in {1, 2, 4}, otherwise two mirrored arcs of radius
/// 25 m centred halfway between BS and user.
std::vector<Point2> default_irs_positions(int K, Point2 bs, Point2 user);

/// Default scene: M = Nu = 8, P_B = 30 dBm, P_I = 0.04 W, noise -40 dBm,
/// alpha = 1e-2, c = 2, BS at the origin and user at (100, 0).
SceneConfig default_scene(int K, int Nk);

/// Per-IRS and stacked channels. G_k is Nk x Nu so that G_k^H maps IRS k to the user.
struct ChannelSet
{
    std::vector<CMatrix> H_k;  // Nk x M
    std::vector<CMatrix> G_k;  // Nk x Nu
    CMatrix H;                 // (K Nk) x M
    CMatrix G;                 // (K Nk) x Nu

    int K() const { return static_cast<int>(H_k.size()); }
    int M() const { return static_cast<int>(H.cols()); }
    int Nu() const { return static_cast<int>(G.cols()); }
    int total_elements() const { return static_cast<int>(H.rows()); }
    int elements(int k) const { return static_cast<int>(H_k[k].rows()); }
    /// First stacked row of IRS k.
    int offset(int k) const;

    /// Builds the stacked matrices from per-IRS blocks.
    static ChannelSet from_blocks(std::vector<CMatrix> H_blocks, std::vector<CMatrix> G_blocks);
};

/// alpha / d^c. Throws ErrorKind::domain for d <= 0.
double path_loss(double d, double alpha, double exponent);

/// exp(j 2 pi spacing m sin(angle)), m = 0..n-1.
CVector steering_vector(int n_elements, double spacing, double angle);

/// Angle of (to - from) measured from the +x axis. Arrays are laid out so
/// that this is the angle off broadside used by steering_vector.
double arrival_angle(Point2 from, Point2 to);

/// Rank-one line-of-sight channels from positions. Deterministic in cfg.
ChannelSet synthesize_channels(const SceneConfig &cfg);

struct DofReport
{
    int bound = 0;      // min(K, M, Nu)
    int rank_H = 0;
    int rank_G = 0;
    bool rank_deficient = false;  // achieved rank below the bound
};

/// Maximum number of parallel streams and the numerical ranks (1e-10 relative) of H, G.
DofReport dof_bound(const ChannelSet &cs, int M, int Nu, int K);

} // namespace irsdm

#endif
