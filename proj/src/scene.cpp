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

#include "irsdm/scene.hpp"
#include "irsdm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace irsdm
{

double distance(Point2 a, Point2 b)
{
    return std::hypot(b.x - a.x, b.y - a.y);
}

double SceneConfig::irs_power(int k) const
{
    if (per_irs_power_split.empty())
        return P_I / K;
    return P_I * per_irs_power_split.at(k);
}

void SceneConfig::validate() const
{
    auto fail = [](const std::string &msg) { throw Error(ErrorKind::config, msg); };

    if (K < 1 || Nk < 1 || M < 1 || Nu < 1)
        fail("K, Nk, M and Nu must all be >= 1");
    if (M < K)
        fail("M (" + std::to_string(M) + ") must be >= K (" + std::to_string(K) + ")");
    if (Nu < K)
        fail("Nu (" + std::to_string(Nu) + ") must be >= K (" + std::to_string(K) + ")");
    if (!irs_pos.empty() && static_cast<int>(irs_pos.size()) != K)
        fail("irs_pos lists " + std::to_string(irs_pos.size()) + " positions for K = " + std::to_string(K));
    if (!(P_B > 0.0) || !(P_I > 0.0))
        fail("power budgets P_B and P_I must be > 0");
    if (!(sigma_k_sq > 0.0) || !(sigma_z_sq > 0.0))
        fail("noise powers must be > 0");
    if (!(pathloss_alpha > 0.0))
        fail("pathloss_alpha must be > 0");
    if (!std::isfinite(pathloss_exp))
        fail("pathloss_exp must be finite");
    if (!(element_spacing > 0.0))
        fail("element_spacing must be > 0");
    if (placement_jitter_m < 0.0)
        fail("placement_jitter_m must be >= 0");
    if (!per_irs_power_split.empty())
    {
        if (static_cast<int>(per_irs_power_split.size()) != K)
            fail("per_irs_power_split must have K entries");
        double sum = 0.0;
        for (double f : per_irs_power_split)
        {
            if (!(f >= 0.0))
                fail("per_irs_power_split entries must be >= 0");
            sum += f;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            fail("per_irs_power_split must sum to 1");
    }
}

std::vector<Point2> default_irs_positions(int K, Point2 bs, Point2 user)
{
    switch (K)
    {
    case 1: return {{80.0, 20.0}};
    case 2: return {{80.0, 20.0}, {90.0, 30.0}};
    case 4: return {{80.0, 20.0}, {90.0, 30.0}, {80.0, -20.0}, {90.0, -30.0}};
    default: break;
    }
    constexpr double radius = 25.0;
    const Point2 c{0.5 * (bs.x + user.x), 0.5 * (bs.y + user.y)};
    const int upper = (K + 1) / 2;
    std::vector<Point2> out;
    out.reserve(K);
    for (int i = 0; i < upper; ++i)
    {
        const double phi = pi * (i + 1) / (upper + 1);
        out.push_back({c.x + radius * std::cos(phi), c.y + radius * std::sin(phi)});
    }
    for (int i = 0; i < K / 2; ++i)
        out.push_back({out[i].x, 2.0 * c.y - out[i].y});
    return out;
}

SceneConfig default_scene(int K, int Nk)
{
    SceneConfig cfg;
    cfg.K = K;
    cfg.Nk = Nk;
    cfg.irs_pos = default_irs_positions(K, cfg.bs_pos, cfg.user_pos);
    return cfg;
}

int ChannelSet::offset(int k) const
{
    int off = 0;
    for (int i = 0; i < k; ++i)
        off += elements(i);
    return off;
}

ChannelSet ChannelSet::from_blocks(std::vector<CMatrix> H_blocks, std::vector<CMatrix> G_blocks)
{
    if (H_blocks.empty() || H_blocks.size() != G_blocks.size())
        throw Error(ErrorKind::dimension, "channel block lists must be non-empty and of equal length");
    const Eigen::Index M = H_blocks[0].cols();
    const Eigen::Index Nu = G_blocks[0].cols();
    Eigen::Index rows = 0;
    for (std::size_t k = 0; k < H_blocks.size(); ++k)
    {
        if (H_blocks[k].cols() != M || G_blocks[k].cols() != Nu || H_blocks[k].rows() != G_blocks[k].rows())
            throw Error(ErrorKind::dimension, "inconsistent channel block shapes at IRS " + std::to_string(k));
        require_finite(H_blocks[k], "H_k");
        require_finite(G_blocks[k], "G_k");
        rows += H_blocks[k].rows();
    }
    ChannelSet cs;
    cs.H.resize(rows, M);
    cs.G.resize(rows, Nu);
    Eigen::Index r = 0;
    for (std::size_t k = 0; k < H_blocks.size(); ++k)
    {
        const Eigen::Index n = H_blocks[k].rows();
        cs.H.middleRows(r, n) = H_blocks[k];
        cs.G.middleRows(r, n) = G_blocks[k];
        r += n;
    }
    cs.H_k = std::move(H_blocks);
    cs.G_k = std::move(G_blocks);
    return cs;
}

double path_loss(double d, double alpha, double exponent)
{
    if (!(d > 0.0))
        throw Error(ErrorKind::domain, "path_loss: distance must be > 0, got " + std::to_string(d));
    return alpha / std::pow(d, exponent);
}

CVector steering_vector(int n_elements, double spacing, double angle)
{
    CVector a(n_elements);
    const double step = 2.0 * pi * spacing * std::sin(angle);
    for (int m = 0; m < n_elements; ++m)
        a[m] = std::polar(1.0, step * m);
    return a;
}

double arrival_angle(Point2 from, Point2 to)
{
    return std::atan2(to.y - from.y, to.x - from.x);
}

ChannelSet synthesize_channels(const SceneConfig &cfg)
{
    cfg.validate();
    std::vector<Point2> irs = cfg.irs_pos.empty() ? default_irs_positions(cfg.K, cfg.bs_pos, cfg.user_pos)
                                                  : cfg.irs_pos;
    if (cfg.placement_jitter_m > 0.0)
    {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> jitter(-cfg.placement_jitter_m, cfg.placement_jitter_m);
        for (Point2 &p : irs)
        {
            p.x += jitter(rng);
            p.y += jitter(rng);
        }
    }

    std::vector<CMatrix> H_blocks, G_blocks;
    H_blocks.reserve(cfg.K);
    G_blocks.reserve(cfg.K);
    const double d = cfg.element_spacing;
    for (int k = 0; k < cfg.K; ++k)
    {
        const double d_bs = distance(cfg.bs_pos, irs[k]);
        const double d_user = distance(irs[k], cfg.user_pos);
        if (!(d_bs > 0.0) || !(d_user > 0.0))
            throw Error(ErrorKind::domain, "IRS " + std::to_string(k) + " coincides with the BS or the user");

        const double amp_bs = std::sqrt(path_loss(d_bs, cfg.pathloss_alpha, cfg.pathloss_exp));
        const double amp_user = std::sqrt(path_loss(d_user, cfg.pathloss_alpha, cfg.pathloss_exp));

        const CVector a_bs = steering_vector(cfg.M, d, arrival_angle(cfg.bs_pos, irs[k]));
        const CVector a_irs_in = steering_vector(cfg.Nk, d, arrival_angle(irs[k], cfg.bs_pos));
        const CVector a_irs_out = steering_vector(cfg.Nk, d, arrival_angle(irs[k], cfg.user_pos));
        const CVector a_user = steering_vector(cfg.Nu, d, arrival_angle(cfg.user_pos, irs[k]));

        H_blocks.push_back(amp_bs * a_irs_in * a_bs.adjoint());
        // G_k^H = amp * a_user a_irs_out^H
        G_blocks.push_back(amp_user * a_irs_out * a_user.adjoint());
    }
    return ChannelSet::from_blocks(std::move(H_blocks), std::move(G_blocks));
}

DofReport dof_bound(const ChannelSet &cs, int M, int Nu, int K)
{
    DofReport r;
    r.bound = std::min({K, M, Nu});
    r.rank_H = numerical_rank(cs.H, 1e-10);
    r.rank_G = numerical_rank(cs.G, 1e-10);
    r.rank_deficient = std::min(r.rank_H, r.rank_G) < r.bound;
    return r;
}

} // namespace irsdm
