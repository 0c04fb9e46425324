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

#include "irsdm/harness.hpp"
#include "irsdm/errors.hpp"
#include "irsdm/max_tr_svd.hpp"
#include "irsdm/nsp_zf_pa.hpp"
#include "irsdm/rate.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

namespace irsdm
{

namespace
{

std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep)
        {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    return out;
}

[[noreturn]] void config_error(const std::string &where, const std::string &msg)
{
    throw Error(ErrorKind::config, where + ": " + msg);
}

double to_double(const std::string &text, const std::string &where)
{
    if (text.empty())
        config_error(where, "empty number");
    char *end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || !std::isfinite(v))
        config_error(where, "'" + text + "' is not a finite number");
    return v;
}

long long to_integer(const std::string &text, const std::string &where)
{
    if (text.empty())
        config_error(where, "empty integer");
    char *end = nullptr;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (end != text.c_str() + text.size())
        config_error(where, "'" + text + "' is not an integer");
    return v;
}

int to_int(const std::string &text, const std::string &where)
{
    const long long v = to_integer(text, where);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        config_error(where, "'" + text + "' is out of range");
    return static_cast<int>(v);
}

std::uint64_t to_u64(const std::string &text, const std::string &where)
{
    if (text.empty() || text[0] == '-')
        config_error(where, "'" + text + "' is not a non-negative integer");
    char *end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (end != text.c_str() + text.size())
        config_error(where, "'" + text + "' is not a non-negative integer");
    return v;
}

// Watts, or dBm with an explicit suffix.
double to_power(const std::string &text, const std::string &where)
{
    if (text.size() >= 3)
    {
        std::string tail = text.substr(text.size() - 3);
        std::transform(tail.begin(), tail.end(), tail.begin(), [](unsigned char c) { return std::tolower(c); });
        if (tail == "dbm")
            return dbm_to_watt(to_double(trim(text.substr(0, text.size() - 3)), where));
    }
    return to_double(text, where);
}

Point2 to_point(const std::string &text, const std::string &where)
{
    const auto parts = split(text, ',');
    if (parts.size() != 2)
        config_error(where, "'" + text + "' is not a point 'x,y'");
    return {to_double(parts[0], where), to_double(parts[1], where)};
}

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string exact(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sanitize(std::string s)
{
    for (char &c : s)
        if (c == ',' || c == '\n' || c == '\r' || c == '"')
            c = ' ';
    return s;
}

const char *const csv_header =
    "method,axis_name,axis_value,sum_rate_bps_hz,rate_det_bps_hz,iterations,residual_power,residual_zf,"
    "runtime_s,seed,status";

} // namespace

SceneConfig parse_config(std::istream &in, const std::string &origin)
{
    SceneConfig cfg = default_scene(4, 16);
    cfg.irs_pos.clear();
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const std::string body = trim(line);
        if (body.empty())
            continue;
        const std::string where = origin + ":" + std::to_string(lineno);
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            config_error(where, "expected 'key = value'");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string val = trim(std::string_view(body).substr(eq + 1));
        if (!seen.insert(key).second)
            config_error(where, "duplicate key '" + key + "'");
        const std::string at = where + " (" + key + ")";

        if (key == "M")
            cfg.M = to_int(val, at);
        else if (key == "Nu")
            cfg.Nu = to_int(val, at);
        else if (key == "K")
            cfg.K = to_int(val, at);
        else if (key == "Nk")
            cfg.Nk = to_int(val, at);
        else if (key == "bs_pos")
            cfg.bs_pos = to_point(val, at);
        else if (key == "user_pos")
            cfg.user_pos = to_point(val, at);
        else if (key == "irs_pos")
        {
            cfg.irs_pos.clear();
            for (const auto &p : split(val, ';'))
                cfg.irs_pos.push_back(to_point(p, at));
        }
        else if (key == "P_B")
            cfg.P_B = to_power(val, at);
        else if (key == "P_I")
            cfg.P_I = to_power(val, at);
        else if (key == "per_irs_power_split")
        {
            cfg.per_irs_power_split.clear();
            for (const auto &f : split(val, ','))
                cfg.per_irs_power_split.push_back(to_double(f, at));
        }
        else if (key == "sigma_k_sq")
            cfg.sigma_k_sq = to_power(val, at);
        else if (key == "sigma_z_sq")
            cfg.sigma_z_sq = to_power(val, at);
        else if (key == "pathloss_alpha")
            cfg.pathloss_alpha = to_double(val, at);
        else if (key == "pathloss_exp")
            cfg.pathloss_exp = to_double(val, at);
        else if (key == "element_spacing")
            cfg.element_spacing = to_double(val, at);
        else if (key == "placement_jitter_m")
            cfg.placement_jitter_m = to_double(val, at);
        else if (key == "seed")
            cfg.seed = to_u64(val, at);
        else
            config_error(where, "unknown key '" + key + "'");
    }
    try
    {
        cfg.validate();
    }
    catch (const Error &e)
    {
        throw e.with_context(origin);
    }
    return cfg;
}

SceneConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::io, "cannot open config '" + path + "'");
    return parse_config(in, path);
}

std::string format_config(const SceneConfig &cfg)
{
    const auto irs = cfg.irs_pos.empty() ? default_irs_positions(cfg.K, cfg.bs_pos, cfg.user_pos) : cfg.irs_pos;
    std::ostringstream os;
    auto point = [](Point2 p) { return exact(p.x) + "," + exact(p.y); };
    os << "M = " << cfg.M << "\n";
    os << "Nu = " << cfg.Nu << "\n";
    os << "K = " << cfg.K << "\n";
    os << "Nk = " << cfg.Nk << "\n";
    os << "bs_pos = " << point(cfg.bs_pos) << "\n";
    os << "user_pos = " << point(cfg.user_pos) << "\n";
    os << "irs_pos = ";
    for (std::size_t i = 0; i < irs.size(); ++i)
        os << (i ? "; " : "") << point(irs[i]);
    os << "\n";
    os << "P_B = " << exact(cfg.P_B) << "\n";
    os << "P_I = " << exact(cfg.P_I) << "\n";
    if (!cfg.per_irs_power_split.empty())
    {
        os << "per_irs_power_split = ";
        for (std::size_t i = 0; i < cfg.per_irs_power_split.size(); ++i)
            os << (i ? ", " : "") << exact(cfg.per_irs_power_split[i]);
        os << "\n";
    }
    os << "sigma_k_sq = " << exact(cfg.sigma_k_sq) << "\n";
    os << "sigma_z_sq = " << exact(cfg.sigma_z_sq) << "\n";
    os << "pathloss_alpha = " << exact(cfg.pathloss_alpha) << "\n";
    os << "pathloss_exp = " << exact(cfg.pathloss_exp) << "\n";
    os << "element_spacing = " << exact(cfg.element_spacing) << "\n";
    os << "placement_jitter_m = " << exact(cfg.placement_jitter_m) << "\n";
    os << "seed = " << cfg.seed << "\n";
    return os.str();
}

const char *to_string(SweepAxis axis)
{
    switch (axis)
    {
    case SweepAxis::N_I: return "N_I";
    case SweepAxis::K: return "K";
    case SweepAxis::P_I: return "P_I";
    case SweepAxis::beta: return "beta";
    case SweepAxis::distance: return "distance";
    }
    return "unknown";
}

SweepAxis parse_axis(std::string_view name)
{
    for (SweepAxis a : {SweepAxis::N_I, SweepAxis::K, SweepAxis::P_I, SweepAxis::beta, SweepAxis::distance})
        if (name == to_string(a))
            return a;
    throw Error(ErrorKind::config, "unknown sweep axis '" + std::string(name) + "'");
}

std::vector<double> parse_axis_values(std::string_view text, SweepAxis axis)
{
    std::vector<double> out;
    const std::string body = trim(text);
    if (body.empty())
    {
        if (axis == SweepAxis::beta)
            for (int i = 1; i <= 19; ++i)
                out.push_back(0.05 * i);
        return out;
    }
    for (const auto &item : split(body, ','))
        out.push_back(axis == SweepAxis::P_I ? to_power(item, "--values") : to_double(item, "--values"));
    return out;
}

namespace
{

int whole(double v, const char *what)
{
    if (!(v >= 1.0) || v > 1e9 || v != std::floor(v))
        throw Error(ErrorKind::config, std::string(what) + " value " + num(v) + " is not a positive integer");
    return static_cast<int>(v);
}

} // namespace

SceneConfig point_config(const ExperimentSpec &spec, double v)
{
    SceneConfig cfg = spec.base;
    switch (spec.axis)
    {
    case SweepAxis::N_I:
    {
        const int n = whole(v, "N_I");
        if (n % cfg.K != 0)
            throw Error(ErrorKind::config, "N_I = " + std::to_string(n) + " is not divisible by K = " +
                                               std::to_string(cfg.K));
        cfg.Nk = n / cfg.K;
        break;
    }
    case SweepAxis::K:
    {
        const int k = whole(v, "K");
        const int n = spec.base.total_elements();
        if (n % k != 0)
            throw Error(ErrorKind::config, "N_I = " + std::to_string(n) + " is not divisible by K = " +
                                               std::to_string(k));
        cfg.K = k;
        cfg.Nk = n / k;
        if (static_cast<int>(cfg.irs_pos.size()) != k)
            cfg.irs_pos.clear();
        cfg.per_irs_power_split.clear();
        break;
    }
    case SweepAxis::P_I:
        cfg.P_I = v;
        break;
    case SweepAxis::beta:
        if (!(v > 0.0 && v < 1.0))
            throw Error(ErrorKind::config, "beta value " + num(v) + " outside (0, 1)");
        cfg.P_I = v * spec.P_T;
        cfg.P_B = (1.0 - v) * spec.P_T;
        break;
    case SweepAxis::distance:
        if (!(v >= 0.0))
            throw Error(ErrorKind::config, "distance value " + num(v) + " is negative");
        if (cfg.irs_pos.empty())
            cfg.irs_pos = default_irs_positions(cfg.K, cfg.bs_pos, cfg.user_pos);
        cfg.user_pos = {std::max(v, 1.0), 0.0};
        break;
    }
    return cfg;
}

void ExperimentSpec::validate() const
{
    auto fail = [](const std::string &m) { throw Error(ErrorKind::config, "experiment: " + m); };
    if (methods.empty())
        fail("no methods selected");
    for (std::size_t i = 0; i < methods.size(); ++i)
        for (std::size_t j = i + 1; j < methods.size(); ++j)
            if (methods[i] == methods[j])
                fail(std::string("method ") + to_string(methods[i]) + " listed twice");
    if (values.empty())
        fail("no axis values");
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        if (!std::isfinite(values[i]))
            fail("non-finite axis value");
        if (i > 0 && !(values[i] > values[i - 1]))
            fail("axis values must be strictly increasing");
    }
    if (repetitions < 1)
        fail("repetitions must be >= 1");
    if (jobs < 1)
        fail("jobs must be >= 1");
    if (axis == SweepAxis::beta && !(P_T > 0.0 && std::isfinite(P_T)))
        fail("P_T must be positive");
    base.validate();
    for (double v : values)
        point_config(*this, v).validate();
}

std::uint64_t point_seed(std::uint64_t base_seed, std::size_t point_index)
{
    return base_seed ^ static_cast<std::uint64_t>(point_index);
}

ResultRow run_point(Method method, const SceneConfig &cfg, const WmmseOptions &wmmse, bool timing)
{
    const auto t0 = std::chrono::steady_clock::now();
    ResultRow row;
    row.method = method;
    row.seed = cfg.seed;
    try
    {
        const ChannelSet cs = synthesize_channels(cfg);
        BeamformerSolution sol;
        SolverReport rep;
        switch (method)
        {
        case Method::nsp_zf_pa:
        {
            auto r = solve_nsp_zf_pa(cs, cfg);
            sol = std::move(r.solution);
            rep = std::move(r.report);
            break;
        }
        case Method::wmmse_pc:
        {
            WmmseOptions opts = wmmse;
            opts.seed = cfg.seed;
            auto r = solve_wmmse_pc(cs, cfg, opts);
            sol = std::move(r.solution);
            rep = std::move(r.report);
            break;
        }
        case Method::max_tr_svd:
        {
            auto r = solve_max_tr_svd(cs, cfg);
            sol = std::move(r.solution);
            rep = std::move(r.report);
            break;
        }
        }
        const RateBreakdown rb = evaluate_rates(sol, cs, cfg);
        row.sum_rate = rb.sum_rate;
        row.rate_det = rb.rate_det;
        row.sinr = rb.gamma;
        row.iterations = rep.iterations;
        row.residual_power = std::max(rep.power_residual, rep.bs_power_residual);
        row.residual_zf = std::max(rep.zf_residual, rep.nsp_residual);
        row.status = "ok";
    }
    catch (const Error &e)
    {
        row.sum_rate = row.rate_det = std::numeric_limits<double>::quiet_NaN();
        row.status = sanitize(std::string(to_string(e.kind())) + " error: " + e.what());
    }
    catch (const std::exception &e)
    {
        row.sum_rate = row.rate_det = std::numeric_limits<double>::quiet_NaN();
        row.status = sanitize(std::string("error: ") + e.what());
    }
    if (timing)
        row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

std::vector<ResultRow> run_sweep(const ExperimentSpec &spec)
{
    spec.validate();
    const std::size_t nv = spec.values.size(), nm = spec.methods.size();
    const std::size_t nr = static_cast<std::size_t>(spec.repetitions);
    const std::size_t total = nv * nm * nr;
    std::vector<ResultRow> rows(total);

    // Row slot (a, m, r) -> a * nm * nr + m * nr + r, which is already the output order.
    auto work = [&](std::size_t slot) {
        const std::size_t a = slot / (nm * nr);
        const std::size_t m = (slot / nr) % nm;
        const std::size_t r = slot % nr;
        SceneConfig cfg = point_config(spec, spec.values[a]);
        cfg.seed = point_seed(spec.seed, a * nr + r);
        ResultRow row = run_point(spec.methods[m], cfg, spec.wmmse, spec.timing);
        row.axis = spec.axis;
        row.axis_value = spec.values[a];
        row.repetition = static_cast<int>(r);
        rows[slot] = std::move(row);
    };

    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(spec.jobs), total);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < total; ++i)
            work(i);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < total; i = next++)
                work(i);
        });
    for (auto &t : pool)
        t.join();
    return rows;
}

std::string format_csv(const std::vector<ResultRow> &rows)
{
    std::string out = std::string(csv_header) + "\n";
    for (const auto &r : rows)
    {
        out += to_string(r.method);
        out += ',';
        out += to_string(r.axis);
        out += ',' + num(r.axis_value) + ',' + num(r.sum_rate) + ',' + num(r.rate_det) + ',' +
               std::to_string(r.iterations) + ',' + num(r.residual_power) + ',' + num(r.residual_zf) + ',' +
               num(r.runtime_s) + ',' + std::to_string(r.seed) + ',' + sanitize(r.status) + '\n';
    }
    return out;
}

void write_csv(const std::vector<ResultRow> &rows, const std::string &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::io, "cannot open '" + path + "' for writing");
    out << format_csv(rows);
    out.flush();
    if (!out)
        throw Error(ErrorKind::io, "write to '" + path + "' failed");
}

std::vector<ResultRow> parse_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || line != csv_header)
        throw Error(ErrorKind::io, "CSV header mismatch");
    std::vector<ResultRow> rows;
    int lineno = 1;
    auto number = [&](const std::string &s) {
        char *end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size())
            throw Error(ErrorKind::io, "CSV line " + std::to_string(lineno) + ": bad number '" + s + "'");
        return v;
    };
    while (std::getline(in, line))
    {
        ++lineno;
        if (line.empty())
            continue;
        const auto f = split(line, ',');
        if (f.size() != 11)
            throw Error(ErrorKind::io, "CSV line " + std::to_string(lineno) + ": expected 11 fields");
        ResultRow r;
        r.method = parse_method(f[0]);
        r.axis = parse_axis(f[1]);
        r.axis_value = number(f[2]);
        r.sum_rate = number(f[3]);
        r.rate_det = number(f[4]);
        r.iterations = static_cast<int>(number(f[5]));
        r.residual_power = number(f[6]);
        r.residual_zf = number(f[7]);
        r.runtime_s = number(f[8]);
        r.seed = std::strtoull(f[9].c_str(), nullptr, 10);
        r.status = f[10];
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<std::pair<int, double>> convergence_trace(Method method, const SceneConfig &cfg,
                                                      const WmmseOptions &wmmse)
{
    const ChannelSet cs = synthesize_channels(cfg);
    std::vector<std::pair<int, double>> out;
    switch (method)
    {
    case Method::wmmse_pc:
    {
        WmmseOptions opts = wmmse;
        opts.seed = cfg.seed;
        const auto r = solve_wmmse_pc(cs, cfg, opts);
        for (std::size_t i = 0; i < r.report.objective_trace.size(); ++i)
            out.emplace_back(static_cast<int>(i) + 1, r.report.objective_trace[i]);
        break;
    }
    case Method::nsp_zf_pa:
    {
        const auto r = solve_nsp_zf_pa(cs, cfg);
        out.emplace_back(1, evaluate_rates(r.solution, cs, cfg).sum_rate);
        break;
    }
    case Method::max_tr_svd:
    {
        const auto r = solve_max_tr_svd(cs, cfg);
        out.emplace_back(1, evaluate_rates(r.solution, cs, cfg).sum_rate);
        break;
    }
    }
    return out;
}

std::string format_trace_csv(const std::vector<std::pair<int, double>> &trace)
{
    std::string out = "iteration,objective\n";
    for (const auto &[i, v] : trace)
        out += std::to_string(i) + ',' + num(v) + '\n';
    return out;
}

} // namespace irsdm
