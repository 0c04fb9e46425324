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

// irsdm command-line driver: parameter sweeps to CSV and WMMSE-PC traces.
//
//   irsdm sweep --config scene.cfg --axis P_I --values 0.01,0.04 --out rates.csv
//   irsdm trace --config scene.cfg --method wmmse-pc --out trace.csv
//
// Exit status: 0 success, 1 configuration or I/O error, 2 some sweep points failed.

#include "irsdm/errors.hpp"
#include "irsdm/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_point_failures = 2;

irsdm::SceneConfig scene_from(const std::string &path)
{
    return path.empty() ? irsdm::default_scene(4, 16) : irsdm::load_config(path);
}

void emit(const std::string &text, const std::string &path)
{
    if (path.empty() || path == "-")
    {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw irsdm::Error(irsdm::ErrorKind::io, "cannot open '" + path + "' for writing");
    out << text;
    if (!out.flush())
        throw irsdm::Error(irsdm::ErrorKind::io, "write to '" + path + "' failed");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Multi-IRS multi-stream beamforming simulator"};
    app.require_subcommand(1);

    std::string config_path, axis_name, values_text, methods_text = "nsp-zf-pa,wmmse-pc,max-tr-svd";
    std::string out_path = "-", resolved_path;
    std::uint64_t seed = 1;
    int jobs = 1, repetitions = 1;
    double total_power = 1.0;
    bool timing = false;

    auto *sweep = app.add_subcommand("sweep", "Run a parameter sweep and write a CSV table");
    sweep->add_option("--config", config_path, "Scene config file (default: K=4, Nk=16 scene)");
    sweep->add_option("--axis", axis_name, "Sweep axis: N_I, K, P_I, beta or distance")->required();
    sweep->add_option("--values", values_text, "Comma-separated axis values (P_I accepts a dBm suffix)");
    sweep->add_option("--methods", methods_text, "Comma-separated methods")->capture_default_str();
    sweep->add_option("--out", out_path, "Output CSV path, '-' for stdout")->capture_default_str();
    sweep->add_option("--seed", seed, "Base seed")->capture_default_str();
    sweep->add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    sweep->add_option("--repetitions", repetitions, "Repetitions per point")->capture_default_str();
    sweep->add_option("--total-power", total_power, "Total power P_T in watts for beta sweeps")
        ->capture_default_str();
    sweep->add_flag("--timing", timing, "Record wall-clock seconds (breaks byte-identical reruns)");
    sweep->add_option("--resolved-config", resolved_path, "Also write the resolved base scene here");

    std::string trace_method = "wmmse-pc";
    auto *trace = app.add_subcommand("trace", "Write the per-iteration objective of one solve");
    trace->add_option("--config", config_path, "Scene config file (default: K=4, Nk=16 scene)");
    trace->add_option("--method", trace_method, "Method")->capture_default_str();
    trace->add_option("--out", out_path, "Output CSV path, '-' for stdout")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try
    {
        if (*sweep)
        {
            irsdm::ExperimentSpec spec;
            spec.base = scene_from(config_path);
            spec.axis = irsdm::parse_axis(axis_name);
            spec.values = irsdm::parse_axis_values(values_text, spec.axis);
            spec.methods.clear();
            for (const auto &m : CLI::detail::split(methods_text, ','))
                spec.methods.push_back(irsdm::parse_method(CLI::detail::trim_copy(m)));
            spec.seed = seed;
            spec.jobs = jobs;
            spec.repetitions = repetitions;
            spec.P_T = total_power;
            spec.timing = timing;
            spec.validate();
            if (!resolved_path.empty())
                emit(irsdm::format_config(spec.base), resolved_path);

            const auto rows = irsdm::run_sweep(spec);
            emit(irsdm::format_csv(rows), out_path);
            int failed = 0;
            for (const auto &r : rows)
                if (r.status != "ok")
                {
                    ++failed;
                    std::fprintf(stderr, "irsdm: %s at %s = %.12g: %s\n", irsdm::to_string(r.method),
                                 irsdm::to_string(r.axis), r.axis_value, r.status.c_str());
                }
            return failed ? exit_point_failures : exit_ok;
        }
        const irsdm::SceneConfig cfg = scene_from(config_path);
        const auto t = irsdm::convergence_trace(irsdm::parse_method(trace_method), cfg);
        emit(irsdm::format_trace_csv(t), out_path);
        return exit_ok;
    }
    catch (const irsdm::Error &e)
    {
        std::fprintf(stderr, "irsdm: %s error: %s\n", irsdm::to_string(e.kind()), e.what());
        return e.kind() == irsdm::ErrorKind::config || e.kind() == irsdm::ErrorKind::io ? exit_config
                                                                                        : exit_point_failures;
    }
}
