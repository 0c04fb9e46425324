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

#include "irsdm/errors.hpp"
#include "irsdm/harness.hpp"
#include "irsdm/max_tr_svd.hpp"
#include "irsdm/nsp_zf_pa.hpp"
#include "irsdm/rate.hpp"
#include "irsdm/scene.hpp"
#include "irsdm/wmmse_pc.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace irsdm;

namespace
{

py::tuple point_tuple(Point2 p) { return py::make_tuple(p.x, p.y); }
Point2 tuple_point(const std::pair<double, double> &p) { return {p.first, p.second}; }

template <class R>
py::tuple solved(R &&r)
{
    return py::make_tuple(std::move(r.solution), std::move(r.report));
}

} // namespace

PYBIND11_MODULE(_irsdm, m)
{
    m.doc() = "Multi-IRS multi-stream beamforming simulator";

    // irsdm.Error(kind, message), a RuntimeError subclass.
    static PyObject *error_type = py::exception<Error>(m, "Error", PyExc_RuntimeError).release().ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try
        {
            if (p)
                std::rethrow_exception(p);
        }
        catch (const Error &e)
        {
            PyErr_SetObject(error_type, py::make_tuple(std::string(to_string(e.kind())), e.what()).ptr());
        }
    });

    py::enum_<Method>(m, "Method")
        .value("nsp_zf_pa", Method::nsp_zf_pa)
        .value("wmmse_pc", Method::wmmse_pc)
        .value("max_tr_svd", Method::max_tr_svd);
    m.def("parse_method", &parse_method, "name"_a);
    m.def("method_name", [](Method x) { return std::string(to_string(x)); }, "method"_a);

    py::class_<SceneConfig>(m, "SceneConfig")
        .def(py::init<>())
        .def_readwrite("M", &SceneConfig::M)
        .def_readwrite("Nu", &SceneConfig::Nu)
        .def_readwrite("K", &SceneConfig::K)
        .def_readwrite("Nk", &SceneConfig::Nk)
        .def_property(
            "bs_pos", [](const SceneConfig &c) { return point_tuple(c.bs_pos); },
            [](SceneConfig &c, std::pair<double, double> p) { c.bs_pos = tuple_point(p); })
        .def_property(
            "user_pos", [](const SceneConfig &c) { return point_tuple(c.user_pos); },
            [](SceneConfig &c, std::pair<double, double> p) { c.user_pos = tuple_point(p); })
        .def_property(
            "irs_pos",
            [](const SceneConfig &c) {
                py::list out;
                for (auto p : c.irs_pos)
                    out.append(point_tuple(p));
                return out;
            },
            [](SceneConfig &c, const std::vector<std::pair<double, double>> &ps) {
                c.irs_pos.clear();
                for (const auto &p : ps)
                    c.irs_pos.push_back(tuple_point(p));
            })
        .def_readwrite("P_B", &SceneConfig::P_B)
        .def_readwrite("P_I", &SceneConfig::P_I)
        .def_readwrite("per_irs_power_split", &SceneConfig::per_irs_power_split)
        .def_readwrite("sigma_k_sq", &SceneConfig::sigma_k_sq)
        .def_readwrite("sigma_z_sq", &SceneConfig::sigma_z_sq)
        .def_readwrite("pathloss_alpha", &SceneConfig::pathloss_alpha)
        .def_readwrite("pathloss_exp", &SceneConfig::pathloss_exp)
        .def_readwrite("element_spacing", &SceneConfig::element_spacing)
        .def_readwrite("placement_jitter_m", &SceneConfig::placement_jitter_m)
        .def_readwrite("seed", &SceneConfig::seed)
        .def_property_readonly("total_elements", &SceneConfig::total_elements)
        .def_property_readonly("sigma_n_sq", &SceneConfig::sigma_n_sq)
        .def("validate", &SceneConfig::validate)
        .def("__repr__", [](const SceneConfig &c) { return format_config(c); });

    m.def("default_scene", &default_scene, "K"_a, "Nk"_a);
    m.def("dbm_to_watt", &dbm_to_watt, "dbm"_a);
    m.def("watt_to_dbm", &watt_to_dbm, "watt"_a);
    m.def("path_loss", &path_loss, "d"_a, "alpha"_a = 1e-2, "exponent"_a = 2.0);
    m.def("steering_vector", &steering_vector, "n_elements"_a, "spacing"_a, "angle"_a);
    m.def("parse_config", [](const std::string &text) {
        std::istringstream in(text);
        return parse_config(in, "<string>");
    }, "text"_a);
    m.def("load_config", &load_config, "path"_a);
    m.def("format_config", &format_config, "cfg"_a);

    py::class_<ChannelSet>(m, "ChannelSet")
        .def_readonly("H_k", &ChannelSet::H_k)
        .def_readonly("G_k", &ChannelSet::G_k)
        .def_readonly("H", &ChannelSet::H)
        .def_readonly("G", &ChannelSet::G)
        .def_property_readonly("K", &ChannelSet::K)
        .def_property_readonly("M", &ChannelSet::M)
        .def_property_readonly("Nu", &ChannelSet::Nu)
        .def_static("from_blocks", &ChannelSet::from_blocks, "H_blocks"_a, "G_blocks"_a);
    m.def("synthesize_channels", &synthesize_channels, "cfg"_a);

    py::class_<DofReport>(m, "DofReport")
        .def_readonly("bound", &DofReport::bound)
        .def_readonly("rank_H", &DofReport::rank_H)
        .def_readonly("rank_G", &DofReport::rank_G)
        .def_readonly("rank_deficient", &DofReport::rank_deficient);
    m.def("dof_bound", &dof_bound, "cs"_a, "M"_a, "Nu"_a, "K"_a);

    py::class_<BeamformerSolution>(m, "BeamformerSolution")
        .def_readonly("method", &BeamformerSolution::method)
        .def_readonly("V", &BeamformerSolution::V)
        .def_readonly("U", &BeamformerSolution::U)
        .def_readonly("theta", &BeamformerSolution::theta)
        .def_readonly("rho", &BeamformerSolution::rho)
        .def_readonly("stream_power", &BeamformerSolution::stream_power)
        .def("precoder", &BeamformerSolution::precoder)
        .def("stacked_theta", &BeamformerSolution::stacked_theta);

    py::class_<SolverReport>(m, "SolverReport")
        .def_readonly("iterations", &SolverReport::iterations)
        .def_readonly("objective_trace", &SolverReport::objective_trace)
        .def_readonly("initial_objective", &SolverReport::initial_objective)
        .def_readonly("objective", &SolverReport::objective)
        .def_readonly("converged", &SolverReport::converged)
        .def_readonly("nsp_residual", &SolverReport::nsp_residual)
        .def_readonly("zf_residual", &SolverReport::zf_residual)
        .def_readonly("power_residual", &SolverReport::power_residual)
        .def_readonly("bs_power_residual", &SolverReport::bs_power_residual)
        .def_readonly("sinr", &SolverReport::sinr)
        .def_readonly("runtime_s", &SolverReport::runtime_s)
        .def_readonly("diagnostics", &SolverReport::diagnostics);

    py::enum_<WmmseInit>(m, "WmmseInit")
        .value("max_trace", WmmseInit::max_trace)
        .value("random_phase", WmmseInit::random_phase);
    py::class_<WmmseOptions>(m, "WmmseOptions")
        .def(py::init<>())
        .def_readwrite("max_outer", &WmmseOptions::max_outer)
        .def_readwrite("outer_eps", &WmmseOptions::outer_eps)
        .def_readwrite("mm_eps", &WmmseOptions::mm_eps)
        .def_readwrite("mm_max_iter", &WmmseOptions::mm_max_iter)
        .def_readwrite("bisection_rel_tol", &WmmseOptions::bisection_rel_tol)
        .def_readwrite("bisection_max_iter", &WmmseOptions::bisection_max_iter)
        .def_readwrite("init", &WmmseOptions::init)
        .def_readwrite("seed", &WmmseOptions::seed);

    py::enum_<SymbolMode>(m, "SymbolMode")
        .value("fixed", SymbolMode::fixed)
        .value("expected", SymbolMode::expected);

    m.def("solve_nsp_zf_pa", [](const ChannelSet &cs, const SceneConfig &cfg) {
        return solved(solve_nsp_zf_pa(cs, cfg));
    }, "cs"_a, "cfg"_a, "Returns (BeamformerSolution, SolverReport).");
    m.def("solve_wmmse_pc", [](const ChannelSet &cs, const SceneConfig &cfg, const WmmseOptions &o) {
        return solved(solve_wmmse_pc(cs, cfg, o));
    }, "cs"_a, "cfg"_a, "opts"_a = WmmseOptions{}, "Returns (BeamformerSolution, SolverReport).");
    m.def("solve_max_tr_svd", [](const ChannelSet &cs, const SceneConfig &cfg, SymbolMode mode) {
        return solved(solve_max_tr_svd(cs, cfg, mode));
    }, "cs"_a, "cfg"_a, "mode"_a = SymbolMode::fixed, "Returns (BeamformerSolution, SolverReport).");

    py::class_<RateBreakdown>(m, "RateBreakdown")
        .def_readonly("gamma", &RateBreakdown::gamma)
        .def_readonly("rate_streams", &RateBreakdown::rate_streams)
        .def_readonly("rate_det", &RateBreakdown::rate_det)
        .def_readonly("rate_det_nofix", &RateBreakdown::rate_det_nofix)
        .def_readonly("sum_rate", &RateBreakdown::sum_rate)
        .def_readonly("asymptotic_gamma", &RateBreakdown::asymptotic_gamma)
        .def_readonly("asymptotic_rate", &RateBreakdown::asymptotic_rate)
        .def_readonly("gamma0", &RateBreakdown::gamma0)
        .def_readonly("gammaU", &RateBreakdown::gammaU)
        .def_readonly("C1", &RateBreakdown::C1);
    m.def("evaluate_rates", &evaluate_rates, "solution"_a, "cs"_a, "cfg"_a);
    m.def("sum_rate_streams", &sum_rate_streams, "gamma"_a);
    m.def("flops_order", [](Method method, int K, int Nk, int M, int Nu, int L1, int L2) {
        const FlopCount f = flops_order(method, K, Nk, M, Nu, L1, L2);
        return py::make_tuple(f.count, f.expression);
    }, "method"_a, "K"_a, "Nk"_a, "M"_a, "Nu"_a, "L1"_a = 1, "L2"_a = 1);

    py::enum_<SweepAxis>(m, "SweepAxis")
        .value("N_I", SweepAxis::N_I)
        .value("K", SweepAxis::K)
        .value("P_I", SweepAxis::P_I)
        .value("beta", SweepAxis::beta)
        .value("distance", SweepAxis::distance);

    py::class_<ExperimentSpec>(m, "ExperimentSpec")
        .def(py::init<>())
        .def_readwrite("base", &ExperimentSpec::base)
        .def_readwrite("methods", &ExperimentSpec::methods)
        .def_readwrite("axis", &ExperimentSpec::axis)
        .def_readwrite("values", &ExperimentSpec::values)
        .def_readwrite("P_T", &ExperimentSpec::P_T)
        .def_readwrite("repetitions", &ExperimentSpec::repetitions)
        .def_readwrite("seed", &ExperimentSpec::seed)
        .def_readwrite("jobs", &ExperimentSpec::jobs)
        .def_readwrite("timing", &ExperimentSpec::timing)
        .def_readwrite("wmmse", &ExperimentSpec::wmmse)
        .def("validate", &ExperimentSpec::validate);

    py::class_<ResultRow>(m, "ResultRow")
        .def_readonly("method", &ResultRow::method)
        .def_readonly("axis", &ResultRow::axis)
        .def_readonly("axis_value", &ResultRow::axis_value)
        .def_readonly("repetition", &ResultRow::repetition)
        .def_readonly("sum_rate", &ResultRow::sum_rate)
        .def_readonly("rate_det", &ResultRow::rate_det)
        .def_readonly("sinr", &ResultRow::sinr)
        .def_readonly("iterations", &ResultRow::iterations)
        .def_readonly("residual_power", &ResultRow::residual_power)
        .def_readonly("residual_zf", &ResultRow::residual_zf)
        .def_readonly("runtime_s", &ResultRow::runtime_s)
        .def_readonly("seed", &ResultRow::seed)
        .def_readonly("status", &ResultRow::status);

    m.def("run_sweep", &run_sweep, "spec"_a, py::call_guard<py::gil_scoped_release>());
    m.def("format_csv", &format_csv, "rows"_a);
    m.def("write_csv", &write_csv, "rows"_a, "path"_a);
    m.def("convergence_trace", &convergence_trace, "method"_a, "cfg"_a, "wmmse"_a = WmmseOptions{});
}
