# SPDX-License-Identifier: Apache-2.0
#
# irsdm: beamforming simulator for multi-IRS multi-stream links
# Copyright (C) 2026 The irsdm authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

import math

import numpy as np
import pytest

import irsdm


@pytest.fixture(scope="module")
def scene():
    cfg = irsdm.default_scene(4, 16)
    return cfg, irsdm.synthesize_channels(cfg)


def test_scene_and_channels(scene):
    cfg, cs = scene
    assert cfg.total_elements == 64
    assert cs.H.shape == (64, 8)
    assert cs.G.shape == (64, 8)
    assert np.linalg.matrix_rank(cs.H) == 4
    assert irsdm.dbm_to_watt(30.0) == pytest.approx(1.0)
    assert irsdm.path_loss(10.0) == pytest.approx(1e-4)
    a = irsdm.steering_vector(4, 0.5, math.pi / 6)
    assert np.allclose(np.abs(a), 1.0)


def test_solvers_and_rates(scene):
    cfg, cs = scene
    rates = {}
    for name in ("nsp-zf-pa", "wmmse-pc", "max-tr-svd"):
        sol, rep = irsdm.solve(name, cs, cfg)
        assert sol.V.shape == (8, 4)
        assert len(sol.theta) == 4
        assert rep.power_residual < 1e-8
        rb = irsdm.evaluate_rates(sol, cs, cfg)
        assert rb.rate_det <= rb.rate_det_nofix + 1e-9
        rates[name] = rb.sum_rate
    assert rates["wmmse-pc"] > rates["nsp-zf-pa"] > rates["max-tr-svd"]

    sol, rep = irsdm.solve_nsp_zf_pa(cs, cfg)
    assert rep.zf_residual < 1e-10
    assert irsdm.sum_rate_streams(rep.sinr) == pytest.approx(rep.objective)


def test_wmmse_options(scene):
    cfg, cs = scene
    opts = irsdm.WmmseOptions()
    opts.init = irsdm.WmmseInit.random_phase
    opts.max_outer = 5
    _, rep = irsdm.solve_wmmse_pc(cs, cfg, opts)
    assert rep.iterations <= 5
    assert len(rep.objective_trace) == rep.iterations


def test_config_round_trip():
    cfg = irsdm.parse_config("K = 2\nNk = 8\nP_I = 20 dBm\n")
    assert cfg.K == 2
    assert cfg.P_I == pytest.approx(0.1)
    again = irsdm.parse_config(irsdm.format_config(cfg))
    assert irsdm.format_config(again) == irsdm.format_config(cfg)


def test_errors_carry_kind():
    with pytest.raises(irsdm.Error) as info:
        irsdm.parse_config("bogus = 1\n")
    assert info.value.args[0] == "config"
    cfg = irsdm.default_scene(1, 4)
    cfg.irs_pos = [(0.0, 0.0)]
    with pytest.raises(irsdm.Error) as info:
        irsdm.synthesize_channels(cfg)
    assert info.value.args[0] == "domain"


def test_sweep_and_csv(tmp_path):
    spec = irsdm.ExperimentSpec()
    spec.base = irsdm.default_scene(4, 16)
    spec.axis = irsdm.SweepAxis.P_I
    spec.values = [0.04]
    rows = irsdm.run_sweep(spec)
    assert len(rows) == 3
    assert all(r.status == "ok" for r in rows)
    path = tmp_path / "rows.csv"
    irsdm.write_csv(rows, str(path))
    text = path.read_text()
    assert text == irsdm.format_csv(rows)
    assert len(text.splitlines()) == 4
    assert irsdm.format_csv(irsdm.run_sweep(spec)) == text


def test_trace_and_flops():
    cfg = irsdm.default_scene(4, 16)
    trace = irsdm.convergence_trace(irsdm.Method.wmmse_pc, cfg)
    values = [v for _, v in trace]
    assert 1 <= len(values) <= 200
    assert all(b >= a - 1e-7 for a, b in zip(values, values[1:]))
    assert len(irsdm.convergence_trace(irsdm.Method.nsp_zf_pa, cfg)) == 1
    count, _ = irsdm.flops_order(irsdm.Method.max_tr_svd, 4, 16, 8, 8, 1, 1)
    assert count == 299008
