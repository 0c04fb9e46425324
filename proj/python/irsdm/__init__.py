# SPDX-License-Identifier: Apache-2.0
#
# irsdm: beamforming simulator for multi-IRS multi-stream links
# Copyright (C) 2026 The irsdm authors
"""Multi-IRS multi-stream beamforming simulator."""

from ._irsdm import *  # noqa: F401,F403
from ._irsdm import Error, Method, SweepAxis

__version__ = "0.1.0"


def solve(method, cs, cfg):
    """Solve with any method by name or enum; returns (solution, report)."""
    if isinstance(method, str):
        method = parse_method(method)  # noqa: F405
    if method == Method.nsp_zf_pa:
        return solve_nsp_zf_pa(cs, cfg)  # noqa: F405
    if method == Method.wmmse_pc:
        return solve_wmmse_pc(cs, cfg)  # noqa: F405
    return solve_max_tr_svd(cs, cfg)  # noqa: F405
