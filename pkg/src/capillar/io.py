"""Bit-stable text renderings of snapshots, monitor series and reports.

All floats are written with Python's shortest round-trip repr so identical
inputs produce byte-identical files.
"""

from __future__ import annotations

import json

import numpy as np

from .model import ModelParams, PrimCell, evaluate_cells
from .solver1d import Grid1D, Monitors

SNAPSHOT_COLUMNS = (
    "x", "rho", "u", "y", "alpha", "a_i", "w", "n", "s", "s1", "s2",
    "p", "p_hat", "E",
)
MONITOR_COLUMNS = ("t", "mass", "y_mass", "momentum", "energy", "ai_si",
                   "clamp_count")


def fmt(v) -> str:
    """Shortest round-trip decimal of a float (integers stay integers)."""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return repr(float(v))


def snapshot_csv(cells: PrimCell, grid: Grid1D, params: ModelParams) -> str:
    """Render one snapshot; one row per cell, fixed column order."""
    ev = evaluate_cells(cells, params)
    cols = {
        "x": grid.centers(),
        "rho": cells.rho, "u": cells.u, "y": cells.y, "alpha": cells.alpha,
        "a_i": cells.a_i, "w": cells.w, "n": cells.n,
        "s": cells.s, "s1": cells.s1, "s2": cells.s2,
        "p": ev.p, "p_hat": ev.p_hat, "E": ev.E,
    }
    lines = [",".join(SNAPSHOT_COLUMNS)]
    data = [np.broadcast_to(np.asarray(cols[c], dtype=float), (grid.n_cells,))
            for c in SNAPSHOT_COLUMNS]
    for j in range(grid.n_cells):
        lines.append(",".join(fmt(col[j]) for col in data))
    return "\n".join(lines) + "\n"


def monitors_csv(rows: list[tuple[float, Monitors, int]]) -> str:
    """Render the monitor time series."""
    lines = [",".join(MONITOR_COLUMNS)]
    for t, mon, clamps in rows:
        lines.append(",".join([
            fmt(t),
            fmt(mon.total_mass),
            fmt(mon.total_y_mass),
            fmt(mon.total_momentum),
            fmt(mon.total_energy),
            fmt(mon.interfacial_entropy_integral),
            str(int(clamps)),
        ]))
    return "\n".join(lines) + "\n"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    return obj


def report_json(payload: dict) -> str:
    """Deterministic, human-diffable JSON rendering of a report dict."""
    return json.dumps(_jsonable(payload), indent=2) + "\n"
