"""CSV and JSON artifact writers shared by the command-line interface.

Floats are serialized with 17 significant digits, which round-trips 64-bit
values exactly, so residuals recomputed from an emitted file reproduce the
in-memory numbers bit for bit.  Files are written atomically (temporary
file in the target directory, then rename).
"""

from __future__ import annotations

import json
import os
import sys
import tempfile
from typing import Iterable

import numpy as np

from .core import SpaceParams
from .curvature import CurvatureSigns
from .equilibria import Equilibrium
from .flow import Trajectory
from .verify import VerifyReport

__all__ = [
    "SCHEMA_VERSION",
    "format_float",
    "write_text",
    "output_record",
    "curve_csv",
    "trajectory_csv",
    "curve_payload",
    "trajectory_payload",
    "classify_payload",
    "equilibria_payload",
    "verify_payload",
    "dump_record",
]

SCHEMA_VERSION = "1"


def format_float(value: float) -> str:
    return format(float(value), ".17g")


def write_text(path: str | None, text: str) -> None:
    """Write text to ``path`` atomically, or to standard output if no path."""
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp_", text=True)
    try:
        with os.fdopen(fd, "w", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _space_dict(params: SpaceParams | None) -> dict:
    if params is None:
        return {}
    space: dict = {"a": params.a}
    if any(v is not None for v in (params.a1, params.a2, params.a3)):
        space["a_i"] = list(params.a_triple)
    if params.dims is not None:
        space["d_i"] = list(params.dims)
    return space


def output_record(payload: dict, params: SpaceParams | None = None) -> dict:
    return {"schema_version": SCHEMA_VERSION, "space": _space_dict(params), "payload": payload}


def dump_record(record: dict) -> str:
    return json.dumps(record, indent=2) + "\n"


def _rows_to_csv(header: Iterable[str], rows: Iterable[Iterable[float]]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_float(v) for v in row))
    return "\n".join(lines) + "\n"


def curve_csv(ts: np.ndarray, points: np.ndarray) -> str:
    rows = ((t, p[0], p[1], p[2]) for t, p in zip(ts, points))
    return _rows_to_csv(("t", "x1", "x2", "x3"), rows)


def trajectory_csv(traj: Trajectory) -> str:
    drift = traj.volume_drift_per_sample()
    rows = (
        (t, s[0], s[1], s[2], d)
        for t, s, d in zip(traj.times, traj.states, drift)
    )
    return _rows_to_csv(("time", "x1", "x2", "x3", "volume_drift"), rows)


def curve_payload(name: str, ts: np.ndarray, points: np.ndarray) -> dict:
    return {
        "kind": "curve_samples",
        "curve": name,
        "t": [float(t) for t in ts],
        "x": [[float(c) for c in p] for p in points],
    }


def trajectory_payload(traj: Trajectory, truncated: bool = False) -> dict:
    return {
        "kind": "trajectory",
        "time": [float(t) for t in traj.times],
        "x": [[float(c) for c in s] for s in traj.states],
        "volume_drift": [float(d) for d in traj.volume_drift_per_sample()],
        "max_volume_drift": float(traj.max_volume_drift),
        "truncated": bool(truncated),
        "events": [
            {"t": e.t, "kind": e.kind, "k": e.k, "x": list(e.m.coords)} for e in traj.events
        ],
    }


def classify_payload(signs: CurvatureSigns) -> dict:
    return {
        "kind": "classify_result",
        "sectional": list(signs.sectional),
        "ricci": list(signs.ricci),
        "sec_positive": signs.sec_positive,
        "ricci_positive": signs.ricci_positive,
        "label": signs.label.value,
    }


def equilibria_payload(points: list[Equilibrium], memberships: list[dict]) -> dict:
    entries = []
    for eq, member in zip(points, memberships):
        entries.append(
            {
                "name": eq.name,
                "x": list(eq.m.coords),
                "restricted_eigenvalues": [[v.real, v.imag] for v in eq.restricted_eigenvalues],
                "kind": eq.kind.value,
                **member,
            }
        )
    return {"kind": "equilibria_report", "equilibria": entries}


def verify_payload(report: VerifyReport) -> dict:
    return {
        "kind": "verify_report",
        "suite": report.suite,
        "a_values": list(report.a_values),
        "seed": report.seed,
        "passed": report.passed,
        "checks": [
            {
                "name": c.name,
                "passed": c.passed,
                "measured": c.measured,
                "threshold": c.threshold,
                "note": c.note,
            }
            for c in report.checks
        ],
    }
