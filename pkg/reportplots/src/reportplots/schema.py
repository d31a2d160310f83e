"""Readers for the simulator's CSV outputs, with strict header validation.

The producing CLI pins its column orders; a renderer must refuse anything
else loudly (and show the diff) rather than guess.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

DIAGNOSTICS_COLUMNS = (
    "t",
    "a_at_1",
    "mean_a",
    "int_a_sq",
    "int_a_cubed",
    "ay_at_0",
    "min_ayy_interior",
    "pxx_at_0",
    "riccati_bound",
    "dt_accepted",
)
SWEEP_COLUMNS = ("param", "a0_at_1", "T_est", "paper_bound", "ratio")
PATH_COLUMNS = ("t", "Y", "a_yy")
PROFILES_COLUMNS = ("t", "y", "a")


class SchemaError(ValueError):
    """Input file does not carry the documented header or has no rows."""


def _column_diff(expected, got) -> str:
    missing = [c for c in expected if c not in got]
    unexpected = [c for c in got if c not in expected]
    parts = [f"expected columns: {','.join(expected)}", f"found columns:    {','.join(got)}"]
    if missing:
        parts.append(f"missing:    {','.join(missing)}")
    if unexpected:
        parts.append(f"unexpected: {','.join(unexpected)}")
    if not missing and not unexpected:
        parts.append("(same names, wrong order)")
    return "\n".join(parts)


def _read_rows(path: str | Path, expected) -> list[dict]:
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise SchemaError(f"{path}: file is empty") from None
            if tuple(header) != tuple(expected):
                raise SchemaError(f"{path}: header mismatch\n{_column_diff(expected, header)}")
            rows = [dict(zip(header, row)) for row in reader if row]
    except OSError as exc:
        raise SchemaError(f"{path}: {exc}") from exc
    if not rows:
        raise SchemaError(f"{path}: header only, no data rows")
    return rows


def _floats(rows: list[dict], key: str) -> np.ndarray:
    return np.array([float(r[key]) for r in rows])


@dataclass(frozen=True)
class DiagnosticsTable:
    t: np.ndarray
    a_at_1: np.ndarray
    int_a_sq: np.ndarray
    int_a_cubed: np.ndarray
    riccati_bound: np.ndarray  # NaN where the producer left the field empty


def read_diagnostics(path: str | Path) -> DiagnosticsTable:
    rows = _read_rows(path, DIAGNOSTICS_COLUMNS)
    bound = np.array(
        [float(r["riccati_bound"]) if r["riccati_bound"] != "" else np.nan for r in rows]
    )
    return DiagnosticsTable(
        t=_floats(rows, "t"),
        a_at_1=_floats(rows, "a_at_1"),
        int_a_sq=_floats(rows, "int_a_sq"),
        int_a_cubed=_floats(rows, "int_a_cubed"),
        riccati_bound=bound,
    )


@dataclass(frozen=True)
class SweepTable:
    param: np.ndarray
    t_est: np.ndarray
    paper_bound: np.ndarray
    ratio: np.ndarray


def read_sweep(path: str | Path) -> SweepTable:
    rows = _read_rows(path, SWEEP_COLUMNS)
    return SweepTable(
        param=_floats(rows, "param"),
        t_est=_floats(rows, "T_est"),
        paper_bound=_floats(rows, "paper_bound"),
        ratio=_floats(rows, "ratio"),
    )


@dataclass(frozen=True)
class PathTable:
    label: str
    t: np.ndarray
    y: np.ndarray
    a_yy: np.ndarray


def read_path(path: str | Path) -> PathTable:
    rows = _read_rows(path, PATH_COLUMNS)
    return PathTable(
        label=Path(path).stem,
        t=_floats(rows, "t"),
        y=_floats(rows, "Y"),
        a_yy=_floats(rows, "a_yy"),
    )


@dataclass(frozen=True)
class ProfilesTable:
    times: np.ndarray  # (n_snapshots,)
    y: np.ndarray  # (n_nodes,)
    values: np.ndarray  # (n_snapshots, n_nodes)


def read_profiles(path: str | Path) -> ProfilesTable:
    rows = _read_rows(path, PROFILES_COLUMNS)
    t = _floats(rows, "t")
    y = _floats(rows, "y")
    a = _floats(rows, "a")
    times, starts = np.unique(t, return_index=True)
    order = np.argsort(starts)
    times = times[order]
    snapshots = []
    y_ref = None
    for tv in times:
        mask = t == tv
        if y_ref is None:
            y_ref = y[mask]
        elif y[mask].shape != y_ref.shape or np.any(y[mask] != y_ref):
            raise SchemaError(f"{path}: snapshots sample different y grids")
        snapshots.append(a[mask])
    return ProfilesTable(times=times, y=y_ref, values=np.vstack(snapshots))
