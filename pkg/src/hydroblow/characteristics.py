"""Characteristic tracing through a completed reduced-system run.

A trajectory Y(t) follows dY/dt = v(t, Y), with the velocity rebuilt from
the dense state record at every stage time and interpolated in y at 4th
order (matching the integrator's order, so monotonicity checks along the
path are not polluted by interpolation error). The curvature a_yy sampled
along every such path is non-decreasing while the run stays resolved;
that is the mechanism that keeps the strain profile convex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InterpolationFailureError
from .grid import cubic_interp_uniform, cumulative_values, diff_uniform
from .integrator import SimResult, integrate_adaptive

#: Relative slack when asserting monotonicity of curvature along a path.
DEFAULT_PATH_TOLERANCE = 1e-4

#: How far a path may poke outside [0,1] before it is treated as failure.
WALL_SLACK = 1e-9


@dataclass(frozen=True)
class CharacteristicPath:
    """Time-sampled trajectory with the curvature recorded along it."""

    y0: float
    times: np.ndarray
    y_values: np.ndarray
    a_yy_along: np.ndarray

    def monotone_within(self, tolerance: float = DEFAULT_PATH_TOLERANCE) -> bool:
        """True when a_yy along the path never drops by more than the
        relative tolerance between consecutive samples."""
        a = self.a_yy_along
        slack = tolerance * np.maximum(np.abs(a[:-1]), np.abs(a[1:]))
        return bool(np.all(np.diff(a) >= -slack))


def trace_reduced_characteristic(
    sim: SimResult,
    y0: float,
    *,
    t_end: float | None = None,
    rtol: float = 1e-8,
    atol: float = 1e-10,
) -> CharacteristicPath:
    """Integrate one trajectory of the run's velocity field from (0, y0).

    Walls are invariant (the velocity vanishes there), so trajectories
    cannot leave [0,1]; drifting beyond WALL_SLACK means the run is
    under-resolved at the requested times and raises.
    """
    if not 0.0 <= y0 <= 1.0:
        raise ValueError(f"starting point y0={y0} outside [0,1]")
    if sim.dense is None:
        raise ValueError("simulation result carries no dense record")
    dense = sim.dense
    t1 = dense.t1 if t_end is None else float(t_end)
    if not (dense.t0 < t1 <= dense.t1):
        raise ValueError(f"t_end={t1} outside the dense range ({dense.t0}, {dense.t1}]")
    grid = dense.grid
    h = grid.spacing

    def velocity(t: float, y: np.ndarray) -> np.ndarray:
        yy = float(y[0])
        if yy < -WALL_SLACK or yy > 1.0 + WALL_SLACK:
            raise InterpolationFailureError(
                f"trajectory left [0,1] (y={yy}) at t={t}; run is under-resolved"
            )
        yy = min(max(yy, 0.0), 1.0)
        v = cumulative_values(dense.state_values(t), h)
        return np.array([cubic_interp_uniform(grid.nodes, v, yy)])

    times, states = integrate_adaptive(
        velocity, dense.t0, t1, np.array([y0]), rtol=rtol, atol=atol
    )
    ys = states[:, 0]
    if np.any(ys < -WALL_SLACK) or np.any(ys > 1.0 + WALL_SLACK):
        raise InterpolationFailureError("traced path left [0,1] beyond rounding slack")
    ys_clipped = np.clip(ys, 0.0, 1.0)
    along = np.empty_like(times)
    for i, (t, yy) in enumerate(zip(times, ys_clipped)):
        curv = diff_uniform(dense.state_values(float(t)), h, 2)
        along[i] = cubic_interp_uniform(grid.nodes, curv, float(yy))
    return CharacteristicPath(y0=y0, times=times, y_values=ys_clipped, a_yy_along=along)
