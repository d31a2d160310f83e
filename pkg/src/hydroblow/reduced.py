"""Right-hand side of the reduced wall-strain evolution and its diagnostics.

The evolving unknown is the profile a(y) of the negative streamwise
velocity gradient on the frozen line, which obeys

    a_t + v a_y = a^2 - 2 * int_0^1 a^2 dy,      v(y) = int_0^y a,

with v vanishing at both walls because a has zero mean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstraintViolationError
from .grid import (
    GridSpec,
    Profile,
    cumulative_values,
    derivative_y,
    diff_uniform,
    simpson_value,
)

#: Default tolerance on |int a| before drift is treated as a bug.
DEFAULT_MEAN_TOLERANCE = 1e-8

#: Nodes skipped at each wall when taking the interior curvature minimum;
#: the one-sided stencils used there carry larger error constants.
BOUNDARY_EXCLUSION = 2


@dataclass(frozen=True)
class ReducedState:
    """Snapshot of the reduced system: time plus the strain profile.

    The zero-mean invariant is enforced where states enter the system
    (simulate's precondition) and monitored per-row afterwards, so this
    container stays a dumb value.
    """

    time: float
    a: Profile


@dataclass
class DiagnosticsRow:
    """One monitoring row; field order matches the CSV schema."""

    t: float
    a_at_1: float
    mean_a: float
    int_a_sq: float
    int_a_cubed: float
    ay_at_0: float
    min_ayy_interior: float
    pxx_at_0: float
    riccati_bound: float | None = None
    dt_accepted: float = 0.0


def velocity_values(a_values: np.ndarray, h: float) -> np.ndarray:
    """Wall-normal velocity samples from the strain samples (no drift guard)."""
    return cumulative_values(a_values, h)


def rhs_values(grid: GridSpec, a_values: np.ndarray) -> np.ndarray:
    """Unchecked array kernel for the evolution right-hand side.

    The raw stencil expression -v a_y + a^2 - 2 int a^2 carries an O(h^4)
    quadrature defect in its mean (the discrete operators do not satisfy
    summation by parts exactly), which would accumulate as constraint
    drift. Its own discrete mean is therefore subtracted: a constant shift
    of truncation-error size that keeps the flow on the zero-mean manifold
    to rounding and leaves all y-derivatives untouched.
    """
    h = grid.spacing
    v = cumulative_values(a_values, h)
    ay = diff_uniform(a_values, h, 1)
    sq = a_values * a_values
    raw = -v * ay + sq - 2.0 * simpson_value(sq, h)
    return raw - simpson_value(raw, h)


def reconstruct_velocity(a: Profile, mean_tolerance: float = DEFAULT_MEAN_TOLERANCE) -> Profile:
    """Velocity profile v with v(0)=0 exactly; v(1) must sit near zero.

    A wall value beyond 10x the mean tolerance means the zero-mean
    constraint has drifted, which in exact arithmetic cannot happen: it
    signals a defect upstream, not physics.
    """
    v = cumulative_values(a.values, a.grid.spacing)
    if abs(v[-1]) > 10.0 * mean_tolerance:
        raise ConstraintViolationError(
            f"velocity at the top wall is {v[-1]:.3e}; zero-mean constraint has drifted"
        )
    return Profile(a.grid, v)


def rhs(a: Profile, mean_tolerance: float = DEFAULT_MEAN_TOLERANCE) -> Profile:
    """Evolution right-hand side -v a_y + a^2 - 2 int a^2 as a Profile."""
    reconstruct_velocity(a, mean_tolerance)
    return Profile(a.grid, rhs_values(a.grid, a.values))


def pressure_curvature(a: Profile) -> float:
    """Second x-derivative of the pressure on the frozen line: -2 int a^2."""
    sq = a.values * a.values
    return -2.0 * simpson_value(sq, a.grid.spacing)


def interior_min_curvature(a: Profile) -> float:
    """Minimum of a_yy over nodes away from the walls (see BOUNDARY_EXCLUSION)."""
    d2 = derivative_y(a, 2)
    k = BOUNDARY_EXCLUSION
    return float(np.min(d2.values[k:-k]))


def diagnostics_of(state: ReducedState) -> DiagnosticsRow:
    """Assemble the monitoring quantities for one state."""
    a = state.a
    h = a.grid.spacing
    vals = a.values
    sq = vals * vals
    ay = diff_uniform(vals, h, 1)
    return DiagnosticsRow(
        t=state.time,
        a_at_1=float(vals[-1]),
        mean_a=simpson_value(vals, h),
        int_a_sq=simpson_value(sq, h),
        int_a_cubed=simpson_value(sq * vals, h),
        ay_at_0=float(ay[0]),
        min_ayy_interior=interior_min_curvature(a),
        pxx_at_0=-2.0 * simpson_value(sq, h),
    )
