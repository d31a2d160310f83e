"""Adaptive time integration of the reduced system to (near) blowup.

A hand-rolled Dormand-Prince 5(4) pair drives the evolution so that the
stepper can project the mean after every accepted step, watch for the two
blowup signals (sup-norm threshold and step-size collapse), and keep a
cubic-Hermite dense record for the characteristics module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import ConstraintViolationError, NoBlowupEvidenceError
from .grid import GridSpec, Profile
from .lemmas import HypothesisReport, validate_hypotheses
from .reduced import (
    DEFAULT_MEAN_TOLERANCE,
    DiagnosticsRow,
    ReducedState,
    diagnostics_of,
    rhs_values,
    simpson_value,
)

# Dormand-Prince 5(4) tableau. The 7th stage evaluates the RHS at the
# 5th-order solution (FSAL), and B5-B4 gives the embedded error weights.
DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
DP_A = (
    np.array([], dtype=float),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
)
DP_ERR = np.array(
    [
        35 / 384 - 5179 / 57600,
        0.0,
        500 / 1113 - 7571 / 16695,
        125 / 192 - 393 / 640,
        -2187 / 6784 + 92097 / 339200,
        11 / 84 - 187 / 2100,
        -1 / 40,
    ]
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0


class Termination(Enum):
    REACHED_T_MAX = "reached_t_max"
    BLOWUP_DETECTED = "blowup_detected"
    CONSTRAINT_VIOLATION = "constraint_violation"


@dataclass
class SimConfig:
    """Run parameters for one reduced-system simulation."""

    n_nodes: int = 257
    t_max: float = 10.0
    rtol: float = 1e-8
    atol: float = 1e-10
    dt_init: float = 1e-3
    dt_min: float = 1e-12
    blowup_threshold: float = 1e6
    mean_tolerance: float = DEFAULT_MEAN_TOLERANCE
    output_stride: int = 1
    project_mean: bool = True

    def validate(self) -> None:
        if self.n_nodes < 9 or self.n_nodes % 2 == 0:
            raise ValueError(f"n_nodes must be odd and >= 9, got {self.n_nodes}")
        if not (self.dt_min < self.dt_init):
            raise ValueError("dt_min must be smaller than dt_init")
        if self.blowup_threshold <= 0:
            raise ValueError("blowup_threshold must be positive")
        if self.rtol <= 0 or self.atol <= 0:
            raise ValueError("rtol and atol must be positive")
        if self.t_max <= 0:
            raise ValueError("t_max must be positive")
        if self.output_stride < 1:
            raise ValueError("output_stride must be >= 1")
        if self.mean_tolerance <= 0:
            raise ValueError("mean_tolerance must be positive")


@dataclass(frozen=True)
class BlowupEstimate:
    """Result of the reciprocal-linear blowup-time fit."""

    time: float
    correlation: float
    low_confidence: bool
    window: int


@dataclass
class DenseOutput:
    """Per-step record enabling cubic Hermite evaluation between steps."""

    grid: GridSpec
    times: np.ndarray
    states: np.ndarray  # (n_steps+1, n_nodes)
    derivs: np.ndarray  # (n_steps+1, n_nodes)

    @property
    def t0(self) -> float:
        return float(self.times[0])

    @property
    def t1(self) -> float:
        return float(self.times[-1])

    def state_values(self, t: float) -> np.ndarray:
        if not (self.t0 <= t <= self.t1):
            raise ValueError(f"time {t} outside dense range [{self.t0}, {self.t1}]")
        k = int(np.searchsorted(self.times, t, side="right") - 1)
        k = min(max(k, 0), len(self.times) - 2)
        dt = self.times[k + 1] - self.times[k]
        s = (t - self.times[k]) / dt
        h00 = (1.0 + 2.0 * s) * (1.0 - s) ** 2
        h10 = s * (1.0 - s) ** 2
        h01 = s * s * (3.0 - 2.0 * s)
        h11 = s * s * (s - 1.0)
        return (
            h00 * self.states[k]
            + h01 * self.states[k + 1]
            + dt * (h10 * self.derivs[k] + h11 * self.derivs[k + 1])
        )

    def profile(self, t: float) -> Profile:
        return Profile(self.grid, self.state_values(t))


@dataclass
class SimResult:
    """Outcome of simulate(): row series, final state and blowup metadata."""

    rows: list[DiagnosticsRow]
    termination: Termination
    final_state: ReducedState
    estimated_blowup_time: float | None = None
    blowup_estimate: BlowupEstimate | None = None
    blowup_trigger: str | None = None
    hypothesis_report: HypothesisReport | None = None
    dense: DenseOutput | None = None
    wall_series: list[tuple[float, float]] = field(default_factory=list)


def riccati_lower_bound(a0_at_1: float, t: float) -> float:
    """Comparison lower bound 3 a0(1) / (3 - a0(1) t) on the top-wall value."""
    if a0_at_1 <= 0.0:
        raise ValueError(f"bound requires a positive initial wall value, got {a0_at_1}")
    denom = 3.0 - a0_at_1 * t
    if denom <= 0.0:
        raise ValueError(
            f"t={t} is at or past the bound's own blowup time {3.0 / a0_at_1}"
        )
    return 3.0 * a0_at_1 / denom


def estimate_blowup_time(
    series, fit_window: int = 20, min_points: int = 8, r_threshold: float = 0.999
) -> BlowupEstimate:
    """Extrapolate the blowup time from (t, wall value) pairs.

    Fits 1/value against t by least squares over the trailing window and
    returns the zero crossing. The reciprocal of a bounded-from-below
    Riccati growth is close to linear near the singularity regardless of
    the unknown rate constant; a correlation below r_threshold marks the
    estimate low-confidence instead of rejecting it.
    """
    pairs = [(float(t), float(v)) for t, v in series]
    if len(pairs) < min_points:
        raise NoBlowupEvidenceError(
            f"need at least {min_points} points, got {len(pairs)}"
        )
    window = min(fit_window, len(pairs))
    if window < min_points:
        raise NoBlowupEvidenceError("fit window shorter than the required point count")
    tail = pairs[-window:]
    t = np.array([p[0] for p in tail])
    v = np.array([p[1] for p in tail])
    if np.any(v <= 0.0):
        raise NoBlowupEvidenceError("wall values in the fit window are not all positive")
    if np.any(np.diff(v) <= 0.0):
        raise NoBlowupEvidenceError("wall values are not increasing over the fit window")
    z = 1.0 / v
    slope, intercept = np.polyfit(t, z, 1)
    if slope >= 0.0:
        raise NoBlowupEvidenceError("reciprocal wall value is not decreasing")
    r = float(np.corrcoef(t, z)[0, 1])
    return BlowupEstimate(
        time=float(-intercept / slope),
        correlation=r,
        low_confidence=abs(r) < r_threshold,
        window=window,
    )


def _error_norm(err: np.ndarray, y0: np.ndarray, y1: np.ndarray, rtol: float, atol: float) -> float:
    scale = atol + rtol * np.maximum(np.abs(y0), np.abs(y1))
    return float(np.sqrt(np.mean((err / scale) ** 2)))


def dp54_step(f, t: float, y: np.ndarray, fy: np.ndarray, dt: float):
    """One embedded 5(4) step; returns (y_new, f_new, err_vector)."""
    k = [fy]
    yi = y
    for i in range(1, 7):
        yi = y + dt * (DP_A[i] @ np.stack(k[: i]) if i > 1 else DP_A[1][0] * k[0])
        k.append(f(t + DP_C[i] * dt, yi))
    y_new = yi  # stage 7 input is the 5th-order solution
    err = dt * (DP_ERR @ np.stack(k))
    return y_new, k[6], err


def integrate_adaptive(
    f,
    t0: float,
    t1: float,
    y0: np.ndarray,
    *,
    rtol: float = 1e-8,
    atol: float = 1e-10,
    dt_init: float | None = None,
    dt_min: float = 1e-14,
    callback=None,
):
    """Generic error-controlled drive of dy/dt = f(t, y) from t0 to t1.

    Returns (times, states) at the accepted steps, endpoints included.
    callback(t, y), when given, runs after every accepted step. Used by the
    characteristic tracers; the reduced-system loop has its own bespoke
    driver because of projection and blowup handling.
    """
    if t1 <= t0:
        raise ValueError("integration window must have t1 > t0")
    y = np.array(y0, dtype=float)
    t = t0
    fy = np.asarray(f(t, y), dtype=float)
    dt = dt_init if dt_init is not None else (t1 - t0) / 100.0
    times = [t]
    states = [y.copy()]
    if callback is not None:
        callback(t, y)
    t_close = 1e-14 * (t1 - t0)
    while t < t1 - t_close:
        dt = min(dt, t1 - t)
        y_new, f_new, err = dp54_step(f, t, y, fy, dt)
        if not (np.all(np.isfinite(y_new)) and np.all(np.isfinite(err))):
            raise RuntimeError(f"non-finite state while integrating at t={t}")
        norm = _error_norm(err, y, y_new, rtol, atol)
        if norm <= 1.0:
            t = t + dt
            y = y_new
            fy = f_new
            times.append(t)
            states.append(y.copy())
            if callback is not None:
                callback(t, y)
            factor = _SAFETY * norm ** -0.2 if norm > 0.0 else _MAX_FACTOR
            dt = dt * min(_MAX_FACTOR, max(_MIN_FACTOR, factor))
        else:
            dt = dt * max(_MIN_FACTOR, _SAFETY * norm ** -0.2)
        if dt < dt_min:
            raise RuntimeError(f"step size collapsed below {dt_min} at t={t}")
    return np.array(times), np.array(states)


def simulate(config: SimConfig, a0: Profile) -> SimResult:
    """Advance the reduced system until t_max, blowup, or a constraint break.

    Blowup is declared on either signal: the sup-norm passing
    blowup_threshold, or the error controller collapsing the step below
    dt_min; the trigger is recorded. With project_mean on, the constant
    shift restoring zero mean is applied after every accepted step (it
    leaves all y-derivatives untouched).
    """
    config.validate()
    grid = a0.grid
    if grid.n_nodes != config.n_nodes:
        raise ValueError(
            f"profile grid has {grid.n_nodes} nodes but config expects {config.n_nodes}"
        )
    h = grid.spacing
    a = a0.values.copy()
    mean0 = simpson_value(a, h)
    if abs(mean0) > config.mean_tolerance:
        raise ConstraintViolationError(
            f"initial profile mean {mean0:.3e} exceeds tolerance {config.mean_tolerance:.1e}"
        )
    if config.project_mean:
        a = a - mean0

    report = validate_hypotheses(Profile(grid, a), mean_tolerance=config.mean_tolerance)
    bound_ok = report.all_pass and report.a0_at_1 > 0.0
    a0_at_1 = report.a0_at_1
    t_bound = 3.0 / a0_at_1 if bound_ok else np.inf

    def frhs(_t: float, y: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore", invalid="ignore"):
            return rhs_values(grid, y)

    def bound_at(t: float) -> float | None:
        if not bound_ok or t >= t_bound:
            return None
        return riccati_lower_bound(a0_at_1, t)

    def make_row(t: float, y: np.ndarray, dt_acc: float) -> DiagnosticsRow:
        row = diagnostics_of(ReducedState(t, Profile(grid, y)))
        row.riccati_bound = bound_at(t)
        row.dt_accepted = dt_acc
        return row

    t = 0.0
    fa = frhs(t, a)
    rows = [make_row(t, a, 0.0)]
    times = [t]
    states = [a.copy()]
    derivs = [fa.copy()]
    wall_series = [(t, float(a[-1]))]

    termination = Termination.REACHED_T_MAX
    trigger: str | None = None
    dt = min(config.dt_init, config.t_max)
    accepted = 0
    last_recorded = 0

    while True:
        dt = min(dt, config.t_max - t)
        y_new, f_new, err = dp54_step(frhs, t, a, fa, dt)
        if not (np.all(np.isfinite(y_new)) and np.all(np.isfinite(err))):
            termination = Termination.CONSTRAINT_VIOLATION
            break
        norm = _error_norm(err, a, y_new, config.rtol, config.atol)
        if norm <= 1.0:
            t = t + dt
            a = y_new
            if config.project_mean:
                shift = simpson_value(a, h)
                if shift != 0.0:
                    a = a - shift
                    f_new = frhs(t, a)
            fa = f_new
            accepted += 1
            times.append(t)
            states.append(a.copy())
            derivs.append(fa.copy())
            wall_series.append((t, float(a[-1])))
            if accepted - last_recorded >= config.output_stride:
                rows.append(make_row(t, a, dt))
                last_recorded = accepted
            sup = float(np.max(np.abs(a)))
            if sup > config.blowup_threshold:
                termination = Termination.BLOWUP_DETECTED
                trigger = "sup_norm"
                break
            if t >= config.t_max * (1.0 - 1e-14):
                t = config.t_max
                termination = Termination.REACHED_T_MAX
                break
            if dt < config.dt_min:
                # the cap above did not bind, so this is genuine collapse
                termination = Termination.BLOWUP_DETECTED
                trigger = "dt_collapse"
                break
            factor = _SAFETY * norm ** -0.2 if norm > 0.0 else _MAX_FACTOR
            dt = dt * min(_MAX_FACTOR, max(_MIN_FACTOR, factor))
        else:
            dt = dt * max(_MIN_FACTOR, _SAFETY * norm ** -0.2)
            if dt < config.dt_min:
                termination = Termination.BLOWUP_DETECTED
                trigger = "dt_collapse"
                break

    if last_recorded != accepted:
        rows.append(make_row(t, a, times[-1] - times[-2] if accepted else 0.0))

    estimate: BlowupEstimate | None = None
    t_est: float | None = None
    if termination is Termination.BLOWUP_DETECTED:
        try:
            estimate = estimate_blowup_time(wall_series)
        except NoBlowupEvidenceError:
            estimate = BlowupEstimate(time=t, correlation=0.0, low_confidence=True, window=0)
        t_est = estimate.time

    dense = DenseOutput(
        grid=grid,
        times=np.array(times),
        states=np.array(states),
        derivs=np.array(derivs),
    )
    return SimResult(
        rows=rows,
        termination=termination,
        final_state=ReducedState(t, Profile(grid, a)),
        estimated_blowup_time=t_est,
        blowup_estimate=estimate,
        blowup_trigger=trigger,
        hypothesis_report=report,
        dense=dense,
        wall_series=wall_series,
    )
