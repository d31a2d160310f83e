"""Sampled 2-D channel fields, the Galilean frame change, and residual checks.

Fields live on a uniform (t, x, y) box with the pressure independent of y
and the wall-normal velocity vanishing on both walls. The frame change

    u~ = u - g'(t),   x~ = x - g(t),   p~ = p + x g''(t),   v, t, y fixed

maps solutions of the channel system to solutions whenever g(0)=g'(0)=0,
and pins a line of constant horizontal velocity to x~=0 when g is chosen
as that line's trajectory. No general 2-D solver exists here: the checks
run on manufactured closed-form solutions (shear flows, their transforms,
and the linear-in-x embedding of a reduced run).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import Callable

import numpy as np

from .errors import OutOfDomainError
from .grid import cubic_interp_uniform, cumulative_values, diff_uniform, simpson_value
from .integrator import SimResult, integrate_adaptive

#: Uniform bound the shift's first two derivatives must respect; a
#: validation guard mirroring the finiteness hypothesis, not physics.
DEFAULT_M_BOUND = 10.0

#: Default starting heights for the constant-velocity-line spread check.
DEFAULT_Y_LIST = (0.1, 0.3, 0.5, 0.7, 0.9)


def _check_uniform(name: str, nodes: np.ndarray, min_count: int) -> float:
    nodes = np.asarray(nodes, dtype=float)
    if nodes.ndim != 1 or nodes.shape[0] < min_count:
        raise ValueError(f"{name} grid needs at least {min_count} nodes")
    d = np.diff(nodes)
    h = (nodes[-1] - nodes[0]) / (nodes.shape[0] - 1)
    if np.any(d <= 0) or np.max(np.abs(d - h)) > 1e-12 * max(abs(h), 1.0):
        raise ValueError(f"{name} grid must be uniformly spaced and increasing")
    return h


@dataclass(frozen=True, eq=False)
class Field2D:
    """Velocity and pressure samples on a uniform space-time box.

    u, v have shape (nt, nx, ny); p has shape (nt, nx) since the pressure
    carries no y-dependence in this model.
    """

    t_nodes: np.ndarray
    x_nodes: np.ndarray
    y_nodes: np.ndarray
    u: np.ndarray
    v: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        ht = _check_uniform("t", self.t_nodes, 5)
        hx = _check_uniform("x", self.x_nodes, 5)
        hy = _check_uniform("y", self.y_nodes, 5)
        if self.y_nodes[0] != 0.0 or self.y_nodes[-1] != 1.0:
            raise ValueError("y grid must span exactly [0,1]")
        shape = (self.t_nodes.shape[0], self.x_nodes.shape[0], self.y_nodes.shape[0])
        if self.u.shape != shape or self.v.shape != shape:
            raise ValueError(f"u and v must have shape {shape}")
        if self.p.shape != shape[:2]:
            raise ValueError(f"p must have shape {shape[:2]}")
        if np.max(np.abs(self.v[:, :, 0])) > 1e-14 or np.max(np.abs(self.v[:, :, -1])) > 1e-14:
            raise ValueError("wall-normal velocity must vanish at y=0 and y=1")
        for arr in (self.u, self.v, self.p):
            if not np.all(np.isfinite(arr)):
                raise ValueError("field samples must be finite")
        object.__setattr__(self, "_ht", ht)
        object.__setattr__(self, "_hx", hx)
        object.__setattr__(self, "_hy", hy)

    @property
    def spacings(self) -> tuple[float, float, float]:
        return self._ht, self._hx, self._hy


@dataclass(frozen=True)
class GalileanShift:
    """Trajectory shift g(t) with its first two derivatives.

    g(0)=0 and g'(0)=0 are required exactly; both derivatives must stay
    within m_bound over any time range the shift is applied to.
    """

    g: Callable[[float], float]
    dg: Callable[[float], float]
    d2g: Callable[[float], float]
    m_bound: float = DEFAULT_M_BOUND

    def __post_init__(self):
        if float(self.g(0.0)) != 0.0 or float(self.dg(0.0)) != 0.0:
            raise ValueError("shift must satisfy g(0)=0 and g'(0)=0 exactly")

    def check_bounds(self, t_nodes: np.ndarray) -> None:
        for t in np.asarray(t_nodes, dtype=float):
            if abs(self.dg(t)) > self.m_bound or abs(self.d2g(t)) > self.m_bound:
                raise ValueError(
                    f"shift derivatives exceed the bound {self.m_bound} at t={t}"
                )

    def inverse(self) -> "GalileanShift":
        """Shift undoing this one (pressure re-gains a time-only gauge)."""
        return GalileanShift(
            g=lambda t: -self.g(t),
            dg=lambda t: -self.dg(t),
            d2g=lambda t: -self.d2g(t),
            m_bound=self.m_bound,
        )


def galilean_transform(field: Field2D, shift: GalileanShift) -> Field2D:
    """Resample the field in the moving frame defined by the shift.

    The moving x grid keeps the source lattice but is trimmed to the nodes
    whose shifted queries x + g(t) stay inside the stored range for every
    stored time; node-aligned queries are copied bitwise, so a zero shift
    is the identity on the full grid. A shift too large for the stored box
    (fewer than 5 surviving columns) raises.
    """
    shift.check_bounds(field.t_nodes)
    x = field.x_nodes
    gs = np.array([shift.g(float(t)) for t in field.t_nodes])
    lo = x[0] - float(np.min(gs))
    hi = x[-1] - float(np.max(gs))
    keep = np.nonzero((x >= lo - 1e-12) & (x <= hi + 1e-12))[0]
    if keep.shape[0] < 5:
        raise OutOfDomainError(
            "shifted samples leave the stored x range; too little overlap remains"
        )
    x_out = x[keep[0] : keep[-1] + 1]
    nt, ny = field.t_nodes.shape[0], field.y_nodes.shape[0]
    u_new = np.empty((nt, x_out.shape[0], ny))
    v_new = np.empty_like(u_new)
    p_new = np.empty((nt, x_out.shape[0]))
    for it, t in enumerate(field.t_nodes):
        t = float(t)
        xq = x_out + shift.g(t)
        dg = shift.dg(t)
        d2g = shift.d2g(t)
        for iy in range(ny):
            u_new[it, :, iy] = cubic_interp_uniform(x, field.u[it, :, iy], xq) - dg
            v_new[it, :, iy] = cubic_interp_uniform(x, field.v[it, :, iy], xq)
        p_new[it, :] = cubic_interp_uniform(x, field.p[it, :], xq) + xq * d2g
    return Field2D(field.t_nodes, x_out, field.y_nodes, u_new, v_new, p_new)


def hydrostatic_residual(field: Field2D) -> tuple[float, float]:
    """Max-norm residuals of the momentum balance and the divergence.

    Returns (|u_t + u u_x + v u_y + p_x|_max, |u_x + v_y|_max) with every
    derivative taken by the 4th-order stencils on the sample grids.
    """
    ht, hx, hy = field.spacings
    u_t = diff_uniform(field.u, ht, 1, axis=0)
    u_x = diff_uniform(field.u, hx, 1, axis=1)
    u_y = diff_uniform(field.u, hy, 1, axis=2)
    v_y = diff_uniform(field.v, hy, 1, axis=2)
    p_x = diff_uniform(field.p, hx, 1, axis=1)
    momentum = u_t + field.u * u_x + field.v * u_y + p_x[:, :, None]
    divergence = u_x + v_y
    return float(np.max(np.abs(momentum))), float(np.max(np.abs(divergence)))


def _interp_txy(field_values: np.ndarray, field: Field2D, t: float, x: float, y: float) -> float:
    """Tricubic sample of a (nt, nx, ny) array at one space-time point."""
    tn, xn, yn = field.t_nodes, field.x_nodes, field.y_nodes
    if not (xn[0] - 1e-12 <= x <= xn[-1] + 1e-12):
        raise OutOfDomainError(f"x={x} outside sampled range [{xn[0]}, {xn[-1]}]")
    it = min(max(int(np.floor((t - tn[0]) / field.spacings[0])) - 1, 0), len(tn) - 4)
    block = field_values[it : it + 4]  # (4, nx, ny)
    in_y = np.empty((4, 4))
    ix = min(max(int(np.floor((x - xn[0]) / field.spacings[1])) - 1, 0), len(xn) - 4)
    for a in range(4):
        for b in range(4):
            in_y[a, b] = cubic_interp_uniform(yn, block[a, ix + b], y)
    in_x = np.empty(4)
    xs = xn[ix : ix + 4]
    for a in range(4):
        in_x[a] = cubic_interp_uniform(xs, in_y[a], x)
    return float(cubic_interp_uniform(tn[it : it + 4], in_x, t))


def _interp_tx(values: np.ndarray, field: Field2D, t: float, x: float) -> float:
    """Bicubic sample of a (nt, nx) array at one (t, x) point."""
    tn, xn = field.t_nodes, field.x_nodes
    if not (xn[0] - 1e-12 <= x <= xn[-1] + 1e-12):
        raise OutOfDomainError(f"x={x} outside sampled range [{xn[0]}, {xn[-1]}]")
    it = min(max(int(np.floor((t - tn[0]) / field.spacings[0])) - 1, 0), len(tn) - 4)
    ix = min(max(int(np.floor((x - xn[0]) / field.spacings[1])) - 1, 0), len(xn) - 4)
    in_x = np.empty(4)
    for a in range(4):
        in_x[a] = cubic_interp_uniform(xn[ix : ix + 4], values[it + a, ix : ix + 4], x)
    return float(cubic_interp_uniform(tn[it : it + 4], in_x, t))


@dataclass(frozen=True)
class CharacteristicOdeReport:
    """Trajectories from one x0 over several heights, and how they agree.

    When the horizontal velocity at x0 is height-independent at t=0, every
    trajectory shares the same x-component (it obeys the same second-order
    equation x'' = -p_x with the same initial data), so the spread stays at
    rounding level and the acceleration matches the pressure gradient.
    Violating that hypothesis shows up as a spread growing like the
    velocity differences, which the report exposes rather than flags.
    """

    x0: float
    y_list: tuple[float, ...]
    times: np.ndarray
    x_paths: np.ndarray  # (n_y, n_t)
    y_paths: np.ndarray  # (n_y, n_t)
    u_along: np.ndarray  # (n_y, n_t)
    spread: np.ndarray  # (n_t,)
    max_spread: float
    accel_residual_max: float


def verify_characteristic_ode(
    field: Field2D,
    x0: float,
    y_list=DEFAULT_Y_LIST,
    *,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> CharacteristicOdeReport:
    """Trace (X, Y) trajectories from (x0, y) for each listed height.

    Positions are recorded at the field's own time nodes; the x-acceleration
    is then formed by 4th-order differences of the recorded horizontal
    velocity and compared against -p_x evaluated along each path.
    """
    y_list = tuple(float(v) for v in y_list)
    t_nodes = field.t_nodes
    ht = field.spacings[0]
    p_x = diff_uniform(field.p, field.spacings[1], 1, axis=1)

    n_t = t_nodes.shape[0]
    x_paths = np.empty((len(y_list), n_t))
    y_paths = np.empty((len(y_list), n_t))
    u_along = np.empty((len(y_list), n_t))

    def rhs_xy(t: float, s: np.ndarray) -> np.ndarray:
        xx, yy = float(s[0]), float(np.clip(s[1], 0.0, 1.0))
        return np.array(
            [
                _interp_txy(field.u, field, t, xx, yy),
                _interp_txy(field.v, field, t, xx, yy),
            ]
        )

    for iy, y0 in enumerate(y_list):
        state = np.array([x0, y0])
        x_paths[iy, 0], y_paths[iy, 0] = state
        u_along[iy, 0] = _interp_txy(field.u, field, float(t_nodes[0]), x0, y0)
        for k in range(n_t - 1):
            _, states = integrate_adaptive(
                rhs_xy,
                float(t_nodes[k]),
                float(t_nodes[k + 1]),
                state,
                rtol=rtol,
                atol=atol,
                dt_init=ht / 4.0,
            )
            state = states[-1]
            x_paths[iy, k + 1], y_paths[iy, k + 1] = state
            u_along[iy, k + 1] = _interp_txy(
                field.u, field, float(t_nodes[k + 1]), state[0], float(np.clip(state[1], 0.0, 1.0))
            )

    spread = np.max(x_paths, axis=0) - np.min(x_paths, axis=0)
    accel = diff_uniform(u_along, ht, 1, axis=1)
    resid = np.empty_like(accel)
    for iy in range(len(y_list)):
        for k in range(n_t):
            resid[iy, k] = accel[iy, k] + _interp_tx(
                p_x, field, float(t_nodes[k]), x_paths[iy, k]
            )
    return CharacteristicOdeReport(
        x0=x0,
        y_list=y_list,
        times=t_nodes,
        x_paths=x_paths,
        y_paths=y_paths,
        u_along=u_along,
        spread=spread,
        max_spread=float(np.max(spread)),
        accel_residual_max=float(np.max(np.abs(resid))),
    )


# ---------------------------------------------------------------------------
# manufactured fields


def _box(t_span, x_span, shape) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    nt, nx, ny = shape
    return (
        np.linspace(t_span[0], t_span[1], nt),
        np.linspace(x_span[0], x_span[1], nx),
        np.linspace(0.0, 1.0, ny),
    )


def shear_flow_field(profile_fn, t_span=(0.0, 1.0), x_span=(-2.0, 2.0), shape=(33, 81, 17)) -> Field2D:
    """Steady horizontal shear u = U(y), v = 0, p = 0: an exact solution."""
    tn, xn, yn = _box(t_span, x_span, shape)
    u = np.broadcast_to(np.asarray(profile_fn(yn), dtype=float), (len(tn), len(xn), len(yn))).copy()
    v = np.zeros_like(u)
    p = np.zeros((len(tn), len(xn)))
    return Field2D(tn, xn, yn, u, v, p)


def strain_field_from_sim(
    sim: SimResult, t_span, x_span=(-2.0, 2.0), shape=(33, 81, 17)
) -> Field2D:
    """Embed a reduced run as the 2-D field that is linear in x.

    u = -a(t,y) x, v = integral of a, p = -x^2 int a^2 solves the channel
    system exactly when a solves the reduced equation, so a dense run
    provides a genuine x-dependent solution for residual and frame-change
    checks (up to the run's own resolution).
    """
    if sim.dense is None:
        raise ValueError("simulation result carries no dense record")
    dense = sim.dense
    if not (dense.t0 <= t_span[0] < t_span[1] <= dense.t1):
        raise ValueError("requested time span outside the dense record")
    tn, xn, yn = _box(t_span, x_span, shape)
    grid = dense.grid
    u = np.empty((len(tn), len(xn), len(yn)))
    v = np.empty_like(u)
    p = np.empty((len(tn), len(xn)))
    for it, t in enumerate(tn):
        a = dense.state_values(float(t))
        a_y = cubic_interp_uniform(grid.nodes, a, yn)
        vel = cubic_interp_uniform(grid.nodes, cumulative_values(a, grid.spacing), yn)
        vel[0] = 0.0
        vel[-1] = 0.0
        int_sq = simpson_value(a * a, grid.spacing)
        u[it] = -np.outer(xn, a_y)
        v[it] = np.broadcast_to(vel, (len(xn), len(yn)))
        p[it] = -(xn**2) * int_sq
    return Field2D(tn, xn, yn, u, v, p)
