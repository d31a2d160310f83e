"""Uniform grid on [0,1] with 4th-order differentiation, quadrature and interpolation.

This is the numerical substrate every other module sits on: profiles are
plain samples on the grid, and all calculus on them routes through the
array-level kernels here so the whole package shares one set of error
constants.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridError, ProfileError

#: Minimum node count: the one-sided 4th-order stencils need 6 points of
#: room on each side without overlapping.
MIN_NODES = 9

# One-sided first-derivative stencils, 4th order, units of 1/(12 h).
# Row 0 applies at the first node, row 1 at the second; the right edge
# uses the reversed rows with flipped sign.
_D1_EDGE = np.array(
    [
        [-25.0, 48.0, -36.0, 16.0, -3.0],
        [-3.0, -10.0, 18.0, -6.0, 1.0],
    ]
)

# One-sided second-derivative stencils, 4th order, units of 1/(12 h^2).
# Right edge uses the reversed rows with the same sign.
_D2_EDGE = np.array(
    [
        [45.0, -154.0, 214.0, -156.0, 61.0, -10.0],
        [10.0, -15.0, -4.0, 14.0, -6.0, 1.0],
    ]
)


@dataclass(frozen=True, eq=False)
class GridSpec:
    """Uniform partition of [0,1] into n_nodes-1 intervals."""

    n_nodes: int
    spacing: float
    nodes: np.ndarray

    def __post_init__(self):
        if self.n_nodes < MIN_NODES:
            raise GridError(f"need at least {MIN_NODES} nodes, got {self.n_nodes}")
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.shape != (self.n_nodes,):
            raise GridError("node array length does not match n_nodes")
        if nodes[0] != 0.0 or nodes[-1] != 1.0:
            raise GridError("grid must start at exactly 0 and end at exactly 1")
        if not np.all(np.diff(nodes) > 0):
            raise GridError("nodes must be strictly increasing")
        if abs(self.spacing * (self.n_nodes - 1) - 1.0) > 1e-12:
            raise GridError("spacing inconsistent with node count")
        nodes.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)


def build_grid(n_nodes: int) -> GridSpec:
    """Uniform grid with nodes 0, h, 2h, ..., 1 and h = 1/(n_nodes-1)."""
    if int(n_nodes) != n_nodes or n_nodes < MIN_NODES:
        raise GridError(f"need at least {MIN_NODES} nodes, got {n_nodes}")
    n = int(n_nodes)
    return GridSpec(n, 1.0 / (n - 1), np.linspace(0.0, 1.0, n))


@dataclass(frozen=True, eq=False)
class Profile:
    """Scalar function of y sampled at the grid nodes."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n_nodes,):
            raise ProfileError(
                f"profile length {values.shape} does not match grid ({self.grid.n_nodes},)"
            )
        if not np.all(np.isfinite(values)):
            raise ProfileError("profile contains non-finite values")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, grid: GridSpec, fn) -> "Profile":
        return cls(grid, np.asarray(fn(grid.nodes), dtype=float))


# ---------------------------------------------------------------------------
# array-level kernels


def simpson_value(values: np.ndarray, h: float) -> float:
    """Integral over [0,1]: composite Simpson for an odd node count,
    composite trapezoid fallback when the count is even."""
    n = values.shape[0]
    if n % 2 == 1:
        return (h / 3.0) * (
            values[0]
            + 4.0 * float(np.sum(values[1:-1:2]))
            + 2.0 * float(np.sum(values[2:-2:2]))
            + values[-1]
        )
    return h * (0.5 * values[0] + float(np.sum(values[1:-1])) + 0.5 * values[-1])


def cumulative_values(values: np.ndarray, h: float) -> np.ndarray:
    """Running integral from 0 to each node, 4th order for odd node counts.

    Even-index nodes accumulate the same two-interval Simpson panels that
    simpson_value sums, so the final entry reproduces it to rounding.
    Odd-index nodes add a half-panel from a cubic through 4 neighbours:
        leading interval:  h/24 * ( 9 f0 + 19 f1 -  5 f2 +   f3)
        centred interval:  h/24 * (-f_{k-1} + 13 f_k + 13 f_{k+1} - f_{k+2})
    Even node counts fall back to cumulative trapezoid (matching the
    quadrature fallback).
    """
    n = values.shape[0]
    out = np.empty(n)
    out[0] = 0.0
    if n % 2 == 0:
        np.cumsum(h * 0.5 * (values[:-1] + values[1:]), out=out[1:])
        return out
    panels = (h / 3.0) * (values[0:-2:2] + 4.0 * values[1:-1:2] + values[2::2])
    np.cumsum(panels, out=out[2::2])
    odd = np.arange(1, n - 1, 2)
    half = np.empty(odd.shape[0])
    half[0] = (h / 24.0) * (9.0 * values[0] + 19.0 * values[1] - 5.0 * values[2] + values[3])
    o = odd[1:]
    half[1:] = (h / 24.0) * (
        -values[o - 2] + 13.0 * values[o - 1] + 13.0 * values[o] - values[o + 1]
    )
    out[odd] = out[odd - 1] + half
    return out


def diff_uniform(values: np.ndarray, h: float, order: int, axis: int = -1) -> np.ndarray:
    """4th-order finite differences along one axis of a uniform sampling.

    Central stencils at interior points, the documented one-sided stencils
    at the two points nearest each end.
    """
    v = np.moveaxis(np.asarray(values, dtype=float), axis, -1)
    n = v.shape[-1]
    out = np.empty_like(v)
    if order == 1:
        if n < 5:
            raise GridError("first derivative needs at least 5 samples along the axis")
        out[..., 2:-2] = (
            v[..., 0:-4] - 8.0 * v[..., 1:-3] + 8.0 * v[..., 3:-1] - v[..., 4:]
        ) / (12.0 * h)
        out[..., 0] = v[..., :5] @ _D1_EDGE[0] / (12.0 * h)
        out[..., 1] = v[..., :5] @ _D1_EDGE[1] / (12.0 * h)
        out[..., -2] = -(v[..., -5:] @ _D1_EDGE[1][::-1]) / (12.0 * h)
        out[..., -1] = -(v[..., -5:] @ _D1_EDGE[0][::-1]) / (12.0 * h)
    elif order == 2:
        if n < 6:
            raise GridError("second derivative needs at least 6 samples along the axis")
        out[..., 2:-2] = (
            -v[..., 0:-4]
            + 16.0 * v[..., 1:-3]
            - 30.0 * v[..., 2:-2]
            + 16.0 * v[..., 3:-1]
            - v[..., 4:]
        ) / (12.0 * h * h)
        out[..., 0] = v[..., :6] @ _D2_EDGE[0] / (12.0 * h * h)
        out[..., 1] = v[..., :6] @ _D2_EDGE[1] / (12.0 * h * h)
        out[..., -2] = v[..., -6:] @ _D2_EDGE[1][::-1] / (12.0 * h * h)
        out[..., -1] = v[..., -6:] @ _D2_EDGE[0][::-1] / (12.0 * h * h)
    else:
        raise ValueError(f"derivative order must be 1 or 2, got {order}")
    return np.moveaxis(out, -1, axis)


def cubic_interp_uniform(nodes: np.ndarray, values: np.ndarray, xq) -> np.ndarray | float:
    """4-point Lagrange interpolation on a uniform grid.

    Exact (bitwise) when a query coincides with a node; 4th-order accurate
    in between. Queries slightly outside the node range use the nearest
    stencil (callers enforce their own domain policy).
    """
    v = np.asarray(values, dtype=float)
    n = v.shape[0]
    q = np.asarray(xq, dtype=float)
    scalar = q.ndim == 0
    q = np.atleast_1d(q)
    h = (nodes[-1] - nodes[0]) / (n - 1)
    pos = (q - nodes[0]) / h
    i0 = np.clip(np.floor(pos).astype(int) - 1, 0, n - 4)
    s = pos - i0
    w0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0
    w1 = s * (s - 2.0) * (s - 3.0) / 2.0
    w2 = -s * (s - 1.0) * (s - 3.0) / 2.0
    w3 = s * (s - 1.0) * (s - 2.0) / 6.0
    out = w0 * v[i0] + w1 * v[i0 + 1] + w2 * v[i0 + 2] + w3 * v[i0 + 3]
    near = np.clip(np.rint(pos).astype(int), 0, n - 1)
    hit = q == nodes[near]
    if np.any(hit):
        out[hit] = v[near[hit]]
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# Profile-level operations


def integrate(f: Profile) -> float:
    """Quadrature of f over [0,1] (composite Simpson on the odd-N grids)."""
    return simpson_value(f.values, f.grid.spacing)


def cumulative_integral(f: Profile) -> Profile:
    """Profile g with g(0)=0 and g(y_i) the running integral of f."""
    return Profile(f.grid, cumulative_values(f.values, f.grid.spacing))


def derivative_y(f: Profile, order: int) -> Profile:
    """First or second derivative of f in y, 4th order at every node."""
    return Profile(f.grid, diff_uniform(f.values, f.grid.spacing, order))
