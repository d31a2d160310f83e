"""Executable checks of the blowup theorem's initial-data hypotheses and the
one-third convexity inequality, plus generator families and a fuzz harness.

The inequality in question: a C^2 function f on [0,1] with f'(0)=0, f''>0
and zero mean satisfies f(1)>0 and  int f^2 <= f(1)^2 / 3.  The linear
profile y - 1/2 (which violates the convexity hypothesis) attains equality,
pinning the constant as sharp.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import CounterexampleError
from .grid import GridSpec, Profile, build_grid, derivative_y, integrate

DEFAULT_MEAN_TOLERANCE = 1e-8
#: Wall-slope tolerance, relative to the largest slope anywhere.
DEFAULT_SLOPE_RTOL = 1e-6
#: Interior second differences must exceed this (exclusive); zero keeps the
#: strict inequality, a tiny positive floor absorbs rounding on flat data.
DEFAULT_CURVATURE_FLOOR = 0.0
#: Quadrature slack on the inequality comparison, scaled by the bound size.
DEFAULT_INEQ_TOLERANCE = 1e-12

FAMILIES = ("poly2", "poly4", "coshk")


@dataclass(frozen=True)
class HypothesisReport:
    """Pass/fail record for the three initial-data conditions."""

    mean_zero: bool
    mean_residual: float
    wall_slope_zero: bool
    wall_slope: float
    strictly_convex: bool
    min_curvature: float
    a0_at_1: float

    @property
    def all_pass(self) -> bool:
        return self.mean_zero and self.wall_slope_zero and self.strictly_convex

    def to_text(self) -> str:
        def mark(ok: bool) -> str:
            return "pass" if ok else "FAIL"

        return "\n".join(
            [
                "initial-data hypotheses:",
                f"  zero mean:        {mark(self.mean_zero)} (residual {self.mean_residual:.3e})",
                f"  flat wall slope:  {mark(self.wall_slope_zero)} (|a_y(0)| = {abs(self.wall_slope):.3e})",
                f"  strict convexity: {mark(self.strictly_convex)} (interior min a_yy = {self.min_curvature:.6g})",
                f"  wall value a(1):  {self.a0_at_1:.17g}",
            ]
        )

    @staticmethod
    def csv_header() -> str:
        return "mean_zero,mean_residual,wall_slope_zero,wall_slope,strictly_convex,min_curvature,a0_at_1"

    def csv_row(self) -> str:
        return ",".join(
            [
                str(self.mean_zero).lower(),
                f"{self.mean_residual:.17g}",
                str(self.wall_slope_zero).lower(),
                f"{self.wall_slope:.17g}",
                str(self.strictly_convex).lower(),
                f"{self.min_curvature:.17g}",
                f"{self.a0_at_1:.17g}",
            ]
        )


@dataclass(frozen=True)
class LemmaReport:
    """Both sides of the one-third inequality for one test function."""

    f_at_1: float
    integral_f: float
    integral_f_sq: float
    bound: float
    inequality_holds: bool
    hypotheses_met: bool

    def to_text(self) -> str:
        rel = "<=" if self.inequality_holds else ">"
        return "\n".join(
            [
                "one-third inequality check:",
                f"  f(1)        = {self.f_at_1:.6f}",
                f"  int f       = {self.integral_f:.3e}",
                f"  int f^2     = {self.integral_f_sq:.6f}",
                f"  f(1)^2 / 3  = {self.bound:.6f}",
                f"  inequality: {self.integral_f_sq:.6f} {rel} {self.bound:.6f}"
                f" ({'holds' if self.inequality_holds else 'VIOLATED'})",
                f"  hypotheses met: {'yes' if self.hypotheses_met else 'no'}",
            ]
        )

    @staticmethod
    def csv_header() -> str:
        return "f_at_1,integral_f,integral_f_sq,bound,inequality_holds,hypotheses_met"

    def csv_row(self) -> str:
        return ",".join(
            [
                f"{self.f_at_1:.17g}",
                f"{self.integral_f:.17g}",
                f"{self.integral_f_sq:.17g}",
                f"{self.bound:.17g}",
                str(self.inequality_holds).lower(),
                str(self.hypotheses_met).lower(),
            ]
        )


@dataclass(frozen=True)
class FuzzSummary:
    """Outcome of a randomized inequality campaign."""

    seed: int
    n_trials: int
    n_nodes: int
    violations: int
    max_ratio: float
    max_ratio_trial: int


def _hypothesis_fields(
    f: Profile,
    mean_tolerance: float,
    slope_rtol: float,
    curvature_floor: float,
):
    mean = integrate(f)
    slope = derivative_y(f, 1)
    wall_slope = float(slope.values[0])
    slope_scale = float(np.max(np.abs(slope.values)))
    curvature = derivative_y(f, 2)
    k = 2  # matches the diagnostics interior-minimum convention
    min_curv = float(np.min(curvature.values[k:-k]))
    return (
        abs(mean) <= mean_tolerance,
        mean,
        abs(wall_slope) <= slope_rtol * slope_scale,
        wall_slope,
        min_curv > curvature_floor,
        min_curv,
    )


def validate_hypotheses(
    a0: Profile,
    *,
    mean_tolerance: float = DEFAULT_MEAN_TOLERANCE,
    slope_rtol: float = DEFAULT_SLOPE_RTOL,
    curvature_floor: float = DEFAULT_CURVATURE_FLOOR,
) -> HypothesisReport:
    """Check zero mean, flat wall slope, and strict interior convexity."""
    mean_ok, mean, slope_ok, wall_slope, convex_ok, min_curv = _hypothesis_fields(
        a0, mean_tolerance, slope_rtol, curvature_floor
    )
    return HypothesisReport(
        mean_zero=mean_ok,
        mean_residual=mean,
        wall_slope_zero=slope_ok,
        wall_slope=wall_slope,
        strictly_convex=convex_ok,
        min_curvature=min_curv,
        a0_at_1=float(a0.values[-1]),
    )


def check_convexity_lemma(
    f: Profile,
    *,
    mean_tolerance: float = DEFAULT_MEAN_TOLERANCE,
    slope_rtol: float = DEFAULT_SLOPE_RTOL,
    curvature_floor: float = DEFAULT_CURVATURE_FLOOR,
    ineq_tolerance: float = DEFAULT_INEQ_TOLERANCE,
) -> LemmaReport:
    """Evaluate both sides of the one-third inequality by quadrature.

    Never raises: profiles that violate the hypotheses still get both
    sides computed and reported.
    """
    mean_ok, mean, slope_ok, _, convex_ok, _ = _hypothesis_fields(
        f, mean_tolerance, slope_rtol, curvature_floor
    )
    f1 = float(f.values[-1])
    int_sq = integrate(Profile(f.grid, f.values * f.values))
    bound = f1 * f1 / 3.0
    return LemmaReport(
        f_at_1=f1,
        integral_f=mean,
        integral_f_sq=int_sq,
        bound=bound,
        inequality_holds=int_sq <= bound + ineq_tolerance * max(1.0, abs(bound)),
        hypotheses_met=mean_ok and slope_ok and convex_ok,
    )


def make_initial_profile(grid: GridSpec, family: str, params: Mapping[str, float]) -> Profile:
    """Analytically mean-zero starting profiles.

    poly2:  c  * (y^2 - 1/3)
    poly4:  c1 * (y^2 - 1/3) + c2 * (y^4 - 1/5)
    coshk:  c  * (cosh(k y) - sinh(k)/k)

    Each family subtracts the exact mean of a convex shape with flat wall
    slope, so the hypotheses hold whenever the constants make the curvature
    positive; constants that do not are still sampled (the validator flags
    them).
    """
    y = grid.nodes
    try:
        if family == "poly2":
            vals = params["c"] * (y**2 - 1.0 / 3.0)
        elif family == "poly4":
            vals = params["c1"] * (y**2 - 1.0 / 3.0) + params["c2"] * (y**4 - 1.0 / 5.0)
        elif family == "coshk":
            k = params["k"]
            if k == 0.0:
                raise ValueError("coshk requires a nonzero k")
            vals = params["c"] * (np.cosh(k * y) - np.sinh(k) / k)
        else:
            raise ValueError(
                f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}"
            )
    except KeyError as exc:
        raise ValueError(f"family {family!r} is missing constant {exc.args[0]!r}") from exc
    return Profile(grid, vals)


# Convex shapes fed to the fuzzer, with their exact means over [0,1].
_FUZZ_SHAPES = (
    (lambda y, _k: y**2, lambda _k: 1.0 / 3.0),
    (lambda y, _k: y**4, lambda _k: 1.0 / 5.0),
    (lambda y, _k: y**6, lambda _k: 1.0 / 7.0),
    (lambda y, k: np.cosh(k * y), lambda k: np.sinh(k) / k),
)


def fuzz_convexity_lemma(seed: int, n_trials: int, *, n_nodes: int = 257) -> FuzzSummary:
    """Randomized campaign over nonnegative combinations of convex shapes.

    The generator is a fixed, documented algorithm so runs reproduce across
    platforms: numpy's PCG64 seeded through SeedSequence(seed), one spawned
    child stream per trial (trials are therefore order-independent and may
    be distributed). Every trial must give f(1) > 0 and a quadrature ratio
    int f^2 / (f(1)^2/3) of at most 1 + 1e-9; a violation raises, carrying
    the weights, because it would falsify this implementation.
    """
    if n_trials < 1:
        raise ValueError(f"n_trials must be >= 1, got {n_trials}")
    grid = build_grid(n_nodes)
    y = grid.nodes
    children = np.random.SeedSequence(seed).spawn(n_trials)
    max_ratio = -np.inf
    max_trial = -1
    for trial, child in enumerate(children):
        rng = np.random.default_rng(child)
        weights = rng.uniform(0.0, 1.0, size=4)
        weights[rng.random(4) < 0.25] = 0.0  # exercise sparse combinations
        if not np.any(weights > 0.0):
            weights[int(rng.integers(4))] = rng.uniform(0.5, 1.0)
        k = float(rng.uniform(0.5, 3.0))
        vals = np.zeros_like(y)
        for w, (shape, mean) in zip(weights, _FUZZ_SHAPES):
            if w > 0.0:
                vals += w * (shape(y, k) - mean(k))
        f1 = float(vals[-1])
        int_sq = integrate(Profile(grid, vals * vals))
        ratio = int_sq / (f1 * f1 / 3.0) if f1 > 0.0 else np.inf
        if f1 <= 0.0 or ratio > 1.0 + 1e-9:
            raise CounterexampleError(
                f"trial {trial} violated the inequality: f(1)={f1:.6g}, ratio={ratio:.6g}",
                weights=tuple(weights),
                k=k,
                trial=trial,
            )
        if ratio > max_ratio:
            max_ratio = ratio
            max_trial = trial
    return FuzzSummary(
        seed=seed,
        n_trials=n_trials,
        n_nodes=n_nodes,
        violations=0,
        max_ratio=float(max_ratio),
        max_ratio_trial=max_trial,
    )
