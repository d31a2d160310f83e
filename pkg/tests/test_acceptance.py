"""Acceptance suite: every exit criterion at its stated tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS/FAIL line
per criterion. Oracle- and property-based throughout; the expensive runs
are shared session fixtures.
"""

import time

import numpy as np
import pytest

from hydroblow import (
    GalileanShift,
    Profile,
    SimConfig,
    Termination,
    build_grid,
    check_convexity_lemma,
    fuzz_convexity_lemma,
    galilean_transform,
    hydrostatic_residual,
    make_initial_profile,
    shear_flow_field,
    simulate,
    trace_reduced_characteristic,
    verify_characteristic_ode,
)
from hydroblow.grid import cubic_interp_uniform, diff_uniform

C_VALUES = (1.0, 2.0, 3.0, 4.0)


def check(name: str, ok: bool, detail: str = "") -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" — {detail}" if detail else ""))
    assert ok, f"{name}: {detail}"


def run_family(c: float, n_nodes: int, **overrides):
    cfg = SimConfig(n_nodes=n_nodes, t_max=10.0, project_mean=False, **overrides)
    grid = build_grid(n_nodes)
    return simulate(cfg, make_initial_profile(grid, "poly2", {"c": c}))


@pytest.fixture(scope="session")
def runs_257():
    return {c: run_family(c, 257) for c in C_VALUES}


@pytest.fixture(scope="session")
def runs_513():
    return {c: run_family(c, 513) for c in C_VALUES}


@pytest.fixture(scope="session")
def steady_runs():
    out = {}
    for n in (65, 129, 257):
        g = build_grid(n)
        cfg = SimConfig(n_nodes=n, t_max=1.0, rtol=1e-12, atol=1e-14)
        out[n] = simulate(cfg, Profile(g, np.cos(np.pi * g.nodes)))
    return out


class TestRiccatiBoundDominance:
    def test_wall_value_dominates_bound(self, runs_257):
        worst = np.inf
        for c, res in runs_257.items():
            t_limit = 0.98 * 3.0 / res.hypothesis_report.a0_at_1
            for row in res.rows:
                if row.t < t_limit and row.riccati_bound is not None:
                    margin = row.a_at_1 * (1.0 + 1e-3) - row.riccati_bound
                    worst = min(worst, margin / max(row.a_at_1, 1e-300))
        check(
            "Riccati bound dominance (c in {1,2,3,4}, N=257)",
            worst >= 0.0,
            f"worst relative margin {worst:.3e}",
        )


class TestBlowupTimeBound:
    def test_estimate_within_bound(self, runs_257):
        ratios = {}
        for c, res in runs_257.items():
            bound = 3.0 / res.hypothesis_report.a0_at_1
            ratios[c] = res.estimated_blowup_time / bound
        check(
            "blowup-time bound T_est <= 1.05 * 3/a0(1)",
            all(r <= 1.05 for r in ratios.values()),
            "ratios " + ", ".join(f"c={c:g}: {r:.4f}" for c, r in ratios.items()),
        )

    def test_ratios_grid_stable(self, runs_257, runs_513):
        drifts = {}
        for c in C_VALUES:
            r257 = runs_257[c].estimated_blowup_time * runs_257[c].hypothesis_report.a0_at_1 / 3.0
            r513 = runs_513[c].estimated_blowup_time * runs_513[c].hypothesis_report.a0_at_1 / 3.0
            drifts[c] = abs(r257 - r513) / r513
        check(
            "blowup-time ratios stable within 2% between N=257 and N=513",
            all(d <= 0.02 for d in drifts.values()),
            "relative drifts " + ", ".join(f"c={c:g}: {d:.2e}" for c, d in drifts.items()),
        )


class TestExactSteadyState:
    def test_cosine_profile_is_preserved(self, steady_runs):
        devs = {}
        for n, res in steady_runs.items():
            g = res.final_state.a.grid
            devs[n] = float(np.max(np.abs(res.final_state.a.values - np.cos(np.pi * g.nodes))))
        check(
            "steady state sup deviation <= 1e-5 at N=257 over t in [0,1]",
            devs[257] <= 1e-5,
            f"deviation {devs[257]:.3e}",
        )
        orders = (np.log2(devs[65] / devs[129]), np.log2(devs[129] / devs[257]))
        check(
            "steady-state deviation refines at observed order >= 3.5",
            all(o >= 3.5 for o in orders),
            f"orders {orders[0]:.2f}, {orders[1]:.2f}",
        )


class TestConservation:
    def test_mean_stays_zero_without_projection(self, runs_257):
        res = runs_257[3.0]
        t_est = res.estimated_blowup_time
        drift = max(abs(r.mean_a) for r in res.rows if r.t <= 0.99 * t_est)
        check(
            "conservation |int a| <= 1e-8 (projection off) until 1% of blowup",
            drift <= 1e-8,
            f"max |mean| {drift:.3e}",
        )


class TestEnergyIdentity:
    def test_derivative_of_energy_tracks_cubic_integral(self, runs_257):
        res = runs_257[3.0]
        rows = [r for r in res.rows if r.a_at_1 <= 100.0]
        t = np.array([r.t for r in rows])
        energy = np.array([r.int_a_sq for r in rows])
        cubic = np.array([3.0 * r.int_a_cubed for r in rows])
        worst = 0.0
        for k in range(2, len(rows) - 2):
            # derivative of a local cubic fit through five rows
            tt = t[k - 2 : k + 3] - t[k]
            coef = np.polyfit(tt, energy[k - 2 : k + 3], 3)
            dE = coef[2]
            worst = max(worst, abs(dE - cubic[k]) / abs(cubic[k]))
        check(
            "energy identity d/dt int a^2 = 3 int a^3 within 1e-3 relative",
            worst <= 1e-3,
            f"worst relative mismatch {worst:.3e} over {len(rows)} smooth rows",
        )


class TestWallSlopeAndConvexityPersistence:
    def test_flat_wall_and_positive_curvature(self, runs_257):
        cut = 1e6 / 10.0
        worst_slope = 0.0
        min_curv = np.inf
        for c, res in runs_257.items():
            h = res.dense.grid.spacing
            for row, state in zip(res.rows, res.dense.states):
                if row.a_at_1 > cut:
                    break
                slope_scale = float(np.max(np.abs(diff_uniform(state, h, 1))))
                worst_slope = max(worst_slope, abs(row.ay_at_0) / slope_scale)
                min_curv = min(min_curv, row.min_ayy_interior)
        check(
            "wall slope stays zero: |a_y(t,0)| <= 1e-5 * max|a_y|",
            worst_slope <= 1e-5,
            f"worst ratio {worst_slope:.3e}",
        )
        check(
            "interior curvature stays positive until sup reaches threshold/10",
            min_curv > 0.0,
            f"min interior a_yy {min_curv:.3e}",
        )


class TestConvexityInequalityFuzz:
    def test_thousand_seeded_trials(self):
        start = time.perf_counter()
        summary = fuzz_convexity_lemma(1, 1000)
        elapsed = time.perf_counter() - start
        check(
            "one-third inequality fuzz: 1000 trials, zero violations",
            summary.violations == 0 and summary.max_ratio <= 1.0 + 1e-9,
            f"max ratio {summary.max_ratio:.12f}, {elapsed * 1e3:.0f} ms",
        )
        check("fuzz campaign runs in under a second", elapsed < 1.0, f"{elapsed:.3f} s")

    def test_extremal_profile_attains_equality(self, grid257, y257):
        rep = check_convexity_lemma(Profile(grid257, y257 - 0.5))
        check(
            "extremal linear profile attains equality within 1e-12",
            abs(rep.integral_f_sq - rep.bound) <= 1e-12,
            f"|int f^2 - f(1)^2/3| = {abs(rep.integral_f_sq - rep.bound):.3e}",
        )


class TestCharacteristicMonotonicity:
    def test_curvature_never_decreases(self, runs_257):
        res = runs_257[3.0]
        t_cut = next(r.t for r in res.rows if r.a_at_1 >= 1e5)
        bad = []
        for y0 in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9):
            path = trace_reduced_characteristic(res, y0, t_end=t_cut)
            if not path.monotone_within(1e-4):
                bad.append(y0)
        check(
            "curvature along characteristics non-decreasing within 1e-4",
            not bad,
            f"checked y0 = 0.1..0.9 on the c=3 run{', failures: ' + str(bad) if bad else ''}",
        )

    def test_steady_flow_matches_closed_form(self, steady_runs):
        res = steady_runs[257]
        worst = 0.0
        for y0 in (0.1, 0.25, 0.5, 0.75, 0.9):
            path = trace_reduced_characteristic(res, y0)
            exact = (2.0 / np.pi) * np.arctan(np.tan(np.pi * y0 / 2.0) * np.exp(path.times))
            worst = max(worst, float(np.max(np.abs(path.y_values - exact))))
        check(
            "steady-flow trajectories match tan-law closed form within 1e-5",
            worst <= 1e-5,
            f"worst deviation {worst:.3e}",
        )


class TestTransformationGroup:
    def test_shear_and_transformed_residuals(self):
        def u_profile(y):
            return 1.0 + y**2 * (1.0 - y) / 2.0

        base = shear_flow_field(u_profile)
        shift = GalileanShift(g=lambda t: t * t / 2.0, dg=lambda t: t, d2g=lambda t: 1.0)
        moved = galilean_transform(base, shift)
        residuals = (*hydrostatic_residual(base), *hydrostatic_residual(moved))
        check(
            "shear-flow and transformed-shear residuals <= 1e-8",
            max(residuals) <= 1e-8,
            "residuals " + ", ".join(f"{r:.1e}" for r in residuals),
        )

        ux = diff_uniform(base.u, base.spacings[1], 1, axis=1)
        ux_moved = diff_uniform(moved.u, moved.spacings[1], 1, axis=1)
        worst = 0.0
        for it, t in enumerate(base.t_nodes):
            xq = moved.x_nodes + shift.g(float(t))
            for iy in range(base.y_nodes.shape[0]):
                exact = cubic_interp_uniform(base.x_nodes, ux[it, :, iy], xq)
                worst = max(worst, float(np.max(np.abs(ux_moved[it, :, iy] - exact))))
        check(
            "x-derivative invariance under the frame change within 1e-10",
            worst <= 1e-10,
            f"worst mismatch {worst:.3e}",
        )

    def test_constant_start_lines_share_one_trajectory(self):
        const = shear_flow_field(lambda y: np.full_like(y, 0.7), x_span=(-3.0, 3.0))
        cubic = GalileanShift(g=lambda t: t**3, dg=lambda t: 3 * t * t, d2g=lambda t: 6 * t)
        moved = galilean_transform(const, cubic)
        rep = verify_characteristic_ode(moved, 0.0, (0.2, 0.5, 0.8))
        check(
            "constant-velocity-line trajectory spread <= 1e-7",
            rep.max_spread <= 1e-7 and rep.accel_residual_max <= 1e-7,
            f"spread {rep.max_spread:.1e}, acceleration residual {rep.accel_residual_max:.1e}",
        )

    def test_hypothesis_violation_spreads_exactly(self):
        def u_profile(y):
            return 1.0 + y**2 * (1.0 - y) / 2.0

        shear = shear_flow_field(u_profile)
        rep = verify_characteristic_ode(shear, 0.0, (0.2, 0.5, 0.8))
        speeds = u_profile(np.array([0.2, 0.5, 0.8]))
        exact = (speeds.max() - speeds.min()) * rep.times
        err = float(np.max(np.abs(rep.spread - exact)))
        check(
            "height-dependent start speeds spread as |U(yi)-U(yj)| t exactly",
            err <= 1e-9,
            f"law mismatch {err:.3e}",
        )


class TestScalingSymmetry:
    def test_doubled_data_halves_the_clock(self):
        grid = build_grid(257)
        cfg = SimConfig(n_nodes=257, blowup_threshold=1e4)
        res_a = simulate(cfg, make_initial_profile(grid, "poly2", {"c": 3.0}))
        res_b = simulate(cfg, make_initial_profile(grid, "poly2", {"c": 6.0}))
        t_top = 0.9 * res_b.dense.t1
        worst = 0.0
        for t in np.linspace(0.02, t_top, 12):
            if 2.0 * t > res_a.dense.t1:
                break
            b = res_b.dense.state_values(float(t))
            a2 = 2.0 * res_a.dense.state_values(2.0 * float(t))
            worst = max(worst, float(np.max(np.abs(b - a2)) / np.max(np.abs(b))))
        check(
            "scaling symmetry: run(2 a0)(t) = 2 run(a0)(2t) within 1e-4 relative",
            worst <= 1e-4,
            f"worst relative mismatch {worst:.3e}",
        )


class TestRunSanity:
    def test_all_family_runs_blow_up(self, runs_257, runs_513):
        oks = [
            res.termination is Termination.BLOWUP_DETECTED
            for res in (*runs_257.values(), *runs_513.values())
        ]
        check(
            "all family runs terminate in detected blowup",
            all(oks),
            f"{sum(oks)}/{len(oks)} runs",
        )
