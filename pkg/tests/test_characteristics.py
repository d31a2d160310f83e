import numpy as np
import pytest

from hydroblow import (
    Profile,
    SimConfig,
    build_grid,
    make_initial_profile,
    simulate,
    trace_reduced_characteristic,
)


@pytest.fixture(scope="module")
def steady_run(grid257, y257):
    cfg = SimConfig(n_nodes=257, t_max=1.0, rtol=1e-10, atol=1e-12)
    return simulate(cfg, Profile(grid257, np.cos(np.pi * y257)))


@pytest.fixture(scope="module")
def blowup_run():
    g = build_grid(257)
    return simulate(SimConfig(n_nodes=257), make_initial_profile(g, "poly2", {"c": 3.0}))


def tan_law(y0, t, c=1.0):
    """Closed-form trajectory of the steady cosine flow (separable ODE)."""
    return (2.0 / np.pi) * np.arctan(np.tan(np.pi * y0 / 2.0) * np.exp(c * t))


class TestSteadyFlowPaths:
    def test_quarter_start_closed_form(self, steady_run):
        path = trace_reduced_characteristic(steady_run, 0.25)
        exact = tan_law(0.25, path.times)
        assert np.max(np.abs(path.y_values - exact)) <= 1e-5
        # frozen endpoint from the closed form at t = 1
        assert path.y_values[-1] == pytest.approx(0.537671709194991, abs=1e-5)

    @pytest.mark.parametrize("y0", [0.1, 0.5, 0.8])
    def test_tan_law_along_whole_path(self, steady_run, y0):
        path = trace_reduced_characteristic(steady_run, y0)
        assert np.max(np.abs(path.y_values - tan_law(y0, path.times))) <= 1e-5

    def test_walls_are_invariant(self, steady_run):
        bottom = trace_reduced_characteristic(steady_run, 0.0)
        top = trace_reduced_characteristic(steady_run, 1.0)
        assert np.max(np.abs(bottom.y_values)) <= 1e-12
        assert np.max(np.abs(top.y_values - 1.0)) <= 1e-12

    def test_bad_start_rejected(self, steady_run):
        with pytest.raises(ValueError):
            trace_reduced_characteristic(steady_run, 1.5)

    def test_bad_window_rejected(self, steady_run):
        with pytest.raises(ValueError):
            trace_reduced_characteristic(steady_run, 0.5, t_end=2.0)


class TestBlowupRunPaths:
    def test_curvature_grows_from_middle(self, blowup_run):
        t_cut = next(r.t for r in blowup_run.rows if r.a_at_1 >= 1e5)
        path = trace_reduced_characteristic(blowup_run, 0.5, t_end=t_cut)
        assert path.monotone_within(1e-4)
        assert path.a_yy_along[-1] / path.a_yy_along[0] > 1.0

    @pytest.mark.parametrize("y0", [0.1, 0.3, 0.7, 0.9])
    def test_curvature_monotone_everywhere(self, blowup_run, y0):
        t_cut = next(r.t for r in blowup_run.rows if r.a_at_1 >= 1e5)
        path = trace_reduced_characteristic(blowup_run, y0, t_end=t_cut)
        assert path.monotone_within(1e-4)

    def test_paths_stay_inside(self, blowup_run):
        t_cut = next(r.t for r in blowup_run.rows if r.a_at_1 >= 1e5)
        for y0 in (0.05, 0.95):
            path = trace_reduced_characteristic(blowup_run, y0, t_end=t_cut)
            assert np.all(path.y_values >= 0.0)
            assert np.all(path.y_values <= 1.0)
