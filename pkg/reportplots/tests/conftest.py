import numpy as np
import pytest

DIAG_HEADER = (
    "t,a_at_1,mean_a,int_a_sq,int_a_cubed,ay_at_0,min_ayy_interior,"
    "pxx_at_0,riccati_bound,dt_accepted"
)


def _g(x):
    return f"{x:.17g}"


def write_diagnostics(path, violate_bound=False):
    """Synthetic run shaped like a real one: a(t,1) = 3/(1.5 - t)."""
    t = np.linspace(0.0, 1.2, 60)
    a1 = 3.0 / (1.5 - t)
    bound = 2.0 * 3.0 / (3.0 - 2.0 * t)  # a0(1) = 2
    if violate_bound:
        a1 = 0.5 * bound
    rows = [DIAG_HEADER]
    for k in range(t.shape[0]):
        sq = a1[k] ** 2 / 4.0
        rows.append(
            ",".join(
                [
                    _g(t[k]),
                    _g(a1[k]),
                    _g(1e-16),
                    _g(sq),
                    _g(sq * a1[k] / 2.0),
                    _g(1e-12),
                    _g(6.0 + t[k]),
                    _g(-2.0 * sq),
                    _g(bound[k]),
                    _g(0.01),
                ]
            )
        )
    path.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return path


def write_sweep(path):
    lines = ["param,a0_at_1,T_est,paper_bound,ratio"]
    for c, ratio in ((1.0, 0.47), (2.0, 0.47), (3.0, 0.48)):
        a01 = 2 * c / 3
        bound = 3 / a01
        lines.append(f"{_g(c)},{_g(a01)},{_g(ratio * bound)},{_g(bound)},{_g(ratio)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_path_csv(path, y0=0.5):
    t = np.linspace(0.0, 1.0, 40)
    lines = ["t,Y,a_yy"]
    for k in range(t.shape[0]):
        lines.append(f"{_g(t[k])},{_g(y0 + 0.2 * t[k])},{_g(6.0 * np.exp(t[k]))}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_profiles(path):
    y = np.linspace(0.0, 1.0, 33)
    lines = ["t,y,a"]
    for tv in (0.0, 0.3, 0.6):
        for yy in y:
            lines.append(f"{_g(tv)},{_g(yy)},{_g(3 * (yy**2 - 1 / 3) * (1 + tv))}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def diag_csv(tmp_path):
    return write_diagnostics(tmp_path / "diagnostics.csv")


@pytest.fixture
def sweep_csv(tmp_path):
    return write_sweep(tmp_path / "sweep.csv")


@pytest.fixture
def path_csv(tmp_path):
    return write_path_csv(tmp_path / "path_0.5.csv")


@pytest.fixture
def profiles_csv(tmp_path):
    return write_profiles(tmp_path / "profiles.csv")
