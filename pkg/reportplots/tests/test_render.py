import shutil
import subprocess
import sys

import pytest

from conftest import write_diagnostics, write_path_csv
from reportplots.cli import run_cli


def test_blowup_curve(tmp_path, diag_csv):
    out = tmp_path / "fig.png"
    assert run_cli(["--kind", "blowup_curve", "--in", str(diag_csv), "--out", str(out)]) == 0
    assert out.stat().st_size > 1000


def test_blowup_curve_log_scale(tmp_path, diag_csv):
    out = tmp_path / "fig_log.png"
    code = run_cli(["--kind", "blowup_curve", "--in", str(diag_csv), "--out", str(out), "--logy"])
    assert code == 0 and out.exists()


def test_reciprocal_fit(tmp_path, diag_csv):
    out = tmp_path / "fit.png"
    assert run_cli(["--kind", "reciprocal_fit", "--in", str(diag_csv), "--out", str(out)]) == 0
    assert out.exists()


def test_profiles(tmp_path, profiles_csv):
    out = tmp_path / "profiles.png"
    assert run_cli(["--kind", "profiles", "--in", str(profiles_csv), "--out", str(out)]) == 0
    assert out.exists()


def test_sweep_ratio(tmp_path, sweep_csv):
    out = tmp_path / "sweep.png"
    assert run_cli(["--kind", "sweep_ratio", "--in", str(sweep_csv), "--out", str(out)]) == 0
    assert out.exists()


def test_characteristic_multi_input(tmp_path, path_csv):
    other = write_path_csv(tmp_path / "path_0.7.csv", y0=0.7)
    out = tmp_path / "char.png"
    code = run_cli(
        ["--kind", "characteristic", "--in", str(path_csv), str(other), "--out", str(out)]
    )
    assert code == 0 and out.exists()


def test_render_is_deterministic(tmp_path, diag_csv):
    a = tmp_path / "a.png"
    b = tmp_path / "b.png"
    run_cli(["--kind", "blowup_curve", "--in", str(diag_csv), "--out", str(a)])
    run_cli(["--kind", "blowup_curve", "--in", str(diag_csv), "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_render_never_touches_inputs(tmp_path, diag_csv):
    before = diag_csv.read_bytes()
    run_cli(["--kind", "blowup_curve", "--in", str(diag_csv), "--out", str(tmp_path / "x.png")])
    assert diag_csv.read_bytes() == before


def test_embedded_dominance_check_trips(tmp_path, capsys):
    bad = write_diagnostics(tmp_path / "bad.csv", violate_bound=True)
    code = run_cli(["--kind", "blowup_curve", "--in", str(bad), "--out", str(tmp_path / "x.png")])
    assert code == 3
    assert "dominance" in capsys.readouterr().err


def test_schema_mismatch_prints_column_diff(tmp_path, capsys):
    wrong = tmp_path / "wrong.csv"
    wrong.write_text("t,a_at_1,extra\n0,1,2\n", encoding="utf-8")
    code = run_cli(["--kind", "blowup_curve", "--in", str(wrong), "--out", str(tmp_path / "x.png")])
    assert code == 2
    err = capsys.readouterr().err
    assert "missing" in err and "unexpected" in err


def test_header_only_file_rejected(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text(
        "t,a_at_1,mean_a,int_a_sq,int_a_cubed,ay_at_0,min_ayy_interior,"
        "pxx_at_0,riccati_bound,dt_accepted\n",
        encoding="utf-8",
    )
    code = run_cli(["--kind", "blowup_curve", "--in", str(empty), "--out", str(tmp_path / "x.png")])
    assert code == 2
    assert "no data rows" in capsys.readouterr().err


def test_missing_file_rejected(tmp_path):
    code = run_cli(
        ["--kind", "blowup_curve", "--in", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "x.png")]
    )
    assert code == 2


def test_usage_errors(tmp_path, diag_csv):
    assert run_cli(["--kind", "nonsense", "--in", str(diag_csv), "--out", "x.png"]) == 1
    assert run_cli(["--kind", "blowup_curve", "--in", str(diag_csv), "x", "--out", "x.png"]) == 1
    assert run_cli(["--in", str(diag_csv), "--out", "x.png"]) == 1


@pytest.mark.skipif(shutil.which("hydroblow") is None, reason="producer CLI not installed")
def test_full_pipeline_from_real_runs(tmp_path):
    """End to end: real c=3 run and 3-point sweep feed all five kinds."""
    run_dir = tmp_path / "run"
    sweep_dir = tmp_path / "sweep"
    subprocess.run(
        ["hydroblow", "simulate", "--family", "poly2", "--c", "3", "--nodes", "257",
         "--out", str(run_dir)],
        check=True,
        capture_output=True,
    )
    subprocess.run(
        ["hydroblow", "characteristics", "--family", "poly2", "--c", "3", "--nodes", "129",
         "--y0", "0.3,0.7", "--out", str(run_dir / "char")],
        check=True,
        capture_output=True,
    )
    subprocess.run(
        ["hydroblow", "sweep", "--family", "poly2", "--c", "1,2,3", "--nodes", "129",
         "--out", str(sweep_dir)],
        check=True,
        capture_output=True,
    )
    jobs = [
        ("blowup_curve", [run_dir / "diagnostics.csv"]),
        ("reciprocal_fit", [run_dir / "diagnostics.csv"]),
        ("profiles", [run_dir / "profiles.csv"]),
        ("sweep_ratio", [sweep_dir / "sweep.csv"]),
        ("characteristic", [run_dir / "char" / "path_0.3.csv", run_dir / "char" / "path_0.7.csv"]),
    ]
    for kind, inputs in jobs:
        out = tmp_path / f"{kind}.png"
        code = run_cli(["--kind", kind, "--in", *[str(p) for p in inputs], "--out", str(out)])
        assert code == 0, f"{kind} failed"
        assert out.stat().st_size > 1000
    assert sys.version_info >= (3, 10)
