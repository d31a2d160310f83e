"""Command-line laboratory: single runs, bound-verification sweeps, lemma
checks, fuzzing, characteristic studies, and a frame-change demo.

Outputs are plain UTF-8 CSV (LF endings, header row, 17 significant digits
so every float round-trips) plus a human-readable summary.txt. Exit codes:
0 success, 1 usage error, 2 runtime error, 3 property violation.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .characteristics import DEFAULT_PATH_TOLERANCE, trace_reduced_characteristic
from .errors import HydroblowError, PropertyViolationError, UsageError
from .fields2d import (
    GalileanShift,
    galilean_transform,
    hydrostatic_residual,
    shear_flow_field,
    verify_characteristic_ode,
)
from .grid import Profile, build_grid
from .integrator import SimConfig, SimResult, Termination, simulate
from .lemmas import (
    FAMILIES,
    check_convexity_lemma,
    fuzz_convexity_lemma,
    make_initial_profile,
    validate_hypotheses,
)
from .reduced import DiagnosticsRow

DIAGNOSTICS_HEADER = (
    "t,a_at_1,mean_a,int_a_sq,int_a_cubed,ay_at_0,min_ayy_interior,"
    "pxx_at_0,riccati_bound,dt_accepted"
)
SWEEP_HEADER = "param,a0_at_1,T_est,paper_bound,ratio"
PATH_HEADER = "t,Y,a_yy"
PROFILES_HEADER = "t,y,a"

#: Relative slack allowed on the lower-bound dominance check.
RICCATI_SLACK = 1e-3
#: T_est may exceed the comparison bound by at most this relative margin.
DEFAULT_SWEEP_TOLERANCE = 0.05

_ENV_OUT = "HYDROBLOW_OUT"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2
EXIT_PROPERTY = 3


def _g17(x: float | None) -> str:
    """Serialize one float with 17 significant digits; None becomes empty."""
    if x is None:
        return ""
    return f"{float(x):.17g}"


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports usage problems via UsageError (exit 1)."""

    def error(self, message):
        raise UsageError(message)


def _float_list(text: str) -> list[float]:
    items = [s for s in text.split(",") if s.strip()]
    try:
        return [float(s) for s in items]
    except ValueError as exc:
        raise UsageError(f"bad numeric list {text!r}") from exc


# ---------------------------------------------------------------------------
# configuration assembly


_CONFIG_KEYS = {
    "family": str,
    "c": str,
    "c1": str,
    "c2": str,
    "k": str,
    "nodes": int,
    "tmax": float,
    "rtol": float,
    "atol": float,
    "threshold": float,
    "dt_init": float,
    "dt_min": float,
    "stride": int,
    "project_mean": bool,
    "out": str,
    "seed": int,
    "jobs": int,
    "y0": str,
    "trials": int,
    "sweep_tol": float,
}


def _load_config_file(path: str) -> dict:
    """Flat key=value text with # comments; keys mirror the long flags."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip().replace("-", "_")
        val = val.strip()
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        caster = _CONFIG_KEYS[key]
        try:
            if caster is bool:
                if val.lower() not in ("true", "false", "0", "1"):
                    raise ValueError(val)
                values[key] = val.lower() in ("true", "1")
            else:
                values[key] = caster(val)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {val!r}") from exc
    return values


def _merge(args: argparse.Namespace, key: str, default):
    """Precedence: explicit flag, then config file, then default."""
    flag_val = getattr(args, key, None)
    if flag_val is not None:
        return flag_val
    if key in args._config:
        return args._config[key]
    return default


def _resolve_outdir(args) -> Path:
    out = _merge(args, "out", None)
    if out is None:
        out = os.environ.get(_ENV_OUT) or "out"
    path = Path(out)
    try:
        path.mkdir(parents=True, exist_ok=True)
        probe = path / ".write_probe"
        probe.write_text("", encoding="utf-8")
        probe.unlink()
    except OSError as exc:
        raise UsageError(f"output directory {path} is not writable: {exc}") from exc
    return path


def _sim_config(args) -> SimConfig:
    cfg = SimConfig(
        n_nodes=int(_merge(args, "nodes", 257)),
        t_max=float(_merge(args, "tmax", 10.0)),
        rtol=float(_merge(args, "rtol", 1e-8)),
        atol=float(_merge(args, "atol", 1e-10)),
        dt_init=float(_merge(args, "dt_init", 1e-3)),
        dt_min=float(_merge(args, "dt_min", 1e-12)),
        blowup_threshold=float(_merge(args, "threshold", 1e6)),
        output_stride=int(_merge(args, "stride", 1)),
        project_mean=bool(_merge(args, "project_mean", True)),
    )
    try:
        cfg.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return cfg


def _family_params(args) -> tuple[str, dict]:
    family = _merge(args, "family", None)
    if family is None:
        raise UsageError("--family is required (poly2, poly4, or coshk)")
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    raw = {key: _merge(args, key, None) for key in ("c", "c1", "c2", "k")}
    params = {}
    for key, val in raw.items():
        if val is None:
            continue
        vals = _float_list(str(val))
        if len(vals) != 1:
            raise UsageError(f"--{key} takes a single value here, got {val!r}")
        params[key] = vals[0]
    defaults = {"poly2": {"c": 3.0}, "poly4": {"c1": 1.0, "c2": 1.0}, "coshk": {"c": 1.0, "k": 1.0}}
    merged = defaults[family] | {k: v for k, v in params.items() if k in defaults[family]}
    return family, merged


# ---------------------------------------------------------------------------
# writers


def _write_text(path: Path, lines: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_csv(path: Path, header: str, rows: list[str]) -> None:
    _write_text(path, [header, *rows])


def _diag_csv_row(row: DiagnosticsRow) -> str:
    return ",".join(
        [
            _g17(row.t),
            _g17(row.a_at_1),
            _g17(row.mean_a),
            _g17(row.int_a_sq),
            _g17(row.int_a_cubed),
            _g17(row.ay_at_0),
            _g17(row.min_ayy_interior),
            _g17(row.pxx_at_0),
            _g17(row.riccati_bound),
            _g17(row.dt_accepted),
        ]
    )


def write_diagnostics_csv(path: Path, rows: list[DiagnosticsRow]) -> None:
    _write_csv(path, DIAGNOSTICS_HEADER, [_diag_csv_row(r) for r in rows])


def write_profiles_csv(path: Path, result: SimResult, n_snapshots: int = 9) -> None:
    """Long-format profile snapshots at evenly spaced times of the run."""
    dense = result.dense
    rows = []
    times = np.linspace(dense.t0, dense.t1, n_snapshots)
    for t in times:
        vals = dense.state_values(float(t))
        for y, a in zip(dense.grid.nodes, vals):
            rows.append(f"{_g17(float(t))},{_g17(float(y))},{_g17(float(a))}")
    _write_csv(path, PROFILES_HEADER, rows)


def riccati_violations(rows: list[DiagnosticsRow]) -> list[DiagnosticsRow]:
    """Rows where the wall value drops below the lower bound beyond slack.

    Rows without a bound (hypotheses unmet or t past the bound's own
    blowup time) are skipped; the caller restricts the time range.
    """
    bad = []
    for row in rows:
        if row.riccati_bound is None:
            continue
        if row.a_at_1 * (1.0 + RICCATI_SLACK) < row.riccati_bound:
            bad.append(row)
    return bad


# ---------------------------------------------------------------------------
# commands


def _run_single(args) -> tuple[SimResult, str, dict, SimConfig, Profile]:
    family, params = _family_params(args)
    cfg = _sim_config(args)
    grid = build_grid(cfg.n_nodes)
    try:
        a0 = make_initial_profile(grid, family, params)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return simulate(cfg, a0), family, params, cfg, a0


def _summary_head(family: str, params: dict, cfg: SimConfig, result: SimResult) -> list[str]:
    pstr = ", ".join(f"{k}={v:g}" for k, v in sorted(params.items()))
    lines = [
        f"command input: family={family} ({pstr}), nodes={cfg.n_nodes}, "
        f"t_max={cfg.t_max:g}, rtol={cfg.rtol:g}, atol={cfg.atol:g}, "
        f"threshold={cfg.blowup_threshold:g}, project_mean={cfg.project_mean}",
        f"termination: {result.termination.value}"
        + (f" (trigger: {result.blowup_trigger})" if result.blowup_trigger else ""),
        f"final time: {result.final_state.time:.17g}",
        f"rows written: {len(result.rows)}",
    ]
    if result.estimated_blowup_time is not None:
        est = result.blowup_estimate
        lines.append(
            f"estimated blowup time T_est = {result.estimated_blowup_time:.17g} "
            f"(fit correlation {est.correlation:.6f}"
            + (", LOW CONFIDENCE" if est.low_confidence else "")
            + ")"
        )
    rep = result.hypothesis_report
    if rep is not None:
        lines.append("")
        lines.append(rep.to_text())
        if rep.all_pass and rep.a0_at_1 > 0:
            bound_T = 3.0 / rep.a0_at_1
            lines.append(f"comparison-bound blowup time 3/a0(1) = {bound_T:.17g}")
            if result.estimated_blowup_time is not None:
                lines.append(
                    f"ratio T_est / bound = {result.estimated_blowup_time / bound_T:.6f}"
                )
    return lines


def cmd_simulate(args) -> int:
    outdir = _resolve_outdir(args)
    result, family, params, cfg, _ = _run_single(args)
    write_diagnostics_csv(outdir / "diagnostics.csv", result.rows)
    write_profiles_csv(outdir / "profiles.csv", result)
    lines = _summary_head(family, params, cfg, result)

    code = EXIT_OK
    if result.termination is Termination.CONSTRAINT_VIOLATION:
        lines.append("RUNTIME ERROR: run ended in a constraint violation")
        code = EXIT_RUNTIME
    rep = result.hypothesis_report
    if rep is not None and rep.all_pass and rep.a0_at_1 > 0:
        t_limit = 0.98 * 3.0 / rep.a0_at_1
        bad = riccati_violations([r for r in result.rows if r.t < t_limit])
        if bad:
            lines.append(
                f"PROPERTY VIOLATION: wall value fell below the lower bound on "
                f"{len(bad)} rows (first at t={bad[0].t:.6g})"
            )
            code = EXIT_PROPERTY
        else:
            lines.append("lower-bound dominance: holds on every checked row")
    _write_text(outdir / "summary.txt", lines)
    print(f"wrote {outdir / 'diagnostics.csv'}, profiles.csv, summary.txt")
    return code


@dataclass
class _SweepTask:
    param_name: str
    value: float
    family: str
    params: dict
    cfg: SimConfig


def _sweep_worker(task: _SweepTask) -> dict:
    grid = build_grid(task.cfg.n_nodes)
    a0 = make_initial_profile(grid, task.family, task.params)
    result = simulate(task.cfg, a0)
    rep = result.hypothesis_report
    a0_at_1 = rep.a0_at_1
    out = {
        "value": task.value,
        "a0_at_1": a0_at_1,
        "termination": result.termination.value,
        "t_est": result.estimated_blowup_time,
        "hyp_ok": rep.all_pass and a0_at_1 > 0,
    }
    return out


def cmd_sweep(args) -> int:
    outdir = _resolve_outdir(args)
    family, base_params = _family_params_sweep(args)
    axis_name, values = _sweep_axis(args, family)
    if not values:
        raise UsageError(f"sweep over --{axis_name} got an empty value list")
    cfg = _sim_config(args)
    jobs = int(_merge(args, "jobs", 1))
    sweep_tol = float(_merge(args, "sweep_tol", DEFAULT_SWEEP_TOLERANCE))

    tasks = []
    for v in values:
        params = dict(base_params)
        params[axis_name] = v
        tasks.append(_SweepTask(axis_name, v, family, params, cfg))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_worker, tasks))
    else:
        results = [_sweep_worker(t) for t in tasks]

    rows = []
    lines = [
        f"sweep over {axis_name} for family {family}: values {values}",
        f"nodes={cfg.n_nodes}, threshold={cfg.blowup_threshold:g}, jobs={jobs}",
        "",
    ]
    worst_ratio = -np.inf
    for res in results:
        if res["termination"] != Termination.BLOWUP_DETECTED.value or res["t_est"] is None:
            raise HydroblowError(
                f"sweep value {axis_name}={res['value']:g} did not reach blowup "
                f"(termination: {res['termination']}); raise t_max or threshold"
            )
        if not res["hyp_ok"]:
            raise HydroblowError(
                f"sweep value {axis_name}={res['value']:g} violates the initial-data hypotheses"
            )
        paper_bound = 3.0 / res["a0_at_1"]
        ratio = res["t_est"] / paper_bound
        worst_ratio = max(worst_ratio, ratio)
        rows.append(
            ",".join(
                [
                    _g17(res["value"]),
                    _g17(res["a0_at_1"]),
                    _g17(res["t_est"]),
                    _g17(paper_bound),
                    _g17(ratio),
                ]
            )
        )
        lines.append(
            f"{axis_name}={res['value']:g}: a0(1)={res['a0_at_1']:.6g} "
            f"T_est={res['t_est']:.6g} bound={paper_bound:.6g} ratio={ratio:.4f}"
        )
    _write_csv(outdir / "sweep.csv", SWEEP_HEADER, rows)

    code = EXIT_OK
    if worst_ratio > 1.0 + sweep_tol:
        lines.append(
            f"PROPERTY VIOLATION: max ratio {worst_ratio:.4f} exceeds 1 + {sweep_tol:g}"
        )
        code = EXIT_PROPERTY
    else:
        lines.append(f"all ratios within 1 + {sweep_tol:g} (max {worst_ratio:.4f})")
    _write_text(outdir / "summary.txt", lines)
    print(f"wrote {outdir / 'sweep.csv'}, summary.txt")
    return code


def _family_params_sweep(args) -> tuple[str, dict]:
    family = _merge(args, "family", None)
    if family is None:
        raise UsageError("--family is required")
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}")
    defaults = {"poly2": {"c": 3.0}, "poly4": {"c1": 1.0, "c2": 1.0}, "coshk": {"c": 1.0, "k": 1.0}}
    return family, defaults[family]


def _sweep_axis(args, family: str) -> tuple[str, list[float]]:
    """Exactly one family-constant flag must carry the value list."""
    lists = {}
    for key in ("c", "c1", "c2", "k"):
        val = _merge(args, key, None)
        if val is None:
            continue
        lists[key] = _float_list(str(val))
    multi = {k: v for k, v in lists.items() if len(v) != 1}
    if len(lists) == 0:
        raise UsageError("sweep needs one family constant with a comma-separated value list")
    if len(multi) > 1:
        raise UsageError("only one family constant may carry a value list")
    if multi:
        return next(iter(multi.items()))
    # a single-valued flag still defines the axis
    return next(iter(lists.items()))


def cmd_lemma_check(args) -> int:
    outdir = _resolve_outdir(args)
    n_nodes = int(_merge(args, "nodes", 257))
    if n_nodes % 2 == 0 or n_nodes < 9:
        raise UsageError(f"--nodes must be odd and >= 9, got {n_nodes}")
    grid = build_grid(n_nodes)
    spec = getattr(args, "f", None)
    if spec:
        values = _profile_from_spec(spec, grid)
        label = spec
    else:
        family, params = _family_params(args)
        values = make_initial_profile(grid, family, params).values
        label = f"{family} {params}"
    profile = Profile(grid, values)
    report = check_convexity_lemma(profile)
    hyp = validate_hypotheses(profile)
    _write_csv(outdir / "lemma_report.csv", report.csv_header(), [report.csv_row()])
    lines = [f"test function: {label}", "", report.to_text(), "", hyp.to_text()]
    _write_text(outdir / "summary.txt", lines)
    print("\n".join(lines))
    return EXIT_OK if report.inequality_holds or not report.hypotheses_met else EXIT_PROPERTY


def _profile_from_spec(spec: str, grid) -> np.ndarray:
    """Parse 'poly:<terms in y>' into samples; terms like 3*y^2, -1/3, y."""
    kind, _, expr = spec.partition(":")
    if kind != "poly" or not expr:
        raise UsageError(f"bad profile spec {spec!r}; expected poly:<expression>")
    return _eval_poly(expr, grid.nodes)


def _eval_poly(expr: str, y: np.ndarray) -> np.ndarray:
    """Tiny polynomial evaluator: sum of [coef][*][y[^k]] terms.

    Coefficients may be decimals or rationals p/q. No parentheses.
    """
    text = expr.replace(" ", "")
    if not text:
        raise UsageError("empty polynomial expression")
    # split into signed terms
    terms = []
    start = 0
    for i, ch in enumerate(text):
        if ch in "+-" and i > 0 and text[i - 1] not in "+-*/^":
            terms.append(text[start:i])
            start = i
    terms.append(text[start:])
    out = np.zeros_like(y)
    for term in terms:
        if not term or term in "+-":
            raise UsageError(f"bad term in polynomial: {expr!r}")
        sign = 1.0
        body = term
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:]
        coef = 1.0
        power = 0
        if "y" in body:
            coef_part, _, tail = body.partition("y")
            coef_part = coef_part.rstrip("*")
            if coef_part:
                coef = _parse_number(coef_part, expr)
            if tail:
                if not tail.startswith("^"):
                    raise UsageError(f"bad exponent syntax in {term!r}")
                try:
                    power = int(tail[1:])
                except ValueError as exc:
                    raise UsageError(f"bad exponent in {term!r}") from exc
            else:
                power = 1
        else:
            coef = _parse_number(body, expr)
        out = out + sign * coef * y**power
    return out


def _parse_number(text: str, context: str) -> float:
    if "/" in text:
        num, _, den = text.partition("/")
        try:
            return float(num) / float(den)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad rational {text!r} in {context!r}") from exc
    try:
        return float(text)
    except ValueError as exc:
        raise UsageError(f"bad number {text!r} in {context!r}") from exc


def cmd_fuzz(args) -> int:
    outdir = _resolve_outdir(args)
    seed = int(_merge(args, "seed", 0))
    trials = int(_merge(args, "trials", 1000))
    n_nodes = int(_merge(args, "nodes", 257))
    if n_nodes % 2 == 0 or n_nodes < 9:
        raise UsageError(f"--nodes must be odd and >= 9, got {n_nodes}")
    try:
        summary = fuzz_convexity_lemma(seed, trials, n_nodes=n_nodes)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    lines = [
        f"fuzz campaign: seed={summary.seed}, trials={summary.n_trials}, nodes={summary.n_nodes}",
        f"violations: {summary.violations}",
        f"max observed ratio int f^2 / (f(1)^2/3): {summary.max_ratio:.17g} "
        f"(trial {summary.max_ratio_trial})",
    ]
    _write_csv(
        outdir / "fuzz_report.csv",
        "seed,trials,nodes,violations,max_ratio,max_ratio_trial",
        [
            f"{summary.seed},{summary.n_trials},{summary.n_nodes},"
            f"{summary.violations},{_g17(summary.max_ratio)},{summary.max_ratio_trial}"
        ],
    )
    _write_text(outdir / "summary.txt", lines)
    print("\n".join(lines))
    return EXIT_OK


def cmd_characteristics(args) -> int:
    outdir = _resolve_outdir(args)
    result, family, params, cfg, _ = _run_single(args)
    write_diagnostics_csv(outdir / "diagnostics.csv", result.rows)
    y0_list = _float_list(str(_merge(args, "y0", "0.1,0.3,0.5,0.7,0.9")))
    if not y0_list:
        raise UsageError("--y0 got an empty list")
    cut = cfg.blowup_threshold / 10.0
    t_end = next((r.t for r in result.rows if abs(r.a_at_1) >= cut), None)
    lines = _summary_head(family, params, cfg, result)
    lines.append("")
    code = EXIT_OK
    for y0 in y0_list:
        path = trace_reduced_characteristic(result, y0, t_end=t_end)
        rows = [
            f"{_g17(float(t))},{_g17(float(yv))},{_g17(float(c))}"
            for t, yv, c in zip(path.times, path.y_values, path.a_yy_along)
        ]
        _write_csv(outdir / f"path_{y0:g}.csv", PATH_HEADER, rows)
        mono = path.monotone_within(DEFAULT_PATH_TOLERANCE)
        growth = path.a_yy_along[-1] / path.a_yy_along[0] if path.a_yy_along[0] != 0 else np.inf
        lines.append(
            f"path y0={y0:g}: {len(path.times)} samples, curvature growth x{growth:.4g}, "
            f"monotone within {DEFAULT_PATH_TOLERANCE:g}: {'yes' if mono else 'NO'}"
        )
        if not mono:
            code = EXIT_PROPERTY
    if code == EXIT_PROPERTY:
        lines.append("PROPERTY VIOLATION: curvature decreased along a characteristic")
    _write_text(outdir / "summary.txt", lines)
    print(f"wrote {outdir / 'diagnostics.csv'}, path_<y0>.csv, summary.txt")
    return code


def cmd_transform_demo(args) -> int:
    """Fixed manufactured-solution checks of the frame-change machinery."""
    outdir = _resolve_outdir(args)
    checks: list[tuple[str, float, float]] = []  # (label, value, tolerance)

    def u_profile(yy):
        return 1.0 + yy**2 * (1.0 - yy) / 2.0

    base = shear_flow_field(u_profile)
    mom, div = hydrostatic_residual(base)
    checks.append(("shear flow momentum residual", mom, 1e-10))
    checks.append(("shear flow divergence residual", div, 1e-10))

    shift = GalileanShift(g=lambda t: t * t / 2.0, dg=lambda t: t, d2g=lambda t: 1.0)
    moved = galilean_transform(base, shift)
    mom_t, div_t = hydrostatic_residual(moved)
    checks.append(("transformed shear momentum residual", mom_t, 1e-8))
    checks.append(("transformed shear divergence residual", div_t, 1e-8))

    u_exact = u_profile(moved.y_nodes)[None, None, :] - moved.t_nodes[:, None, None]
    checks.append(
        ("frame-change closed form |u~ - (U(y) - t)|", float(np.max(np.abs(moved.u - u_exact))), 1e-10)
    )

    const = shear_flow_field(lambda yy: np.full_like(yy, 0.7), x_span=(-3.0, 3.0))
    cubic_shift = GalileanShift(g=lambda t: t**3, dg=lambda t: 3 * t * t, d2g=lambda t: 6 * t)
    const_moved = galilean_transform(const, cubic_shift)
    rep = verify_characteristic_ode(const_moved, 0.0, (0.2, 0.5, 0.8))
    checks.append(("constant-line trajectory spread", rep.max_spread, 1e-7))
    checks.append(("trajectory acceleration residual", rep.accel_residual_max, 1e-7))

    back = galilean_transform(moved, shift.inverse())
    i0 = int(np.searchsorted(base.x_nodes, back.x_nodes[0] - 1e-12))
    sl = slice(i0, i0 + back.x_nodes.shape[0])
    checks.append(
        ("round-trip horizontal velocity", float(np.max(np.abs(back.u - base.u[:, sl]))), 1e-8)
    )
    gauge = np.array([shift.g(float(t)) * shift.d2g(float(t)) for t in back.t_nodes])
    checks.append(
        (
            "round-trip pressure (time-gauge removed)",
            float(np.max(np.abs(back.p - base.p[:, sl] - gauge[:, None]))),
            1e-8,
        )
    )

    lines = ["frame-change demonstration on manufactured solutions", ""]
    code = EXIT_OK
    for label, value, tol in checks:
        ok = value <= tol
        lines.append(f"{'PASS' if ok else 'FAIL'}: {label} = {value:.3e} (tolerance {tol:g})")
        if not ok:
            code = EXIT_PROPERTY
    _write_text(outdir / "summary.txt", lines)
    print("\n".join(lines))
    return code


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> _Parser:
    parser = _Parser(prog="hydroblow", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--out", help=f"output directory (fallback ${_ENV_OUT}, then ./out)")
        p.add_argument("--seed", type=int, help="random seed where applicable")
        p.add_argument("--jobs", type=int, help="worker processes for sweeps (default 1)")

    def sim_flags(p):
        p.add_argument("--nodes", type=int, help="odd node count (default 257)")
        p.add_argument("--tmax", type=float, help="time horizon (default 10)")
        p.add_argument("--rtol", type=float, help="relative step tolerance (default 1e-8)")
        p.add_argument("--atol", type=float, help="absolute step tolerance (default 1e-10)")
        p.add_argument("--threshold", type=float, help="sup-norm blowup trigger (default 1e6)")
        p.add_argument("--dt-init", dest="dt_init", type=float, help="initial step (default 1e-3)")
        p.add_argument("--dt-min", dest="dt_min", type=float, help="collapse step (default 1e-12)")
        p.add_argument("--stride", type=int, help="accepted steps per diagnostics row (default 1)")
        p.add_argument(
            "--no-project",
            dest="project_mean",
            action="store_const",
            const=False,
            help="disable the per-step zero-mean projection",
        )

    def data_flags(p):
        p.add_argument("--family", choices=FAMILIES, help="initial-data family")
        p.add_argument("--c", help="poly2/coshk amplitude (comma list in sweep)")
        p.add_argument("--c1", help="poly4 quadratic weight")
        p.add_argument("--c2", help="poly4 quartic weight")
        p.add_argument("--k", help="coshk steepness")

    p_sim = sub.add_parser("simulate", help="run one evolution and write diagnostics")
    common(p_sim), sim_flags(p_sim), data_flags(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="bound-verification sweep over a family constant")
    common(p_sweep), sim_flags(p_sweep), data_flags(p_sweep)
    p_sweep.add_argument("--sweep-tol", dest="sweep_tol", type=float,
                         help=f"allowed T_est/bound excess (default {DEFAULT_SWEEP_TOLERANCE})")
    p_sweep.set_defaults(func=cmd_sweep)

    p_lemma = sub.add_parser("lemma-check", help="evaluate the one-third inequality")
    common(p_lemma), data_flags(p_lemma)
    p_lemma.add_argument("--f", help="test function, e.g. poly:y^2-1/3")
    p_lemma.add_argument("--nodes", type=int, help="odd node count (default 257)")
    p_lemma.set_defaults(func=cmd_lemma_check)

    p_fuzz = sub.add_parser("fuzz", help="randomized inequality campaign")
    common(p_fuzz)
    p_fuzz.add_argument("--trials", type=int, help="number of trials (default 1000)")
    p_fuzz.add_argument("--nodes", type=int, help="odd node count (default 257)")
    p_fuzz.set_defaults(func=cmd_fuzz)

    p_char = sub.add_parser("characteristics", help="trace trajectories of one run")
    common(p_char), sim_flags(p_char), data_flags(p_char)
    p_char.add_argument("--y0", help="comma list of starting heights (default 0.1,...,0.9)")
    p_char.set_defaults(func=cmd_characteristics)

    p_demo = sub.add_parser("transform-demo", help="frame-change checks on closed forms")
    common(p_demo)
    p_demo.set_defaults(func=cmd_transform_demo)

    return parser


def run_cli(argv: list[str] | None = None) -> int:
    """Parse and execute; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        args._config = _load_config_file(args.config) if args.config else {}
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PropertyViolationError as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except HydroblowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
