"""`render` script: one figure per invocation from simulator CSV files.

    render --kind blowup_curve --in diagnostics.csv --out fig1.png

Exit codes: 0 rendered, 1 usage error, 2 schema/runtime error (with the
column diff printed), 3 embedded dominance check failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import figures
from .schema import SchemaError, read_diagnostics, read_path, read_profiles, read_sweep

KINDS = ("blowup_curve", "reciprocal_fit", "profiles", "sweep_ratio", "characteristic")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SCHEMA = 2
EXIT_CHECK = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


class _Usage(ValueError):
    pass


def render(kind: str, inputs: list[str], out: str, *, logy: bool = False,
           window: int = 20, dpi: int = 150) -> None:
    """Render one figure kind to a file; raises on schema or check failure."""
    if kind == "blowup_curve":
        fig = figures.blowup_curve(read_diagnostics(inputs[0]), logy=logy)
    elif kind == "reciprocal_fit":
        fig = figures.reciprocal_fit(read_diagnostics(inputs[0]), window=window)
    elif kind == "profiles":
        fig = figures.profiles(read_profiles(inputs[0]))
    elif kind == "sweep_ratio":
        fig = figures.sweep_ratio(read_sweep(inputs[0]))
    elif kind == "characteristic":
        fig = figures.characteristic([read_path(p) for p in inputs])
    else:
        raise _Usage(f"unknown figure kind {kind!r}")
    out_path = Path(out)
    if out_path.parent and not out_path.parent.exists():
        out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, dpi=dpi)
    import matplotlib.pyplot as plt

    plt.close(fig)


def run_cli(argv: list[str] | None = None) -> int:
    parser = _Parser(prog="render", description=__doc__)
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--in", dest="inputs", required=True, nargs="+",
                        help="input CSV file(s); characteristic accepts several")
    parser.add_argument("--out", required=True, help="output image path (.png, .pdf, .svg)")
    parser.add_argument("--logy", action="store_true", help="log scale for blowup_curve")
    parser.add_argument("--window", type=int, default=20,
                        help="tail rows used by the reciprocal fit (default 20)")
    parser.add_argument("--dpi", type=int, default=150)
    try:
        args = parser.parse_args(argv)
        if args.kind != "characteristic" and len(args.inputs) != 1:
            raise _Usage(f"--kind {args.kind} takes exactly one input file")
        render(args.kind, args.inputs, args.out, logy=args.logy,
               window=args.window, dpi=args.dpi)
        print(f"wrote {args.out}")
        return EXIT_OK
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except figures.DominanceViolation as exc:
        print(f"dominance check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
