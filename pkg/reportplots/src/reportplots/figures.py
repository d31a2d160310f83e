"""The five figure kinds, publication-plain, one function each.

Every renderer takes parsed tables and returns a matplotlib Figure; the
CLI owns file writing. Nothing here mutates its inputs or embeds
timestamps, so a render is reproducible byte for byte.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schema import DiagnosticsTable, PathTable, ProfilesTable, SweepTable

#: Relative slack used by the embedded dominance check, matching the
#: producer's monitoring convention.
DOMINANCE_SLACK = 1e-3

#: The bound curve is drawn only up to this fraction of its own blowup
#: time, so the asymptote does not dominate the axis.
BOUND_CLIP = 0.98

FIGSIZE = (6.4, 4.2)


class DominanceViolation(RuntimeError):
    """The solution curve dipped below the lower bound while plotting."""


def blowup_curve(table: DiagnosticsTable, logy: bool = False) -> plt.Figure:
    """Wall value against time, with the comparison lower bound overlaid.

    Numerically re-checks dominance on the plotted rows and raises if the
    solution curve falls below the bound beyond the standard slack.
    """
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.plot(table.t, table.a_at_1, color="tab:blue", lw=1.6, label="wall value a(t,1)")
    has_bound = ~np.isnan(table.riccati_bound)
    if np.any(has_bound):
        a0_1 = table.riccati_bound[has_bound][0]
        t_clip = BOUND_CLIP * 3.0 / a0_1
        show = has_bound & (table.t <= t_clip)
        ax.plot(
            table.t[show],
            table.riccati_bound[show],
            color="tab:red",
            lw=1.2,
            ls="--",
            label="lower bound 3a0(1)/(3-a0(1)t)",
        )
        viol = show & (table.a_at_1 * (1.0 + DOMINANCE_SLACK) < table.riccati_bound)
        if np.any(viol):
            k = int(np.nonzero(viol)[0][0])
            raise DominanceViolation(
                f"solution fell below the bound at t={table.t[k]:.6g} "
                f"(a={table.a_at_1[k]:.6g} < bound={table.riccati_bound[k]:.6g})"
            )
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel("t")
    ax.set_ylabel("a(t,1)")
    ax.legend(frameon=False)
    fig.tight_layout()
    return fig


def reciprocal_fit(table: DiagnosticsTable, window: int = 20) -> plt.Figure:
    """1/a(t,1) against time with the tail linear fit and its zero crossing."""
    t = table.t
    a = table.a_at_1
    pos = a > 0
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.plot(t[pos], 1.0 / a[pos], ".", ms=3, color="tab:blue", label="1 / a(t,1)")
    tail = np.nonzero(pos)[0][-min(window, int(np.sum(pos))):]
    if tail.shape[0] >= 2:
        slope, intercept = np.polyfit(t[tail], 1.0 / a[tail], 1)
        if slope < 0:
            t_est = -intercept / slope
            tt = np.linspace(t[tail[0]], t_est, 64)
            ax.plot(tt, slope * tt + intercept, color="tab:red", lw=1.2,
                    label=f"tail fit ({tail.shape[0]} rows)")
            ax.axvline(t_est, color="tab:red", ls=":", lw=1.0)
            ax.annotate(
                f"T_est = {t_est:.6g}",
                xy=(t_est, 0.0),
                xytext=(-8, 12),
                textcoords="offset points",
                ha="right",
                color="tab:red",
            )
    ax.set_xlabel("t")
    ax.set_ylabel("1 / a(t,1)")
    ax.legend(frameon=False)
    fig.tight_layout()
    return fig


def profiles(table: ProfilesTable) -> plt.Figure:
    """Strain profile snapshots a(t, .) coloured by time."""
    fig, ax = plt.subplots(figsize=FIGSIZE)
    cmap = plt.get_cmap("viridis")
    n = table.times.shape[0]
    for i, (tv, vals) in enumerate(zip(table.times, table.values)):
        ax.plot(table.y, vals, color=cmap(i / max(n - 1, 1)), lw=1.2,
                label=f"t = {tv:.4g}")
    ax.set_xlabel("y")
    ax.set_ylabel("a(t, y)")
    ax.legend(frameon=False, fontsize=7, ncol=2)
    fig.tight_layout()
    return fig


def sweep_ratio(table: SweepTable, tolerance: float = 0.05) -> plt.Figure:
    """Bar chart of T_est / bound per swept value, with the allowed band."""
    fig, ax = plt.subplots(figsize=FIGSIZE)
    labels = [f"{p:g}" for p in table.param]
    ax.bar(range(len(labels)), table.ratio, color="tab:blue", width=0.6)
    ax.axhline(1.0, color="black", lw=0.8)
    ax.axhline(1.0 + tolerance, color="tab:red", lw=0.8, ls="--",
               label=f"1 + {tolerance:g}")
    ax.set_xticks(range(len(labels)), labels)
    ax.set_xlabel("swept value")
    ax.set_ylabel("T_est / (3 / a0(1))")
    ax.set_ylim(0.0, max(1.0 + 2 * tolerance, float(np.max(table.ratio)) * 1.15))
    ax.legend(frameon=False)
    fig.tight_layout()
    return fig


def characteristic(tables: list[PathTable]) -> plt.Figure:
    """Curvature along traced trajectories; monotone growth is the point."""
    fig, ax = plt.subplots(figsize=FIGSIZE)
    cmap = plt.get_cmap("plasma")
    n = len(tables)
    for i, tab in enumerate(tables):
        ax.plot(tab.t, tab.a_yy, color=cmap(i / max(n - 1, 1)), lw=1.2, label=tab.label)
    ax.set_xlabel("t")
    ax.set_ylabel("a_yy along trajectory")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    return fig
