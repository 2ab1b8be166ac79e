"""Figures for reports: distance profile, orbit loads, and td against its bounds."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .group import Params  # noqa: E402
from .metrics import MetricsReport  # noqa: E402
from .routing import origin_distance_table  # noqa: E402

STYLE = {
    "figure.figsize": (5.0, 3.0),
    "figure.dpi": 150,
    "savefig.bbox": "tight",
    "font.family": "serif",
    "font.size": 9,
    "axes.linewidth": 0.5,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "lines.linewidth": 1.0,
    "legend.frameon": False,
}


def distance_profile(p: Params, out: Path) -> Path:
    """Histogram of router distances from the identity."""
    counts = np.bincount(origin_distance_table(p))
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.bar(np.arange(len(counts)), counts, width=0.8, color="0.35")
        ax.set_xlabel("distance from identity")
        ax.set_ylabel("vertices")
        ax.set_title(f"Q_{p.n}({p.d},{p.r})", fontsize=9)
        fig.savefig(out)
        plt.close(fig)
    return out


def orbit_loads(report: MetricsReport, out: Path) -> Path:
    """Ring and per-direction cube loads of the translated origin routing, per edge."""
    p = report.params
    loads = report.loads
    cube = loads.cube_all if loads.cube_all is not None else [c * p.r for c in loads.cube_at_zero]
    # each orbit edge carries |V| * (orbit edges on origin paths) / |orbit|
    per_edge = [loads.sum_l] + [2 * c for c in cube]
    labels = ["ring"] + [f"E{i}" for i in range(1, p.d + 1)]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.bar(labels, per_edge, color=["0.2"] + ["0.6"] * p.d)
        ax.set_ylabel("paths per edge")
        ax.set_title(f"Q_{p.n}({p.d},{p.r}) orbit loads", fontsize=9)
        fig.savefig(out)
        plt.close(fig)
    return out


def td_against_bounds(rows: list[dict[str, object]], out: Path) -> Path:
    """Exact td relative to the lower and upper bounds, one point per instance."""
    pts = [
        (float(r["vertices"]), float(r["td"]), float(r["td_lo"]), float(r["td_hi"]))
        for r in rows
        if r.get("family") == "Q" and "td" in r
    ]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        if pts:
            v, td, lo, hi = map(np.array, zip(*pts))
            ax.scatter(v, td / hi, s=4, color="0.2", label="td / upper")
            ax.scatter(v, lo / hi, s=4, color="0.65", marker="x", label="lower / upper")
            ax.axhline(1.0, color="0.5", linewidth=0.5)
            ax.set_xscale("log", base=2)
            ax.legend()
        ax.set_xlabel("vertices")
        ax.set_ylabel("ratio to upper bound")
        fig.savefig(out)
        plt.close(fig)
    return out
