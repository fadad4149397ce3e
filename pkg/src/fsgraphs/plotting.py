"""Figures written next to the CSV reports (Agg backend, files only)."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "figure.figsize": (5.0, 3.4),
    "axes.spines.top": False,
    "axes.spines.right": False,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 9,
    "legend.fontsize": 8,
    "savefig.dpi": 150,
}


def figure_path(csv_path, suffix="png") -> Path:
    """foo.csv -> foo.png in the same directory."""
    return Path(csv_path).with_suffix("." + suffix)


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_growth(rows, path, key="diameter", title=None, ref_power=None):
    """Exact values against n, optionally with a c*n^k guide through the last point."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        n = np.array([int(r["n"]) for r in rows])
        y = np.array([float(r[key]) for r in rows])
        ax.plot(n, y, "o-", label=key)
        if ref_power and len(n):
            c = y[-1] / n[-1] ** ref_power
            grid = np.linspace(n.min(), n.max(), 50)
            ax.plot(grid, c * grid ** ref_power, "--", color="0.5", label=f"c n^{ref_power}")
        ax.set_xlabel("n")
        ax.set_ylabel(key)
        ax.set_xticks(n)
        if title:
            ax.set_title(title)
        ax.legend()
        return _save(fig, path)


def plot_reversal(rows, path):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        n = [int(r["n"]) for r in rows]
        ax.plot(n, [int(r["binom"]) for r in rows], "-", color="0.6", label="n choose 2")
        ax.plot(n, [int(r["distance"]) for r in rows], "o", label="oracle distance")
        ax.plot(n, [int(r["solver_length"]) for r in rows], "x", ms=8, label="K_n router")
        ax.set_xlabel("n")
        ax.set_ylabel("swaps")
        ax.set_xticks(n)
        ax.legend()
        return _save(fig, path)


def plot_components(rows, path):
    """Bar chart of component sizes, diameters annotated."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ids = [int(r["component_id"]) for r in rows]
        sizes = [int(r["size"]) for r in rows]
        bars = ax.bar(ids, sizes, color="C0")
        for b, r in zip(bars, rows):
            d = r.get("diameter")
            if d not in (None, ""):
                ax.annotate(f"d={d}", (b.get_x() + b.get_width() / 2, b.get_height()),
                            ha="center", va="bottom", fontsize=7)
        ax.set_xlabel("component id")
        ax.set_ylabel("size")
        if len(ids) > 40:
            ax.set_xticks([])
        return _save(fig, path)


def plot_trials(records, path):
    """Length histogram of solved trials plus condition incidences."""
    with plt.rc_context(STYLE):
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8.0, 3.4))
        lengths = [int(r["length"]) for r in records if r["outcome"] == "solved"]
        if lengths:
            ax1.hist(lengths, bins=min(20, max(1, len(set(lengths)))), color="C0")
        ax1.set_xlabel("sequence length")
        ax1.set_ylabel("trials")
        keys = [k for k in records[0] if k not in ("seed", "outcome", "length", "cause", "steps")] if records else []
        vals = [np.mean([str(r.get(k)) in ("True", "1") for r in records]) for k in keys]
        ax2.barh(range(len(keys)), vals, color="C1")
        ax2.set_yticks(range(len(keys)))
        ax2.set_yticklabels([k.replace("_", " ") for k in keys])
        ax2.set_xlim(0, 1)
        ax2.set_xlabel("incidence")
        return _save(fig, path)
