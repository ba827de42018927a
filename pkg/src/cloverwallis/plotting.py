"""Matplotlib figures written next to the tabular output.

Uses the Agg backend so nothing needs a display.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .clover import sample_curve  # noqa: E402
from .wallis import ConvergenceRow  # noqa: E402

_NAMES = {1: "Cardioid", 2: "Circle", 3: "Clover", 4: "Lemniscate"}


_METADATA = {
    ".png": {"Software": None},
    ".svg": {"Creator": None, "Date": None},
    ".pdf": {"Creator": None, "Producer": None, "CreationDate": None},
}


def _finish(fig, path):
    # Stripped metadata and a fixed hash salt keep repeated renders byte-identical.
    metadata = _METADATA.get(Path(path).suffix.lower())
    with matplotlib.rc_context({"svg.hashsalt": "cloverwallis"}):
        fig.savefig(path, dpi=150, bbox_inches="tight", metadata=metadata)
    plt.close(fig)


def plot_clovers(ms, path, samples=361):
    """Small multiples of the full m-clover for each ``m``."""
    ms = list(ms)
    fig, axes = plt.subplots(1, len(ms), figsize=(3 * len(ms), 3.2), squeeze=False)
    for ax, m in zip(axes[0], ms):
        points = sample_curve(m, principal_only=False, samples=samples)
        leaves = sorted({p.leaf for p in points})
        for leaf in leaves:
            xs = [p.x for p in points if p.leaf == leaf]
            ys = [p.y for p in points if p.leaf == leaf]
            ax.plot(xs, ys, color="k" if leaf else "C3", lw=1.2)
        ax.set_aspect("equal")
        ax.set_xlim(-1.1, 1.1)
        ax.set_ylim(-1.1, 1.1)
        ax.axhline(0, color="0.8", lw=0.5)
        ax.axvline(0, color="0.8", lw=0.5)
        ax.set_title(f"m = {m}" + (f" ({_NAMES[m]})" if m in _NAMES else ""), fontsize=10)
        ax.set_xticks([])
        ax.set_yticks([])
    _finish(fig, path)


def plot_convergence(m: int, rows: list[ConvergenceRow], path):
    """Log-log error of the partial products with the ``N * error`` column alongside."""
    ns = [r.N for r in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3.2))
    ax1.loglog(ns, [r.error for r in rows], "o-", color="C0")
    ax1.set_xlabel("N")
    ax1.set_ylabel(r"$P_N - \varpi_m$")
    ax1.set_title(f"m = {m}: partial product error", fontsize=10)
    ax2.semilogx(ns, [r.N_error for r in rows], "s-", color="C1")
    ax2.set_xlabel("N")
    ax2.set_ylabel(r"$N\,(P_N - \varpi_m)$")
    ax2.set_title("first-order constant", fontsize=10)
    fig.tight_layout()
    _finish(fig, path)
