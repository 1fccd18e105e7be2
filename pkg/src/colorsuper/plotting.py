"""Figures for grid scans of M(h, f)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_LEVEL_CMAP = "viridis"


def plot_reducibility(points, path, title=None, dpi=150):
    """Scatter of the scanned (h, f) points, colored by the lowest singular level.

    Irreducible points are small grey dots.  Points where the numeric search
    and the symbolic classifier disagree get a red ring.
    """
    fig, ax = plt.subplots(figsize=(6.5, 6.6))
    plain = [(float(p.h0), float(p.f0)) for p in points if not p.report.entries]
    if plain:
        xs, ys = zip(*plain)
        ax.scatter(xs, ys, s=6, c="0.75", label="irreducible", zorder=1)
    red = [p for p in points if p.report.entries]
    if red:
        xs = [float(p.h0) for p in red]
        ys = [float(p.f0) for p in red]
        lv = [min(e.level for e in p.report.entries) for p in red]
        sc = ax.scatter(xs, ys, s=22, c=lv, cmap=_LEVEL_CMAP, label="singular vector found", zorder=2)
        fig.colorbar(sc, ax=ax, label="lowest singular level")
    off = [p for p in points if not p.agrees]
    if off:
        ax.scatter([float(p.h0) for p in off], [float(p.f0) for p in off], s=90,
                   facecolors="none", edgecolors="tab:red", linewidths=1.4,
                   label="numeric != classifier", zorder=3)
    lo = min(min(float(p.h0), float(p.f0)) for p in points)
    hi = max(max(float(p.h0), float(p.f0)) for p in points)
    ax.plot([lo, hi], [lo, hi], lw=0.6, ls="--", c="0.4")
    ax.plot([lo, hi], [-lo, -hi], lw=0.6, ls="--", c="0.4")
    ax.set_xlabel("h")
    ax.set_ylabel("f")
    ax.set_aspect("equal", adjustable="box")
    ax.set_title(title or "Singular vectors of M(h, f)")
    ax.legend(loc="upper center", bbox_to_anchor=(0.5, -0.12), ncol=3, fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
