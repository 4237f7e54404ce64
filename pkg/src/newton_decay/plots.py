"""Figure rendering for the report path.

Each verification suite (and the polygon analysis) can drop a PNG next to
its CSV/JSON artifacts.  Rendering is best-effort presentation; nothing
here feeds back into any computation.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .newton import NewtonPolygon  # noqa: E402


def save_polygon_figure(p: NewtonPolygon, d, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 5))
    xs = [pt[0] for pt in p.support]
    ys = [pt[1] for pt in p.support]
    ax.scatter(xs, ys, s=30, color="0.6", zorder=3, label="support")
    vx = [v.v1 for v in p.vertices]
    vy = [v.v2 for v in p.vertices]
    ax.scatter(vx, vy, s=60, color="C3", zorder=4, label="vertices")
    ax.plot(vx, vy, color="C0", lw=2, zorder=2)
    reach = max(max(xs), max(ys), math.ceil(float(d))) + 1
    ax.plot([vx[0], reach], [vy[0], vy[0]], color="C0", lw=2, ls="--")
    ax.plot([vx[-1], vx[-1]], [vy[-1], reach], color="C0", lw=2, ls="--")
    ax.plot([0, reach], [0, reach], color="0.8", lw=1)
    ax.scatter([float(d)], [float(d)], marker="x", s=70, color="C2",
               zorder=5, label=f"d = {d}")
    ax.set_xlim(-0.3, reach)
    ax.set_ylim(-0.3, reach)
    ax.set_xlabel("exponent of x1")
    ax.set_ylabel("exponent of x2")
    ax.legend(loc="upper right", fontsize=8)
    ax.set_title("Newton polygon")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_loglog_fit(samples, slope: float, intercept_at: tuple[float, float],
                    path: Path, xlabel: str, title: str,
                    extra_slope: float | None = None,
                    extra_label: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(5.5, 4))
    xs = [s[0] for s in samples]
    ys = [s[1] for s in samples]
    ax.loglog(xs, ys, "o", ms=4, color="C0", label="samples")
    x0, y0 = intercept_at
    grid = [min(xs), max(xs)]
    ax.loglog(grid, [y0 * (g / x0) ** slope for g in grid], "-", color="C1",
              label=f"fit slope {slope:.3f}")
    if extra_slope is not None:
        ax.loglog(grid, [y0 * (g / x0) ** extra_slope for g in grid], "--",
                  color="C2", label=extra_label or f"predicted {extra_slope:.3f}")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("value")
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_ratio_heatmap(rows, path: Path) -> Path:
    import numpy as np

    js = sorted({r.j for r in rows})
    ks = sorted({r.k for r in rows})
    grid = np.full((len(ks), len(js)), math.nan)
    for r in rows:
        grid[ks.index(r.k), js.index(r.j)] = math.log10(r.ratio)
    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    im = ax.imshow(grid, origin="lower", aspect="auto", cmap="viridis",
                   extent=(min(js) - 0.5, max(js) + 0.5,
                           min(ks) - 0.5, max(ks) + 0.5))
    fig.colorbar(im, ax=ax, label="log10(majorant / function integral)")
    ax.set_xlabel("dyadic index j")
    ax.set_ylabel("dyadic index k")
    ax.set_title("comparability ratios")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_scale_minima(per_scale, coeff_sum: float, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5.5, 4))
    xs = [s for s, _ in per_scale]
    ys = [v for _, v in per_scale]
    ax.semilogy(xs, ys, "o-", color="C0", label="per-scale min |f|/majorant")
    ax.axhline(coeff_sum, color="C2", ls="--", label="coefficient-sum cap")
    ax.set_xlabel("dyadic scale (|x| ~ 2^-s)")
    ax.set_ylabel("ratio")
    ax.set_title("pointwise equivalence across scales")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
