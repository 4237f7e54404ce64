"""Deterministic Gauss-Legendre panel quadrature.

Building blocks for the numeric oracles: dyadic grading toward singular
endpoints, panel sizing against an oscillation period, and vectorized
node/weight assembly.  Everything is a pure function of its arguments, so
repeated runs produce bit-identical panel layouts.
"""

from __future__ import annotations

import math

import numpy as np

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gl_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _GL_CACHE:
        x, w = np.polynomial.legendre.leggauss(order)
        _GL_CACHE[order] = (x, w)
    return _GL_CACHE[order]


def split_for_period(a: float, b: float, omega: float,
                     quarter_periods: float = 1.0) -> list[tuple[float, float]]:
    """Split [a, b] into panels no wider than quarter_periods * (T/4),
    T = 2*pi/|omega|."""
    width = b - a
    if width <= 0:
        return []
    if omega == 0:
        return [(a, b)]
    max_w = quarter_periods * (math.pi / 2) / abs(omega)
    n = max(1, math.ceil(width / max_w))
    edges = np.linspace(a, b, n + 1)
    return list(zip(edges[:-1], edges[1:]))


def graded_panels(upper: float, depth: int, omega: float = 0.0,
                  quarter_periods: float = 1.0,
                  edge_depth: int = 0) -> list[tuple[float, float]]:
    """Panels covering (0, upper]: dyadic blocks shrinking toward 0 for
    ``depth`` levels plus one tail panel at the bottom, each block further
    split against the oscillation period.  ``edge_depth`` additionally
    grades the top block toward the upper endpoint (for integrands that
    flatten to zero there with unbounded derivatives, like smooth bumps)."""
    panels: list[tuple[float, float]] = []
    hi = upper
    if edge_depth > 0:
        left = upper / 2
        for _ in range(edge_depth):
            right = (left + upper) / 2
            panels.extend(split_for_period(left, right, omega, quarter_periods))
            left = right
        panels.extend(split_for_period(left, upper, omega, quarter_periods))
        hi = upper / 2
        depth = max(depth - 1, 1)
    for _ in range(depth):
        lo = hi / 2
        panels.extend(split_for_period(lo, hi, omega, quarter_periods))
        hi = lo
    panels.append((0.0, hi))
    panels.sort()
    return panels


def graded_around(center: float, halfwidth: float, depth: int,
                  lo_clip: float, hi_clip: float,
                  gap: float = 0.0) -> list[tuple[float, float]]:
    """Dyadically graded panels approaching ``center`` from both sides,
    clipped to [lo_clip, hi_clip].  ``gap`` keeps an uncovered sliver around
    the center (e.g. a few ulps around a float root so nodes never evaluate
    exactly on a singularity)."""
    offs = [halfwidth]
    w = halfwidth
    for _ in range(depth):
        w /= 2
        if w <= gap:
            break
        offs.append(w)
    offs.append(max(gap, 0.0))
    panels = []
    for side in (-1, 1):
        for o_out, o_in in zip(offs[:-1], offs[1:]):
            a, b = sorted((center + side * o_in, center + side * o_out))
            a, b = max(a, lo_clip), min(b, hi_clip)
            if b > a:
                panels.append((a, b))
    panels.sort()
    return panels


def panel_nodes(panels: list[tuple[float, float]],
                order: int = 12) -> tuple[np.ndarray, np.ndarray]:
    """Flattened Gauss-Legendre nodes and weights over a panel list."""
    if not panels:
        return np.empty(0), np.empty(0)
    x, w = gl_rule(order)
    arr = np.asarray(panels)
    mid = (arr[:, 1] + arr[:, 0]) / 2
    half = (arr[:, 1] - arr[:, 0]) / 2
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def integrate_refining(fvec, a: float, b: float, rel_tol: float,
                       geometric: bool = False, order: int = 12,
                       max_rounds: int = 12) -> float:
    """Composite GL with panel doubling until two successive estimates agree
    to rel_tol.  ``geometric`` uses log-spaced panels (for power-law
    integrands over wide dyadic ranges); requires a > 0 then."""
    if b <= a:
        return 0.0
    n = 4
    prev = None
    for _ in range(max_rounds):
        if geometric:
            edges = a * (b / a) ** np.linspace(0.0, 1.0, n + 1)
        else:
            edges = np.linspace(a, b, n + 1)
        panels = list(zip(edges[:-1], edges[1:]))
        nodes, weights = panel_nodes(panels, order)
        val = float(np.dot(weights, fvec(nodes)))
        if prev is not None and abs(val - prev) <= rel_tol * max(abs(val), 1e-300):
            return val
        prev = val
        n *= 2
    return prev
