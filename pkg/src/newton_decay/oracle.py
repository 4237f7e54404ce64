"""Independent numerical verification of the symbolic predictions.

Everything here is floating point and advisory: singular-integrand
quadrature on dyadic rectangles, the oscillatory transform at desk-scale
frequencies, power-law decay fitting, and the comparability/equivalence
sweeps.  No symbolic verdict depends on these routines; they exist to catch
the symbolic layer out.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import integrate as _sciint

from . import _quadrature as q1d
from .asymptotics import envelope_value
from .diagnosis import is_well_behaved
from .errors import (BudgetExceededError, DivergenceSuspectedError,
                     DivergentError, PreconditionError, ToleranceNotMetError)
from .newton import NewtonPolygon, build_polygon, newton_distance
from .terms import QUADRANTS, QuadrantSign, TermSum, eval_term_sum, restrict_quadrant

# --- cutoff functions -------------------------------------------------------

_LAMBDA_CAP = 2.0 ** 10


def _bump_profile(u: np.ndarray) -> np.ndarray:
    """C-infinity profile: 1 on |u| <= 1/2, 0 on |u| >= 1, smooth between."""
    u = np.abs(np.asarray(u, dtype=float))
    out = np.zeros_like(u)
    out[u <= 0.5] = 1.0
    mid = (u > 0.5) & (u < 1.0)
    if np.any(mid):
        v = (u[mid] - 0.5) * 2.0
        with np.errstate(over="ignore"):
            g = np.exp(-1.0 / v)
            h = np.exp(-1.0 / (1.0 - v))
        out[mid] = h / (g + h)
    return out


@dataclass(frozen=True)
class CutoffSpec:
    """Compactly supported cutoff: a product of two 1D smooth bumps.

    The profile equals 1 inside half the radius and vanishes to infinite
    order at the boundary, so the gradient bound and all mixed-derivative
    bounds hold with finite constants (estimated numerically below).
    ``quadrant`` restricts the support to one open quadrant.
    """

    kind: str = "smooth-bump"
    radius: float = 0.25
    quadrant: QuadrantSign | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("smooth-bump", "quadrant-restricted-bump"):
            raise ValueError(f"unknown cutoff kind {self.kind!r}")
        if self.kind == "quadrant-restricted-bump" and self.quadrant is None:
            raise ValueError("quadrant-restricted-bump needs a quadrant")
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    def profile(self, t) -> np.ndarray:
        return _bump_profile(np.asarray(t, dtype=float) / self.radius)

    def __call__(self, x1, x2):
        val = self.profile(x1) * self.profile(x2)
        if self.quadrant is not None:
            ind = (np.sign(x1) == self.quadrant.s1) & (np.sign(x2) == self.quadrant.s2)
            val = val * ind
        return val

    def active_quadrants(self) -> tuple[QuadrantSign, ...]:
        if self.quadrant is not None:
            return (self.quadrant,)
        return QUADRANTS

    def gradient_bound(self, samples: int = 4001) -> float:
        """Numeric estimate of A with |grad phi| <= A / |x| on the support."""
        t = np.linspace(-self.radius, self.radius, samples)
        h = self.radius / samples
        dp = (self.profile(t + h) - self.profile(t - h)) / (2 * h)
        sup_dp = float(np.max(np.abs(dp)))
        # |grad phi| <= sup|psi'| * sup|psi| componentwise; |x| <= sqrt(2) r
        return sup_dp * math.sqrt(2.0) * self.radius

    def derivative_bound(self, a: int, b: int, samples: int = 2001) -> float:
        """Numeric sup of |d^a d^b phi| * |x1|^a |x2|^b (orders <= 4)."""
        if a > 4 or b > 4:
            raise ValueError("derivative bounds estimated for orders <= 4 only")

        def d1(vals: np.ndarray, h: float, order: int) -> np.ndarray:
            for _ in range(order):
                vals = np.gradient(vals, h)
            return vals

        t = np.linspace(-self.radius, self.radius, samples)
        h = t[1] - t[0]
        pa = d1(self.profile(t), h, a)
        pb = d1(self.profile(t), h, b)
        fa = float(np.max(np.abs(pa * np.abs(t) ** a)))
        fb = float(np.max(np.abs(pb * np.abs(t) ** b)))
        return fa * fb


@dataclass(frozen=True)
class DyadicRectangle:
    """{2^-j-1 < |x1| < 2^-j} x {2^-k-1 < |x2| < 2^-k} in one quadrant."""

    j: int
    k: int
    quadrant: QuadrantSign = QuadrantSign(1, 1)

    def __post_init__(self) -> None:
        if self.j < 0 or self.k < 0:
            raise ValueError("dyadic indices must be nonnegative")

    def x_range(self) -> tuple[float, float]:
        return 2.0 ** (-self.j - 1), 2.0 ** (-self.j)

    def y_range(self) -> tuple[float, float]:
        return 2.0 ** (-self.k - 1), 2.0 ** (-self.k)

    def area(self) -> float:
        x0, x1 = self.x_range()
        y0, y1 = self.y_range()
        return (x1 - x0) * (y1 - y0)


@dataclass(frozen=True)
class DecayFit:
    """Fitted exponent of value ~ r^{-slope_as_eps}; for frequency data
    sampled as (1/lambda, value) the slope is the log-log slope in lambda."""

    slope: float
    log_flag: bool
    residual: float
    sample_range: tuple[float, float]


# --- vectorized evaluation ---------------------------------------------------


def _eval_plain_grid(ts: TermSum, u1, u2):
    """Sum of coeff * u1^a * u2^b for a quadrant-restricted (plain) sum,
    broadcasting u1 against u2."""
    total = None
    for t in ts.terms:
        val = float(t.coeff) * u1 ** t.a * u2 ** t.b
        total = val if total is None else total + val
    return total


def _eval_majorant_grid(p: NewtonPolygon, u1, u2):
    total = None
    for v in p.vertices:
        val = u1 ** v.v1 * u2 ** v.v2
        total = val if total is None else total + val
    return total


def _max_total_degree(ts: TermSum) -> int:
    return max(t.a + t.b for t in ts.terms)


def _real_roots_in(coeffs_desc: np.ndarray, lo: float, hi: float,
                   cluster_rel: float = 1e-7) -> list[tuple[float, int]]:
    """Real roots of a polynomial (numpy convention) inside (lo, hi),
    clustered into (location, multiplicity) pairs."""
    c = np.trim_zeros(np.asarray(coeffs_desc, dtype=float), "f")
    if len(c) <= 1:
        return []
    roots = np.roots(c)
    scale = max(hi - lo, 1e-300)
    real = [float(r.real) for r in roots
            if abs(r.imag) <= 1e-9 * max(1.0, abs(r)) and lo < r.real < hi]
    real.sort()
    out: list[tuple[float, int]] = []
    for r in real:
        if out and abs(r - out[-1][0]) <= cluster_rel * scale:
            prev, mult = out.pop()
            out.append(((prev * mult + r) / (mult + 1), mult + 1))
        else:
            out.append((r, 1))
    return out


# --- power integrals on dyadic rectangles -------------------------------------


def integrate_power_on_rect(g, rho: float, rect: DyadicRectangle,
                            tol: float = 1e-8, weight=None) -> float:
    """Integral of |g|^{-rho} (optionally times a weight) over a dyadic
    rectangle, with interior zero curves of g handled by exact root
    splitting of the inner variable.

    ``g`` is a TermSum or a NewtonPolygon (integrate the majorant).  The
    optional weight is called with signed coordinates.  Raises
    ToleranceNotMetError when the relative error target cannot be certified
    and DivergenceSuspectedError when the integral looks infinite.
    """
    x0, x1 = rect.x_range()
    y0, y1 = rect.y_range()
    s1, s2 = rect.quadrant

    if isinstance(g, NewtonPolygon):
        def inner_fn(u1: float):
            def fy(y):
                val = _eval_majorant_grid(g, u1, y) ** (-rho)
                if weight is not None:
                    val = val * weight(s1 * u1, s2 * y)
                return val
            return fy, []
    else:
        restricted = restrict_quadrant(g, rect.quadrant)
        deg = max(t.b for t in restricted.terms)
        # divergence pre-scan on a few abscissas
        if rho > 0:
            for u1 in np.linspace(x0, x1, 7):
                coeffs = np.zeros(deg + 1)
                for t in restricted.terms:
                    coeffs[deg - t.b] += float(t.coeff) * u1 ** t.a
                for _, mult in _real_roots_in(coeffs, y0, y1):
                    if rho * mult >= 1.0:
                        raise DivergenceSuspectedError(
                            f"zero of order {mult} with rho={rho} on the rectangle")

        def inner_fn(u1: float):
            coeffs = [0.0] * (deg + 1)
            for t in restricted.terms:
                coeffs[deg - t.b] += float(t.coeff) * u1 ** t.a

            if weight is None:
                def fy(y):
                    acc = 0.0
                    for c in coeffs:
                        acc = acc * y + c
                    return abs(acc) ** (-rho)
            else:
                def fy(y):
                    acc = 0.0
                    for c in coeffs:
                        acc = acc * y + c
                    return abs(acc) ** (-rho) * weight(s1 * u1, s2 * y)
            return fy, [r for r, _ in _real_roots_in(np.array(coeffs), y0, y1)]

    inner_bad = [0.0]

    def inner(u1: float) -> float:
        fy, pts = inner_fn(u1)
        kwargs = dict(limit=200, epsabs=0.0, epsrel=tol / 4, full_output=1)
        if pts:
            res = _sciint.quad(fy, y0, y1, points=pts, **kwargs)
        else:
            res = _sciint.quad(fy, y0, y1, **kwargs)
        val, err = res[0], res[1]
        if not math.isfinite(val) or abs(val) > 1e120:
            raise DivergenceSuspectedError("inner integral grows without bound")
        if err > (tol / 2) * max(abs(val), 1e-300):
            inner_bad[0] = max(inner_bad[0], err / max(abs(val), 1e-300))
        return val

    res = _sciint.quad(inner, x0, x1, limit=200, epsabs=0.0, epsrel=tol / 2,
                       full_output=1)
    val, err = res[0], res[1]
    if not math.isfinite(val) or abs(val) > 1e120:
        raise DivergenceSuspectedError("estimates grow without bound under refinement")
    if err > tol * max(abs(val), 1e-300) or inner_bad[0] > tol:
        raise ToleranceNotMetError(
            f"certified error {err:.3e} (inner {inner_bad[0]:.3e}) exceeds "
            f"tol {tol:.3e}")
    return val


# --- slice integral ------------------------------------------------------------


def slice_integral(p: NewtonPolygon, rho: float, r: float,
                   r0: float = 0.25, tol: float = 1e-9) -> float:
    """Numerical value of the majorant slice integral over x2 in (0, r0).

    Splits at the scaling thresholds r^{m_i}; the x2 -> 0 endpoint is
    regularized by the power substitution driven by the first vertex
    exponent.  Raises DivergentError when rho * v2_first >= 1.
    """
    if not (0 < r < r0 < 0.5):
        raise ValueError("need 0 < r < r0 < 1/2")
    v2_first = p.vertices[0].v2
    s = rho * v2_first
    if s >= 1:
        raise DivergentError("slice integral diverges at the x2 -> 0 endpoint")

    powers = [(v.v1, v.v2) for v in p.vertices]

    def fvec(y: np.ndarray) -> np.ndarray:
        total = None
        for v1, v2 in powers:
            val = r ** v1 * y ** v2
            total = val if total is None else total + val
        return total ** (-rho)

    cuts = [r ** float(m) for m in p.edge_ms()]
    cuts = [c for c in cuts if c < r0]
    edges = sorted(set(cuts)) + [r0]
    total = 0.0
    piece_tol = tol / (len(edges) + 1)
    first_hi = edges[0]
    if s > 0:
        gamma = 1.0 / (1.0 - s)

        def gvec(w: np.ndarray) -> np.ndarray:
            y = w ** gamma
            return gamma * np.where(w > 0, w, 1.0) ** (gamma - 1.0) * fvec(y)

        total += q1d.integrate_refining(gvec, 0.0, first_hi ** (1.0 / gamma),
                                        piece_tol)
    else:
        total += q1d.integrate_refining(fvec, 0.0, first_hi, piece_tol)
    for a, b in zip(edges[:-1], edges[1:]):
        total += q1d.integrate_refining(fvec, a, b, piece_tol, geometric=True)
    return total


# --- power-law fitting -----------------------------------------------------------


def fit_power_log(samples) -> DecayFit:
    """Least-squares exponent fit of value ~ C r^{-eps} (|ln r|)^{0 or 1}.

    The plain and log-corrected models are both fit in log-log space; the
    log model wins only when its RMS residual beats the plain one by a
    factor of 1.5.
    """
    pts = [(float(r), float(v)) for r, v in samples]
    if len(pts) < 6:
        raise ValueError("need at least 6 samples")
    if any(v <= 0 for _, v in pts):
        raise ValueError("sample values must be positive")
    if any(r <= 0 or r == 1.0 for r, _ in pts):
        raise ValueError("sample abscissas must be positive and != 1")
    lr = np.array([math.log(r) for r, _ in pts])
    lv = np.array([math.log(v) for _, v in pts])
    llr = np.array([math.log(abs(math.log(r))) for r, _ in pts])
    A = np.column_stack([np.ones_like(lr), lr])

    def fit(y):
        coef, *_ = np.linalg.lstsq(A, y, rcond=None)
        resid = y - A @ coef
        return coef, float(np.sqrt(np.mean(resid ** 2)))

    coef_plain, rms_plain = fit(lv)
    coef_log, rms_log = fit(lv - llr)
    use_log = rms_log * 1.5 <= rms_plain and rms_plain > 1e-12
    coef, rms = (coef_log, rms_log) if use_log else (coef_plain, rms_plain)
    rs = [r for r, _ in pts]
    return DecayFit(slope=float(-coef[1]), log_flag=bool(use_log),
                    residual=rms, sample_range=(min(rs), max(rs)))


# --- oscillatory transform --------------------------------------------------------


def _grade_depth_for(p: NewtonPolygon, rho_frac: Fraction, R: float,
                     target_abs: float, axis: int, max_depth: int) -> int:
    """Smallest dyadic grading depth whose axis strip holds mass below
    target_abs (measured with the majorant envelope)."""
    for depth in range(6, max_depth + 1, 2):
        delta = R * 2.0 ** (-depth)
        X, Y = (delta, R) if axis == 1 else (R, delta)
        try:
            mass = envelope_value(p, rho_frac, X, Y)
        except DivergentError:
            raise DivergentError("oscillatory integrand is not integrable")
        if mass <= target_abs:
            return depth
    return max_depth


@dataclass
class _QuadrantPlan:
    quadrant: QuadrantSign
    restricted: TermSum
    sign_definite: bool


def _rho_fraction(rho: float) -> Fraction:
    return Fraction(rho).limit_denominator(10 ** 6)


def oscillatory_transform(f: TermSum, rho: float, phi: CutoffSpec,
                          lam: tuple[float, float], tol: float = 1e-6,
                          lambda_max: float = _LAMBDA_CAP) -> complex:
    """Quadrature value of the oscillatory transform of phi * |f|^{-rho}.

    Per quadrant, panels are graded dyadically toward both axes (depth
    chosen so the neglected strip mass stays inside the error budget) and
    sized against the oscillation period; quadrants where the restricted
    sum changes sign additionally split the inner variable at the exact
    polynomial roots per outer node.  A coarse/fine pass pair certifies the
    error; budget and divergence problems raise.
    """
    lam1, lam2 = float(lam[0]), float(lam[1])
    if max(abs(lam1), abs(lam2)) > lambda_max:
        raise BudgetExceededError(
            f"|lambda| exceeds the desk-scale cap {lambda_max:g}")
    polygon = build_polygon(f)
    d = newton_distance(polygon)
    if rho > 0 and rho >= 1.0 / float(d):
        raise DivergentError(f"rho={rho} is not below 1/d = {1 / float(d)}")
    rho_frac = _rho_fraction(rho)
    R = phi.radius
    D = _max_total_degree(f)
    max_depth = max(8, int(860 / max(D, 1)))

    plans = []
    for quad in phi.active_quadrants():
        restricted = restrict_quadrant(f, quad)
        signs = {t.coeff > 0 for t in restricted.terms}
        plans.append(_QuadrantPlan(quadrant=quad, restricted=restricted,
                                   sign_definite=len(signs) == 1))

    # trivial bound: coarse non-oscillatory pass sets the absolute scale
    triv = sum(abs(_quadrant_value(plan, rho, phi, (0.0, 0.0), 22, 22, 2.0, 14))
               for plan in plans)
    if triv == 0.0:
        return 0.0 + 0.0j
    target_abs = tol * triv
    g1 = _grade_depth_for(polygon, rho_frac, R, target_abs / 8, 1, max_depth) \
        if rho > 0 else 10
    g2 = _grade_depth_for(polygon, rho_frac, R, target_abs / 8, 2, max_depth) \
        if rho > 0 else 10

    def run(pad: int, quarter_periods: float) -> complex:
        return sum(_quadrant_value(plan, rho, phi, (lam1, lam2),
                                   g1 + pad, g2 + pad, quarter_periods,
                                   14 + 2 * pad)
                   for plan in plans)

    budget = max(target_abs, 64 * np.finfo(float).eps * triv)
    prev = run(0, 2.0)
    diff = math.inf
    for pad, qp in ((3, 1.0), (6, 0.5), (9, 0.25)):
        cur = run(pad, qp)
        diff = abs(cur - prev)
        if diff <= budget:
            return cur
        prev = cur
    raise ToleranceNotMetError(
        f"oscillatory refinement stalled at disagreement {diff:.3e} "
        f"(budget {budget:.3e}); raise tol or lower lambda")


def _quadrant_value(plan: _QuadrantPlan, rho: float, phi: CutoffSpec,
                    lam: tuple[float, float], g1: int, g2: int,
                    quarter_periods: float, edge_depth: int) -> complex:
    lam1, lam2 = lam
    s1, s2 = plan.quadrant
    R = phi.radius
    omega1, omega2 = lam1 * s1, lam2 * s2
    outer_panels = q1d.graded_panels(R, g1, omega1, quarter_periods, edge_depth)
    u1, w1 = q1d.panel_nodes(outer_panels, order=10)
    phi1 = phi.profile(u1)
    v1 = w1 * phi1 * np.exp(-1j * omega1 * u1)

    if plan.sign_definite:
        inner_panels = q1d.graded_panels(R, g2, omega2, quarter_periods,
                                         edge_depth)
        u2, w2 = q1d.panel_nodes(inner_panels, order=10)
        if u1.size * u2.size > 6e7:
            raise BudgetExceededError("oscillatory node budget exceeded")
        with np.errstate(divide="ignore"):
            M = np.abs(_eval_plain_grid(plan.restricted, u1[:, None],
                                        u2[None, :])) ** (-rho)
        v2 = w2 * phi.profile(u2) * np.exp(-1j * omega2 * u2)
        return complex(v1 @ M @ v2)

    # mixed signs: split the inner variable at the exact roots per node
    deg = max(t.b for t in plan.restricted.terms)
    total = 0.0 + 0.0j
    base_panels = q1d.graded_panels(R, g2, omega2, quarter_periods, edge_depth)
    for i in range(u1.size):
        x = u1[i]
        coeffs = np.zeros(deg + 1)
        for t in plan.restricted.terms:
            coeffs[deg - t.b] += float(t.coeff) * x ** t.a
        roots = _real_roots_in(coeffs, 0.0, R)
        panels = list(base_panels)
        for rpos, mult in roots:
            if rho > 0 and rho * mult >= 1.0:
                raise DivergentError(
                    f"zero curve of order {mult} makes the integrand "
                    f"non-integrable at rho={rho}")
            depth = max(10, int(math.ceil(
                40.0 / max(1.0 - rho * mult, 0.05))))
            hw = _hole_halfwidth(rpos, roots, R)
            gap = 64.0 * np.finfo(float).eps * max(abs(rpos), 1e-300)
            panels = _punch_hole(panels, rpos, hw) + q1d.graded_around(
                rpos, hw, depth, 0.0, R, gap)
        panels.sort()
        u2, w2 = q1d.panel_nodes(panels, order=10)
        with np.errstate(divide="ignore"):
            row = np.abs(np.polyval(coeffs, u2)) ** (-rho)
        v2 = w2 * phi.profile(u2) * np.exp(-1j * omega2 * u2)
        total += v1[i] * (row @ v2)
    return complex(total)


def _hole_halfwidth(rpos: float, roots, R: float) -> float:
    dists = [abs(rpos - other) / 2 for other, _ in roots if other != rpos]
    dists += [rpos / 2, (R - rpos) / 2]
    return max(min(dists), 1e-290)


def _punch_hole(panels: list[tuple[float, float]], rpos: float,
                hw: float) -> list[tuple[float, float]]:
    """Remove the part of each panel inside the graded hole around a root."""
    lo, hi = rpos - hw, rpos + hw
    out = []
    for a, b in panels:
        if b <= lo or a >= hi:
            out.append((a, b))
            continue
        if a < lo:
            out.append((a, lo))
        if b > hi:
            out.append((hi, b))
    return out


# --- comparability and equivalence sweeps ------------------------------------------


@dataclass(frozen=True)
class ComparabilityRow:
    j: int
    k: int
    quadrant: QuadrantSign
    majorant_integral: float
    function_integral: float

    @property
    def ratio(self) -> float:
        return self.majorant_integral / self.function_integral


@dataclass(frozen=True)
class ComparabilityReport:
    rows: tuple[ComparabilityRow, ...]
    ratio_min: float
    ratio_max: float
    band: float
    trend_slope: float
    trend_cap: float
    passed: bool


def default_thread_count() -> int:
    env = os.environ.get("NEWTON_DECAY_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def check_comparability(f: TermSum, rho: float,
                        rects: list[DyadicRectangle], tol: float = 1e-6,
                        band: float = 1e3, trend_cap: float = 0.05,
                        threads: int | None = None) -> ComparabilityReport:
    """Ratios of the majorant-power integral to the function-power integral
    over a batch of dyadic rectangles.

    Passes when the ratio band stays below ``band`` and the per-scale
    max/min sequence shows no growth trend (log-slope within trend_cap).
    """
    wb = is_well_behaved(f)
    if not wb.verdict:
        raise PreconditionError("comparability holds for well-behaved sums only")
    if not (0 < rho < 1.0 / float(wb.d)):
        raise PreconditionError(f"need 0 < rho < 1/d = {1 / float(wb.d)}")
    polygon = build_polygon(f)

    def one(rect: DyadicRectangle) -> ComparabilityRow:
        num = integrate_power_on_rect(polygon, rho, rect, tol)
        den = integrate_power_on_rect(f, rho, rect, tol)
        return ComparabilityRow(j=rect.j, k=rect.k, quadrant=rect.quadrant,
                                majorant_integral=num, function_integral=den)

    threads = threads if threads is not None else default_thread_count()
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = tuple(pool.map(one, rects))
    else:
        rows = tuple(one(r) for r in rects)

    ratios = [row.ratio for row in rows]
    by_scale: dict[int, list[float]] = {}
    for row, ratio in zip(rows, ratios):
        by_scale.setdefault(max(row.j, row.k), []).append(ratio)
    scales = sorted(by_scale)
    spread = [max(by_scale[s]) / min(by_scale[s]) for s in scales]
    if len(scales) >= 3:
        A = np.column_stack([np.ones(len(scales)),
                             np.array(scales, dtype=float) * math.log(2.0)])
        coef, *_ = np.linalg.lstsq(A, np.log(spread), rcond=None)
        trend = float(coef[1])
    else:
        trend = 0.0
    rmin, rmax = min(ratios), max(ratios)
    passed = (rmax / rmin <= band) and abs(trend) <= trend_cap
    return ComparabilityReport(rows=rows, ratio_min=rmin, ratio_max=rmax,
                               band=band, trend_slope=trend,
                               trend_cap=trend_cap, passed=passed)


@dataclass(frozen=True)
class EquivalenceReport:
    ratio_min: float
    ratio_max: float
    coeff_abs_sum: float
    per_scale_min: tuple[tuple[int, float], ...]
    min_trend_slope: float
    passed: bool
    samples: int


def check_majorant_equivalence(f: TermSum, scales=range(3, 21),
                               directions_per_edge: int = 5,
                               seed: int = 0) -> EquivalenceReport:
    """Min/max of |f| / majorant over a punctured neighborhood sampled down
    to |x| ~ 2^-20 along every scaling direction of the polygon.

    Requires every edge polynomial to be zero-free off the axes; passes
    when the minimum stays bounded away from zero with no downward trend
    across scales and the maximum respects the coefficient-sum bound.
    """
    from .diagnosis import edge_zero_free

    if not edge_zero_free(f):
        raise PreconditionError(
            "an edge polynomial has zeros off the axes; |f| ~ majorant fails")
    polygon = build_polygon(f)
    ms = [float(m) for m in polygon.edge_ms()]
    mus = sorted({1.0} | set(ms)
                 | {(a + b) / 2 for a, b in zip(ms, ms[1:])}
                 | ({2 * max(ms), min(ms) / 2} if ms else set()))
    rng = np.random.default_rng(seed)
    coeff_sum = float(f.coeff_abs_sum())
    maxdeg = _max_total_degree(f)
    per_scale: list[tuple[int, float]] = []
    gmin, gmax = math.inf, -math.inf
    count = 0
    for s in scales:
        smin, smax = math.inf, -math.inf
        for mu in mus:
            if (mu + 1) * s * maxdeg > 880:     # keep evaluations normal
                continue
            for _ in range(directions_per_edge):
                c = float(2.0 ** rng.uniform(-2.0, 2.0))
                x1 = 2.0 ** (-s) * float(2.0 ** rng.uniform(-0.5, 0.5))
                x2 = min(c * x1 ** mu, 0.5)
                if x2 <= 0 or x2 < 1e-290:
                    continue
                for quad in QUADRANTS:
                    x = (quad.s1 * x1, quad.s2 * x2)
                    fs = float(_eval_majorant_grid(polygon, abs(x[0]), abs(x[1])))
                    if fs < 1e-280:
                        continue
                    ratio = abs(eval_term_sum(f, x)) / fs
                    smin, smax = min(smin, ratio), max(smax, ratio)
                    count += 1
        if math.isfinite(smin):
            per_scale.append((s, smin))
            gmin, gmax = min(gmin, smin), max(gmax, smax)
    arr = np.array([[s, math.log(v)] for s, v in per_scale if v > 0])
    if len(arr) >= 3:
        A = np.column_stack([np.ones(len(arr)), arr[:, 0] * math.log(2.0)])
        coef, *_ = np.linalg.lstsq(A, arr[:, 1], rcond=None)
        trend = float(coef[1])
    else:
        trend = 0.0
    passed = (gmin > 0 and trend >= -0.05
              and gmax <= coeff_sum * (1 + 1e-9) + 1e-12)
    return EquivalenceReport(ratio_min=gmin, ratio_max=gmax,
                             coeff_abs_sum=coeff_sum,
                             per_scale_min=tuple(per_scale),
                             min_trend_slope=trend, passed=passed,
                             samples=count)


# --- sharpness probe -----------------------------------------------------------------


@dataclass(frozen=True)
class SharpnessReport:
    applicable: bool
    reason: str
    axis: int
    predicted_slope: float | None
    fit: DecayFit | None
    margin: float
    violated: bool
    band_lambdas: tuple[float, ...] = field(default=())
    band_maxima: tuple[float, ...] = field(default=())
    samples: tuple[tuple[float, float], ...] = field(default=())


def sharpness_probe(f: TermSum, rho: float, axis: int,
                    lam_min: float = 16.0, lam_max: float = 1024.0,
                    points_per_octave: int = 4, band_size: int = 4,
                    margin: float = 0.15, phi: CutoffSpec | None = None,
                    tol: float = 1e-5) -> SharpnessReport:
    """Lower-envelope decay of |F| along one axis via per-band maxima.

    Bands of ``band_size`` consecutive grid points ride over oscillation
    dips; the fitted band-max slope must not fall below the predicted
    exponent minus the margin, which would contradict optimality of the
    predicted rate.
    """
    from .asymptotics import fourier_decay_prediction

    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    pred = fourier_decay_prediction(f, _rho_fraction(rho))
    if not pred.applicable:
        return SharpnessReport(applicable=False,
                               reason="; ".join(pred.reasons), axis=axis,
                               predicted_slope=None, fit=None, margin=margin,
                               violated=False)
    pair = pred.pair1 if axis == 1 else pred.pair2
    if pair.epsilon >= 1:
        return SharpnessReport(applicable=False,
                               reason="optimality is only guaranteed below "
                                      "exponent 1", axis=axis,
                               predicted_slope=None, fit=None, margin=margin,
                               violated=False)
    phi = phi or CutoffSpec()
    n_oct = math.log2(lam_max / lam_min)
    n_pts = int(round(n_oct * points_per_octave)) + 1
    lams = [lam_min * 2.0 ** (i / points_per_octave) for i in range(n_pts)]
    samples = []
    for lam in lams:
        target = (lam, 0.0) if axis == 1 else (0.0, lam)
        val = abs(oscillatory_transform(f, rho, phi, target, tol))
        samples.append((lam, val))
    band_l, band_m = [], []
    for i in range(0, len(samples) - band_size + 1, band_size):
        chunk = samples[i:i + band_size]
        band_l.append(float(np.exp(np.mean([math.log(l) for l, _ in chunk]))))
        band_m.append(max(v for _, v in chunk))
    fit = fit_power_log([(1.0 / l, v) for l, v in zip(band_l, band_m)])
    predicted = float(pair.epsilon) - 1.0
    violated = fit.slope < predicted - margin
    return SharpnessReport(applicable=True, reason="", axis=axis,
                           predicted_slope=predicted, fit=fit, margin=margin,
                           violated=violated, band_lambdas=tuple(band_l),
                           band_maxima=tuple(band_m),
                           samples=tuple(samples))


def oscillatory_decay_fit(f: TermSum, rho: float, axis: int = 1,
                          lambdas=None, phi: CutoffSpec | None = None,
                          tol: float = 1e-5) -> tuple[DecayFit, list[tuple[float, float]]]:
    """|F| samples along one axis and their log-log decay fit."""
    phi = phi or CutoffSpec()
    if lambdas is None:
        lambdas = [16.0 * 2.0 ** i for i in range(6)]
    samples = []
    for lam in lambdas:
        target = (lam, 0.0) if axis == 1 else (0.0, lam)
        val = abs(oscillatory_transform(f, rho, phi, target, tol))
        samples.append((float(lam), val))
    fit = fit_power_log([(1.0 / l, v) for l, v in samples])
    return fit, samples
