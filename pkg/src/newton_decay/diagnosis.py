"""Well-behavedness diagnosis: zeros of edge polynomials off the axes.

An edge polynomial is mixed homogeneous, so its zero set in (R-{0})^2 is a
union of scaling curves x2 = t0 * s2 * |x1|^m through slice points
(s1, s2*t0), t0 > 0.  The order of such a zero is the multiplicity of t0 in
the one-variable slice g(t) = f_e(s1, s2*t), computed exactly.

The verdict is an exact rational comparison: no zero order may exceed the
Newton distance, and an edge of slope -1 must have no zeros at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import polyroots
from .newton import CompactEdge, NewtonPolygon, build_polygon, edge_polynomial, newton_distance
from .polyroots import Poly
from .terms import QUADRANTS, QuadrantSign, TermSum, restrict_quadrant


@dataclass(frozen=True)
class EdgeZero:
    """One zero curve of an edge polynomial, exactly described.

    ``poly`` is the square-free monic factor whose unique root in
    [lo, hi] is the slice parameter t0 > 0; ``order`` is the multiplicity
    of t0 in the full slice polynomial.
    """

    quadrant: QuadrantSign
    poly: Poly
    lo: Fraction
    hi: Fraction
    order: int

    def refine(self, width: Fraction) -> tuple[Fraction, Fraction]:
        return polyroots.refine_interval(self.poly, self.lo, self.hi, width)

    def approx(self) -> float:
        lo, hi = self.refine(Fraction(1, 10**12))
        return float((lo + hi) / 2)


@dataclass(frozen=True)
class EdgeDiagnosis:
    edge: CompactEdge
    zeros: tuple[EdgeZero, ...]


@dataclass(frozen=True)
class WellBehavedReport:
    verdict: bool
    d: Fraction
    max_order: int
    slope_minus_one_violation: bool
    edges: tuple[EdgeDiagnosis, ...]


def slice_polynomial(f_e: TermSum, q: QuadrantSign) -> Poly:
    """Coefficients of g(t) = f_e(s1*1, s2*t) for t > 0."""
    restricted = restrict_quadrant(f_e, q)
    deg = max(t.b for t in restricted.terms)
    coeffs = [Fraction(0)] * (deg + 1)
    for t in restricted.terms:
        coeffs[t.b] += t.coeff
    return polyroots.normalize(coeffs)


def edge_zero_orders(f_e: TermSum, e: CompactEdge) -> list[EdgeZero]:
    """All zeros of f_e off the axes, with exact multiplicities.

    Iterates over the four quadrants; in each, positive roots of the slice
    polynomial are isolated per square-free factor, inheriting that factor's
    multiplicity as the zero order.
    """
    on_edge = set(e.support)
    if not all((t.a, t.b) in on_edge for t in f_e.terms):
        raise ValueError("f_e has terms off the edge; not an edge polynomial")
    zeros: list[EdgeZero] = []
    for q in QUADRANTS:
        g = slice_polynomial(f_e, q)
        for factor, mult in polyroots.squarefree_decomposition(g):
            factor = polyroots.strip_origin_root(factor)
            for lo, hi in polyroots.isolate_positive_roots(factor):
                zeros.append(EdgeZero(quadrant=q, poly=factor,
                                      lo=lo, hi=hi, order=mult))
    return zeros


def is_well_behaved(f: TermSum) -> WellBehavedReport:
    """Run the zero-order diagnosis on every compact edge of f's polygon."""
    polygon = build_polygon(f)
    return diagnose_polygon(f, polygon)


def diagnose_polygon(f: TermSum, polygon: NewtonPolygon) -> WellBehavedReport:
    d = newton_distance(polygon)
    per_edge = []
    max_order = 0
    slope_violation = False
    for e in polygon.compact_edges:
        f_e = edge_polynomial(f, e)
        zeros = tuple(edge_zero_orders(f_e, e))
        per_edge.append(EdgeDiagnosis(edge=e, zeros=zeros))
        if zeros:
            max_order = max(max_order, max(z.order for z in zeros))
            if e.m == 1:
                slope_violation = True
    verdict = (max_order <= d) and not slope_violation
    return WellBehavedReport(verdict=verdict, d=d, max_order=max_order,
                             slope_minus_one_violation=slope_violation,
                             edges=tuple(per_edge))


def edge_zero_free(f: TermSum) -> bool:
    """True when no edge polynomial has any zero off the axes (the stronger
    hypothesis under which the envelope bound applies for every exponent)."""
    report = is_well_behaved(f)
    return all(not ed.zeros for ed in report.edges)
