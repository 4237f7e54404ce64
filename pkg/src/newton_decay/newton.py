"""Exact Newton polygon geometry over the rationals.

The polygon of a term sum is the convex hull of the union of the upper-right
quadrants anchored at its support exponents.  Its lower-left boundary
consists of a horizontal ray, finitely many compact edges of negative slope,
and a vertical ray.  Everything here is computed with integer/Fraction
arithmetic; no floating point enters any verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .terms import TermSum, swap_variables


class Vertex(NamedTuple):
    """Lattice point (v1, v2); always an exponent pair of the input."""

    v1: int
    v2: int


@dataclass(frozen=True)
class CompactEdge:
    """Bounded boundary segment between two consecutive vertices.

    The slope is exactly -1/m with m > 0 rational; ``support`` lists the
    exponent pairs of the input lying on the segment (endpoints included).
    """

    start: Vertex            # larger v1, smaller v2
    end: Vertex              # smaller v1, larger v2
    m: Fraction
    support: tuple[tuple[int, int], ...]

    def line_value(self, point: tuple[int, int]) -> Fraction:
        """a + m*b for the supporting line a + m*b = const."""
        return point[0] + self.m * point[1]

    def line_constant(self) -> Fraction:
        return self.line_value(self.start)


@dataclass(frozen=True)
class NewtonPolygon:
    """Vertices ordered from the horizontal-ray end to the vertical-ray end
    (v1 strictly decreasing, v2 strictly increasing), with compact edges
    between consecutive vertices in order of strictly decreasing m."""

    vertices: tuple[Vertex, ...]
    compact_edges: tuple[CompactEdge, ...]
    support: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("polygon needs at least one vertex")
        for u, v in zip(self.vertices, self.vertices[1:]):
            if not (u.v1 > v.v1 and u.v2 < v.v2):
                raise ValueError("vertex ordering violated")
        ms = [e.m for e in self.compact_edges]
        if any(m2 >= m1 for m1, m2 in zip(ms, ms[1:])):
            raise ValueError("edge slopes must strictly decrease")

    @property
    def horizontal_ray_height(self) -> int:
        return self.vertices[0].v2

    @property
    def vertical_ray_abscissa(self) -> int:
        return self.vertices[-1].v1

    def edge_ms(self) -> list[Fraction]:
        return [e.m for e in self.compact_edges]


def _lower_left_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Vertices of conv(union of quadrants Q_p), ordered by decreasing first
    coordinate.  Monotone chain on the dominance-minimal points."""
    # dominance filter: p survives iff no q != p with q <= p componentwise
    pts = sorted(set(points))
    minimal = []
    for p in pts:
        if not any(q != p and q[0] <= p[0] and q[1] <= p[1] for q in pts):
            minimal.append(p)
    # sorted by first coordinate ascending => second strictly descending
    minimal.sort(key=lambda p: (p[0], p[1]))
    chain: list[tuple[int, int]] = []
    for p in minimal:
        # drop middle points that are on or above the segment chain[-2]..p
        while len(chain) >= 2:
            o, a = chain[-2], chain[-1]
            cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
            if cross <= 0:
                chain.pop()
            else:
                break
        chain.append(p)
    chain.reverse()  # decreasing v1, increasing v2
    return chain


def build_polygon(f: TermSum) -> NewtonPolygon:
    """Construct the Newton polygon of a term sum."""
    support = f.support()
    hull = _lower_left_hull(support)
    vertices = tuple(Vertex(*p) for p in hull)
    edges = []
    for u, v in zip(vertices, vertices[1:]):
        m = Fraction(u.v1 - v.v1, v.v2 - u.v2)
        const = u.v1 + m * u.v2
        on_edge = tuple(
            p for p in support
            if p[0] + m * p[1] == const and v.v1 <= p[0] <= u.v1
        )
        edges.append(CompactEdge(start=u, end=v, m=m, support=on_edge))
    return NewtonPolygon(vertices=vertices, compact_edges=tuple(edges),
                         support=tuple(support))


def newton_distance(p: NewtonPolygon) -> Fraction:
    """Smallest t such that (t, t) lies in the polygon (exact rational).

    The diagonal first meets the boundary either within a vertex quadrant
    (candidate max(v1, v2)) or inside a compact edge (solve t(1+m) = const).
    """
    candidates = [Fraction(max(v.v1, v.v2)) for v in p.vertices]
    for e in p.compact_edges:
        t = e.line_constant() / (1 + e.m)
        if e.end.v1 <= t <= e.start.v1 and e.start.v2 <= t <= e.end.v2:
            candidates.append(t)
    return min(candidates)


def edge_polynomial(f: TermSum, e: CompactEdge) -> TermSum:
    """Sub-sum of f supported exactly on the compact edge e."""
    polygon = build_polygon(f)
    if e not in polygon.compact_edges:
        raise ValueError("edge is not a compact edge of the polygon of f")
    on_edge = set(e.support)
    kept = [t for t in f.terms if (t.a, t.b) in on_edge]
    return TermSum(tuple(kept))


def reflect_polygon(p: NewtonPolygon) -> NewtonPolygon:
    """Swap the two coordinates; equals build_polygon of the swapped sum."""
    vertices = tuple(Vertex(v.v2, v.v1) for v in reversed(p.vertices))
    edges = tuple(
        CompactEdge(
            start=Vertex(e.end.v2, e.end.v1),
            end=Vertex(e.start.v2, e.start.v1),
            m=1 / e.m,
            support=tuple(sorted((b, a) for a, b in e.support)),
        )
        for e in reversed(p.compact_edges)
    )
    support = tuple(sorted((b, a) for a, b in p.support))
    return NewtonPolygon(vertices=vertices, compact_edges=edges, support=support)


def polygon_of_swapped(f: TermSum) -> NewtonPolygon:
    """Convenience: polygon of f with the variables exchanged."""
    return build_polygon(swap_variables(f))
