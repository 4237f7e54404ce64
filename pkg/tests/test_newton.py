"""Exact polygon geometry against a brute-force rational hull oracle."""

import random
from fractions import Fraction

import pytest

from newton_decay.newton import (build_polygon, edge_polynomial,
                                 newton_distance, reflect_polygon)
from newton_decay.terms import (MonomialTerm, make_term_sum, parse_terms,
                                swap_variables)


def oracle_vertices(support):
    """Support points not dominated by conv(other support points + positive
    quadrant): exact feasibility check over the rationals.

    p is dominated iff some point of conv(others) lies componentwise <= p;
    since the dominance region is a lower-left quadrant, it suffices to test
    the points themselves and every segment between two of them.
    """
    support = sorted(set(support))

    def dominated(p, others):
        for q in others:
            if q[0] <= p[0] and q[1] <= p[1]:
                return True
        for i, q in enumerate(others):
            for r in others[i + 1:]:
                # lambda q + (1-lambda) r <= p componentwise, lambda in [0,1]
                lo, hi = Fraction(0), Fraction(1)
                feasible = True
                for c in (0, 1):
                    dq, dr = q[c] - p[c], r[c] - p[c]
                    if dq == dr:
                        if dq > 0:
                            feasible = False
                            break
                        continue
                    bound = Fraction(-dr, dq - dr)
                    if dq > dr:
                        hi = min(hi, bound)
                    else:
                        lo = max(lo, bound)
                if feasible and lo <= hi:
                    return True
        return False

    return sorted(p for p in support
                  if not dominated(p, [q for q in support if q != p]))


def polygon_of(expr):
    return build_polygon(parse_terms(expr))


class TestBuildPolygon:
    def test_single_monomial(self):
        p = polygon_of("x1^2*x2^3")
        assert [(v.v1, v.v2) for v in p.vertices] == [(2, 3)]
        assert p.compact_edges == ()

    def test_two_vertex_example(self):
        p = polygon_of("x1^3 + x2^2")
        assert [(v.v1, v.v2) for v in p.vertices] == [(3, 0), (0, 2)]
        assert [e.m for e in p.compact_edges] == [Fraction(3, 2)]

    def test_three_vertex_example(self):
        p = polygon_of("x1^4 + x1*x2 + x2^4")
        assert [(v.v1, v.v2) for v in p.vertices] == [(4, 0), (1, 1), (0, 4)]
        assert [e.m for e in p.compact_edges] == [Fraction(3), Fraction(1, 3)]

    def test_rays(self):
        p = polygon_of("x1^4 + x1*x2 + x2^4")
        assert p.horizontal_ray_height == 0
        assert p.vertical_ray_abscissa == 0
        q = polygon_of("x1^2*x2 + x1*x2^3")
        assert q.horizontal_ray_height == 1
        assert q.vertical_ray_abscissa == 1

    def test_against_brute_force_oracle(self):
        rng = random.Random(7)
        for _ in range(120):
            n = rng.randint(1, 12)
            support = {(rng.randint(0, 8), rng.randint(0, 8)) for _ in range(n)}
            support.discard((0, 0))
            if not support:
                continue
            terms = [MonomialTerm(a=a, b=b, abs1=False, abs2=False,
                                  coeff=Fraction(rng.randint(1, 9)))
                     for a, b in support]
            p = build_polygon(make_term_sum(terms))
            got = sorted((v.v1, v.v2) for v in p.vertices)
            assert got == oracle_vertices(support)

    def test_interior_point_insertion_never_changes_hull(self):
        rng = random.Random(11)
        base = parse_terms("x1^4 + x1*x2 + x2^4")
        p = build_polygon(base)
        for _ in range(40):
            a, b = rng.randint(0, 8), rng.randint(0, 8)
            # interior of N(f): strictly above every supporting line and
            # strictly inside both ray bounds
            strict = all(a + e.m * b > e.line_constant()
                         for e in p.compact_edges)
            if not (strict and a > p.vertices[-1].v1 and b > p.vertices[0].v2):
                continue
            extended = make_term_sum(
                list(base.terms) + [MonomialTerm(a=a, b=b, abs1=False,
                                                 abs2=False, coeff=Fraction(5))])
            q = build_polygon(extended)
            assert q.vertices == p.vertices
            assert [e.m for e in q.compact_edges] == [e.m for e in p.compact_edges]

    def test_support_on_or_above_every_edge(self):
        rng = random.Random(3)
        for _ in range(60):
            support = {(rng.randint(0, 8), rng.randint(0, 8))
                       for _ in range(rng.randint(2, 10))}
            support.discard((0, 0))
            if not support:
                continue
            terms = [MonomialTerm(a=a, b=b, abs1=False, abs2=False,
                                  coeff=Fraction(1))
                     for a, b in support]
            p = build_polygon(make_term_sum(terms))
            for a, b in support:
                for e in p.compact_edges:
                    assert a + e.m * b >= e.line_constant()

    def test_edge_slope_matches_endpoints(self):
        p = polygon_of("x1^4 + x1*x2 + x2^4")
        for e in p.compact_edges:
            slope = Fraction(e.end.v2 - e.start.v2, e.end.v1 - e.start.v1)
            assert slope == -1 / e.m


class TestNewtonDistance:
    def test_single_vertex_is_max_coordinate(self):
        # inf{t: (t,t) in Q_(a,b)} = max(a, b); matches the integrability
        # threshold rho < 1/max(a,b) for a pure monomial
        assert newton_distance(polygon_of("x1^2*x2^3")) == 3
        assert newton_distance(polygon_of("x1^5")) == 5

    def test_edge_intersection(self):
        # diagonal meets the edge of x1^3 + x2^2 where t/3 + t/2 = 1
        assert newton_distance(polygon_of("x1^3 + x2^2")) == Fraction(6, 5)

    def test_vertex_on_diagonal(self):
        assert newton_distance(polygon_of("x1*x2")) == 1

    def test_reflection_invariance(self):
        rng = random.Random(5)
        for _ in range(40):
            support = {(rng.randint(0, 7), rng.randint(0, 7))
                       for _ in range(rng.randint(1, 8))}
            support.discard((0, 0))
            if not support:
                continue
            f = make_term_sum(
                MonomialTerm(a=a, b=b, abs1=False, abs2=False,
                             coeff=Fraction(1)) for a, b in support)
            p = build_polygon(f)
            assert newton_distance(p) == newton_distance(reflect_polygon(p))


class TestEdgePolynomial:
    def test_all_terms_on_single_edge(self):
        f = parse_terms("x1^3 + x2^2")
        p = build_polygon(f)
        assert edge_polynomial(f, p.compact_edges[0]) == f

    def test_membership_by_edge_line(self):
        f = parse_terms("x1^3 + x1*x2 + x2^2")
        p = build_polygon(f)
        e = p.compact_edges[0]
        assert e.start == (3, 0) and e.end == (1, 1)
        assert edge_polynomial(f, e) == parse_terms("x1^3 + x1*x2")

    def test_interior_term_excluded(self):
        f = parse_terms("x1^4 + x1*x2 + x2^4 + x1^3*x2^3")
        p = build_polygon(f)
        e = p.compact_edges[1]
        assert e.start == (1, 1) and e.end == (0, 4)
        assert edge_polynomial(f, e) == parse_terms("x1*x2 + x2^4")

    def test_foreign_edge_rejected(self):
        f = parse_terms("x1^3 + x2^2")
        other = build_polygon(parse_terms("x1^4 + x2^4")).compact_edges[0]
        with pytest.raises(ValueError):
            edge_polynomial(f, other)


class TestReflect:
    def test_single_vertex(self):
        p = polygon_of("x1^2*x2^3")
        r = reflect_polygon(p)
        assert [(v.v1, v.v2) for v in r.vertices] == [(3, 2)]

    def test_reciprocal_slope(self):
        p = polygon_of("x1^3 + x2^2")
        r = reflect_polygon(p)
        assert [e.m for e in r.compact_edges] == [Fraction(2, 3)]

    def test_involution_and_swap_consistency(self):
        rng = random.Random(13)
        for _ in range(40):
            support = {(rng.randint(0, 7), rng.randint(0, 7))
                       for _ in range(rng.randint(1, 9))}
            support.discard((0, 0))
            if not support:
                continue
            f = make_term_sum(
                MonomialTerm(a=a, b=b, abs1=False, abs2=False,
                             coeff=Fraction(rng.randint(1, 4)))
                for a, b in support)
            p = build_polygon(f)
            assert reflect_polygon(reflect_polygon(p)) == p
            assert reflect_polygon(p) == build_polygon(swap_variables(f))
