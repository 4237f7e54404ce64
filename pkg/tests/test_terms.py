"""Input model: parsing, quadrant restriction, swap, evaluation."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newton_decay.errors import ConstantTermError, EmptySumError, ExpressionError
from newton_decay.terms import (QUADRANTS, MonomialTerm, QuadrantSign, TermSum,
                                eval_term_sum, format_terms, make_term_sum,
                                parse_terms, restrict_quadrant, swap_variables)


def keys(f: TermSum):
    return [(t.coeff, t.a, t.b, t.abs1, t.abs2) for t in f.terms]


class TestParse:
    def test_single_monomial(self):
        f = parse_terms("x1^2*x2^3")
        assert keys(f) == [(Fraction(1), 2, 3, False, False)]

    def test_two_plain_terms(self):
        f = parse_terms("x1^3 + x2^2")
        assert set(keys(f)) == {(Fraction(1), 3, 0, False, False),
                                (Fraction(1), 0, 2, False, False)}

    def test_merge_against_dictionary_oracle(self):
        # oracle: naive accumulation into a dict keyed by (a, b, abs-modes)
        text = "x1^2 - 2*x1*x2 + x2^2 + x1^2*x2^2 - x1^2*x2^2"
        raw = [(Fraction(1), 2, 0), (Fraction(-2), 1, 1), (Fraction(1), 0, 2),
               (Fraction(1), 2, 2), (Fraction(-1), 2, 2)]
        acc: dict = {}
        for c, a, b in raw:
            acc[(a, b)] = acc.get((a, b), Fraction(0)) + c
        expected = {(c, a, b, False, False)
                    for (a, b), c in acc.items() if c != 0}
        assert set(keys(parse_terms(text))) == expected

    def test_abs_terms(self):
        f = parse_terms("|x1|^2 + |x2|^2")
        assert set(keys(f)) == {(Fraction(1), 2, 0, True, False),
                                (Fraction(1), 0, 2, False, True)}

    def test_rational_coefficients(self):
        f = parse_terms("3/2*x1 - 1/3*x2^4")
        assert set(keys(f)) == {(Fraction(3, 2), 1, 0, False, False),
                                (Fraction(-1, 3), 0, 4, False, False)}

    def test_constant_term_rejected(self):
        with pytest.raises(ConstantTermError):
            parse_terms("1")
        with pytest.raises(ConstantTermError):
            parse_terms("x1 + 2")

    def test_cancellation_to_zero_rejected(self):
        with pytest.raises(EmptySumError):
            parse_terms("x1 - x1")

    def test_syntax_error_reports_position(self):
        with pytest.raises(ExpressionError) as err:
            parse_terms("x1^2 + x3")
        assert err.value.position is not None

    def test_dangling_operator(self):
        with pytest.raises(ExpressionError):
            parse_terms("x1 *")
        with pytest.raises(ExpressionError):
            parse_terms("x1 +")

    def test_juxtaposition_rejected(self):
        with pytest.raises(ExpressionError):
            parse_terms("2 x1")


coeffs = st.fractions(min_value=-5, max_value=5).filter(lambda c: c != 0)
term_st = st.builds(
    lambda c, a, b, u, v: MonomialTerm(a=a, b=b, abs1=u, abs2=v, coeff=c),
    coeffs, st.integers(0, 6), st.integers(0, 6),
    st.booleans(), st.booleans(),
).filter(lambda t: (t.a, t.b) != (0, 0))


@st.composite
def term_sums(draw):
    terms = draw(st.lists(term_st, min_size=1, max_size=6))
    try:
        return draw(st.just(make_term_sum(terms)))
    except EmptySumError:
        return draw(st.just(make_term_sum([terms[0]])))


@given(term_sums())
@settings(max_examples=150, deadline=None)
def test_parse_format_round_trip(f):
    assert parse_terms(format_terms(f)) == f


@given(term_sums())
@settings(max_examples=100, deadline=None)
def test_swap_is_involution(f):
    assert swap_variables(swap_variables(f)) == f


class TestRestrictQuadrant:
    def test_sign_fold(self):
        f = parse_terms("x1*x2")
        g = restrict_quadrant(f, QuadrantSign(-1, +1))
        assert keys(g) == [(Fraction(-1), 1, 1, False, False)]

    def test_abs_and_even_power(self):
        f = parse_terms("|x1|^3 + x2^2")
        g = restrict_quadrant(f, QuadrantSign(-1, -1))
        assert set(keys(g)) == {(Fraction(1), 3, 0, False, False),
                                (Fraction(1), 0, 2, False, False)}

    def test_odd_plain_power_flips(self):
        f = parse_terms("x1^3 + x2^2")
        g = restrict_quadrant(f, QuadrantSign(-1, +1))
        assert set(keys(g)) == {(Fraction(-1), 3, 0, False, False),
                                (Fraction(1), 0, 2, False, False)}

    def test_identically_zero_restriction_rejected(self):
        f = parse_terms("x1*x2 - |x1|*|x2|")
        with pytest.raises(ValueError):
            restrict_quadrant(f, QuadrantSign(1, 1))

    @given(term_sums(), st.sampled_from(QUADRANTS))
    @settings(max_examples=100, deadline=None)
    def test_pointwise_agreement_on_positive_grid(self, f, q):
        try:
            g = restrict_quadrant(f, q)
        except ValueError:
            return
        pts = [(Fraction(1, 3), Fraction(2, 5)), (Fraction(3, 4), Fraction(1, 7)),
               (Fraction(2), Fraction(5, 2))]
        for u1, u2 in pts:
            lhs = eval_term_sum(g, (u1, u2))
            rhs = eval_term_sum(f, (q.s1 * u1, q.s2 * u2))
            assert lhs == rhs

    @given(term_sums())
    @settings(max_examples=60, deadline=None)
    def test_swap_commutes_with_restriction(self, f):
        q = QuadrantSign(-1, +1)
        try:
            lhs = restrict_quadrant(swap_variables(f), q)
            rhs = swap_variables(restrict_quadrant(f, QuadrantSign(+1, -1)))
        except ValueError:
            return
        assert lhs == rhs


class TestEval:
    def test_monomial(self):
        assert eval_term_sum(parse_terms("x1^2*x2^3"), (2.0, 1.0)) == 4.0

    def test_sum(self):
        assert eval_term_sum(parse_terms("x1^3 + x2^2"), (1.0, 1.0)) == 2.0

    def test_against_horner_oracle(self):
        # oracle: evaluate sum of c * x1^a * x2^b via per-variable Horner
        f = parse_terms("x1^2 - 2*x1*x2 + x2^2")
        x1, x2 = 3.0, 1.0
        by_a: dict = {}
        for t in f.terms:
            by_a.setdefault(t.a, {})[t.b] = float(t.coeff)
        total = 0.0
        for a in sorted(by_a, reverse=True):
            inner = 0.0
            for b in sorted(by_a[a], reverse=True):
                inner = inner * x2 + by_a[a][b] * x2 ** b if inner else \
                    by_a[a][b] * x2 ** b
            total += inner * x1 ** a
        assert eval_term_sum(f, (x1, x2)) == pytest.approx(total, rel=0, abs=0)
        assert eval_term_sum(f, (x1, x2)) == 4.0

    def test_abs_mode_respected(self):
        f = parse_terms("|x1|^3")
        assert eval_term_sum(f, (-2.0, 0.0)) == 8.0
        g = parse_terms("x1^3")
        assert eval_term_sum(g, (-2.0, 0.0)) == -8.0
