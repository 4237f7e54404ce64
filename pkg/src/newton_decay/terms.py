"""Exact representation of finite sums of signed monomial terms.

A function is modelled as f(x1, x2) = sum of c * p1(x1) * p2(x2) where each
factor pi is either a plain power xi^e or an absolute-value power |xi|^e,
with rational c and nonnegative integer e.  The constant term is forbidden
so that f(0, 0) = 0 always holds.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import (ConstantTermError, DegenerateQuadrantError,
                     EmptySumError, ExpressionError)


class QuadrantSign(NamedTuple):
    """Pair of signs (each +1 or -1) selecting an open quadrant."""

    s1: int
    s2: int

    def __str__(self) -> str:
        fmt = {1: "+", -1: "-"}
        return f"({fmt[self.s1]},{fmt[self.s2]})"


QUADRANTS = (
    QuadrantSign(+1, +1),
    QuadrantSign(-1, +1),
    QuadrantSign(+1, -1),
    QuadrantSign(-1, -1),
)


@dataclass(frozen=True, order=True)
class MonomialTerm:
    """One term c * x1^a * x2^b, optionally with |x1|, |x2| instead.

    ``abs1``/``abs2`` select the absolute-value power per variable.
    """

    a: int
    b: int
    abs1: bool
    abs2: bool
    coeff: Fraction

    def __post_init__(self) -> None:
        if self.coeff == 0:
            raise ValueError("zero coefficient")
        if self.a < 0 or self.b < 0:
            raise ValueError("negative exponent")
        # |x|^0 and x^0 are the same factor; normalize to plain.
        if self.a == 0 and self.abs1:
            object.__setattr__(self, "abs1", False)
        if self.b == 0 and self.abs2:
            object.__setattr__(self, "abs2", False)

    @property
    def key(self) -> tuple[int, int, bool, bool]:
        return (self.a, self.b, self.abs1, self.abs2)

    def __str__(self) -> str:
        parts = []
        if self.a > 0:
            v = "|x1|" if self.abs1 else "x1"
            parts.append(v if self.a == 1 else f"{v}^{self.a}")
        if self.b > 0:
            v = "|x2|" if self.abs2 else "x2"
            parts.append(v if self.b == 1 else f"{v}^{self.b}")
        if not parts or abs(self.coeff) != 1:
            parts.insert(0, str(abs(self.coeff)))
        body = "*".join(parts)
        return f"-{body}" if self.coeff < 0 else body


@dataclass(frozen=True)
class TermSum:
    """Canonical nonempty sum of monomial terms with distinct keys."""

    terms: tuple[MonomialTerm, ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise EmptySumError("term sum is empty")
        keys = [t.key for t in self.terms]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate term keys; use make_term_sum to merge")
        if any(t.a == 0 and t.b == 0 for t in self.terms):
            raise ConstantTermError("constant term present; f(0,0) must be 0")
        if list(keys) != sorted(keys):
            raise ValueError("terms not in canonical order; use make_term_sum")

    def support(self) -> list[tuple[int, int]]:
        """Distinct exponent pairs appearing in the sum."""
        return sorted({(t.a, t.b) for t in self.terms})

    def coeff_abs_sum(self) -> Fraction:
        return sum((abs(t.coeff) for t in self.terms), Fraction(0))

    def __str__(self) -> str:
        out = str(self.terms[0])
        for t in self.terms[1:]:
            s = str(t)
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out


def make_term_sum(terms: Iterable[MonomialTerm]) -> TermSum:
    """Merge duplicate keys by coefficient addition and canonicalize."""
    acc: dict[tuple[int, int, bool, bool], Fraction] = {}
    for t in terms:
        acc[t.key] = acc.get(t.key, Fraction(0)) + t.coeff
    merged = [
        MonomialTerm(a=k[0], b=k[1], abs1=k[2], abs2=k[3], coeff=c)
        for k, c in acc.items()
        if c != 0
    ]
    merged.sort(key=lambda t: t.key)
    return TermSum(tuple(merged))


# --- expression parsing ----------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+|\.\d+)?)"
    r"|(?P<var>\|x[12]\||x[12])"
    r"|(?P<op>[-+*^]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExpressionError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def parse_terms(text: str) -> TermSum:
    """Parse an expression like ``2*x1^3 - 1/2*|x1|*x2^2`` into a TermSum.

    Grammar: signed terms separated by + or -, each term a product of a
    rational/integer coefficient and powers of x1, x2, |x1|, |x2|.
    Duplicate keys merge; a surviving constant term or an empty result is an
    error.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ExpressionError("empty expression", 0)
    terms: list[MonomialTerm] = []
    i = 0
    n = len(tokens)

    def parse_factor(i: int, coeff: Fraction, a: int, b: int,
                     abs1: bool, abs2: bool):
        kind, val, at = tokens[i]
        if kind == "number":
            coeff *= Fraction(val)
            return i + 1, coeff, a, b, abs1, abs2
        if kind == "var":
            is_abs = val.startswith("|")
            var = val.strip("|")
            exp = 1
            j = i + 1
            if j < n and tokens[j][0] == "op" and tokens[j][1] == "^":
                j += 1
                if j >= n or tokens[j][0] != "number" or not tokens[j][1].isdigit():
                    raise ExpressionError("expected integer exponent after '^'",
                                          tokens[j - 1][2] + 1)
                exp = int(tokens[j][1])
                j += 1
            if var == "x1":
                a += exp
                abs1 = abs1 or (is_abs and exp > 0)
            else:
                b += exp
                abs2 = abs2 or (is_abs and exp > 0)
            return j, coeff, a, b, abs1, abs2
        raise ExpressionError(f"unexpected {val!r}", at)

    while i < n:
        sign = 1
        # leading sign(s) of the term
        while i < n and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise ExpressionError("dangling sign at end of expression",
                                  tokens[-1][2])
        if tokens[i][0] == "op":
            raise ExpressionError(f"unexpected {tokens[i][1]!r}", tokens[i][2])
        coeff, a, b, abs1, abs2 = Fraction(1), 0, 0, False, False
        i, coeff, a, b, abs1, abs2 = parse_factor(i, coeff, a, b, abs1, abs2)
        while i < n and tokens[i][0] == "op" and tokens[i][1] == "*":
            at = tokens[i][2]
            i += 1
            if i >= n or tokens[i][0] == "op":
                raise ExpressionError("expected factor after '*'", at + 1)
            i, coeff, a, b, abs1, abs2 = parse_factor(i, coeff, a, b, abs1, abs2)
        if i < n and not (tokens[i][0] == "op" and tokens[i][1] in "+-"):
            raise ExpressionError("expected '+', '-' or '*'", tokens[i][2])
        if a == 0 and b == 0:
            raise ConstantTermError(
                "constant term present; f(0,0) must be 0")
        terms.append(MonomialTerm(a=a, b=b, abs1=abs1, abs2=abs2,
                                  coeff=sign * coeff))
    try:
        return make_term_sum(terms)
    except EmptySumError:
        raise EmptySumError("all terms cancelled; the sum is identically zero")


def format_terms(f: TermSum) -> str:
    """Canonical printing; parse_terms(format_terms(f)) == f."""
    return str(f)


# --- operations ------------------------------------------------------------


def restrict_quadrant(f: TermSum, q: QuadrantSign) -> TermSum:
    """Fold quadrant signs into coefficients: the returned sum g satisfies
    g(u1, u2) = f(s1*u1, s2*u2) for u1, u2 > 0, with all plain powers.

    Raises ValueError if the restriction cancels identically (possible only
    for mixed abs/plain inputs, which vanish on an open quadrant).
    """
    folded = []
    for t in f.terms:
        c = t.coeff
        if not t.abs1 and q.s1 < 0 and t.a % 2 == 1:
            c = -c
        if not t.abs2 and q.s2 < 0 and t.b % 2 == 1:
            c = -c
        folded.append(MonomialTerm(a=t.a, b=t.b, abs1=False, abs2=False, coeff=c))
    try:
        return make_term_sum(folded)
    except EmptySumError:
        raise DegenerateQuadrantError(
            f"term sum vanishes identically on quadrant {q}; "
            "not representable"
        )


def swap_variables(f: TermSum) -> TermSum:
    """Exchange the roles of x1 and x2 in every term (an involution)."""
    return make_term_sum(
        MonomialTerm(a=t.b, b=t.a, abs1=t.abs2, abs2=t.abs1, coeff=t.coeff)
        for t in f.terms
    )


def eval_term_sum(f: TermSum, x: tuple[float, float]) -> float:
    """Evaluate f at a point (double precision; exact for Fraction inputs
    with Fraction arithmetic if given Fractions)."""
    x1, x2 = x
    total = None
    for t in f.terms:
        u = abs(x1) if t.abs1 else x1
        v = abs(x2) if t.abs2 else x2
        val = t.coeff * u ** t.a * v ** t.b
        total = val if total is None else total + val
    return total
