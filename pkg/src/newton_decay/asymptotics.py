"""Symbolic decay analysis driven by the Newton polygon.

Three engines live here, all exact over the rationals:

* the majorant (sum of vertex monomials) and its dominant-vertex
  decomposition of the punctured unit square into scaling regions;
* the slice expansion: the vertical-slice integral of the majorant to a
  negative power, evaluated in closed form as a power-log sum in the slice
  abscissa r, from which the decay pair (epsilon, log power) is read off;
* the frequency envelope: the integral of the same power of the majorant
  over the frequency-dual rectangle, evaluated per scaling region as a
  two-variable power-log sum and reduced to a piecewise power-log table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagnosis import WellBehavedReport, is_well_behaved
from .errors import ContractViolationError, DivergentError
from .newton import NewtonPolygon, build_polygon, newton_distance, reflect_polygon
from .terms import TermSum

# --- power-log sums in one variable ----------------------------------------


@dataclass(frozen=True)
class PowerLogTerm:
    """coeff * r^alpha * |ln r|^p, for r in (0, 1)."""

    coeff: Fraction
    alpha: Fraction
    p: int

    def evaluate(self, r: float) -> float:
        import math

        return float(self.coeff) * r ** float(self.alpha) * abs(math.log(r)) ** self.p


@dataclass(frozen=True)
class PowerLogSum:
    """Normalized sum: distinct (alpha, p) keys, dominance order as r -> 0+
    (smaller alpha first, then larger log power)."""

    terms: tuple[PowerLogTerm, ...]

    def evaluate(self, r: float) -> float:
        return sum(t.evaluate(r) for t in self.terms)

    def dominant(self) -> PowerLogTerm:
        if not self.terms:
            raise ContractViolationError("empty power-log sum has no dominant term")
        return self.terms[0]


def make_power_log_sum(terms) -> PowerLogSum:
    acc: dict[tuple[Fraction, int], Fraction] = {}
    for t in terms:
        key = (t.alpha, t.p)
        acc[key] = acc.get(key, Fraction(0)) + t.coeff
    out = [PowerLogTerm(coeff=c, alpha=k[0], p=k[1])
           for k, c in acc.items() if c != 0]
    out.sort(key=lambda t: (t.alpha, -t.p))
    return PowerLogSum(tuple(out))


@dataclass(frozen=True)
class DecayPair:
    """Slice integral grows like r^{-epsilon} |ln r|^{log_power} as r -> 0."""

    epsilon: Fraction
    log_power: int


# --- majorant and dominant vertex -------------------------------------------


def eval_majorant(p: NewtonPolygon, x: tuple) -> float | Fraction:
    """Sum of |x1|^{v1} |x2|^{v2} over the polygon vertices.

    Exact when handed Fractions, double precision on floats.
    """
    x1, x2 = abs(x[0]), abs(x[1])
    total = None
    for v in p.vertices:
        val = x1 ** v.v1 * x2 ** v.v2
        total = val if total is None else total + val
    return total


def dominant_vertex(p: NewtonPolygon, x: tuple) -> int:
    """Index of the vertex whose monomial dominates the majorant at x.

    x must lie in the punctured open unit square.  Region i is delimited by
    the scaling curves |x2| = |x1|^{m_i}; boundary ties resolve toward the
    smaller index.  Comparisons are exact for Fraction inputs.
    """
    x1, x2 = abs(x[0]), abs(x[1])
    if not (0 < x1 < 1 and 0 < x2 < 1):
        raise ValueError("point must lie in the punctured open unit square")
    region = 0
    for e in p.compact_edges:
        # |x2| > |x1|^(num/den)  <=>  |x2|^den > |x1|^num  (positive bases)
        if x2 ** e.m.denominator > x1 ** e.m.numerator:
            region += 1
        else:
            break
    return region


# --- slice expansion ---------------------------------------------------------


def _block_integral(s: Fraction, lo_pow: Fraction | None,
                    hi_pow: Fraction | None) -> list[tuple[Fraction, Fraction, int]]:
    """Closed form of the x2-integral of x2^{-s} between r^{lo_pow} and
    r^{hi_pow} (None means the constant limit 0 resp. 1), as terms
    (coeff, alpha, logpow) in r.  Raises DivergentError at the 0 limit when
    s >= 1."""
    out: list[tuple[Fraction, Fraction, int]] = []
    if s == 1:
        # antiderivative ln x2; ln(r^p) = -p |ln r| for r < 1
        if hi_pow is None:      # upper limit 1: ln 1 = 0
            pass
        else:
            out.append((-hi_pow, Fraction(0), 1))
        if lo_pow is None:
            raise DivergentError("slice block diverges: exponent 1 down to 0")
        out.append((lo_pow, Fraction(0), 1))
        # result (lo_pow - hi_pow)|ln r| with hi term already negated
        return out
    c = 1 / (1 - s)
    if hi_pow is None:      # upper limit 1: antiderivative value 1/(1-s)
        out.append((c, Fraction(0), 0))
    else:
        out.append((c, hi_pow * (1 - s), 0))
    if lo_pow is None:
        if s >= 1:
            raise DivergentError("slice block diverges: nonintegrable axis power")
        # lower limit 0 contributes nothing when 1 - s > 0
    else:
        out.append((-c, lo_pow * (1 - s), 0))
    return out


def slice_expansion(p: NewtonPolygon, rho: Fraction) -> PowerLogSum:
    """Closed-form expansion of the slice integral of the majorant power.

    The integral of (majorant(r, x2))^{-rho} over x2 in (0, r0) splits at
    the scaling thresholds r^{m_i}; on the i-th piece the majorant is
    comparable to its i-th vertex monomial, so each piece contributes
    r^{-rho*v1} times a closed-form x2-integral.  The result, valid up to
    bounded constant factors, is returned as a normalized power-log sum in
    r.  The reference scale r0 only shifts constants and is not modelled.

    Raises DivergentError when the first block is infinite
    (rho * v2_of_first_vertex >= 1), ValueError when rho <= 0.
    """
    rho = Fraction(rho)
    if rho <= 0:
        raise ValueError("rho must be positive for the slice expansion")
    vs = p.vertices
    ms = p.edge_ms()
    n = len(vs)
    raw: list[PowerLogTerm] = []
    for i, v in enumerate(vs):
        s = rho * v.v2
        lo_pow = ms[i - 1] if i >= 1 else None           # r^{m_{i-1}} or 0
        hi_pow = ms[i] if i <= n - 2 else None           # r^{m_i} or 1
        for coeff, alpha, logpow in _block_integral(s, lo_pow, hi_pow):
            raw.append(PowerLogTerm(coeff=coeff,
                                    alpha=alpha - rho * v.v1,
                                    p=logpow))
    total = make_power_log_sum(raw)
    if not total.terms:
        raise ContractViolationError(
            "slice expansion cancelled identically; the integral is positive")
    return total


def decay_pair(s: PowerLogSum) -> DecayPair:
    """Read (epsilon, log power) off the dominant term of a slice expansion."""
    dom = s.dominant()
    if dom.coeff <= 0:
        raise ContractViolationError(
            f"dominant coefficient {dom.coeff} is not positive")
    eps = -dom.alpha
    if eps < 0:
        raise ContractViolationError(f"negative growth exponent {eps}")
    if dom.p > 1:
        raise ContractViolationError(
            f"dominant log power {dom.p} exceeds 1")
    return DecayPair(epsilon=eps, log_power=dom.p)


# --- decay prediction --------------------------------------------------------


@dataclass(frozen=True)
class DecayPrediction:
    """Predicted large-frequency bounds |F| <= C (2+|lambda_i|)^{eps_i - 1}
    (ln(2+|lambda_i|))^{d_i}, with applicability flags."""

    rho: Fraction
    d: Fraction
    well_behaved: WellBehavedReport
    pair1: DecayPair | None
    pair2: DecayPair | None
    divergent: bool
    applicable: bool
    reasons: tuple[str, ...]
    combined: DecayPair | None

    @property
    def eps1(self) -> Fraction | None:
        return self.pair1.epsilon if self.pair1 else None

    @property
    def eps2(self) -> Fraction | None:
        return self.pair2.epsilon if self.pair2 else None


def fourier_decay_prediction(f: TermSum, rho: Fraction) -> DecayPrediction:
    """Both decay pairs (original and variable-swapped), hypothesis checks,
    and the combined (slower) bound exponent."""
    rho = Fraction(rho)
    if rho <= 0:
        raise ValueError("rho must be positive")
    polygon = build_polygon(f)
    d = newton_distance(polygon)
    wb = is_well_behaved(f)
    reasons: list[str] = []
    divergent = False
    pair1 = pair2 = None
    try:
        pair1 = decay_pair(slice_expansion(polygon, rho))
        pair2 = decay_pair(slice_expansion(reflect_polygon(polygon), rho))
    except DivergentError:
        divergent = True
        reasons.append("slice integral diverges at this rho")
    if not wb.verdict:
        reasons.append("not well-behaved")
    if not rho < 1 / d:
        reasons.append(f"rho not inside (0, 1/d) = (0, {1 / d})")
    half = Fraction(1, 2)
    if pair1 is not None and pair2 is not None:
        if not (pair1.epsilon > half and pair2.epsilon > half):
            reasons.append("decay exponent not above 1/2 on both axes")
    applicable = not reasons
    combined = None
    if pair1 is not None and pair2 is not None:
        combined = max(pair1, pair2,
                       key=lambda pr: (pr.epsilon, pr.log_power))
    return DecayPrediction(rho=rho, d=d, well_behaved=wb, pair1=pair1,
                           pair2=pair2, divergent=divergent,
                           applicable=applicable, reasons=tuple(reasons),
                           combined=combined)


# --- frequency envelope ------------------------------------------------------
#
# Terms of the envelope sum are coeff * X^ax |ln X|^px * Y^ay |ln Y|^py where
# X = min(1, 1/|lambda1|), Y = min(1, 1/|lambda2|).  Symbolic integration
# bounds are 0, X, or Y^e; on the k-th frequency domain the bound
# min(X, Y^{1/m_j}) resolves to X exactly when j <= k-1.

_ZERO = ("zero",)
_X = ("X",)


def _ypow(e: Fraction):
    return ("Ypow", e)


@dataclass(frozen=True)
class _PL2:
    coeff: Fraction
    ax: Fraction
    px: int
    ay: Fraction
    py: int


def _pl2_normalize(terms: list[_PL2]) -> list[_PL2]:
    acc: dict[tuple, Fraction] = {}
    for t in terms:
        k = (t.ax, t.px, t.ay, t.py)
        acc[k] = acc.get(k, Fraction(0)) + t.coeff
    out = [_PL2(coeff=c, ax=k[0], px=k[1], ay=k[2], py=k[3])
           for k, c in acc.items() if c != 0]
    out.sort(key=lambda t: (t.ax, t.ay, -t.px, -t.py))
    return out


def _antiderivative(A: Fraction, j: int) -> list[tuple[Fraction, Fraction, int]]:
    """Antiderivative of x^A |ln x|^j as terms (coeff, power, logpow).

    Only j in {0, 1} occurs (inner integrals contribute at most one log).
    """
    if j == 0:
        if A != -1:
            return [(1 / (A + 1), A + 1, 0)]
        return [(Fraction(-1), Fraction(0), 1)]
    if j == 1:
        if A != -1:
            c = 1 / (A + 1)
            return [(c, A + 1, 1), (c * c, A + 1, 0)]
        return [(Fraction(-1, 2), Fraction(0), 2)]
    raise ContractViolationError(f"unexpected log power {j} in outer integrand")


def _eval_bound(pieces, bound, carried: _PL2) -> list[_PL2]:
    """Evaluate antiderivative terms at a symbolic bound, attaching the
    carried Y-factors.  Raises DivergentError on an infinite limit at 0."""
    out: list[_PL2] = []
    for coeff, power, logpow in pieces:
        c = carried.coeff * coeff
        if bound == _ZERO:
            if power > 0:
                continue    # limit is 0
            if power == 0 and logpow == 0:
                out.append(_PL2(coeff=c, ax=Fraction(0), px=0,
                                ay=carried.ay, py=carried.py))
                continue
            raise DivergentError("envelope integral diverges at the origin")
        if bound == _X:
            out.append(_PL2(coeff=c, ax=power, px=logpow,
                            ay=carried.ay, py=carried.py))
        else:
            e = bound[1]    # x = Y^e, so x^P = Y^{eP}, |ln x| = e |ln Y|
            out.append(_PL2(coeff=c * e ** logpow, ax=Fraction(0), px=0,
                            ay=carried.ay + e * power,
                            py=carried.py + logpow))
    return out


def _integrate_segment(inner_terms: list[_PL2], lo, hi) -> list[_PL2]:
    """Integrate sum of coeff x1^ax |ln x1|^px (Y-factors carried) over the
    segment (lo, hi) with symbolic bounds."""
    out: list[_PL2] = []
    for t in inner_terms:
        anti = _antiderivative(t.ax, t.px)
        out.extend(_eval_bound(anti, hi, t))
        out.extend(_PL2(coeff=-u.coeff, ax=u.ax, px=u.px, ay=u.ay, py=u.py)
                   for u in _eval_bound(anti, lo, t))
    return out


def _inner_block(s: Fraction, lo_m: Fraction | None, hi) -> list[_PL2]:
    """x2-integral of x2^{-s} from the lower curve x1^{lo_m} (or 0) up to
    ``hi`` which is either ("curve", m) or ("Y",), as terms in x1 carrying
    Y-factors."""
    out: list[_PL2] = []
    one = Fraction(1)
    if s == 1:
        if hi[0] == "curve":
            out.append(_PL2(coeff=-hi[1], ax=Fraction(0), px=1,
                            ay=Fraction(0), py=0))
        else:
            out.append(_PL2(coeff=Fraction(-1), ax=Fraction(0), px=0,
                            ay=Fraction(0), py=1))
        if lo_m is None:
            raise DivergentError("envelope block diverges toward the axis")
        out.append(_PL2(coeff=lo_m, ax=Fraction(0), px=1,
                        ay=Fraction(0), py=0))
        return out
    c = one / (1 - s)
    if hi[0] == "curve":
        out.append(_PL2(coeff=c, ax=hi[1] * (1 - s), px=0,
                        ay=Fraction(0), py=0))
    else:
        out.append(_PL2(coeff=c, ax=Fraction(0), px=0, ay=1 - s, py=0))
    if lo_m is not None:
        out.append(_PL2(coeff=-c, ax=lo_m * (1 - s), px=0,
                        ay=Fraction(0), py=0))
    elif s > 1:
        raise DivergentError("envelope block diverges toward the axis")
    return out


def envelope_sum_on_domain(p: NewtonPolygon, rho: Fraction,
                           k: int) -> list[_PL2]:
    """Exact closed form of the envelope integral on the k-th frequency
    domain, as a normalized two-variable power-log sum."""
    rho = Fraction(rho)
    vs = p.vertices
    ms = p.edge_ms()
    n = len(vs)
    if not 0 <= k <= n - 1:
        raise ValueError("domain index out of range")

    def min_x_ypow(j: int):
        # min(X, Y^{1/m_j}) on domain k
        return _X if j <= k - 1 else _ypow(1 / ms[j])

    terms: list[_PL2] = []
    for i, v in enumerate(vs):
        s = rho * v.v2
        lo_m = ms[i - 1] if i >= 1 else None
        factor = -rho * v.v1
        # segment A: inner upper limit on the curve x2 = x1^{m_i}
        if i <= n - 2:
            u1 = min_x_ypow(i)
            inner = _inner_block(s, lo_m, ("curve", ms[i]))
            inner = [_PL2(coeff=t.coeff, ax=t.ax + factor, px=t.px,
                          ay=t.ay, py=t.py) for t in inner]
            terms.extend(_integrate_segment(inner, _ZERO, u1))
        else:
            u1 = _ZERO
        # segment B: inner upper limit Y
        u2 = min_x_ypow(i - 1) if i >= 1 else _X
        if u1 != u2:
            inner = _inner_block(s, lo_m, ("Y",))
            inner = [_PL2(coeff=t.coeff, ax=t.ax + factor, px=t.px,
                          ay=t.ay, py=t.py) for t in inner]
            terms.extend(_integrate_segment(inner, u1, u2))
    out = _pl2_normalize(terms)
    if not out:
        raise ContractViolationError("envelope sum cancelled identically")
    return out


@dataclass(frozen=True)
class EnvelopePiece:
    """Dominant power-log behavior of the envelope on one frequency domain.

    Valid where |lambda1|^{mu_lo} <= |lambda2| <= |lambda1|^{mu_hi}
    (mu_hi None means unbounded); the value is
    coeff * |l1|^{alpha1} (ln|l1|)^{log1} * |l2|^{alpha2} (ln|l2|)^{log2}
    up to bounded factors.
    """

    mu_lo: Fraction
    mu_hi: Fraction | None
    alpha1: Fraction
    log1: int
    alpha2: Fraction
    log2: int
    coeff: Fraction

    def region_text(self) -> str:
        lo = f"|l1|^{self.mu_lo}" if self.mu_lo > 0 else "1"
        if self.mu_hi is None:
            return f"|l2| >= {lo}"
        return f"{lo} <= |l2| <= |l1|^{self.mu_hi}"

    def evaluate(self, lam1: float, lam2: float) -> float:
        import math

        l1 = max(2.0, abs(lam1))
        l2 = max(2.0, abs(lam2))
        return (float(self.coeff)
                * l1 ** float(self.alpha1) * math.log(l1) ** self.log1
                * l2 ** float(self.alpha2) * math.log(l2) ** self.log2)


def _tier_representative(terms: list[_PL2], pair: tuple[Fraction, Fraction],
                         mu_lo: Fraction,
                         mu_hi: Fraction | None) -> _PL2:
    """Asymptotic log structure of the terms sharing one exponent pair.

    Along Y = X^mu the tier behaves like |ln X|^L * P(mu) with
    P(mu) = sum of c * mu^py over the top log tier; P must stay positive on
    the open mu-interval (it may vanish on the boundary, where the adjacent
    domain takes over).  The reported term carries the log split that
    realizes the tier's growth on this interval.
    """
    from . import polyroots

    tier = [t for t in terms if (t.ax, t.ay) == pair]
    top = max(t.px + t.py for t in tier)
    sub = [t for t in tier if t.px + t.py == top]
    if len(sub) == 1:
        t = sub[0]
        if t.coeff <= 0:
            raise ContractViolationError(
                "dominant envelope coefficient is not positive")
        return t
    # polynomial P(mu) over the rationals
    deg = max(t.py for t in sub)
    coeffs = [Fraction(0)] * (deg + 1)
    for t in sub:
        coeffs[t.py] += t.coeff
    P = polyroots.normalize(coeffs)
    chain = polyroots.sturm_chain(P)
    hi_probe = mu_hi if mu_hi is not None else max(
        polyroots.root_bound(P), mu_lo * 2 + 1)
    inside = polyroots.count_roots(chain, mu_lo, hi_probe)
    if mu_hi is not None and polyroots.eval_poly(P, mu_hi) == 0:
        inside -= 1
    mid = (mu_lo + hi_probe) / 2
    if inside > 0 or polyroots.eval_poly(P, mid) <= 0:
        raise ContractViolationError(
            "dominant envelope log tier is not positive on its domain")
    if mu_hi is None or mu_lo >= 1:
        rep = max(sub, key=lambda t: t.py)
    elif mu_hi <= 1:
        rep = max(sub, key=lambda t: t.px)
    else:
        rep = max(sub, key=lambda t: t.py)
    coeff = rep.coeff if rep.coeff > 0 else polyroots.eval_poly(P, mid)
    return _PL2(coeff=coeff, ax=rep.ax, px=rep.px, ay=rep.ay, py=rep.py)


def _dominant_on_mu_interval(terms: list[_PL2], mu_lo: Fraction,
                             mu_hi: Fraction | None) -> list[tuple[Fraction, Fraction | None, _PL2]]:
    """Dominant behavior of a power-log sum along Y = X^mu on an interval;
    splits at exponent crossings when no single exponent pair dominates."""
    pairs = sorted({(t.ax, t.ay) for t in terms})

    def exponent(pair, mu: Fraction) -> Fraction:
        return pair[0] + mu * pair[1]

    def key_left(pair):
        # dominance just inside the left endpoint: smaller exponent wins,
        # ties broken by smaller growth slope
        return (exponent(pair, mu_lo), pair[1])

    def key_right(pair):
        if mu_hi is None:
            return (pair[1], pair[0])
        return (exponent(pair, mu_hi), -pair[1])

    best_left = min(pairs, key=key_left)
    best_right = min(pairs, key=key_right)
    if best_left != best_right:
        if mu_hi is not None:
            e_bl = exponent(best_left, mu_hi)
            e_br = exponent(best_right, mu_hi)
        else:
            e_bl, e_br = best_left[1], best_right[1]
        if e_bl > e_br:
            # genuine crossing: exponents are linear in mu
            denom = best_left[1] - best_right[1]
            if denom == 0:
                raise ContractViolationError("parallel exponents cannot cross")
            mu_star = (best_right[0] - best_left[0]) / denom
            if mu_hi is not None and not (mu_lo < mu_star < mu_hi):
                raise ContractViolationError("crossing escaped its domain")
            return (_dominant_on_mu_interval(terms, mu_lo, mu_star)
                    + _dominant_on_mu_interval(terms, mu_star, mu_hi))
    rep = _tier_representative(terms, best_left, mu_lo, mu_hi)
    return [(mu_lo, mu_hi, rep)]


def envelope_pieces(p: NewtonPolygon, rho: Fraction) -> tuple[EnvelopePiece, ...]:
    """Piecewise power-log table of the envelope over the large-frequency
    quadrant.  Raises DivergentError when the underlying integral diverges."""
    rho = Fraction(rho)
    ms = p.edge_ms()
    n = len(p.vertices)
    pieces: list[EnvelopePiece] = []
    for k in range(n):
        terms = envelope_sum_on_domain(p, rho, k)
        mu_lo = ms[k] if k <= n - 2 else Fraction(0)
        mu_hi = ms[k - 1] if k >= 1 else None
        for lo, hi, t in _dominant_on_mu_interval(terms, mu_lo, mu_hi):
            if t.coeff <= 0:
                raise ContractViolationError(
                    "dominant envelope coefficient is not positive")
            if t.px > 1 or t.py > 1:
                raise ContractViolationError(
                    f"envelope piece log powers ({t.px},{t.py}) exceed 1")
            pieces.append(EnvelopePiece(mu_lo=lo, mu_hi=hi,
                                        alpha1=-t.ax, log1=t.px,
                                        alpha2=-t.ay, log2=t.py,
                                        coeff=t.coeff))
    return tuple(pieces)


@dataclass(frozen=True)
class EnvelopeResult:
    value: float
    domain_index: int
    pieces: tuple[EnvelopePiece, ...]


def _envelope_domain_of(p: NewtonPolygon, X: float, Y: float) -> int:
    k = 0
    for m in p.edge_ms():
        if Y > X ** float(m):
            k += 1
        else:
            break
    return k


def envelope_value(p: NewtonPolygon, rho: Fraction, X: float,
                   Y: float) -> float:
    """Exact-in-closed-form value of the envelope integral over
    (0, X) x (0, Y) in dominant-monomial mode, evaluated in doubles."""
    import math

    k = _envelope_domain_of(p, X, Y)
    terms = envelope_sum_on_domain(p, Fraction(rho), k)
    lx = abs(math.log(X)) if 0 < X < 1 else 0.0
    ly = abs(math.log(Y)) if 0 < Y < 1 else 0.0
    value = 0.0
    for t in terms:
        value += (float(t.coeff) * X ** float(t.ax) * lx ** t.px
                  * Y ** float(t.ay) * ly ** t.py)
    return value


def frequency_envelope(p: NewtonPolygon, rho: Fraction,
                       lam: tuple[float, float]) -> EnvelopeResult:
    """Envelope value at a frequency pair, up to bounded constant factors.

    X = min(1, 1/|l1|), Y = min(1, 1/|l2|); the exact domain sum is
    evaluated at (X, Y).  Any rho (including rho <= 0) is accepted; a
    divergent envelope raises DivergentError.
    """
    rho = Fraction(rho)
    lam1, lam2 = lam
    X = min(1.0, 1.0 / abs(lam1)) if lam1 else 1.0
    Y = min(1.0, 1.0 / abs(lam2)) if lam2 else 1.0
    return EnvelopeResult(value=envelope_value(p, rho, X, Y),
                          domain_index=_envelope_domain_of(p, X, Y),
                          pieces=envelope_pieces(p, rho))
