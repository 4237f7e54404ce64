"""Univariate polynomials over the rationals: exact root isolation.

Polynomials are tuples of Fraction coefficients, index = degree, with no
trailing zeros.  The verdict-critical path (zero orders of edge polynomials)
runs entirely on these exact routines: Yun's square-free decomposition via
gcd chains, Sturm sign-variation counting, and bisection refinement of
isolating intervals.  No floating point.
"""

from __future__ import annotations

from fractions import Fraction

Poly = tuple[Fraction, ...]


def normalize(coeffs) -> Poly:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Poly) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(p) - 1


def eval_poly(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Poly) -> Poly:
    return normalize(i * c for i, c in enumerate(p) if i > 0)


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return normalize(out)


def poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    dq = degree(q)
    lead = q[-1]
    for k in range(len(rem) - 1, dq - 1, -1):
        if rem[k] == 0:
            continue
        f = rem[k] / lead
        quot[k - dq] = f
        for j in range(dq + 1):
            rem[k - dq + j] -= f * q[j]
    return normalize(quot), normalize(rem)


def monic(p: Poly) -> Poly:
    if not p:
        return p
    lead = p[-1]
    return tuple(c / lead for c in p)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    a, b = p, q
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return monic(a)


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: p = lead * prod g_k^k with the g_k square-free,
    pairwise coprime, monic.  Returns [(g_k, k)] with nontrivial g_k only."""
    if degree(p) < 1:
        return []
    p = monic(p)
    dp = derivative(p)
    a = poly_gcd(p, dp)
    b = poly_divmod(p, a)[0]
    c = poly_divmod(dp, a)[0]
    d = normalize(
        [ci - di for ci, di in
         zip_pad(c, derivative(b))]
    )
    out = []
    k = 1
    while degree(b) >= 1:
        g = poly_gcd(b, d)
        if degree(g) >= 1:
            out.append((g, k))
        b2 = poly_divmod(b, g)[0]
        c2 = poly_divmod(d, g)[0]
        d = normalize([ci - di for ci, di in zip_pad(c2, derivative(b2))])
        b = b2
        k += 1
    return out


def zip_pad(p: Poly, q: Poly):
    n = max(len(p), len(q))
    for i in range(n):
        yield (p[i] if i < len(p) else Fraction(0),
               q[i] if i < len(q) else Fraction(0))


def sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, derivative(p)]
    while degree(chain[-1]) >= 1:
        rem = poly_divmod(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append(tuple(-c for c in rem))
    return [q for q in chain if q]


def sign_variations(chain: list[Poly], x: Fraction) -> int:
    signs = []
    for q in chain:
        v = eval_poly(q, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_roots(chain: list[Poly], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in (lo, hi] (p square-free or not)."""
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B)."""
    lead = abs(p[-1])
    return 1 + max((abs(c) for c in p[:-1]), default=Fraction(0)) / lead


def strip_origin_root(p: Poly) -> Poly:
    """Divide out the highest power of t, removing any root at t = 0."""
    q = list(p)
    while q and q[0] == 0:
        q.pop(0)
    return normalize(q)


def isolate_positive_roots(p: Poly) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for the roots of square-free p in (0, inf).

    Each returned (lo, hi) satisfies 0 <= lo < hi with exactly one (simple)
    root in (lo, hi], or lo == hi when an exact rational root was hit.
    Invariant maintained throughout: the left endpoint of every pending
    interval is never a root, so a later sign-bisection refinement always
    brackets correctly.
    """
    if degree(p) < 1:
        return []
    while p and p[0] == 0:      # drop the root at t = 0; we want t > 0
        p = p[1:]
    p = normalize(p)
    if degree(p) < 1:
        return []
    chain = sturm_chain(p)
    bound = root_bound(p)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(Fraction(0), bound, count_roots(chain, Fraction(0), bound))]
    while stack:
        lo, hi, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if eval_poly(p, mid) == 0:
            out.append((mid, mid))
            # peel off sub-intervals strictly clear of the exact root
            delta = (hi - lo) / 1024
            while count_roots(chain, mid - delta, mid) > 1:
                delta /= 2
            left_hi = mid - delta
            stack.append((lo, left_hi, count_roots(chain, lo, left_hi)))
            delta = (hi - lo) / 1024
            while count_roots(chain, mid, mid + delta) > 0:
                delta /= 2
            right_lo = mid + delta
            stack.append((right_lo, hi, count_roots(chain, right_lo, hi)))
        else:
            left = count_roots(chain, lo, mid)
            stack.append((lo, mid, left))
            stack.append((mid, hi, k - left))
    out.sort()
    return out


def refine_interval(p: Poly, lo: Fraction, hi: Fraction,
                    width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval of square-free p below ``width`` by
    sign bisection.  Requires a sign change on (lo, hi) unless lo == hi."""
    if lo == hi:
        return lo, hi
    flo = eval_poly(p, lo)
    fhi = eval_poly(p, hi)
    if flo == 0:
        return lo, lo
    if fhi == 0:
        return hi, hi
    if (flo > 0) == (fhi > 0):
        raise ValueError("interval endpoints do not bracket a simple root")
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = eval_poly(p, mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return lo, hi
