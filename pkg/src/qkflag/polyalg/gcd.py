"""Exact division and multivariate GCD for Laurent polynomials.

Both strip monomial factors first (monomials are units in a Laurent ring),
then work with ordinary polynomials under lex order.  ``gcd`` is the
recursive primitive-PRS algorithm over ``Q[y][x]``.
"""

from __future__ import annotations

from qkflag import _kernel as K
from qkflag.polyalg.laurent import InexactDivisionError, LaurentPoly


def split_monomial(p: LaurentPoly):
    """Return ``(shift, q)`` with ``p = x^shift * q`` and ``q`` free of monomial factors."""
    m = p.min_exponents()
    if not any(m):
        return m, p
    neg = tuple(-x for x in m)
    return m, LaurentPoly(p.gens, {K.mono_mul(e, neg): c for e, c in p.terms.items()}, True)


def _polydiv_exact(a: dict, b: dict):
    """Quotient of polynomial term maps under lex, or None when not exact."""
    lb = max(b)
    cb = b[lb]
    rem = dict(a)
    quot = {}
    while rem:
        lr = max(rem)
        m = K.mono_div(lr, lb)
        if m is None:
            return None
        c = rem[lr] / cb
        quot[m] = c
        K.addmul_inplace(rem, -c, m, b)
    return quot


def divexact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """``a / b`` in the Laurent ring; raises :class:`InexactDivisionError` otherwise."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return a
    sa, pa = split_monomial(a)
    sb, pb = split_monomial(b)
    q = _polydiv_exact(pa.terms, pb.terms)
    if q is None:
        raise InexactDivisionError(f"{b} does not divide {a}")
    shift = tuple(x - y for x, y in zip(sa, sb))
    return LaurentPoly(a.gens, q, True).shift(shift)


def divides_exactly(b: LaurentPoly, a: LaurentPoly) -> bool:
    try:
        divexact(a, b)
    except InexactDivisionError:
        return False
    return True


def monic(p: LaurentPoly) -> LaurentPoly:
    """Scale so that the lex-leading coefficient is 1."""
    if not p:
        return p
    c = p.terms[max(p.terms)]
    if c == 1:
        return p
    return p / c


def normalize_associate(p: LaurentPoly) -> LaurentPoly:
    """Canonical associate: no monomial factor, lex-monic."""
    if not p:
        return p
    return monic(split_monomial(p)[1])


# -- recursive gcd --------------------------------------------------------


def _deg(p: LaurentPoly, i):
    return max(e[i] for e in p.terms)


def _coeffs_in(p: LaurentPoly, i):
    groups: dict = {}
    for e, c in p.terms.items():
        k = e[i]
        f = e[:i] + (0,) + e[i + 1:]
        groups.setdefault(k, {})[f] = c
    return {k: LaurentPoly(p.gens, v, True) for k, v in groups.items()}


def _content(p: LaurentPoly, i):
    coeffs = sorted(_coeffs_in(p, i).values(), key=len)
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = _gcd_poly(g, c)
    return monic(g) if not g.is_constant() else LaurentPoly.one(p.gens)


def _primitive(p: LaurentPoly, i):
    c = _content(p, i)
    q = p if c.is_one() else divexact(p, c)
    return monic(q)


def _prem(a: LaurentPoly, b: LaurentPoly, i):
    db = _deg(b, i)
    lcb = _coeffs_in(b, i)[db]
    n = len(a.gens)
    r = a
    while r and _deg(r, i) >= db:
        d = _deg(r, i)
        lcr = _coeffs_in(r, i)[d]
        shift = tuple(d - db if j == i else 0 for j in range(n))
        r = lcb * r - (lcr * b).shift(shift)
    return r


def _used(p: LaurentPoly):
    used = set()
    for e in p.terms:
        for i, x in enumerate(e):
            if x:
                used.add(i)
    return used


def _gcd_poly(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """GCD of polynomials (nonnegative exponents), up to a rational unit."""
    one = LaurentPoly.one(a.gens)
    if not a:
        return b
    if not b:
        return a
    if a.is_constant() or b.is_constant():
        return one
    ua, ub = _used(a), _used(b)
    only_a = sorted(ua - ub)
    if only_a:
        return _gcd_poly(_content(a, only_a[0]), b)
    only_b = sorted(ub - ua)
    if only_b:
        return _gcd_poly(a, _content(b, only_b[0]))
    i = min(ua)
    ca, cb = _content(a, i), _content(b, i)
    c = _gcd_poly(ca, cb)
    pa = a if ca.is_one() else divexact(a, ca)
    pb = b if cb.is_one() else divexact(b, cb)
    if _deg(pa, i) < _deg(pb, i):
        pa, pb = pb, pa
    while pb:
        if _deg(pb, i) == 0:
            pa = one
            break
        r = _prem(pa, pb, i)
        pa, pb = pb, (_primitive(r, i) if r else r)
    return c * monic(pa)


def gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor in the Laurent ring, as a canonical associate."""
    if a.gens != b.gens:
        from qkflag.polyalg.laurent import AlphabetError

        raise AlphabetError("alphabet mismatch")
    if not a:
        return normalize_associate(b)
    if not b:
        return normalize_associate(a)
    pa = split_monomial(a)[1]
    pb = split_monomial(b)[1]
    if pa.is_constant() or pb.is_constant():
        return LaurentPoly.one(a.gens)
    if pa == pb:
        return monic(pa)
    return normalize_associate(_gcd_poly(pa, pb))
