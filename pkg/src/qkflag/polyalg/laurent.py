"""Sparse multivariate Laurent polynomials with exact coefficients."""

from __future__ import annotations

from qkflag import _kernel as K
from qkflag.polyalg.numbers import QQ, is_rational
from qkflag.polyalg.order import GRLEX, TermOrder


class AlphabetError(ValueError):
    """Operands live over different variable alphabets."""


class NonInvertibleError(ValueError):
    """A negative power of a variable was bound to a non-unit."""


class InexactDivisionError(ArithmeticError):
    pass


def _is_scalar(x):
    return not isinstance(x, LaurentPoly)


class LaurentPoly:
    """Element of ``k[x_1^±, ..., x_n^±]`` stored as ``{exponent tuple: coefficient}``.

    Coefficients are exact rationals by default; any exact field element
    supporting ``+ - * /`` and truthiness (e.g. :class:`RatFunc`) also works.
    Zero coefficients are never stored, so equal elements have equal term maps.
    """

    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, gens, terms=None, _trusted=False):
        self.gens = tuple(gens)
        if terms is None:
            terms = {}
        elif not _trusted:
            n = len(self.gens)
            clean = {}
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != n:
                    raise AlphabetError(f"exponent {e} does not match alphabet {self.gens}")
                if is_rational(c):
                    c = QQ(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            terms = {e: c for e, c in clean.items() if c}
        self.terms = terms
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, gens):
        return cls(gens, {}, True)

    @classmethod
    def const(cls, gens, c):
        gens = tuple(gens)
        if is_rational(c):
            c = QQ(c)
        if not c:
            return cls(gens, {}, True)
        return cls(gens, {(0,) * len(gens): c}, True)

    @classmethod
    def one(cls, gens):
        return cls.const(gens, 1)

    @classmethod
    def var(cls, gens, name, power=1):
        gens = tuple(gens)
        e = [0] * len(gens)
        e[gens.index(name)] = power
        return cls(gens, {tuple(e): QQ(1)}, True)

    @classmethod
    def monomial(cls, gens, exps, c=1):
        """``exps`` is an exponent tuple or a ``{name: exponent}`` map."""
        gens = tuple(gens)
        if isinstance(exps, dict):
            e = [0] * len(gens)
            for name, k in exps.items():
                if name not in gens:
                    raise AlphabetError(f"unknown variable {name!r}")
                e[gens.index(name)] += k
            exps = tuple(e)
        return cls(gens, {tuple(exps): c}) if c else cls(gens, {}, True)

    @classmethod
    def parse(cls, text, gens):
        from qkflag.polyalg.parse import parse_poly

        return parse_poly(text, tuple(gens))

    # -- basic predicates -------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coeff(self):
        return self.terms.get((0,) * len(self.gens), 0)

    def is_monomial(self):
        return len(self.terms) == 1

    def is_one(self):
        return len(self.terms) == 1 and self.terms.get((0,) * len(self.gens)) == 1

    def is_polynomial(self, names=None):
        idx = range(len(self.gens)) if names is None else [self.gens.index(n) for n in names]
        return all(e[i] >= 0 for e in self.terms for i in idx)

    def variables(self):
        """Names of variables that actually occur."""
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
        return tuple(self.gens[i] for i in sorted(used))

    def min_exponents(self):
        return tuple(min(col) for col in zip(*self.terms)) if self.terms else (0,) * len(self.gens)

    def max_exponents(self):
        return tuple(max(col) for col in zip(*self.terms)) if self.terms else (0,) * len(self.gens)

    def degree(self, name=None):
        if not self.terms:
            return None
        if name is None:
            return max(sum(e) for e in self.terms)
        i = self.gens.index(name)
        return max(e[i] for e in self.terms)

    # -- coercion helpers -------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.gens != self.gens:
                raise AlphabetError(f"alphabet mismatch: {self.gens} vs {other.gens}")
            return other
        return LaurentPoly.const(self.gens, other)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            old = out.get(e)
            if old is None:
                out[e] = c
            else:
                s = old + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly(self.gens, out, True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.gens, {e: -c for e, c in self.terms.items()}, True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if _is_scalar(other):
            if is_rational(other):
                other = QQ(other)
            if not other:
                return LaurentPoly(self.gens, {}, True)
            return LaurentPoly(self.gens, {e: c * other for e, c in self.terms.items()}, True)
        other = self._coerce(other)
        return LaurentPoly(self.gens, K.poly_mul(self.terms, other.terms), True)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse_unit() ** (-n)
        result = LaurentPoly.one(self.gens)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse_unit(self):
        """Inverse of a unit (a single term with invertible coefficient)."""
        if len(self.terms) != 1:
            raise NonInvertibleError(f"{self} is not a monomial unit")
        (e, c), = self.terms.items()
        return LaurentPoly(self.gens, {tuple(-x for x in e): 1 / c}, True)

    def __truediv__(self, other):
        if _is_scalar(other):
            if is_rational(other):
                other = QQ(other)
            if not other:
                raise ZeroDivisionError("division by zero")
            return LaurentPoly(self.gens, {e: c / other for e, c in self.terms.items()}, True)
        other = self._coerce(other)
        if len(other.terms) == 1:
            return self * other.inverse_unit()
        from qkflag.polyalg.gcd import divexact

        return divexact(self, other)

    def shift(self, e):
        """Multiply by the monomial with exponent tuple ``e``."""
        return LaurentPoly(self.gens, {K.mono_mul(f, e): c for f, c in self.terms.items()}, True)

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.gens == other.gens and self.terms == other.terms
        try:
            return self.terms == LaurentPoly.const(self.gens, other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.gens, frozenset(self.terms.items())))
        return self._hash

    # -- ordering helpers ------------------------------------------------------
    def leading_exponent(self, order: TermOrder = GRLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return K.leading(self.terms, order.key)

    def leading_coeff(self, order: TermOrder = GRLEX):
        return self.terms[self.leading_exponent(order)]

    def sorted_terms(self, order: TermOrder = GRLEX, reverse=True):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=reverse)

    # -- alphabet manipulation ----------------------------------------------
    def change_gens(self, new_gens):
        """Re-embed into ``new_gens``; variables that occur must be present there."""
        new_gens = tuple(new_gens)
        if new_gens == self.gens:
            return self
        pos = []
        for i, g in enumerate(self.gens):
            if g in new_gens:
                pos.append((i, new_gens.index(g)))
            elif any(e[i] for e in self.terms):
                raise AlphabetError(f"variable {g!r} not in target alphabet")
        n = len(new_gens)
        out = {}
        for e, c in self.terms.items():
            f = [0] * n
            for i, j in pos:
                f[j] = e[i]
            out[tuple(f)] = c
        return LaurentPoly(new_gens, out, True)

    def substitute(self, bindings, gens=None):
        """Simultaneously replace variables by polynomials over alphabet ``gens``.

        Unbound variables map to themselves and must exist in ``gens``.  A
        variable occurring with a negative exponent must be bound to a unit.
        """
        gens = self.gens if gens is None else tuple(gens)
        images = []
        for name in self.gens:
            if name in bindings:
                v = bindings[name]
                if isinstance(v, LaurentPoly):
                    v = v.change_gens(gens) if v.gens != gens else v
                else:
                    v = LaurentPoly.const(gens, v)
                images.append(v)
            else:
                if name not in gens:
                    # only allowed when the variable never occurs
                    images.append(None)
                else:
                    images.append(LaurentPoly.var(gens, name))
        cache = {}

        def power(i, k):
            key = (i, k)
            r = cache.get(key)
            if r is None:
                img = images[i]
                if img is None:
                    raise AlphabetError(f"variable {self.gens[i]!r} not in target alphabet")
                if k < 0 and len(img.terms) != 1:
                    raise NonInvertibleError(
                        f"{self.gens[i]}^{k} bound to non-unit {img}")
                r = img ** k
                cache[key] = r
            return r

        out = {}
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    p = power(i, k)
                    term = p if term is None else term * p
            if term is None:
                term = LaurentPoly.const(gens, c)
            else:
                term = term * c
            for f, d in term.terms.items():
                old = out.get(f)
                s = d if old is None else old + d
                if s:
                    out[f] = s
                elif old is not None:
                    del out[f]
        return LaurentPoly(gens, out, True)

    def evaluate(self, values):
        """Evaluate at ``{name: scalar}`` for every variable that occurs."""
        total = 0
        for e, c in self.terms.items():
            t = c
            for name, k in zip(self.gens, e):
                if k:
                    t = t * QQ(values[name]) ** k
            total = total + t
        return total

    def coeff_by_qdegree(self, d, qgens):
        """Coefficient of ``Q^d`` as a polynomial in the remaining variables.

        ``qgens`` names the Q-alphabet; ``d`` is aligned with it.
        """
        qgens = tuple(qgens)
        d = tuple(d)
        if len(d) != len(qgens):
            raise ValueError("degree vector does not match Q-alphabet")
        qi = [self.gens.index(q) for q in qgens]
        rest = tuple(g for g in self.gens if g not in qgens)
        ri = [self.gens.index(g) for g in rest]
        out = {}
        for e, c in self.terms.items():
            qe = tuple(e[i] for i in qi)
            if any(x < 0 for x in qe):
                raise ValueError("negative Q exponent: not a polynomial in Q")
            if qe == d:
                out[tuple(e[i] for i in ri)] = c
        return LaurentPoly(rest, out, True)

    def q_support(self, qgens):
        """Set of Q-exponent tuples that occur."""
        qi = [self.gens.index(q) for q in qgens]
        return {tuple(e[i] for i in qi) for e in self.terms}

    def coefficients_in(self, outer):
        """Split into ``{outer exponent: poly in remaining gens}``."""
        oi = [self.gens.index(g) for g in outer]
        rest = tuple(g for g in self.gens if g not in outer)
        ri = [self.gens.index(g) for g in rest]
        groups: dict = {}
        for e, c in self.terms.items():
            groups.setdefault(tuple(e[i] for i in oi), {})[tuple(e[i] for i in ri)] = c
        return {k: LaurentPoly(rest, v, True) for k, v in groups.items()}

    def map_coeffs(self, fn):
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                out[e] = v
        return LaurentPoly(self.gens, out, True)

    # -- text ----------------------------------------------------------------
    def to_str(self, order: TermOrder = GRLEX):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms(order):
            pieces.append(format_term(self.gens, e, c))
        out = pieces[0]
        for p in pieces[1:]:
            if p.startswith("-"):
                out += " - " + p[1:]
            else:
                out += " + " + p
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"LaurentPoly({self.to_str()!r}, gens={self.gens})"


def format_monomial(gens, e):
    parts = []
    for name, k in zip(gens, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _coeff_str(c):
    s = str(c)
    if is_rational(c):
        return s
    body = s[1:] if s.startswith("-") else s
    if " + " in body or " - " in body or "/" in body:
        return "(" + s + ")"
    return s


def format_term(gens, e, c):
    mono = format_monomial(gens, e)
    if not mono:
        return _coeff_str(c) if not is_rational(c) else str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{_coeff_str(c)}*{mono}"
