"""Rational functions over Q in Laurent variables, and the coefficient fields."""

from __future__ import annotations

from qkflag.polyalg.gcd import divexact, gcd, monic, split_monomial
from qkflag.polyalg.laurent import AlphabetError, LaurentPoly
from qkflag.polyalg.numbers import QQ, is_rational


class RatFunc:
    """``num / den`` in ``Frac(Q[x^±])``.

    Canonical form: ``den`` is a polynomial with no monomial factor, is
    lex-monic (so its leading coefficient is positive), and is coprime to
    ``num``.  Units (monomials) always live in the numerator, so elements of
    the Laurent ring have ``den == 1``.  Equality is structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None, _normalized=False):
        if den is None:
            den = LaurentPoly.one(num.gens)
        if num.gens != den.gens:
            raise AlphabetError("numerator/denominator alphabets differ")
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def gens(self):
        return self.num.gens

    @classmethod
    def from_scalar(cls, gens, c):
        return cls(LaurentPoly.const(gens, c), LaurentPoly.one(gens), True)

    def is_laurent(self):
        return self.den.is_one()

    def is_unit_monomial(self):
        return self.den.is_one() and len(self.num.terms) == 1

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.gens != self.gens:
                raise AlphabetError("alphabet mismatch")
            return other
        if isinstance(other, LaurentPoly):
            if other.gens != self.gens:
                return None
            return RatFunc(other, LaurentPoly.one(self.gens), True)
        if is_rational(other):
            return RatFunc.from_scalar(self.gens, other)
        return None

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den.is_one() and o.den.is_one():
            return RatFunc(self.num + o.num, self.den, True)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        g = gcd(self.den, o.den)
        if g.is_one():
            return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)
        d1 = divexact(self.den, g)
        d2 = divexact(o.den, g)
        return RatFunc(self.num * d2 + o.num * d1, self.den * d2)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return RatFunc(LaurentPoly.zero(self.gens), LaurentPoly.one(self.gens), True)
        if self.den.is_one() and o.den.is_one():
            return RatFunc(self.num * o.num, self.den, True)
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if not d2.is_one():
            g = gcd(n1, d2)
            if not g.is_one():
                n1, d2 = divexact(n1, g), divexact(d2, g)
        if not d1.is_one():
            g = gcd(n2, d1)
            if not g.is_one():
                n2, d1 = divexact(n2, g), divexact(d1, g)
        return RatFunc(n1 * n2, d1 * d2, True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFunc.from_scalar(self.gens, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            if self.den.is_one() and self.num.is_constant():
                self._hash = hash(self.num.constant_coeff())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def evaluate(self, values):
        d = self.den.evaluate(values)
        if d == 0:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at {values}")
        return QQ(self.num.evaluate(values)) / QQ(d)

    def to_laurent(self) -> LaurentPoly:
        if not self.den.is_one():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        n = str(self.num)
        if len(self.num) > 1:
            n = f"({n})"
        return f"{n}/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def _normalize(num: LaurentPoly, den: LaurentPoly):
    if not num:
        return num, LaurentPoly.one(num.gens)
    if len(den.terms) == 1:
        return num * den.inverse_unit(), LaurentPoly.one(num.gens)
    shift, d = split_monomial(den)
    if any(shift):
        num = num.shift(tuple(-x for x in shift))
    g = gcd(num, d)
    if not g.is_one():
        num = divexact(num, g)
        d = divexact(d, g)
    lc = d.terms[max(d.terms)]
    if lc != 1:
        num = num / lc
        d = monic(d)
    return num, d


class RationalField:
    """The field Q, with elements as exact rationals."""

    name = "QQ"
    gens = ()

    def __call__(self, x):
        if isinstance(x, RatFunc):
            if not x.den.is_one() or not x.num.is_constant():
                raise ValueError(f"{x} is not a rational constant")
            return QQ(x.num.constant_coeff())
        if isinstance(x, LaurentPoly):
            if not x.is_constant():
                raise ValueError(f"{x} is not a constant")
            return QQ(x.constant_coeff())
        return QQ(x)

    @property
    def zero(self):
        return QQ(0)

    @property
    def one(self):
        return QQ(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class FractionField:
    """``Frac(Q[x_1^±, ..., x_n^±])`` with elements :class:`RatFunc`."""

    def __init__(self, gens):
        self.gens = tuple(gens)
        self.name = "Frac(Q[" + ",".join(self.gens) + "])"

    def __call__(self, x):
        if isinstance(x, RatFunc):
            if x.gens != self.gens:
                raise AlphabetError("alphabet mismatch")
            return x
        if isinstance(x, LaurentPoly):
            return RatFunc(x.change_gens(self.gens), LaurentPoly.one(self.gens), True)
        if isinstance(x, str):
            from qkflag.polyalg.parse import parse_ratfunc

            return parse_ratfunc(x, self.gens)
        return RatFunc.from_scalar(self.gens, x)

    @property
    def zero(self):
        return RatFunc.from_scalar(self.gens, 0)

    @property
    def one(self):
        return RatFunc.from_scalar(self.gens, 1)

    def __eq__(self, other):
        return isinstance(other, FractionField) and other.gens == self.gens

    def __hash__(self):
        return hash(("Frac", self.gens))

    def __repr__(self):
        return self.name


QQ_FIELD = RationalField()
