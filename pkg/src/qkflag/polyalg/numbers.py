"""Exact rational scalars.

gmpy2's ``mpq`` is used when importable; otherwise ``fractions.Fraction``.
Both print as ``p/q`` and compare equal to Python ints.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as _Rational
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _Rational = Fraction

RATIONAL_TYPES = (int, Fraction, type(_Rational(0)))


def QQ(value, denominator=1):
    """Coerce ``value`` (int, Fraction, mpq or ``"p/q"`` string) to an exact rational."""
    if isinstance(value, str):
        value = Fraction(value.strip())
    if denominator != 1:
        return _Rational(value) / _Rational(denominator)
    return _Rational(value)


def is_rational(x):
    return isinstance(x, RATIONAL_TYPES)


def rational_str(c):
    c = QQ(c)
    return str(c)
