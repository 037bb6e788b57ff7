"""Recursive-descent parser for the polynomial text format.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | NAME | '(' expr ')'

Division is allowed by scalars and by units (single terms); anything else
must divide exactly.
"""

import re

from qkflag.polyalg.laurent import LaurentPoly
from qkflag.polyalg.numbers import QQ

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, gens, const, var, divide):
        self.toks = tokens
        self.i = 0
        self.gens = gens
        self.const = const
        self.var = var
        self.divide = divide

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"expected {value or kind}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            acc = acc * rhs if op == "*" else self.divide(acc, rhs)
        return acc

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            k = self.take("num")[1] * sign
            return base ** k
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return self.const(QQ(val))
        if kind == "name":
            self.take()
            if val not in self.gens:
                raise ParseError(f"unknown variable {val!r}; alphabet is {self.gens}")
            return self.var(val)
        if (kind, val) == ("op", "("):
            self.take()
            e = self.expr()
            self.take("op", ")")
            return e
        raise ParseError(f"unexpected token {val!r}")


def _run(text, parser):
    if not parser.toks:
        raise ParseError("empty expression")
    out = parser.expr()
    if parser.i != len(parser.toks):
        raise ParseError(f"trailing input at token {parser.i}")
    return out


def _poly_divide(a, b):
    if b.is_constant():
        if not b:
            raise ParseError("division by zero")
        return a / b.constant_coeff()
    return a / b


def parse_poly(text, gens):
    """Parse ``text`` into a :class:`LaurentPoly` over ``gens``."""
    gens = tuple(gens)
    parser = _Parser(
        _tokenize(text),
        gens,
        lambda c: LaurentPoly.const(gens, c),
        lambda name: LaurentPoly.var(gens, name),
        _poly_divide,
    )
    return _run(text, parser)


def parse_ratfunc(text, gens):
    """Parse ``text`` into a :class:`RatFunc`; any nonzero divisor is allowed."""
    from qkflag.polyalg.ratfunc import RatFunc

    gens = tuple(gens)
    one = LaurentPoly.one(gens)
    parser = _Parser(
        _tokenize(text),
        gens,
        lambda c: RatFunc(LaurentPoly.const(gens, c), one, True),
        lambda name: RatFunc(LaurentPoly.var(gens, name), one, True),
        lambda a, b: a / b,
    )
    return _run(text, parser)
