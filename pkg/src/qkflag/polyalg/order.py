"""Monomial term orders as sort keys on exponent tuples."""

from __future__ import annotations

KINDS = ("grlex", "grevlex", "lex")


def _block_key(kind, e):
    if kind == "lex":
        return e
    if kind == "grlex":
        return (sum(e),) + e
    if kind == "grevlex":
        return (sum(e),) + tuple(-x for x in reversed(e))
    raise ValueError(f"unknown order kind {kind!r}")


class TermOrder:
    """A term order on exponent tuples of a fixed length.

    ``kind`` is ``"grlex"``, ``"grevlex"``, ``"lex"`` or ``"block"``.  A block
    order takes ``blocks = [(kind, width), ...]`` covering the variables in
    alphabet order; earlier blocks dominate later ones.  Variable priority
    inside every block is alphabet order.
    """

    def __init__(self, kind: str = "grlex", blocks=None):
        if kind == "block":
            if not blocks:
                raise ValueError("block order needs blocks")
            for k, w in blocks:
                if k not in KINDS or w < 0:
                    raise ValueError(f"bad block {(k, w)!r}")
            self.blocks = tuple((k, int(w)) for k, w in blocks)
        elif kind in KINDS:
            self.blocks = None
        else:
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind
        self._cache: dict = {}

    def key(self, e):
        k = self._cache.get(e)
        if k is None:
            if self.blocks is None:
                k = _block_key(self.kind, e)
            else:
                parts = []
                pos = 0
                for kind, w in self.blocks:
                    parts.append(_block_key(kind, e[pos:pos + w]))
                    pos += w
                k = tuple(parts)
            self._cache[e] = k
        return k

    def nvars(self):
        return None if self.blocks is None else sum(w for _, w in self.blocks)

    def describe(self):
        if self.blocks is None:
            return self.kind
        return "block(" + ", ".join(f"{k}:{w}" for k, w in self.blocks) + ")"

    def __eq__(self, other):
        return isinstance(other, TermOrder) and (self.kind, self.blocks) == (other.kind, other.blocks)

    def __hash__(self):
        return hash((self.kind, self.blocks))

    def __repr__(self):
        return f"TermOrder({self.describe()})"


GRLEX = TermOrder("grlex")
LEX = TermOrder("lex")
