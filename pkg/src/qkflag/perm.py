"""Permutations of {1..n} in one-line notation."""

from __future__ import annotations

import itertools
from functools import lru_cache


class Permutation(tuple):
    """One-line notation ``(w(1), ..., w(n))``; composition is ``(uv)(j) = u(v(j))``."""

    def __new__(cls, values):
        values = tuple(int(v) for v in values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise ValueError(f"not a permutation of 1..{len(values)}: {values}")
        return super().__new__(cls, values)

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def longest(cls, n):
        return cls(range(n, 0, -1))

    @classmethod
    def simple(cls, i, n):
        v = list(range(1, n + 1))
        v[i - 1], v[i] = v[i], v[i - 1]
        return cls(v)

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if "," in text or " " in text:
            parts = [p for p in text.replace(",", " ").split() if p]
        else:
            parts = list(text)
        return cls(int(p) for p in parts)

    @property
    def n(self):
        return len(self)

    def __call__(self, j):
        return self[j - 1]

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return Permutation(self[other[j] - 1] for j in range(len(other)))

    def inverse(self):
        inv = [0] * len(self)
        for j, v in enumerate(self):
            inv[v - 1] = j + 1
        return Permutation(inv)

    def length(self):
        return sum(1 for i, j in itertools.combinations(range(len(self)), 2) if self[i] > self[j])

    def right_descents(self):
        return [i for i in range(1, len(self)) if self[i - 1] > self[i]]

    def times_simple(self, i):
        """``w s_i``: swap positions i and i+1."""
        v = list(self)
        v[i - 1], v[i] = v[i], v[i - 1]
        return Permutation(v)

    def reduced_word(self):
        """Indices (i_1, ..., i_l) with ``w = s_{i_1} ... s_{i_l}``, l = length."""
        return _reduced_word(tuple(self))

    def bruhat_le(self, other):
        """Tableau criterion for ``self <= other`` in Bruhat order."""
        n = len(self)
        for k in range(1, n):
            a = sorted(self[:k])
            b = sorted(other[:k])
            if any(x > y for x, y in zip(a, b)):
                return False
        return True

    def label(self):
        return "".join(str(v) for v in self) if len(self) < 10 else ",".join(map(str, self))

    def __repr__(self):
        return f"Permutation({self.label()})"

    def __str__(self):
        return self.label()


@lru_cache(maxsize=None)
def _reduced_word(w):
    w = Permutation(w)
    d = w.right_descents()
    if not d:
        return ()
    i = d[0]
    return _reduced_word(tuple(w.times_simple(i))) + (i,)


def all_permutations(n):
    """All permutations of 1..n sorted by length, then lexicographically."""
    perms = [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
    return sorted(perms, key=lambda w: (w.length(), tuple(w)))
