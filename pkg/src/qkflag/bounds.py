"""Novikov-degree bounds: the quantity k_d and the finite admissible-degree sets.

For a multiset of generator indices with multiplicities ``m_j`` (total
``l``), a degree ``d`` is admissible when

    sum_k d_{i_k} - k_d >= 0,   k_d = |d| + sum_{i=1}^{r+1} (d_i - d_{i-1})^2 / 2,

with ``d_0 = d_{r+1} = 0``.  Writing ``D = max_j d_j`` attained at ``j``,
Cauchy-Schwarz on the increments up to ``j`` and down from ``j`` gives
``sum (d_i - d_{i-1})^2 >= D^2 (1/j + 1/(r+1-j)) >= 4 D^2 / (r+1)``, while the
linear part is at most ``(l - 1) D``.  Hence every admissible ``d`` satisfies
``D <= (l - 1)(r + 1) / 2``, which is the enumeration box used below.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from qkflag.polyalg import QQ
from qkflag.polyalg.linalg import det_field


def _check(d):
    d = tuple(int(x) for x in d)
    if any(x < 0 for x in d):
        raise ValueError(f"degree vector must be nonnegative, got {d}")
    return d


def _twice_form(d):
    """``sum_{i=1}^{r+1} (d_i - d_{i-1})^2`` with zero boundary values."""
    ext = (0,) + d + (0,)
    return sum((ext[i] - ext[i - 1]) ** 2 for i in range(1, len(ext)))


def kd(d):
    """k_d = d_1 + ... + d_r + sum_{i=1}^{r+1} (d_i - d_{i-1})^2 / 2, exactly."""
    d = _check(d)
    return QQ(2 * sum(d) + _twice_form(d), 2)


def multiplicities(indices, r):
    """Multiplicity vector (m_1..m_r) of an index multiset drawn from 1..r."""
    c = Counter(indices)
    for i in c:
        if not 1 <= i <= r:
            raise ValueError(f"index {i} out of range 1..{r}")
    return tuple(c.get(j, 0) for j in range(1, r + 1))


def slack(d, indices, r):
    """Twice ``sum_k d_{i_k} - k_d``; admissible iff this is >= 0."""
    d = _check(d)
    if len(d) != r:
        raise ValueError("degree vector length must equal the rank")
    m = multiplicities(indices, r)
    return 2 * sum(mj * dj for mj, dj in zip(m, d)) - 2 * sum(d) - _twice_form(d)


def is_admissible(d, indices, r):
    return slack(d, indices, r) >= 0


def enumeration_box(l, r):
    """Largest coordinate any admissible degree can have (see module docstring)."""
    if l <= 1:
        return 0
    return (l - 1) * (r + 1) // 2


def admissible_degrees(indices, r):
    """All d in (Z_{>=0})^r with sum_k d_{i_k} - k_d >= 0, sorted.

    ``indices`` is the multiset {i_1, ..., i_l} as any iterable.
    """
    indices = list(indices)
    m = multiplicities(indices, r)
    B = enumeration_box(len(indices), r)
    # coordinates with m_j <= 1 contribute nonpositively; cap them by the
    # same box anyway, the form handles the rest
    out = []
    for d in itertools.product(range(B + 1), repeat=r):
        s = 2 * sum((mj - 1) * dj for mj, dj in zip(m, d)) - _twice_form(d)
        if s >= 0:
            out.append(d)
    return sorted(out, key=lambda d: (sum(d), d))


def box_shell_is_clear(indices, r, width=2):
    """Check directly that no admissible degree lies just outside the box."""
    indices = list(indices)
    B = enumeration_box(len(indices), r)
    for d in itertools.product(range(B + width + 1), repeat=r):
        if max(d) > B and is_admissible(d, indices, r):
            return False
    return True


@dataclass(frozen=True)
class PositivityCertificate:
    rank: int
    gram: tuple
    minors: tuple

    @property
    def positive_definite(self):
        return all(m > 0 for m in self.minors)

    def as_dict(self):
        return {
            "rank": self.rank,
            "gram": [[str(x) for x in row] for row in self.gram],
            "leading_minors": [str(m) for m in self.minors],
            "positive_definite": self.positive_definite,
        }


def gram_matrix(r):
    """Gram matrix of d -> sum_{i=1}^{r+1} (d_i - d_{i-1})^2 / 2 in d_1..d_r."""
    half = QQ(1, 2)
    return tuple(
        tuple(QQ(1) if i == j else (-half if abs(i - j) == 1 else QQ(0)) for j in range(r))
        for i in range(r)
    )


def quadratic_form_positivity(r):
    """Gram matrix plus exact leading principal minors (Sylvester's criterion)."""
    G = gram_matrix(r)
    minors = tuple(
        det_field([list(row[:k]) for row in G[:k]], QQ(0), QQ(1)) for k in range(1, r + 1)
    )
    return PositivityCertificate(r, G, minors)
