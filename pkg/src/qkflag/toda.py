"""Finite-difference Toda Hamiltonians and the quantum K-relations they induce.

The k-th Hamiltonian is a sum over k-subsets ``I = {i_1 < ... < i_k}`` of
``{1..r+1}`` of ``prod_l (1 - Q_{i_l - 1})^{[i_l - i_{l-1} != 1]} p_{i_1}...p_{i_k}``
with ``i_0 = 0``.  Here ``p_i`` acts as the shift ``q^{∂_{t_i}}``, and in the
Novikov variables ``∂_{t_i} = Q_i∂_{Q_i} - Q_{i-1}∂_{Q_{i-1}}``.
Substituting ``p_i -> P_i / P_{i-1}`` and clearing denominators gives the
quantum relations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from qkflag.context import FlagContext
from qkflag.polyalg import LaurentPoly


@dataclass(frozen=True)
class TodaTerm:
    subset: tuple          # (i_1, ..., i_k), 1-based, increasing
    factors: tuple         # Q-indices j with a factor (1 - Q_j)

    def coefficient(self, qgens):
        c = LaurentPoly.one(qgens)
        for j in self.factors:
            c = c * (1 - LaurentPoly.var(qgens, f"Q{j}"))
        return c


@dataclass(frozen=True)
class TodaHamiltonian:
    k: int
    rank: int
    terms: tuple

    @property
    def q_gens(self):
        return tuple(f"Q{i}" for i in range(1, self.rank + 1))

    def coefficient(self, subset):
        for t in self.terms:
            if t.subset == tuple(subset):
                return t.coefficient(self.q_gens)
        return LaurentPoly.zero(self.q_gens)

    def __str__(self):
        return format_hamiltonian(self)


def toda_hamiltonian(k, r) -> TodaHamiltonian:
    """The k-th Hamiltonian of the rank-r chain (1 <= k <= r+1)."""
    if not 1 <= k <= r + 1:
        raise ValueError(f"k must lie in 1..{r + 1}")
    terms = []
    for I in itertools.combinations(range(1, r + 2), k):
        factors = []
        prev = 0
        for i in I:
            if i - prev != 1:
                assert i - 1 >= 1
                factors.append(i - 1)
            prev = i
        terms.append(TodaTerm(I, tuple(factors)))
    return TodaHamiltonian(k, r, tuple(terms))


def _factor_str(j, form):
    if form == "z":
        return f"(1 - z{j}/z{j + 1})"
    return f"(1 - Q{j})"


def format_hamiltonian(H: TodaHamiltonian, form="q"):
    """Readable form; ``form="z"`` writes each ``Q_j`` as ``z_j / z_{j+1}``."""
    pieces = []
    for t in H.terms:
        mono = "*".join(f"p{i}" for i in t.subset)
        coeff = "*".join(_factor_str(j, form) for j in t.factors)
        pieces.append(f"{coeff}*{mono}" if coeff else mono)
    return f"H{H.k} = " + " + ".join(pieces)


def t_derivative_dictionary(r):
    """``∂_{t_i}`` in the basis ``Q_j∂_{Q_j}``: map i -> {j: coefficient}."""
    out = {}
    for i in range(1, r + 2):
        d = {}
        if i <= r:
            d[i] = 1
        if i >= 2:
            d[i - 1] = -1
        out[i] = d
    return out


def shift_vector(subset, r):
    """Total ``Q_j∂_{Q_j}`` shift exponents of ``prod_{i in subset} q^{∂_{t_i}}``."""
    dt = t_derivative_dictionary(r)
    v = [0] * r
    for i in subset:
        for j, c in dt[i].items():
            v[j - 1] += c
    return tuple(v)


def has_no_negative_shifts(k, r):
    """After multiplying by ``prod_j q^{Q_j∂_{Q_j}}`` no term shifts any Q down."""
    H = toda_hamiltonian(k, r)
    return all(min(x + 1 for x in shift_vector(t.subset, r)) >= 0 for t in H.terms)


def hamiltonian_in_p(k, ctx: FlagContext) -> LaurentPoly:
    """H_k with ``p_i -> P_i / P_{i-1}`` and the context's boundary values."""
    gens = ctx.gens
    H = toda_hamiltonian(k, ctx.rank)
    out = LaurentPoly.zero(gens)
    ratio = {}
    for i in range(1, ctx.n + 1):
        num = ctx.boundary_p(i, gens)
        den = ctx.boundary_p(i - 1, gens)
        ratio[i] = num / den
    for t in H.terms:
        m = t.coefficient(ctx.q_gens).change_gens(gens)
        for i in t.subset:
            m = m * ratio[i]
        out = out + m
    return out


@dataclass(frozen=True)
class RelationSet:
    """Cleared relations ``multiplier * (H_k - e_k)`` for k = 1..r+1."""

    context: FlagContext
    generators: tuple
    multiplier: LaurentPoly

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, k):
        return self.generators[k]


def _clearing_multiplier(ctx: FlagContext):
    m = LaurentPoly.one(ctx.gens)
    for i in range(1, ctx.rank + 1):
        m = m * LaurentPoly.var(ctx.gens, f"P{i}")
    return m


def quantum_relation_generators(ctx: FlagContext) -> RelationSet:
    """Polynomial relations ``g_1, ..., g_{r+1}`` in ``(Λ, P, Q)``.

    Each ``H_k - e_k(Λ)`` is multiplied by ``P_1 ⋯ P_r``, which clears every
    ``P_{i-1}^{-1}``.  Under the det boundary ``g_{r+1}`` vanishes identically.
    """
    mult = _clearing_multiplier(ctx)
    out = []
    for k in range(1, ctx.n + 1):
        g = (hamiltonian_in_p(k, ctx) - ctx.elementary(k)) * mult
        if not g.is_polynomial():
            raise AssertionError("clearing multiplier left a negative exponent")
        out.append(g)
    return RelationSet(ctx, tuple(out), mult)


def classical_limit(f: LaurentPoly, ctx: FlagContext) -> LaurentPoly:
    """Set every Q to zero and drop the Q-alphabet."""
    f = f.substitute({q: 0 for q in ctx.q_gens}, f.gens)
    return f.change_gens(ctx.classical_gens)
