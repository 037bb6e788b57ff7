"""Schubert classes as double Grothendieck polynomials.

Classes live first in ``Q[z^±, Λ^±]`` where ``z_i`` is the K-theoretic Chern
root of the i-th tautological quotient ``S_i / S_{i-1}``; mapping
``z_i -> P_i / P_{i-1}`` lands in the flag ring.  The longest element
carries ``prod_{i+j <= r+1} (1 - Λ_j / z_i)`` and isobaric divided
differences walk down the weak order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from qkflag.context import FlagContext
from qkflag.flagring import normal_form_classical, restrict_laurent, standard_monomial_basis
from qkflag.perm import Permutation, all_permutations
from qkflag.polyalg import LaurentPoly, RatFunc
from qkflag.polyalg.gcd import divexact
from qkflag.polyalg.linalg import inverse_field, solve_fraction_free
from qkflag.tables import StructureConstantTable

__all__ = [
    "BasisChange",
    "Permutation",
    "basis_change",
    "demazure_operator",
    "grothendieck_polynomial",
    "schubert_structure_constants",
    "to_flag_ring",
    "top_class",
]


def z_gens(n):
    return tuple(f"z{i}" for i in range(1, n + 1)) + tuple(f"L{j}" for j in range(1, n + 1))


def _swap(f: LaurentPoly, i):
    gens = f.gens
    a, b = gens.index(f"z{i}"), gens.index(f"z{i + 1}")
    out = {}
    for e, c in f.terms.items():
        e = list(e)
        e[a], e[b] = e[b], e[a]
        out[tuple(e)] = c
    return LaurentPoly(gens, out, True)


def demazure_operator(i, f: LaurentPoly) -> LaurentPoly:
    """``π_i f = (z_i f - z_{i+1} s_i f) / (z_i - z_{i+1})``, an exact division."""
    gens = f.gens
    if f"z{i + 1}" not in gens or i < 1:
        raise ValueError(f"π_{i} needs z{i} and z{i + 1} in the alphabet")
    zi = LaurentPoly.var(gens, f"z{i}")
    zj = LaurentPoly.var(gens, f"z{i + 1}")
    num = zi * f - zj * _swap(f, i)
    if not num:
        return num
    return divexact(num, zi - zj)


def top_class(n) -> LaurentPoly:
    gens = z_gens(n)
    out = LaurentPoly.one(gens)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i + j <= n:
                out = out * (1 - LaurentPoly.var(gens, f"L{j}") * LaurentPoly.var(gens, f"z{i}", -1))
    return out


@lru_cache(maxsize=None)
def _grothendieck(w: tuple, word: tuple) -> LaurentPoly:
    n = len(w)
    f = top_class(n)
    for i in reversed(word):
        f = demazure_operator(i, f)
    return f


def grothendieck_polynomial(w, word=None) -> LaurentPoly:
    """Class of ``w`` over ``(z, Λ)``: apply π along a reduced word of ``w^{-1} w_0``.

    ``word`` may name a specific reduced word ``(i_1, ..., i_l)`` of
    ``w^{-1} w_0``; the result is ``π_{i_1}(⋯ π_{i_l}(top))``.
    """
    w = Permutation(w)
    n = len(w)
    v = w.inverse() * Permutation.longest(n)
    if word is None:
        word = v.reduced_word()
    else:
        word = tuple(word)
        check = Permutation.identity(n)
        for i in word:
            check = check.times_simple(i)
        if check != v or len(word) != v.length():
            raise ValueError(f"{word} is not a reduced word of {v}")
    return _grothendieck(tuple(w), word)


def to_flag_ring(f: LaurentPoly, ctx: FlagContext) -> LaurentPoly:
    """Image over ``(Λ, P)`` under ``z_i -> P_i / P_{i-1}`` with the context's boundary."""
    gens = ctx.classical_gens
    binds = {}
    for i in range(1, ctx.n + 1):
        binds[f"z{i}"] = ctx.boundary_p(i, gens) / ctx.boundary_p(i - 1, gens)
    for j in range(1, ctx.n + 1):
        binds[f"L{j}"] = ctx.lam(j, gens)
    return f.substitute(binds, gens)


@lru_cache(maxsize=16)
def schubert_classical_values(ctx: FlagContext):
    """Permutations, restriction vectors of their classes, and the monomial basis."""
    if ctx.mode == "nonequivariant":
        raise ValueError("restriction vectors need distinct Λ")
    perms = all_permutations(ctx.n)
    vals = []
    for w in perms:
        g = to_flag_ring(grothendieck_polynomial(w), ctx)
        row = [restrict_laurent(g, v, ctx) for v in perms]
        if not ctx.is_equivariant:
            row = [x.constant_coeff() if x else ctx.field.zero for x in row]
        vals.append(row)
    return perms, vals, tuple(standard_monomial_basis(ctx))


@dataclass
class BasisChange:
    """Rows express each σ_w in a P-monomial basis; ``inverse`` undoes it."""

    context: FlagContext
    perms: list
    monomials: list
    matrix: list
    inverse: list
    determinant: object

    def schubert_to_monomial(self, coords):
        """Monomial coordinates of ``sum_w coords[w] σ_w`` (lists in basis order)."""
        return _vecmat(coords, self.matrix)

    def monomial_to_schubert(self, coords):
        return _vecmat(coords, self.inverse)

    def determinant_is_unit(self):
        d = self.determinant
        if isinstance(d, RatFunc):
            return d.is_unit_monomial()
        return d != 0

    def inverse_is_integral(self):
        return all(not isinstance(x, RatFunc) or x.is_laurent() for row in self.inverse for x in row)


def _vecmat(v, M):
    out = []
    for k in range(len(M[0])):
        acc = 0
        for i, x in enumerate(v):
            if x:
                m = M[i][k]
                if m:
                    acc = acc + x * m
        out.append(acc)
    return out


def basis_change(ctx: FlagContext, monomials=None) -> BasisChange:
    """Matrix of Schubert classes in a P-monomial basis (standard by default)."""
    monomials = [tuple(m) for m in (monomials or standard_monomial_basis(ctx))]
    perms = all_permutations(ctx.n)
    rows = []
    for w in perms:
        g = to_flag_ring(grothendieck_polynomial(w), ctx)
        el = normal_form_classical(g, ctx, tuple(monomials))
        rows.append([el.coordinate(m) for m in monomials])
    F = ctx.field
    if ctx.is_equivariant:
        # entries are in R(T); keep the inversion fraction-free
        lg = ctx.lambda_gens
        zero, one = LaurentPoly.zero(lg), LaurentPoly.one(lg)
        A = [[x.to_laurent() if x else zero for x in row] for row in rows]
        n = len(A)
        eye = [[one if i == j else zero for j in range(n)] for i in range(n)]
        X, det = solve_fraction_free(A, eye, zero, one)
        inv = [[RatFunc(x, det) if x else F.zero for x in row] for row in X]
        det = F(det)
    else:
        inv = inverse_field(rows, F.zero, F.one)
        from qkflag.polyalg.linalg import det_field

        det = det_field(rows, F.zero, F.one)
    return BasisChange(ctx, perms, monomials, rows, inv, det)


def convert_table(table: StructureConstantTable, change: BasisChange,
                  check_integrality=True) -> StructureConstantTable:
    """Re-express a monomial-basis table in the Schubert basis."""
    if [tuple(k) for k in table.keys] != change.monomials:
        raise ValueError("table basis and basis-change monomials differ")
    n = len(change.perms)
    A = change.matrix
    entries = {}
    for u in range(n):
        for v in range(u, n):
            acc = [0] * n
            for s in range(n):
                a = A[u][s]
                if not a:
                    continue
                for t in range(n):
                    b = A[v][t]
                    if not b:
                        continue
                    ab = a * b
                    for k, c in table.entries[(s, t)].items():
                        acc[k] = acc[k] + c * ab
            y = change.monomial_to_schubert(acc)
            ent = {k: c for k, c in enumerate(y) if c}
            if check_integrality and table.context.is_equivariant:
                for k, c in ent.items():
                    _check_integral(c, change.perms[u], change.perms[v], change.perms[k])
            entries[(u, v)] = ent
            entries[(v, u)] = ent
    meta = dict(table.metadata)
    meta["basis_change"] = "Grothendieck classes expanded by fixed-point localization"
    return StructureConstantTable(table.context, table.kind, "schubert", list(change.perms),
                                  [w.label() for w in change.perms], entries, metadata=meta)


def _check_integral(c, u, v, w):
    from qkflag.flagring import IntegralityError

    coeffs = c.terms.values() if isinstance(c, LaurentPoly) else [c]
    for x in coeffs:
        if isinstance(x, RatFunc) and not x.is_laurent():
            raise IntegralityError(f"c[{u},{v}]^{w} has denominator: {c}")


def schubert_structure_constants(ctx: FlagContext, check_integrality=True):
    """Classical Schubert table, via the classical monomial table and ``basis_change``."""
    from qkflag.flagring import classical_structure_constants

    if ctx.mode == "nonequivariant":
        return classical_structure_constants(ctx, "schubert")
    change = basis_change(ctx)
    t = classical_structure_constants(ctx, "monomial", check_integrality)
    return convert_table(t, change, check_integrality)
