"""The classical ring K_T(Fl_{r+1}) through fixed-point localization.

A class is determined by its restrictions to the (r+1)! torus fixed points,
where ``P_i`` restricts to ``Λ_{w(1)} ⋯ Λ_{w(i)}``.  Normal forms in any
P-monomial basis come from inverting the matrix of basis restrictions; this
is independent of every Groebner computation in :mod:`qkflag.qkring`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from qkflag.context import FlagContext
from qkflag.perm import Permutation, all_permutations
from qkflag.polyalg import LaurentPoly, RatFunc
from qkflag.polyalg.laurent import format_term
from qkflag.polyalg.linalg import SingularMatrixError, inverse_field, solve_fraction_free
from qkflag.tables import StructureConstantTable, monomial_label

FixedPoint = Permutation


class IntegralityError(ArithmeticError):
    """A structure constant that must lie in R(T) has a denominator."""


def standard_monomial_basis(ctx: FlagContext):
    """Exponent vectors ``a`` with ``0 <= a_i <= i``, by degree then reversed exponents."""
    r = ctx.rank
    exps = itertools.product(*[range(i + 1) for i in range(1, r + 1)])
    return sorted(exps, key=lambda e: (sum(e), tuple(reversed(e))))


def classical_relations(ctx: FlagContext):
    """``(e_k(p) - e_k(Λ)) * P_1 ⋯ P_r`` over ``(Λ, P)`` with ``p_i = P_i / P_{i-1}``.

    Built directly from the elementary symmetric functions of the ratios,
    without going through the difference operators.  Returns the list for
    k = 1..r+1 and the multiplier.
    """
    gens = ctx.classical_gens
    mult = LaurentPoly.one(gens)
    for i in range(1, ctx.rank + 1):
        mult = mult * LaurentPoly.var(gens, f"P{i}")
    ratios = [ctx.boundary_p(i, gens) * ctx.boundary_p(i - 1, gens).inverse_unit()
              for i in range(1, ctx.n + 1)]
    out = []
    for k in range(1, ctx.n + 1):
        ek = LaurentPoly.zero(gens)
        for S in itertools.combinations(ratios, k):
            t = LaurentPoly.one(gens)
            for x in S:
                t = t * x
            ek = ek + t
        out.append((ek - ctx.elementary(k, gens)) * mult)
    return out, mult


def _to_classical(f: LaurentPoly, ctx: FlagContext) -> LaurentPoly:
    if f.gens == ctx.classical_gens:
        return f
    return f.change_gens(ctx.classical_gens)


def _point_images(ctx: FlagContext, w, gens):
    """``{P_i: Λ_{w(1)} ⋯ Λ_{w(i)}}`` over ``gens``."""
    out = {}
    acc = LaurentPoly.one(gens)
    for i in range(1, ctx.rank + 1):
        acc = acc * ctx.lam(w[i - 1], gens)
        out[f"P{i}"] = acc
    return out


def restrict_laurent(f: LaurentPoly, w, ctx: FlagContext) -> LaurentPoly:
    """Restriction of ``f`` at ``w`` as a Laurent polynomial in Λ (constant unless equivariant)."""
    f = ctx.specialize(_to_classical(f, ctx))
    lg = ctx.lambda_gens
    return f.substitute(_point_images(ctx, w, lg), lg)


def restrict_to_fixed_point(f: LaurentPoly, w, ctx: FlagContext):
    """Element of the coefficient field obtained by ``P_i -> Λ_{w(1)} ⋯ Λ_{w(i)}``."""
    w = Permutation(w)
    if len(w) != ctx.n:
        raise ValueError("fixed point must permute 1..r+1")
    return ctx.field(restrict_laurent(f, w, ctx))


def _mono(ctx, e):
    gens = ctx.classical_gens
    return LaurentPoly.monomial(gens, (0,) * ctx.n + tuple(e))


class Localization:
    """Inverse of the restriction matrix of a P-monomial basis, built once.

    Equivariant mode uses fraction-free elimination over ``Q[Λ^±]`` so only
    one normalization per output coordinate is needed.
    """

    def __init__(self, ctx: FlagContext, basis):
        if ctx.mode == "nonequivariant":
            raise ValueError("localization needs distinct Λ; use the equivariant twin")
        self.ctx = ctx
        self.basis = [tuple(b) for b in basis]
        if len(self.basis) != ctx.rank_of_k_ring():
            raise ValueError(f"basis must have {ctx.rank_of_k_ring()} elements")
        self.points = all_permutations(ctx.n)
        lg = ctx.lambda_gens
        V = [[restrict_laurent(_mono(ctx, b), w, ctx) for b in self.basis] for w in self.points]
        n = len(V)
        if ctx.is_equivariant:
            zero, one = LaurentPoly.zero(lg), LaurentPoly.one(lg)
            eye = [[one if i == j else zero for j in range(n)] for i in range(n)]
            try:
                self._adj, self._det = solve_fraction_free(V, eye, zero, one)
            except SingularMatrixError as exc:
                raise SingularMatrixError("restriction matrix is singular: not a basis") from exc
        else:
            Vq = [[x.constant_coeff() for x in row] for row in V]
            self._inv = inverse_field(Vq, ctx.field.zero, ctx.field.one)

    @property
    def determinant(self):
        return self._det

    def coords_from_values(self, values):
        """Basis coordinates of the class with the given restrictions (point order)."""
        ctx = self.ctx
        if ctx.is_equivariant:
            lg = ctx.lambda_gens
            out = []
            for row in self._adj:
                acc = LaurentPoly.zero(lg)
                for a, v in zip(row, values):
                    if a and v:
                        acc = acc + a * v
                out.append(RatFunc(acc, self._det) if acc else ctx.field.zero)
            return out
        out = []
        for row in self._inv:
            acc = ctx.field.zero
            for a, v in zip(row, values):
                if a and v:
                    acc = acc + a * v
            out.append(acc)
        return out

    def values(self, f: LaurentPoly):
        vals = [restrict_laurent(f, w, self.ctx) for w in self.points]
        if self.ctx.is_equivariant:
            return vals
        return [v.constant_coeff() if v else self.ctx.field.zero for v in vals]


@lru_cache(maxsize=64)
def localization(ctx: FlagContext, basis=None) -> Localization:
    basis = tuple(standard_monomial_basis(ctx)) if basis is None else tuple(basis)
    return Localization(ctx, basis)


@dataclass(frozen=True)
class KClassicalElem:
    """Coordinates of a class in a P-monomial basis; zero coordinates omitted."""

    context: FlagContext
    basis: tuple
    coords: dict

    def coordinate(self, e):
        return self.coords.get(tuple(e), self.context.field.zero)

    def to_poly(self) -> LaurentPoly:
        """Representative in ``Frac(R(T))[P]`` as a polynomial over ``(Λ, P)`` if integral."""
        ctx = self.context
        gens = ctx.classical_gens
        out = LaurentPoly.zero(gens)
        for e, c in self.coords.items():
            if isinstance(c, RatFunc):
                if not c.is_laurent():
                    raise ValueError("coordinate is not in R(T)")
                c = c.num.change_gens(gens)
            out = out + c * _mono(ctx, e)
        return out

    def is_integral(self):
        return all(not isinstance(c, RatFunc) or c.is_laurent() for c in self.coords.values())

    def __eq__(self, other):
        if not isinstance(other, KClassicalElem):
            return NotImplemented
        return self.basis == other.basis and self.coords == other.coords

    def __hash__(self):
        return hash((self.basis, frozenset(self.coords.items())))

    def __str__(self):
        if not self.coords:
            return "0"
        gens = self.context.p_gens
        order = sorted(self.coords, key=lambda e: (sum(e), tuple(reversed(e))), reverse=True)
        out = ""
        for e in order:
            t = format_term(gens, e, self.coords[e])
            if not out:
                out = t
            elif t.startswith("-"):
                out += " - " + t[1:]
            else:
                out += " + " + t
        return out


def _specialize_coeff(c, values):
    if isinstance(c, RatFunc):
        return c.evaluate(values)
    return c


def normal_form_classical(f, ctx: FlagContext, basis=None) -> KClassicalElem:
    """Unique basis expansion agreeing with ``f`` at every fixed point.

    ``f`` is a Laurent polynomial over ``(Λ, P)`` (Q may be in the alphabet
    but must not occur).  In non-equivariant mode the expansion is computed
    equivariantly and then evaluated at Λ = 1.
    """
    basis = tuple(tuple(b) for b in (basis or standard_monomial_basis(ctx)))
    if isinstance(f, str):
        f = LaurentPoly.parse(f, ctx.gens)
    if ctx.mode == "nonequivariant":
        twin = ctx.equivariant_twin()
        ff = f.change_gens(twin.classical_gens) if f.gens != twin.classical_gens else f
        el = normal_form_classical(ff, twin, basis)
        values = {g: 1 for g in twin.lambda_gens}
        coords = {}
        for e, c in el.coords.items():
            v = _specialize_coeff(c, values)
            if v:
                coords[e] = v
        return KClassicalElem(ctx, basis, coords)
    loc = localization(ctx, basis)
    coords = loc.coords_from_values(loc.values(f))
    return KClassicalElem(ctx, basis, {b: c for b, c in zip(basis, coords) if c})


def p_inverse_polynomial(i, ctx: FlagContext) -> LaurentPoly:
    """``P_i^{-1}`` as a polynomial in ``P_i`` over R(T).

    Expands ``prod_{|J| = i} (P_i - Λ_J) = sum_k c_k P_i^k``; ``c_0`` is a
    signed monomial in Λ, hence a unit, and
    ``P_i^{-1} = -(sum_{k >= 1} c_k P_i^{k-1}) / c_0``.
    """
    if not 1 <= i <= ctx.rank:
        raise ValueError(f"index must lie in 1..{ctx.rank}")
    gens = ctx.classical_gens
    Pi = LaurentPoly.var(gens, f"P{i}")
    prod = LaurentPoly.one(gens)
    for J in itertools.combinations(range(1, ctx.n + 1), i):
        lamJ = LaurentPoly.one(gens)
        for j in J:
            lamJ = lamJ * ctx.lam(j, gens)
        prod = prod * (Pi - lamJ)
    pos = gens.index(f"P{i}")
    c0 = LaurentPoly(gens, {e: c for e, c in prod.terms.items() if e[pos] == 0}, True)
    rest = prod - c0
    if not c0 or len(c0.terms) != 1:
        raise ArithmeticError("constant term is not a unit")
    quotient = rest * Pi.inverse_unit()
    return -(quotient * c0.inverse_unit())


def _basis_keys(ctx, basis):
    if basis in (None, "monomial"):
        return "monomial", [tuple(b) for b in standard_monomial_basis(ctx)]
    if basis == "schubert":
        return "schubert", None
    return "monomial", [tuple(b) for b in basis]


def classical_structure_constants(ctx: FlagContext, basis="monomial",
                                  check_integrality=True) -> StructureConstantTable:
    """Table ``b_u b_v = sum_w c_{uv}^w b_w`` by pointwise multiplication of restrictions.

    ``basis`` is "monomial" (standard monomials), "schubert", or an explicit
    list of P-exponent vectors.  Integrality over R(T) is certified for every
    coefficient in equivariant mode.
    """
    if ctx.mode == "nonequivariant":
        twin = ctx.equivariant_twin()
        t = classical_structure_constants(twin, basis, check_integrality)
        values = {g: 1 for g in twin.lambda_gens}
        entries = {}
        for key, ent in t.entries.items():
            entries[key] = {k: v for k, v in
                            ((k, _specialize_coeff(c, values)) for k, c in ent.items()) if v}
        return StructureConstantTable(ctx, "classical", t.basis_kind, t.keys, t.labels,
                                      entries, metadata=dict(t.metadata))
    kind, keys = _basis_keys(ctx, basis)
    if kind == "schubert":
        from qkflag.schubert import schubert_classical_values

        keys, vals, mono_basis = schubert_classical_values(ctx)
        loc = schubert_localization(ctx)
        labels = [w.label() for w in keys]
    else:
        loc = localization(ctx, tuple(keys))
        vals = [loc.values(_mono(ctx, b)) for b in keys]
        labels = [monomial_label(ctx.p_gens, b) for b in keys]
    n = len(keys)
    entries = {}
    for i in range(n):
        for j in range(i, n):
            prod = [a * b for a, b in zip(vals[i], vals[j])]
            coords = loc.coords_from_values(prod)
            ent = {k: c for k, c in enumerate(coords) if c}
            if check_integrality and ctx.is_equivariant:
                for k, c in ent.items():
                    if not c.is_laurent():
                        raise IntegralityError(
                            f"c[{labels[i]},{labels[j]}]^{labels[k]} = {c} is not in R(T)")
            entries[(i, j)] = ent
            entries[(j, i)] = ent
    meta = {"route": "fixed-point localization"}
    return StructureConstantTable(ctx, "classical", kind, list(keys), labels, entries,
                                  metadata=meta)


class _ValueLocalization(Localization):
    """Localization for a basis given directly by its restriction vectors."""

    def __init__(self, ctx, value_rows):
        self.ctx = ctx
        self.points = all_permutations(ctx.n)
        self.basis = None
        V = [[value_rows[b][p] for b in range(len(value_rows))] for p in range(len(self.points))]
        n = len(V)
        if ctx.is_equivariant:
            lg = ctx.lambda_gens
            zero, one = LaurentPoly.zero(lg), LaurentPoly.one(lg)
            eye = [[one if i == j else zero for j in range(n)] for i in range(n)]
            self._adj, self._det = solve_fraction_free(V, eye, zero, one)
        else:
            self._inv = inverse_field(V, ctx.field.zero, ctx.field.one)


@lru_cache(maxsize=16)
def schubert_localization(ctx: FlagContext):
    from qkflag.schubert import schubert_classical_values

    _, vals, _ = schubert_classical_values(ctx)
    return _ValueLocalization(ctx, vals)
