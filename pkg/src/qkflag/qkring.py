"""The quantum K-ring as a quotient of ``K[Q][P]``, through Groebner bases.

The ideal is generated by the cleared Toda relations together with
``P_i P_i' - 1``; an elimination order with blocks ``P' > P > Q`` (graded
within each block) makes the P'-free part of the reduced basis a basis of
the ideal of ``K[Q][P]``, saturated with respect to every ``P_i``.

Normal forms are unique ``K``-linear combinations of standard monomials
``P^a Q^d``.  Grouping by the P-part gives coordinates indexed by the
*standard P-monomials* (those not divisible by a Q-free leading monomial)
with polynomial coefficients in Q.  When every leading monomial of the
P'-free part is Q-free these form a ``K[Q]``-basis of size (r+1)!.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache

from qkflag import _kernel as K
from qkflag.bounds import admissible_degrees
from qkflag.context import FlagContext
from qkflag.polyalg import LaurentPoly, RatFunc, TermOrder
from qkflag.polyalg.groebner import GroebnerBasis, groebner, reduce_terms
from qkflag.polyalg.laurent import format_term
from qkflag.polyalg.gcd import divexact, gcd
from qkflag.polyalg.linalg import solve_field
from qkflag.polyalg.ratfunc import FractionField
from qkflag.tables import StructureConstantTable, monomial_label
from qkflag.toda import quantum_relation_generators

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 20000


class InconsistentRelations(ArithmeticError):
    """The relations generate the unit ideal (e.g. paper boundary, equivariant)."""


class SaturationError(ArithmeticError):
    """A normal form kept an auxiliary inverse variable."""


class PolynomialityError(ArithmeticError):
    """A coefficient that must be a polynomial in Q is not."""


def quantum_order(r, p_kind="grlex") -> TermOrder:
    """Blocks ``P' > P > Q``; ``p_kind`` orders the P block, the others are graded lex."""
    return TermOrder("block", [("grlex", r), (p_kind, r), ("grlex", r)])


def _to_field_coeffs(f: LaurentPoly, ctx: FlagContext, gens) -> LaurentPoly:
    """Move Λ into the coefficients (equivariant) or substitute it (otherwise)."""
    if ctx.is_equivariant:
        F = ctx.field
        outer = tuple(g for g in f.gens if g not in ctx.lambda_gens)
        split = f.coefficients_in(outer)
        tmp = LaurentPoly(outer, {e: F(c) for e, c in split.items()}, True)
        return tmp.change_gens(gens)
    return ctx.specialize(f).change_gens(gens)


@dataclass(frozen=True)
class QuantumIdeal:
    context: FlagContext
    generators: tuple
    saturation: tuple
    multiplier: LaurentPoly

    @property
    def gens(self):
        return self.generators[0].gens if self.generators else self.saturation[0].gens

    def all(self):
        return [g for g in self.generators if g] + list(self.saturation)

    @classmethod
    def from_context(cls, ctx: FlagContext):
        gens = ctx.pinv_gens + ctx.p_gens + ctx.q_gens
        rel = quantum_relation_generators(ctx)
        gs = tuple(_to_field_coeffs(g, ctx, gens) for g in rel)
        sat = tuple(LaurentPoly.var(gens, f"P{i}") * LaurentPoly.var(gens, f"P{i}'") - 1
                    for i in range(1, ctx.rank + 1))
        return cls(ctx, gs, sat, rel.multiplier)


def groebner_basis(ideal: QuantumIdeal, order: TermOrder | None = None, budget=DEFAULT_BUDGET):
    order = order or quantum_order(ideal.context.rank)
    return groebner(ideal.all(), order, budget)


@dataclass(frozen=True)
class QKElem:
    """Element of the quantum ring: standard P-monomial -> Q-polynomial over K."""

    ring: "QuantumKRing"
    coords: dict

    def coordinate(self, e):
        return self.coords.get(tuple(e), LaurentPoly.zero(self.ring.ctx.q_gens))

    def to_poly(self) -> LaurentPoly:
        """Representative over ``(P, Q)`` with coefficients in K."""
        R = self.ring
        out = {}
        for e, c in self.coords.items():
            for d, k in c.terms.items():
                out[e + d] = k
        return LaurentPoly(R.pq_gens, out, True)

    def __add__(self, other):
        return self.ring.normal_form(self.to_poly() + other.to_poly())

    def __sub__(self, other):
        return self.ring.normal_form(self.to_poly() - other.to_poly())

    def __mul__(self, other):
        if isinstance(other, QKElem):
            return self.ring.star_multiply(self, other)
        return self.ring.normal_form(self.to_poly() * other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, QKElem):
            return NotImplemented
        return self.ring is other.ring and self.coords == other.coords

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def __bool__(self):
        return bool(self.coords)

    def q_degrees(self):
        """Set of Q-exponent vectors that occur in any coordinate."""
        out = set()
        for c in self.coords.values():
            out |= set(c.terms)
        return out

    def max_q_degree(self):
        ds = self.q_degrees()
        r = self.ring.ctx.rank
        if not ds:
            return (0,) * r
        return tuple(max(d[i] for d in ds) for i in range(r))

    def at_q0(self):
        """``{standard monomial: K-coefficient}`` of the Q = 0 specialization."""
        z = (0,) * self.ring.ctx.rank
        return {e: c.terms[z] for e, c in self.coords.items() if z in c.terms}

    def classical_representative(self) -> LaurentPoly:
        """The Q = 0 part as a polynomial over ``(Λ, P)`` with rational coefficients."""
        ctx = self.ring.ctx
        gens = ctx.classical_gens
        nl = len(ctx.lambda_gens)
        out = LaurentPoly.zero(gens)
        for e, c in self.at_q0().items():
            if isinstance(c, RatFunc):
                if not c.is_laurent():
                    raise ValueError(f"coefficient {c} is not in R(T)")
                lam = c.num.change_gens(ctx.lambda_gens)
                out = out + LaurentPoly(gens, {f + e: v for f, v in lam.terms.items()}, True)
            else:
                out = out + LaurentPoly.monomial(gens, (0,) * nl + e, c)
        return out

    def is_polynomial_in_q(self):
        return all(c.is_polynomial() for c in self.coords.values())

    def coefficients_integral(self):
        """Every coefficient lies in ``R(T)`` (trivially true outside equivariant mode)."""
        for c in self.coords.values():
            for k in c.terms.values():
                if isinstance(k, RatFunc) and not k.is_laurent():
                    return False
        return True

    def __str__(self):
        R = self.ring
        if not self.coords:
            return "0"
        key = R.p_order.key
        pieces = []
        qorder = TermOrder("grlex").key
        for e in sorted(self.coords, key=key, reverse=True):
            c = self.coords[e]
            for d in sorted(c.terms, key=qorder):
                pieces.append(format_term(R.ctx.p_gens + R.ctx.q_gens, e + d, c.terms[d]))
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"QKElem({self})"


@dataclass(frozen=True)
class QuantumInverse:
    """``P_i^{-1} = numerator / denominator`` with ``P_i ⋆ numerator = denominator``.

    The denominator is a polynomial in Q with constant term 1, so the
    inverse is a power series in Q.  It is not a polynomial in general: P_i
    is a unit only after inverting the denominator.
    """

    index: int
    numerator: QKElem
    denominator: LaurentPoly

    def at_q0(self):
        return self.numerator.at_q0()


class QuantumKRing:
    """Quotient ring with a certified Groebner basis for one context."""

    def __init__(self, ctx: FlagContext, budget=DEFAULT_BUDGET, p_kind="grlex", ideal=None):
        self.ctx = ctx
        r = ctx.rank
        self.budget = budget
        self.field = ctx.field
        self.order = quantum_order(r, p_kind)
        self.pq_gens = ctx.p_gens + ctx.q_gens
        self.pq_order = TermOrder("block", [(p_kind, r), ("grlex", r)])
        self.p_order = TermOrder(p_kind)
        self.ideal = ideal or QuantumIdeal.from_context(ctx)
        self.gb: GroebnerBasis = groebner_basis(self.ideal, self.order, budget)
        if self.gb.is_unit_ideal():
            raise InconsistentRelations(
                "relations generate the unit ideal; with boundary 'paper' the top relation "
                "forces e_{r+1}(Λ) = 1")
        elim = []
        for p in self.gb.polys:
            if all(not any(e[:r]) for e in p.terms):
                elim.append(LaurentPoly(self.pq_gens, {e[r:]: c for e, c in p.terms.items()}, True))
        self.elimination_basis = elim
        self._terms = [p.terms for p in elim]
        self._lms = [p.leading_exponent(self.pq_order) for p in elim]
        self.leading_p_parts = [lm[:r] for lm in self._lms]
        self.q_free_leading = [lm[:r] for lm in self._lms if not any(lm[r:])]
        self.standard = self._standard_p_monomials()
        self.generic_staircase = self._staircase(self.leading_p_parts)
        self.is_free = (len(self.standard) == ctx.rank_of_k_ring()
                        and len(self.q_free_leading) == len(self._lms))
        self._generic = None

    # -- standard monomials ------------------------------------------------
    def _staircase(self, lts):
        r = self.ctx.rank
        bound = []
        for i in range(r):
            pure = [lt[i] for lt in lts if lt[i] and all(lt[j] == 0 for j in range(r) if j != i)]
            if not pure:
                raise ArithmeticError(f"no pure power of P{i + 1} among leading monomials")
            bound.append(min(pure))
        out = [e for e in itertools.product(*[range(b) for b in bound])
               if K.find_reducer(e, lts) < 0]
        return sorted(out, key=lambda e: (sum(e), tuple(reversed(e))))

    def _standard_p_monomials(self):
        return self._staircase(self.q_free_leading)

    def certificate(self):
        """Facts that make the normal-form coordinates trustworthy."""
        r = self.ctx.rank
        return {
            "leading_terms_q_free": len(self.q_free_leading) == len(self._lms),
            "standard_p_monomials": len(self.standard),
            "generic_rank": len(self.generic_staircase),
            "expected_rank": self.ctx.rank_of_k_ring(),
            "free_over_k_q": self.is_free,
            "basis_size": len(self.gb.polys),
            "elimination_size": len(self._lms),
            "pairs_reduced": self.gb.stats.pairs_reduced,
            "rank": r,
        }

    # -- elements ----------------------------------------------------------
    def _coerce(self, f) -> LaurentPoly:
        ctx = self.ctx
        if isinstance(f, QKElem):
            return f.to_poly()
        if isinstance(f, str):
            f = LaurentPoly.parse(f, ctx.gens)
        if isinstance(f, LaurentPoly):
            if f.gens == self.pq_gens:
                return f
            return _to_field_coeffs(f.change_gens(ctx.gens), ctx, self.pq_gens)
        return LaurentPoly.const(self.pq_gens, self.field(f))

    def normal_form(self, f) -> QKElem:
        """Reduce ``f`` (polynomial in P and Q, Laurent in Λ) to coordinates."""
        f = self._coerce(f)
        if not f.is_polynomial():
            raise ValueError(f"normal form needs nonnegative P and Q exponents: {f}")
        rem = reduce_terms(f.terms, self._terms, self._lms, self.pq_order.key)
        return self._from_terms(rem)

    def _from_terms(self, terms) -> QKElem:
        r = self.ctx.rank
        groups: dict = {}
        for e, c in terms.items():
            groups.setdefault(e[:r], {})[e[r:]] = c
        coords = {}
        for pe, qs in groups.items():
            if pe not in self.standard:
                raise SaturationError(f"normal form has non-standard P-part {pe}")
            coords[pe] = LaurentPoly(self.ctx.q_gens, qs, True)
        return QKElem(self, coords)

    def element(self, f) -> QKElem:
        return self.normal_form(f)

    def one(self) -> QKElem:
        return self.normal_form(LaurentPoly.one(self.pq_gens))

    def basis_element(self, e) -> QKElem:
        return self.normal_form(LaurentPoly.monomial(self.pq_gens, tuple(e) + (0,) * self.ctx.rank))

    def generator(self, i) -> QKElem:
        return self.normal_form(LaurentPoly.var(self.pq_gens, f"P{i}"))

    def star_multiply(self, a: QKElem, b: QKElem) -> QKElem:
        return self.normal_form(a.to_poly() * b.to_poly())

    def star_power(self, a: QKElem, k) -> QKElem:
        out = self.one()
        for _ in range(k):
            out = self.star_multiply(out, a)
        return out

    def monomial_product(self, indices) -> QKElem:
        """``P_{i_1} ⋆ ... ⋆ P_{i_l}`` reduced one factor at a time."""
        out = self.one()
        for i in indices:
            out = self.star_multiply(out, self.generator(i))
        return out

    def contains(self, f) -> bool:
        return not self.normal_form(f)

    # -- generic fibre, used for inverses --------------------------------------
    def _generic_data(self):
        """Elimination basis over ``K(Q)``: monic in P, staircase, multiplication."""
        if self._generic is not None:
            return self._generic
        ctx = self.ctx
        r = ctx.rank
        cg = (ctx.lambda_gens if ctx.is_equivariant else ()) + ctx.q_gens
        KQ = FractionField(cg)

        def lift(c, d):
            qpart = LaurentPoly.monomial(ctx.q_gens, d)
            if isinstance(c, RatFunc):
                num = c.num.change_gens(cg) * qpart.change_gens(cg)
                return RatFunc(num, c.den.change_gens(cg))
            return KQ(qpart.change_gens(cg) * c)

        polys = []
        for p in self.elimination_basis:
            acc: dict = {}
            for e, c in p.terms.items():
                v = lift(c, e[r:])
                old = acc.get(e[:r])
                acc[e[:r]] = v if old is None else old + v
            acc = {e: c for e, c in acc.items() if c}
            lm = max(acc, key=self.p_order.key)
            inv = KQ.one / acc[lm]
            polys.append({e: c * inv for e, c in acc.items()})
        lms = [max(t, key=self.p_order.key) for t in polys]
        stair = self.generic_staircase
        self._generic = (KQ, cg, polys, lms, stair, lift)
        return self._generic

    def _generic_reduce(self, terms):
        KQ, cg, polys, lms, stair, lift = self._generic_data()
        rem = reduce_terms(terms, polys, lms, self.p_order.key)
        return [rem.get(s, KQ.zero) for s in stair]

    def _generic_mult_matrix(self, i):
        KQ, cg, polys, lms, stair, lift = self._generic_data()
        r = self.ctx.rank
        shift = tuple(1 if j == i - 1 else 0 for j in range(r))
        cols = []
        for s in stair:
            cols.append(self._generic_reduce({K.mono_mul(s, shift): KQ.one}))
        n = len(stair)
        return [[cols[c][row] for c in range(n)] for row in range(n)]

    def star_inverse(self, i) -> QuantumInverse:
        """``P_i^{⋆-1}`` as numerator / denominator, certified by ``P_i ⋆ N = D``."""
        if not 1 <= i <= self.ctx.rank:
            raise ValueError(f"index must lie in 1..{self.ctx.rank}")
        ctx = self.ctx
        KQ, cg, polys, lms, stair, lift = self._generic_data()
        M = self._generic_mult_matrix(i)
        rhs = [[KQ.one if not any(s) else KQ.zero] for s in stair]
        x = [row[0] for row in solve_field(M, rhs, KQ.zero, KQ.one)]
        den = LaurentPoly.one(cg)
        for c in x:
            if c:
                den = den * divexact(c.den, gcd(den, c.den))
        D = self._q_poly(den)
        c0 = D.terms.get((0,) * ctx.rank)
        if not c0:
            raise ArithmeticError("inverse denominator vanishes at Q = 0")
        inv0 = self.field.one / c0
        D = D.map_coeffs(lambda k: k * inv0)
        num = {}
        for s, c in zip(stair, x):
            if not c:
                continue
            v = c * RatFunc(den, LaurentPoly.one(cg), True)
            for d, k in self._q_poly(v.to_laurent()).terms.items():
                num[s + d] = k * inv0
        N = self.normal_form(LaurentPoly(self.pq_gens, num, True))
        if self.star_multiply(self.generator(i), N) != self.normal_form(D.change_gens(self.pq_gens)):
            raise ArithmeticError("inverse certificate failed")
        return QuantumInverse(i, N, D)

    def _q_poly(self, f: LaurentPoly) -> LaurentPoly:
        """Polynomial over the generic coefficient alphabet -> Q-poly over K."""
        ctx = self.ctx
        if not ctx.is_equivariant:
            return f.change_gens(ctx.q_gens)
        split = f.coefficients_in(ctx.q_gens)
        F = self.field
        return LaurentPoly(ctx.q_gens, {d: F(c.change_gens(ctx.lambda_gens))
                                        for d, c in split.items()}, True)

    # -- tables --------------------------------------------------------------
    def structure_constants(self, basis="monomial", audit=True) -> StructureConstantTable:
        if basis == "schubert":
            from qkflag.schubert import basis_change, convert_table

            if not self.is_free:
                raise ValueError("Schubert conversion needs a K[Q]-basis of standard monomials")
            table = self.structure_constants("monomial", audit)
            change = basis_change(self.ctx, self.standard) if self.ctx.mode != "nonequivariant" \
                else _nonequivariant_change(self.ctx, self.standard)
            return convert_table(table, change)
        keys = list(self.standard)
        n = len(keys)
        idx = {e: k for k, e in enumerate(keys)}
        entries = {}
        audits = {}
        elems = [self.basis_element(e) for e in keys]
        for i in range(n):
            for j in range(n):
                prod = self.star_multiply(elems[i], elems[j])
                if not prod.is_polynomial_in_q():
                    raise PolynomialityError(f"entry ({keys[i]}, {keys[j]}) is not polynomial in Q")
                entries[(i, j)] = {idx[e]: c for e, c in prod.coords.items()}
                if audit:
                    audits[(i, j)] = _audit_entry(keys[i], keys[j], prod, self.ctx.rank)
        meta = {
            "route": "groebner normal form",
            "order": self.order.describe(),
            "free_over_k_q": self.is_free,
        }
        labels = [monomial_label(self.ctx.p_gens, e) for e in keys]
        return StructureConstantTable(self.ctx, "quantum", "monomial", keys, labels, entries,
                                      audits, meta)


def _audit_entry(u, v, prod: QKElem, r):
    indices = []
    for i, (a, b) in enumerate(zip(u, v)):
        indices += [i + 1] * (a + b)
    adm = admissible_degrees(indices, r)
    degs = sorted(prod.q_degrees(), key=lambda d: (sum(d), d))
    return {
        "indices": tuple(indices),
        "q_degrees": degs,
        "max_q_degree": prod.max_q_degree(),
        "admissible_degrees": adm,
        "within_envelope": set(degs) <= set(adm),
    }


def _nonequivariant_change(ctx, monomials):
    from qkflag.schubert import basis_change

    twin = ctx.equivariant_twin()
    ch = basis_change(twin, monomials)
    vals = {g: 1 for g in twin.lambda_gens}

    def ev(x):
        return x.evaluate(vals) if isinstance(x, RatFunc) else x

    ch.matrix = [[ev(x) for x in row] for row in ch.matrix]
    ch.inverse = [[ev(x) for x in row] for row in ch.inverse]
    ch.determinant = ev(ch.determinant)
    ch.context = ctx
    return ch


@lru_cache(maxsize=32)
def quantum_ring(ctx: FlagContext, budget=DEFAULT_BUDGET) -> QuantumKRing:
    """Cached ring per context."""
    return QuantumKRing(ctx, budget)


def star_multiply(a: QKElem, b: QKElem) -> QKElem:
    return a.ring.star_multiply(a, b)


def star_inverse(i, ctx: FlagContext) -> QuantumInverse:
    return quantum_ring(ctx).star_inverse(i)


def quantum_structure_constants(ctx: FlagContext, basis="monomial") -> StructureConstantTable:
    return quantum_ring(ctx).structure_constants(basis)


@dataclass
class PolynomialityReport:
    entries_checked: int = 0
    polynomial: bool = True
    integral: bool = True
    violations: list = field(default_factory=list)
    max_q_degree: tuple = ()

    @property
    def ok(self):
        return self.polynomial and self.integral and not self.violations

    def as_dict(self):
        return {
            "entries_checked": self.entries_checked,
            "polynomial": self.polynomial,
            "integral": self.integral,
            "max_q_degree": list(self.max_q_degree),
            "violations": [
                {"u": u, "v": v, "w": w, "d": list(d)} for (u, v, w, d) in self.violations],
            "ok": self.ok,
        }


def verify_polynomiality(table: StructureConstantTable, admissible=admissible_degrees):
    """Check every coefficient is a Q-polynomial and, for monomial tables, that
    each occurring Q-degree lies in the admissible set of its index multiset.

    Pass ``admissible=None`` to skip the degree envelope."""
    r = table.context.rank
    rep = PolynomialityReport()
    best = [0] * r
    for (i, j), ent in sorted(table.entries.items()):
        rep.entries_checked += 1
        adm = None
        if table.basis_kind == "monomial" and admissible is not None:
            u, v = table.keys[i], table.keys[j]
            indices = []
            for t, (a, b) in enumerate(zip(u, v)):
                indices += [t + 1] * (a + b)
            adm = set(admissible(indices, r))
        for k, c in sorted(ent.items()):
            if not isinstance(c, LaurentPoly):
                continue
            if not c.is_polynomial():
                rep.polynomial = False
            for d, coeff in c.terms.items():
                if isinstance(coeff, RatFunc) and not coeff.is_laurent():
                    rep.integral = False
                for t in range(r):
                    best[t] = max(best[t], d[t])
                if adm is not None and d not in adm:
                    rep.violations.append((table.labels[i], table.labels[j], table.labels[k], d))
    rep.max_q_degree = tuple(best)
    return rep
