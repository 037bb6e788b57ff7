"""Buchberger's algorithm with Gebauer-Moller pair pruning and sugar selection.

Inputs are polynomials (no negative exponents) over an exact coefficient
field.  The result is the reduced Groebner basis, sorted by leading term,
with every element monic, so it is unique for a given ideal and order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from qkflag import _kernel as K
from qkflag.polyalg.laurent import LaurentPoly
from qkflag.polyalg.order import TermOrder

log = logging.getLogger(__name__)


class BudgetExceeded(RuntimeError):
    """Raised when more S-pairs would be reduced than the caller allowed."""


@dataclass
class GBStats:
    pairs_created: int = 0
    pairs_reduced: int = 0
    zero_reductions: int = 0
    pruned: int = 0
    coprime_skips: int = 0

    def as_dict(self):
        return dict(self.__dict__)


def _monic(p: dict, key):
    lm = K.leading(p, key)
    c = p[lm]
    if c == 1:
        return p
    inv = 1 / c
    return {e: v * inv for e, v in p.items()}


def reduce_terms(p: dict, basis: list, lms: list, key, full=True) -> dict:
    """Remainder of ``p`` modulo monic ``basis`` (dicts) with leading monomials ``lms``.

    With ``full=False`` only the leading term is reduced (top reduction).
    """
    p = dict(p)
    rem = {}
    while p:
        lm = K.leading(p, key)
        idx = K.find_reducer(lm, lms)
        if idx < 0:
            if not full:
                rem.update(p)
                return rem
            rem[lm] = p.pop(lm)
            continue
        c = p[lm]
        K.addmul_inplace(p, -c, K.mono_div(lm, lms[idx]), basis[idx])
    return rem


def _spoly(f, lf, g, lg):
    l = K.mono_lcm(lf, lg)
    out = {}
    K.addmul_inplace(out, 1, K.mono_div(l, lf), f)
    K.addmul_inplace(out, -1, K.mono_div(l, lg), g)
    return out


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis together with the order that produced it."""

    gens: tuple
    order: TermOrder
    polys: list
    stats: GBStats = field(default_factory=GBStats)

    def __post_init__(self):
        self._terms = [p.terms for p in self.polys]
        self._lms = [p.leading_exponent(self.order) for p in self.polys]

    @property
    def leading_monomials(self):
        return list(self._lms)

    def is_unit_ideal(self):
        return len(self.polys) == 1 and self.polys[0].is_constant()

    def reduce(self, f: LaurentPoly) -> LaurentPoly:
        """Normal form of ``f``; unique because the basis is reduced."""
        if f.gens != self.gens:
            f = f.change_gens(self.gens)
        if not f.is_polynomial():
            raise ValueError("normal form needs a polynomial (no negative exponents)")
        rem = reduce_terms(f.terms, self._terms, self._lms, self.order.key)
        return LaurentPoly(self.gens, rem, True)

    def contains(self, f: LaurentPoly) -> bool:
        return not self.reduce(f)

    def standard_monomials(self, positions):
        """Monomials in the variables at ``positions`` not divisible by any LT.

        Raises ValueError if that set is infinite.
        """
        n = len(self.gens)
        positions = list(positions)
        # pure powers bound each variable
        bound = {}
        for lm in self._lms:
            nz = [i for i in range(n) if lm[i]]
            if len(nz) == 1 and nz[0] in positions:
                i = nz[0]
                bound[i] = min(bound.get(i, lm[i]), lm[i])
        if set(bound) != set(positions):
            raise ValueError("infinitely many standard monomials")
        out = []

        def rec(k, cur):
            if k == len(positions):
                e = [0] * n
                for i, v in zip(positions, cur):
                    e[i] = v
                e = tuple(e)
                if K.find_reducer(e, self._lms) < 0:
                    out.append(e)
                return
            for v in range(bound[positions[k]]):
                rec(k + 1, cur + [v])

        rec(0, [])
        return out


def groebner(polys, order: TermOrder, budget=None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``polys``.

    ``budget`` caps the number of S-pair reductions; exceeding it raises
    :class:`BudgetExceeded` instead of running on.
    """
    polys = [p for p in polys if p]
    if not polys:
        raise ValueError("need at least one nonzero generator")
    gens = polys[0].gens
    for p in polys:
        if p.gens != gens:
            raise ValueError("generators must share one alphabet")
        if not p.is_polynomial():
            raise ValueError(f"generator has negative exponents: {p}")
    key = order.key
    stats = GBStats()

    basis = []      # monic term dicts
    lms = []
    sugar = []
    active = []     # indices into basis forming the current G
    pairs = []      # list of (i, j, lcm, sugar)

    def lm_of(i):
        return lms[i]

    def add(h, s):
        idx = len(basis)
        basis.append(h)
        lms.append(K.leading(h, key))
        sugar.append(s)
        _update(idx)

    def _update(h):
        nonlocal active, pairs
        lh = lms[h]
        C = [(g, K.mono_lcm(lms[g], lh)) for g in active]
        D = []
        for pos, (g1, l1) in enumerate(C):
            if _coprime(lms[g1], lh):
                D.append((g1, l1))
                continue
            dominated = False
            for g2, l2 in C[pos + 1:]:
                if K.divides(l2, l1):
                    dominated = True
                    break
            if not dominated:
                for g2, l2 in D:
                    if K.divides(l2, l1):
                        dominated = True
                        break
            if dominated:
                stats.pruned += 1
            else:
                D.append((g1, l1))
        E = []
        for g, l in D:
            if _coprime(lms[g], lh):
                stats.coprime_skips += 1
                continue
            s = max(sugar[g] + sum(l) - sum(lms[g]), sugar[h] + sum(l) - sum(lh))
            E.append((g, h, l, s))
        kept = []
        for (g1, g2, l, s) in pairs:
            if (not K.divides(lh, l)
                    or K.mono_lcm(lms[g1], lh) == l
                    or K.mono_lcm(lh, lms[g2]) == l):
                kept.append((g1, g2, l, s))
            else:
                stats.pruned += 1
        stats.pairs_created += len(E)
        pairs = kept + E
        active = [g for g in active if not K.divides(lh, lms[g])] + [h]

    # seed with interreduced-by-leading-term generators, smallest first
    seeds = sorted((dict(p.terms) for p in polys), key=lambda t: key(K.leading(t, key)))
    for t in seeds:
        cur = [basis[i] for i in active]
        cur_lms = [lms[i] for i in active]
        r = reduce_terms(t, cur, cur_lms, key)
        if r:
            r = _monic(r, key)
            add(r, max(sum(e) for e in r))

    while pairs:
        best = min(range(len(pairs)),
                   key=lambda k: (pairs[k][3], key(pairs[k][2]), pairs[k][0], pairs[k][1]))
        g1, g2, l, s = pairs.pop(best)
        if budget is not None and stats.pairs_reduced >= budget:
            raise BudgetExceeded(
                f"S-pair budget {budget} exhausted ({len(pairs) + 1} pairs pending)")
        stats.pairs_reduced += 1
        sp = _spoly(basis[g1], lms[g1], basis[g2], lms[g2])
        cur = [basis[i] for i in active]
        cur_lms = [lms[i] for i in active]
        r = reduce_terms(sp, cur, cur_lms, key)
        if not r:
            stats.zero_reductions += 1
            continue
        r = _monic(r, key)
        add(r, s)
        if all(v == 0 for v in lms[-1]):
            # unit ideal
            pairs = []
            active = [len(basis) - 1]
            break

    # minimal basis, then tail-reduce
    G = [basis[i] for i in active]
    G.sort(key=lambda t: key(K.leading(t, key)))
    G_lms = [K.leading(t, key) for t in G]
    minimal = []
    for i, t in enumerate(G):
        if any(K.divides(G_lms[j], G_lms[i]) and (G_lms[j] != G_lms[i] or j < i)
               for j in range(len(G)) if j != i):
            continue
        minimal.append(t)
    reduced = []
    m_lms = [K.leading(t, key) for t in minimal]
    for i, t in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        o_lms = m_lms[:i] + m_lms[i + 1:]
        lm = m_lms[i]
        tail = {e: c for e, c in t.items() if e != lm}
        rt = reduce_terms(tail, others, o_lms, key)
        rt[lm] = 1
        reduced.append(rt)
    reduced.sort(key=lambda t: key(K.leading(t, key)))
    log.debug("groebner: %s", stats)
    return GroebnerBasis(gens, order, [LaurentPoly(gens, t, True) for t in reduced], stats)
