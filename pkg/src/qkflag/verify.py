"""Acceptance checks shared by the command line and the test-suite.

Every check returns a :class:`CheckResult` whose ``detail`` is plain JSON
data, so a report built from the same configuration is byte-identical
across runs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from qkflag.bounds import admissible_degrees, kd, quadratic_form_positivity
from qkflag.context import FlagContext
from qkflag.flagring import (
    classical_relations,
    classical_structure_constants,
    normal_form_classical,
    p_inverse_polynomial,
    standard_monomial_basis,
)
from qkflag.polyalg import LaurentPoly, RatFunc
from qkflag.qkring import QuantumIdeal, QuantumKRing, quantum_ring, verify_polynomiality
from qkflag.toda import classical_limit, quantum_relation_generators

REPORT_SCHEMA = "qkflag.verify-report/1"
MAX_LISTED = 20


@dataclass
class CheckResult:
    name: str
    criterion: int | None
    passed: bool
    summary: str
    detail: dict = field(default_factory=dict)

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        crit = f"#{self.criterion} " if self.criterion else ""
        return f"[{tag}] {crit}{self.name}: {self.summary}"

    def as_dict(self):
        return {"name": self.name, "criterion": self.criterion, "passed": self.passed,
                "summary": self.summary, "detail": self.detail}


# -- 6: relations at Q = 0 ----------------------------------------------------
def check_relations_q0(ctx: FlagContext) -> CheckResult:
    quantum = quantum_relation_generators(ctx)
    classical, _ = classical_relations(ctx)
    bad = [k + 1 for k, (g, c) in enumerate(zip(quantum, classical)) if classical_limit(g, ctx) != c]
    return CheckResult("relations_q0", 6, not bad,
                       f"{len(classical)} relations compared, {len(bad)} differ",
                       {"mismatched_k": bad})


# -- 5: rank-one closed forms ---------------------------------------------------
def rank_one_closed_form(ctx: FlagContext) -> LaurentPoly:
    """``P1 ⋆ P1`` for r = 1, expanded by hand from the single Toda relation."""
    gens = ctx.gens
    L1, L2 = ctx.lam(1, gens), ctx.lam(2, gens)
    P1 = LaurentPoly.var(gens, "P1")
    Q1 = LaurentPoly.var(gens, "Q1")
    if ctx.boundary == "paper":
        # P2 = 1 makes the constant term 1 - Q1 regardless of Λ
        return (L1 + L2) * P1 - (1 - Q1)
    return (L1 + L2) * P1 - L1 * L2 * (1 - Q1)


def check_rank_one(ring: QuantumKRing) -> CheckResult:
    ctx = ring.ctx
    P1 = ring.generator(1)
    got = ring.star_multiply(P1, P1)
    expected = ring.normal_form(rank_one_closed_form(ctx))
    ok = got == expected and set(got.coords) <= {(0,), (1,)}
    return CheckResult("rank_one_closed_form", 5, ok, f"P1 * P1 = {got}",
                       {"computed": str(got), "expected": str(expected)})


# -- 1: classical oracle ------------------------------------------------------------
def check_classical_oracle(ring: QuantumKRing) -> CheckResult:
    """Q = 0 part of every product of classical basis monomials, against localization."""
    ctx = ring.ctx
    basis = [tuple(b) for b in standard_monomial_basis(ctx)]
    table = classical_structure_constants(ctx, "monomial")
    gens = ring.pq_gens
    mismatches = []
    compared = 0
    for i, j in itertools.combinations_with_replacement(range(len(basis)), 2):
        e = tuple(a + b for a, b in zip(basis[i], basis[j]))
        prod = ring.normal_form(LaurentPoly.monomial(gens, e + (0,) * ctx.rank))
        got = normal_form_classical(prod.classical_representative(), ctx, tuple(basis))
        want = {basis[k]: c for k, c in table.entries[(i, j)].items()}
        compared += 1
        if got.coords != want:
            mismatches.append([table.labels[i], table.labels[j]])
    staircase_ok = None
    if ring.is_free:
        # the whole quantum table at Q = 0 against the classical table in the same basis
        qt = ring.structure_constants("monomial", audit=False)
        ct = classical_structure_constants(ctx, list(ring.standard))
        staircase_ok = True
        z = (0,) * ctx.rank
        for key, ent in qt.entries.items():
            at0 = {k: c.terms[z] for k, c in ent.items() if z in c.terms}
            if at0 != ct.entries[key]:
                staircase_ok = False
                mismatches.append([qt.labels[key[0]], qt.labels[key[1]], "staircase"])
    ok = not mismatches
    summary = f"{compared} products of standard monomials at Q = 0 match localization"
    if staircase_ok is not None:
        summary += f"; full {len(ring.standard)}x{len(ring.standard)} table compared"
    if not ok:
        summary = f"{len(mismatches)} mismatches"
    return CheckResult("classical_oracle", 1, ok, summary,
                       {"compared": compared, "mismatches": mismatches[:MAX_LISTED],
                        "table_compared": staircase_ok})


# -- 2: finiteness -------------------------------------------------------------------
def check_finiteness(ring: QuantumKRing, bases=("monomial", "schubert")) -> CheckResult:
    detail = {"certificate": ring.certificate(), "bases": {}}
    ok = True
    for basis in bases:
        if basis == "schubert" and not ring.is_free:
            detail["bases"][basis] = "skipped: normal-form coordinates are not a K[Q]-basis"
            continue
        table = ring.structure_constants(basis, audit=False)
        rep = verify_polynomiality(table, admissible=None)
        detail["bases"][basis] = {"entries": rep.entries_checked, "polynomial": rep.polynomial,
                                  "integral": rep.integral,
                                  "max_q_degree": list(rep.max_q_degree)}
        ok = ok and rep.polynomial and rep.integral
    summary = ", ".join(
        f"{b}: {v['entries']} entries polynomial" if isinstance(v, dict) else f"{b}: skipped"
        for b, v in detail["bases"].items())
    return CheckResult("finiteness", 2, ok, summary, detail)


# -- 3: degree envelope ---------------------------------------------------------------
def check_degree_envelope(ring: QuantumKRing) -> CheckResult:
    """Q-degrees of normal forms of monomial products against the admissible sets."""
    ctx = ring.ctx
    r = ctx.rank
    violations = []
    checked = 0
    singles_ok = True
    for i in range(1, r + 1):
        g = ring.generator(i)
        if g.q_degrees() != {(0,) * r}:
            singles_ok = False
    keys = list(ring.standard)
    for a, b in itertools.combinations_with_replacement(range(len(keys)), 2):
        u, v = keys[a], keys[b]
        e = tuple(x + y for x, y in zip(u, v))
        prod = ring.basis_element(e)
        indices = [t + 1 for t in range(r) for _ in range(e[t])]
        adm = set(admissible_degrees(indices, r))
        checked += 1
        extra = sorted(prod.q_degrees() - adm, key=lambda d: (sum(d), d))
        if extra:
            violations.append({"u": _label(ctx, u), "v": _label(ctx, v),
                               "indices": indices, "outside": [list(d) for d in extra]})
    ok = singles_ok and not violations
    summary = f"{checked} products, {len(violations)} with degrees outside the admissible set"
    return CheckResult("degree_envelope", 3, ok, summary,
                       {"single_generators_degree_zero": singles_ok, "checked": checked,
                        "violations": violations[:MAX_LISTED],
                        "violation_count": len(violations)})


def _label(ctx, e):
    from qkflag.tables import monomial_label

    return monomial_label(ctx.p_gens, e)


# -- 4: distinct indices ---------------------------------------------------------------------
def check_distinct_indices(ring: QuantumKRing) -> CheckResult:
    ctx = ring.ctx
    r = ctx.rank
    bad = []
    count = 0
    for k in range(1, r + 1):
        for S in itertools.combinations(range(1, r + 1), k):
            count += 1
            prod = ring.monomial_product(S)
            mono = LaurentPoly.monomial(ctx.classical_gens,
                                        (0,) * ctx.n + tuple(1 if i + 1 in S else 0 for i in range(r)))
            classical = normal_form_classical(mono, ctx)
            quantum_at0 = normal_form_classical(prod.classical_representative(), ctx)
            if prod.q_degrees() != {(0,) * r} or quantum_at0 != classical:
                bad.append(list(S))
    return CheckResult("distinct_indices", 4, not bad,
                       f"{count} index subsets, {len(bad)} with Q-terms or classical mismatch",
                       {"subsets": count, "failing": bad})


# -- 7: bounds ---------------------------------------------------------------------------------
def check_bounds(max_rank=6) -> CheckResult:
    expected = [((), 0), ((1,), 2), ((1, 1), 3)]
    got = [kd(d) for d, _ in expected]
    kd_ok = all(g == want for g, (_, want) in zip(got, expected))
    certs = [quadratic_form_positivity(r) for r in range(1, max_rank + 1)]
    pd_ok = all(c.positive_definite for c in certs)
    return CheckResult("bounds", 7, kd_ok and pd_ok,
                       f"k_d hand values {'match' if kd_ok else 'differ'}; "
                       f"Gram matrices positive definite for r <= {max_rank}: {pd_ok}",
                       {"kd": [[list(d), str(g)] for (d, _), g in zip(expected, got)],
                        "leading_minors": {str(c.rank): [str(m) for m in c.minors] for c in certs}})


# -- 8: basis integrity -------------------------------------------------------------------------
def check_basis_integrity(ctx: FlagContext) -> CheckResult:
    from qkflag.schubert import basis_change, schubert_structure_constants

    target = ctx if ctx.mode != "nonequivariant" else ctx.equivariant_twin()
    change = basis_change(target)
    n = len(change.perms)
    F = target.field
    round_trip = True
    for k in range(n):
        unit = [F.one if t == k else F.zero for t in range(n)]
        back = change.monomial_to_schubert(change.schubert_to_monomial(unit))
        if [F(x) if not isinstance(x, RatFunc) else x for x in back] != unit:
            round_trip = False
    try:
        schubert_structure_constants(target, check_integrality=True)
        integral = True
    except ArithmeticError:
        integral = False
    ok = change.determinant_is_unit() and change.inverse_is_integral() and round_trip and integral
    return CheckResult("basis_integrity", 8, ok,
                       f"det = {change.determinant}; round trip {'ok' if round_trip else 'broken'}; "
                       f"classical Schubert table integral: {integral}",
                       {"determinant": str(change.determinant),
                        "determinant_is_unit": change.determinant_is_unit(),
                        "inverse_integral": change.inverse_is_integral(),
                        "round_trip": round_trip, "schubert_table_integral": integral})


# -- inverses ----------------------------------------------------------------------------------
def check_inverses(ring: QuantumKRing) -> CheckResult:
    """``P_i ⋆ N_i = D_i`` (certified inside ``star_inverse``) and ``N_i / D_i`` at Q = 0
    is the classical inverse."""
    ctx = ring.ctx
    out = {}
    ok = True
    for i in range(1, ctx.rank + 1):
        inv = ring.star_inverse(i)
        at0 = normal_form_classical(inv.numerator.classical_representative(), ctx)
        want = normal_form_classical(p_inverse_polynomial(i, ctx), ctx)
        good = at0 == want
        ok = ok and good
        out[f"P{i}"] = {"denominator": str(inv.denominator), "classical_limit": good}
    return CheckResult("inverse_certificates", None, ok,
                       "; ".join(f"{k}: den {v['denominator']}" for k, v in out.items()), out)


# -- driver -------------------------------------------------------------------------------------
@dataclass
class VerifyReport:
    context: FlagContext
    checks: list

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failed(self):
        return [c.name for c in self.checks if not c.passed]

    def as_dict(self):
        return {"schema": REPORT_SCHEMA, "context": self.context.describe(),
                "passed": self.passed, "failed": self.failed(),
                "checks": [c.as_dict() for c in self.checks]}

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def lines(self):
        return [c.line() for c in self.checks]


def corrupted_ring(ctx: FlagContext, budget=None) -> QuantumKRing:
    """Negative control: the first relation picks up a spurious ``-Q1^2 P1`` term."""
    ideal = QuantumIdeal.from_context(ctx)
    gens = ideal.gens
    bad = ideal.generators[0] - LaurentPoly.var(gens, "Q1", 2) * LaurentPoly.var(gens, "P1")
    ideal = QuantumIdeal(ctx, (bad,) + ideal.generators[1:], ideal.saturation, ideal.multiplier)
    kw = {} if budget is None else {"budget": budget}
    return QuantumKRing(ctx, ideal=ideal, **kw)


def run_checks(ctx: FlagContext, budget=None, corrupt=False) -> VerifyReport:
    if corrupt:
        ring = corrupted_ring(ctx, budget)
    elif budget is None:
        ring = quantum_ring(ctx)
    else:
        ring = quantum_ring(ctx, budget)
    checks = [check_relations_q0(ctx)]
    if ctx.rank == 1:
        checks.append(check_rank_one(ring))
    checks.append(check_classical_oracle(ring))
    checks.append(check_finiteness(ring, ("monomial", "schubert") if ctx.rank <= 2 else ("monomial",)))
    checks.append(check_degree_envelope(ring))
    checks.append(check_distinct_indices(ring))
    checks.append(check_bounds())
    if ctx.rank <= 2:
        checks.append(check_basis_integrity(ctx))
    checks.append(check_inverses(ring))
    return VerifyReport(ctx, checks)
