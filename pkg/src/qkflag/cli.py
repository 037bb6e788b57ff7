"""Batch command line: relations, products, structure-constant tables, verification.

Exit status is 0 on success, 1 when a verification check fails and 2 on
usage errors (bad flags, unparseable operands, invalid contexts).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass

from qkflag.bounds import admissible_degrees
from qkflag.context import BOUNDARIES, MODES, ContextError, FlagContext
from qkflag.flagring import classical_relations
from qkflag.polyalg import LaurentPoly, ParseError
from qkflag.polyalg.groebner import BudgetExceeded
from qkflag.qkring import DEFAULT_BUDGET, InconsistentRelations, QuantumKRing
from qkflag.tables import convention_block
from qkflag.toda import quantum_relation_generators

log = logging.getLogger("qkflag")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    rank: int
    mode: str
    boundary: str
    lambdas: tuple
    basis: str
    fmt: str | None
    budget: int
    out: str | None

    def context(self) -> FlagContext:
        try:
            return FlagContext(self.rank, self.mode, self.boundary, self.lambdas)
        except ContextError as exc:
            raise UsageError(str(exc)) from exc


def _parse_lambdas(text):
    if not text:
        return ()
    try:
        from qkflag.polyalg import QQ

        return tuple(QQ(p.strip()) for p in text.split(",") if p.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse --lambda {text!r}") from exc


def config_from_args(args) -> RunConfig:
    lambdas = _parse_lambdas(args.lambda_values)
    mode = args.mode
    if mode is None:
        mode = "specialized" if lambdas else "equivariant"
    if args.rank < 1:
        raise UsageError("--rank must be at least 1")
    if args.budget is not None and args.budget < 1:
        raise UsageError("--budget must be positive")
    cfg = RunConfig(args.rank, mode, args.boundary, lambdas, args.basis, args.format,
                    args.budget or DEFAULT_BUDGET, args.out)
    cfg.context()
    return cfg


def _ring(cfg: RunConfig) -> QuantumKRing:
    return QuantumKRing(cfg.context(), cfg.budget)


def _emit(text, cfg: RunConfig):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _display(f: LaurentPoly, ctx: FlagContext) -> str:
    if not ctx.is_equivariant:
        f = ctx.specialize(f)
        f = f.change_gens(tuple(g for g in f.gens if g not in ctx.lambda_gens))
    return f.to_str()


# -- commands ----------------------------------------------------------------------
def cmd_relations(cfg: RunConfig) -> int:
    ctx = cfg.context()
    rel = quantum_relation_generators(ctx)
    cl, mult = classical_relations(ctx)
    quantum = [_display(g, ctx) for g in rel]
    classical = [_display(c, ctx) for c in cl]
    fmt = cfg.fmt or "text"
    if fmt == "json":
        doc = {"context": ctx.describe(), "convention": convention_block(ctx),
               "multiplier": _display(rel.multiplier, ctx),
               "classical": classical, "quantum": quantum}
        _emit(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n", cfg)
    elif fmt == "text":
        lines = [f"# cleared by {_display(rel.multiplier, ctx)}"]
        lines += [f"g{k} = {g}" for k, g in enumerate(quantum, 1)]
        lines += [f"c{k} = {c}" for k, c in enumerate(classical, 1)]
        _emit("\n".join(lines) + "\n", cfg)
    else:
        raise UsageError(f"relations supports --format text or json, not {fmt}")
    return EXIT_OK


def _parse_operand(text, ctx: FlagContext) -> LaurentPoly:
    try:
        return LaurentPoly.parse(text, ctx.gens)
    except (ParseError, ValueError) as exc:
        raise UsageError(f"cannot parse operand {text!r}: {exc}") from exc


def _monomial_indices(f: LaurentPoly, ctx: FlagContext):
    """Index multiset of a bare P-monomial, else None."""
    if len(f.terms) != 1:
        return None
    (e, c), = f.terms.items()
    if c != 1:
        return None
    off = len(ctx.lambda_gens)
    pe = e[off:off + ctx.rank]
    if any(e[:off]) or any(e[off + ctx.rank:]) or any(x < 0 for x in pe):
        return None
    return [i + 1 for i in range(ctx.rank) for _ in range(pe[i])]


def cmd_multiply(cfg: RunConfig, lhs, rhs) -> int:
    ctx = cfg.context()
    ring = _ring(cfg)
    if cfg.basis == "schubert":
        return _multiply_schubert(cfg, ring, lhs, rhs)
    a, b = _parse_operand(lhs, ctx), _parse_operand(rhs, ctx)
    prod = ring.normal_form(a * b)
    degrees = sorted(prod.q_degrees(), key=lambda d: (sum(d), d))
    audit = {"q_degrees": [list(d) for d in degrees], "max_q_degree": list(prod.max_q_degree())}
    ia, ib = _monomial_indices(a, ctx), _monomial_indices(b, ctx)
    if ia is not None and ib is not None:
        adm = admissible_degrees(ia + ib, ctx.rank)
        audit["indices"] = ia + ib
        audit["admissible_degrees"] = [list(d) for d in adm]
        audit["within_envelope"] = set(degrees) <= set(adm)
    fmt = cfg.fmt or "text"
    if fmt == "json":
        doc = {"context": ctx.describe(), "lhs": lhs, "rhs": rhs, "basis": "monomial",
               "product": str(prod), "audit": audit}
        _emit(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n", cfg)
    elif fmt == "text":
        lines = [str(prod), f"# q-degrees: {audit['q_degrees']}"]
        if "admissible_degrees" in audit:
            lines.append(f"# admissible: {audit['admissible_degrees']}")
        _emit("\n".join(lines) + "\n", cfg)
    else:
        raise UsageError(f"multiply supports --format text or json, not {fmt}")
    return EXIT_OK


def _multiply_schubert(cfg, ring, lhs, rhs):
    from qkflag.perm import Permutation

    try:
        u, v = Permutation.parse(lhs), Permutation.parse(rhs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if len(u) != ring.ctx.n or len(v) != ring.ctx.n:
        raise UsageError(f"Schubert keys must permute 1..{ring.ctx.n}")
    table = ring.structure_constants("schubert")
    row = table.as_dict()["entries"][table.index(u) * len(table) + table.index(v)]
    fmt = cfg.fmt or "text"
    if fmt == "json":
        doc = {"context": ring.ctx.describe(), "lhs": lhs, "rhs": rhs, "basis": "schubert",
               "product": row["coefficients"]}
        _emit(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n", cfg)
    else:
        text = " + ".join(f"({c})*O[{w}]" for w, c in row["coefficients"].items()) or "0"
        _emit(text + "\n", cfg)
    return EXIT_OK


def cmd_table(cfg: RunConfig) -> int:
    ring = _ring(cfg)
    if cfg.basis == "schubert" and not ring.is_free:
        raise UsageError("Schubert tables need a K[Q]-basis of normal forms (rank <= 2)")
    table = ring.structure_constants(cfg.basis)
    fmt = cfg.fmt or "json"
    if fmt == "json":
        text = table.to_json()
    elif fmt == "csv":
        text = table.to_csv()
    elif fmt == "latex":
        text = table.to_latex()
    else:
        raise UsageError(f"unknown format {fmt}")
    _emit(text, cfg)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, corrupt=False) -> int:
    from qkflag.verify import run_checks

    report = run_checks(cfg.context(), cfg.budget, corrupt=corrupt)
    for line in report.lines():
        print(line, file=sys.stderr)
    _emit(report.to_json(), cfg)
    if not report.passed:
        print("failed: " + ", ".join(report.failed()), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# -- argument parsing ------------------------------------------------------------------
def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank", type=int, default=1)
    common.add_argument("--mode", choices=MODES, default=None,
                        help="default: specialized when --lambda is given, else equivariant")
    common.add_argument("--lambda", dest="lambda_values", default="",
                        help="comma-separated Λ values for specialized mode")
    common.add_argument("--boundary", choices=BOUNDARIES, default="det")
    common.add_argument("--basis", choices=("monomial", "schubert"), default="monomial")
    common.add_argument("--format", choices=("text", "json", "csv", "latex"), default=None)
    common.add_argument("--out", default=None, help="write to this file instead of stdout")
    common.add_argument("--budget", type=int, default=None, help="S-pair reduction budget")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="qkflag", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("relations", parents=[common], help="classical and quantum relations")
    m = sub.add_parser("multiply", parents=[common], help="quantum product of two elements")
    m.add_argument("lhs")
    m.add_argument("rhs")
    sub.add_parser("table", parents=[common], help="structure-constant table")
    v = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    v.add_argument("--corrupt-relation", action="store_true", help=argparse.SUPPRESS)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        if args.command == "relations":
            return cmd_relations(cfg)
        if args.command == "multiply":
            return cmd_multiply(cfg, args.lhs, args.rhs)
        if args.command == "table":
            return cmd_table(cfg)
        return cmd_verify(cfg, corrupt=args.corrupt_relation)
    except UsageError as exc:
        print(f"qkflag: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistentRelations as exc:
        print(f"qkflag: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"qkflag: budget exhausted: {exc}; try --mode specialized or a larger --budget",
              file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
