"""Structure-constant tables and their deterministic export."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from qkflag.context import FlagContext
from qkflag.polyalg import LaurentPoly, RatFunc
from qkflag.polyalg.laurent import format_monomial
from qkflag.polyalg.numbers import is_rational

SCHEMA = "qkflag.structure-constants/1"


def convention_block(ctx: FlagContext):
    return {
        "boundary": ctx.boundary,
        "P_i": "class of the determinant of the rank-i tautological subbundle",
        "P_boundary": "P_0 = 1, P_{r+1} = L1*...*L{r+1}" if ctx.boundary == "det"
        else "P_0 = P_{r+1} = 1",
        "schubert": "double Grothendieck classes, top class prod_{i+j<=r+1} (1 - L_j/z_i)",
    }


def monomial_label(gens, e):
    s = format_monomial(gens, e)
    return s or "1"


def merge_coefficient(c, ctx: FlagContext):
    """One polynomial over ``(Λ, Q)`` (or Λ alone) for display, when possible.

    ``c`` is a field element or a Q-polynomial with field coefficients.
    Returns a :class:`LaurentPoly` over rationals, or ``None`` if some
    coefficient has a genuine denominator.
    """
    if isinstance(c, LaurentPoly):
        qgens = c.gens
        gens = (ctx.lambda_gens if ctx.is_equivariant else ()) + qgens
        out = {}
        for e, k in c.terms.items():
            if isinstance(k, RatFunc):
                if not k.is_laurent():
                    return None
                for f, v in k.num.terms.items():
                    out[f + e] = v
            else:
                out[((0,) * (len(gens) - len(qgens))) + e] = k
        return LaurentPoly(gens, out)
    if isinstance(c, RatFunc):
        return c.num if c.is_laurent() else None
    return None


def coefficient_str(c, ctx: FlagContext):
    if is_rational(c):
        return str(c)
    merged = merge_coefficient(c, ctx)
    if merged is not None:
        return merged.to_str()
    return str(c)


@dataclass
class StructureConstantTable:
    """``entries[(i, j)] = {k: c}`` meaning ``b_i * b_j = sum_k c b_k``.

    ``kind`` is "classical" (coefficients in the coefficient field) or
    "quantum" (coefficients are Q-polynomials over that field).
    """

    context: FlagContext
    kind: str
    basis_kind: str
    keys: list
    labels: list
    entries: dict
    audit: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def index(self, key):
        return self.keys.index(key)

    def coefficient(self, u, v, w):
        i, j, k = self.index(u), self.index(v), self.index(w)
        return self.entries[(i, j)].get(k, 0)

    def row(self, u, v):
        i, j = self.index(u), self.index(v)
        return {self.keys[k]: c for k, c in self.entries[(i, j)].items()}

    def __len__(self):
        return len(self.keys)

    # -- export ------------------------------------------------------------
    def as_dict(self):
        ctx = self.context
        rows = []
        n = len(self.keys)
        for i in range(n):
            for j in range(n):
                ent = self.entries[(i, j)]
                row = {
                    "u": self.labels[i],
                    "v": self.labels[j],
                    "coefficients": {self.labels[k]: coefficient_str(ent[k], ctx)
                                     for k in sorted(ent)},
                }
                a = self.audit.get((i, j))
                if a is not None:
                    row["max_q_degree"] = list(a["max_q_degree"])
                    row["q_degrees"] = [list(d) for d in a["q_degrees"]]
                    if a.get("admissible_degrees") is not None:
                        row["admissible_degrees"] = [list(d) for d in a["admissible_degrees"]]
                rows.append(row)
        return {
            "schema": SCHEMA,
            "kind": self.kind,
            "context": ctx.describe(),
            "convention": convention_block(ctx),
            "basis": {"kind": self.basis_kind, "keys": list(self.labels)},
            "metadata": dict(sorted(self.metadata.items())),
            "entries": rows,
        }

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "v", "w", "coefficient"])
        for row in self.as_dict()["entries"]:
            for key, val in row["coefficients"].items():
                w.writerow([row["u"], row["v"], key, val])
        return buf.getvalue()

    def to_latex(self):
        lines = [r"\begin{tabular}{lll}", r"$u$ & $v$ & $u \star v$ \\ \hline"]
        for row in self.as_dict()["entries"]:
            terms = " + ".join(f"({c})\\,{k}" for k, c in row["coefficients"].items()) or "0"
            lines.append(f"${row['u']}$ & ${row['v']}$ & ${terms}$ \\\\")
        lines.append(r"\end{tabular}")
        return "\n".join(lines) + "\n"
