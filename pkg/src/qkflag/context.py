"""Rank, equivariance mode and boundary convention shared by every module."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from qkflag.polyalg import QQ, QQ_FIELD, FractionField, LaurentPoly

MODES = ("equivariant", "specialized", "nonequivariant")
BOUNDARIES = ("det", "paper")


class ContextError(ValueError):
    pass


@dataclass(frozen=True)
class FlagContext:
    """Data fixing a model of ``K_T(Fl_{r+1})``.

    ``boundary="det"`` sets ``P_{r+1} = Λ_1 ⋯ Λ_{r+1}``; ``"paper"`` sets
    ``P_{r+1} = 1``.  The two agree in non-equivariant mode.  In specialized
    mode ``lambdas`` holds r+1 distinct nonzero rationals substituted for Λ.
    """

    rank: int
    mode: str = "equivariant"
    boundary: str = "det"
    lambdas: tuple = field(default=())

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ContextError(f"rank must be a positive integer, got {self.rank!r}")
        if self.mode not in MODES:
            raise ContextError(f"mode must be one of {MODES}")
        if self.boundary not in BOUNDARIES:
            raise ContextError(f"boundary must be one of {BOUNDARIES}")
        if self.mode == "specialized":
            vals = tuple(QQ(v) for v in self.lambdas)
            if len(vals) != self.rank + 1:
                raise ContextError(f"specialized mode needs {self.rank + 1} Λ-values")
            if any(v == 0 for v in vals) or len(set(vals)) != len(vals):
                raise ContextError("Λ-values must be distinct and nonzero")
            object.__setattr__(self, "lambdas", vals)
        elif self.lambdas:
            raise ContextError("Λ-values are only accepted in specialized mode")

    # -- alphabets ----------------------------------------------------------
    @property
    def n(self):
        return self.rank + 1

    @property
    def lambda_gens(self):
        return tuple(f"L{i}" for i in range(1, self.n + 1))

    @property
    def p_gens(self):
        return tuple(f"P{i}" for i in range(1, self.rank + 1))

    @property
    def q_gens(self):
        return tuple(f"Q{i}" for i in range(1, self.rank + 1))

    @property
    def pinv_gens(self):
        return tuple(f"P{i}'" for i in range(1, self.rank + 1))

    @property
    def gens(self):
        """Full alphabet ``(Λ, P, Q)`` for relations and representatives."""
        return self.lambda_gens + self.p_gens + self.q_gens

    @property
    def classical_gens(self):
        return self.lambda_gens + self.p_gens

    @property
    def field(self):
        """Coefficient field for linear algebra in this mode."""
        if self.mode == "equivariant":
            return FractionField(self.lambda_gens)
        return QQ_FIELD

    @property
    def is_equivariant(self):
        return self.mode == "equivariant"

    def lam(self, i, gens=None):
        """Λ_i (1-based) as a polynomial over ``gens``."""
        gens = self.gens if gens is None else gens
        if self.mode == "equivariant":
            return LaurentPoly.var(gens, f"L{i}")
        if self.mode == "specialized":
            return LaurentPoly.const(gens, self.lambdas[i - 1])
        return LaurentPoly.one(gens)

    def lambda_values(self):
        """Numeric Λ-values (specialized / non-equivariant modes)."""
        if self.mode == "specialized":
            return self.lambdas
        if self.mode == "nonequivariant":
            return (QQ(1),) * self.n
        raise ContextError("equivariant mode has symbolic Λ")

    def elementary(self, k, gens=None):
        gens = self.gens if gens is None else gens
        out = LaurentPoly.zero(gens)
        for S in itertools.combinations(range(1, self.n + 1), k):
            t = LaurentPoly.one(gens)
            for i in S:
                t = t * self.lam(i, gens)
            out = out + t
        return out

    def boundary_p(self, i, gens=None):
        """P_i with the boundary values P_0 = 1 and P_{r+1} per convention."""
        gens = self.gens if gens is None else gens
        if i == 0:
            return LaurentPoly.one(gens)
        if i == self.n:
            if self.boundary == "det":
                return self.elementary(self.n, gens)
            return LaurentPoly.one(gens)
        return LaurentPoly.var(gens, f"P{i}")

    def specialize(self, f: LaurentPoly) -> LaurentPoly:
        """Substitute the mode's Λ-values (identity in equivariant mode)."""
        if self.mode == "equivariant":
            return f
        vals = self.lambda_values()
        return f.substitute({g: v for g, v in zip(self.lambda_gens, vals)}, f.gens)

    def equivariant_twin(self):
        """Equivariant context whose Λ = 1 specialization is this context."""
        boundary = "det" if self.mode == "nonequivariant" else self.boundary
        return FlagContext(self.rank, "equivariant", boundary)

    def rank_of_k_ring(self):
        return math.factorial(self.n)

    def describe(self):
        d = {"rank": self.rank, "mode": self.mode, "boundary": self.boundary}
        if self.mode == "specialized":
            d["lambda"] = [str(v) for v in self.lambdas]
        return d
