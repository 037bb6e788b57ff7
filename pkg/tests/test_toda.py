import math

import pytest

from conftest import make_ctx
from qkflag.context import FlagContext
from qkflag.flagring import classical_relations
from qkflag.polyalg import LaurentPoly
from qkflag.toda import (
    classical_limit,
    format_hamiltonian,
    has_no_negative_shifts,
    quantum_relation_generators,
    shift_vector,
    toda_hamiltonian,
)


@pytest.mark.parametrize("r", range(1, 6))
def test_term_counts(r):
    for k in range(1, r + 2):
        assert len(toda_hamiltonian(k, r).terms) == math.comb(r + 1, k)


def test_out_of_range():
    with pytest.raises(ValueError):
        toda_hamiltonian(0, 2)
    with pytest.raises(ValueError):
        toda_hamiltonian(4, 2)


def test_small_hamiltonians_print():
    assert str(toda_hamiltonian(1, 1)) == "H1 = p1 + (1 - Q1)*p2"
    assert str(toda_hamiltonian(2, 1)) == "H2 = p1*p2"
    H = toda_hamiltonian(2, 2)
    assert format_hamiltonian(H) == "H2 = p1*p2 + (1 - Q2)*p1*p3 + (1 - Q1)*p2*p3"
    assert format_hamiltonian(toda_hamiltonian(1, 1), form="z") == "H1 = p1 + (1 - z1/z2)*p2"


@pytest.mark.parametrize("r", range(1, 5))
def test_coefficients_divide_full_product(r):
    # every factor (1 - Q_j) appears at most once, with j a gap position
    for k in range(1, r + 2):
        for t in toda_hamiltonian(k, r).terms:
            assert len(set(t.factors)) == len(t.factors)
            assert all(j + 1 in t.subset and j not in t.subset for j in t.factors)


@pytest.mark.parametrize("r", range(1, 5))
def test_no_negative_shifts(r):
    for k in range(1, r + 2):
        assert has_no_negative_shifts(k, r)
    assert shift_vector((1,), r)[0] == 1
    assert shift_vector(tuple(range(1, r + 2)), r) == (0,) * r


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("mode", ["equivariant", "specialized", "nonequivariant"])
@pytest.mark.parametrize("boundary", ["det", "paper"])
def test_q_zero_degeneration(r, mode, boundary):
    ctx = make_ctx(r, mode, boundary)
    rel = quantum_relation_generators(ctx)
    cl, mult = classical_relations(ctx)
    assert len(rel) == r + 1
    for g, c in zip(rel, cl):
        assert g.is_polynomial()
        assert classical_limit(g, ctx) == c


def test_det_boundary_top_relation_vanishes():
    rel = quantum_relation_generators(FlagContext(2))
    assert not rel[2]


def test_rank_one_relation():
    ctx = FlagContext(1, "nonequivariant")
    g1 = quantum_relation_generators(ctx)[0]
    assert ctx.specialize(g1) == LaurentPoly.parse("P1^2 - 2*P1 + 1 - Q1", ctx.gens)
