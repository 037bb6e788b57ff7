import pytest

from qkflag.context import ContextError, FlagContext
from qkflag.polyalg import QQ, LaurentPoly


def test_alphabets():
    ctx = FlagContext(2)
    assert ctx.gens == ("L1", "L2", "L3", "P1", "P2", "Q1", "Q2")
    assert ctx.pinv_gens == ("P1'", "P2'")
    assert ctx.n == 3 and ctx.rank_of_k_ring() == 6


@pytest.mark.parametrize("kwargs", [
    dict(rank=0),
    dict(rank=1, mode="quantum"),
    dict(rank=1, boundary="other"),
    dict(rank=1, mode="specialized", lambdas=(2,)),
    dict(rank=1, mode="specialized", lambdas=(2, 2)),
    dict(rank=1, mode="specialized", lambdas=(0, 2)),
    dict(rank=1, mode="nonequivariant", lambdas=(2, 3)),
])
def test_invalid_contexts(kwargs):
    with pytest.raises(ContextError):
        FlagContext(**kwargs)


def test_boundary_values():
    det = FlagContext(1)
    assert det.boundary_p(2) == LaurentPoly.parse("L1*L2", det.gens)
    paper = FlagContext(1, boundary="paper")
    assert paper.boundary_p(2) == LaurentPoly.one(paper.gens)
    assert det.boundary_p(0) == LaurentPoly.one(det.gens)


def test_specialize_and_twin():
    ctx = FlagContext(1, "specialized", lambdas=(2, 3))
    f = LaurentPoly.parse("L1 + L2*P1", ctx.gens)
    assert ctx.specialize(f) == LaurentPoly.parse("2 + 3*P1", ctx.gens)
    assert ctx.elementary(2) == LaurentPoly.const(ctx.gens, QQ(6))
    ne = FlagContext(2, "nonequivariant", boundary="paper")
    assert ne.equivariant_twin() == FlagContext(2, "equivariant", "det")
    assert ne.lambda_values() == (1, 1, 1)
    with pytest.raises(ContextError):
        FlagContext(1).lambda_values()


def test_describe_is_json_ready():
    ctx = FlagContext(1, "specialized", lambdas=("1/2", 3))
    assert ctx.describe() == {"rank": 1, "mode": "specialized", "boundary": "det",
                              "lambda": ["1/2", "3"]}
