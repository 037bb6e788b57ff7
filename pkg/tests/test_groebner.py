import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.orderings import ProductOrder, grlex

from conftest import make_ctx, to_sympy
from qkflag import _kernel_py
from qkflag.polyalg import QQ, LaurentPoly, TermOrder
from qkflag.polyalg.groebner import BudgetExceeded, groebner
from qkflag.qkring import QuantumIdeal, groebner_basis, quantum_order

try:
    from qkflag import _kernel_c
except ImportError:  # extension not built
    _kernel_c = None

GENS = ("x", "y", "z")
small = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 3),
                        st.integers(-3, 3).map(QQ), min_size=1, max_size=3)
ideal_gens = st.lists(small.map(lambda t: LaurentPoly(GENS, t)), min_size=1, max_size=3)


def _monic_set(exprs, symbols, order):
    out = set()
    for e in exprs:
        p = sympy.Poly(e, *symbols)
        out.add(sympy.expand(p.as_expr() / p.coeffs(order=order)[0]))
    return out


def _ours_as_sympy(gb):
    return {sympy.expand(to_sympy(p)) for p in gb.polys}


@settings(max_examples=25)
@given(ideal_gens)
def test_reduced_basis_matches_sympy_grlex(gens):
    gens = [g for g in gens if g]
    if not gens:
        return
    ours = groebner(gens, TermOrder("grlex"), budget=2000)
    syms = sympy.symbols("x y z")
    ref = sympy.groebner([to_sympy(g) for g in gens], *syms, order="grlex")
    assert _ours_as_sympy(ours) == _monic_set(ref.exprs, syms, "grlex")


def _block_order(r):
    return ProductOrder((grlex, lambda m: m[:r]), (grlex, lambda m: m[r:2 * r]),
                        (grlex, lambda m: m[2 * r:]))


@pytest.mark.parametrize("r", [1, 2])
def test_quantum_basis_matches_sympy_block_order(r):
    ctx = make_ctx(r, "nonequivariant")
    ideal = QuantumIdeal.from_context(ctx)
    gb = groebner_basis(ideal)
    syms = [sympy.Symbol(g.replace("'", "p")) for g in ideal.gens]
    order = _block_order(r)
    ref = sympy.groebner([to_sympy(g) for g in ideal.all()], *syms, order=order)
    assert _ours_as_sympy(gb) == _monic_set(ref.exprs, syms, order)


def test_rank_one_basis_is_the_expected_triple():
    gb = groebner_basis(QuantumIdeal.from_context(make_ctx(1, "nonequivariant")))
    got = {p.to_str() for p in gb.polys}
    assert got == {"P1^2 - 2*P1 - Q1 + 1", "P1'*P1 - 1", "P1'*Q1 - P1' - P1 + 2"}


@pytest.mark.parametrize("r", [1, 2])
def test_basis_is_idempotent(r):
    ctx = make_ctx(r, "specialized")
    gb = groebner_basis(QuantumIdeal.from_context(ctx))
    again = groebner(gb.polys, gb.order)
    assert again.polys == gb.polys


def test_s_polynomials_reduce_to_zero():
    ctx = make_ctx(2, "equivariant")
    gb = groebner_basis(QuantumIdeal.from_context(ctx))
    order = gb.order
    polys = gb.polys
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            f, g = polys[i], polys[j]
            lf, lg = f.leading_exponent(order), g.leading_exponent(order)
            lcm = tuple(max(a, b) for a, b in zip(lf, lg))
            s = (f * LaurentPoly.monomial(f.gens, tuple(a - b for a, b in zip(lcm, lf)))
                 * g.leading_coeff(order)
                 - g * LaurentPoly.monomial(g.gens, tuple(a - b for a, b in zip(lcm, lg)))
                 * f.leading_coeff(order))
            assert not gb.reduce(s)


def test_budget_is_enforced():
    ideal = QuantumIdeal.from_context(make_ctx(2, "nonequivariant"))
    with pytest.raises(BudgetExceeded):
        groebner_basis(ideal, quantum_order(2), budget=2)


def test_unit_ideal_detected():
    x = LaurentPoly.var(GENS, "x")
    gb = groebner([x, x + 1], TermOrder("grlex"))
    assert gb.is_unit_ideal()


# -- compiled and pure-Python kernels agree ----------------------------------------
needs_ext = pytest.mark.skipif(_kernel_c is None, reason="compiled kernel not built")
monos = st.tuples(*[st.integers(0, 4)] * 4)
sparse = st.dictionaries(monos, st.integers(-5, 5).filter(bool).map(QQ), max_size=6)


@needs_ext
@given(monos, monos, st.lists(monos, max_size=6))
def test_kernel_monomial_ops_agree(a, b, lms):
    for name in ("mono_mul", "mono_div", "mono_lcm", "divides"):
        assert getattr(_kernel_c, name)(a, b) == getattr(_kernel_py, name)(a, b)
    assert _kernel_c.find_reducer(a, lms) == _kernel_py.find_reducer(a, lms)


@needs_ext
@given(sparse, sparse, monos, st.integers(-3, 3).map(QQ))
def test_kernel_polynomial_ops_agree(p, q, shift, c):
    assert _kernel_c.poly_mul(p, q) == _kernel_py.poly_mul(p, q)
    assert _kernel_c.addmul_inplace(dict(p), c, shift, q) == _kernel_py.addmul_inplace(dict(p), c, shift, q)
    if p:
        key = TermOrder("grlex").key
        assert _kernel_c.leading(p, key) == _kernel_py.leading(p, key)


@needs_ext
def test_groebner_identical_under_both_kernels(monkeypatch):
    import sys

    mods = [sys.modules[f"qkflag.polyalg.{m}"] for m in ("gcd", "groebner", "laurent")]
    mods.append(sys.modules["qkflag.qkring"])

    ideal = QuantumIdeal.from_context(make_ctx(2, "specialized"))
    compiled = groebner_basis(ideal).polys
    for mod in mods:
        monkeypatch.setattr(mod, "K", _kernel_py)
    pure = groebner_basis(ideal).polys
    assert pure == compiled
