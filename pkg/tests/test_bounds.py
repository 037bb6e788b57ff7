from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from qkflag.bounds import (
    admissible_degrees,
    box_shell_is_clear,
    enumeration_box,
    is_admissible,
    kd,
    multiplicities,
    quadratic_form_positivity,
    slack,
)


def _kd_reference(d):
    ext = [0, *d, 0]
    return Fraction(sum(d)) + sum(Fraction((ext[i] - ext[i - 1]) ** 2, 2) for i in range(1, len(ext)))


def test_kd_values():
    assert kd(()) == 0
    assert kd((0,)) == 0
    assert kd((1,)) == 2
    assert kd((1, 1)) == 3
    assert kd((2, 1, 0)) == Fraction(6)


@given(st.lists(st.integers(0, 6), min_size=1, max_size=5))
def test_kd_matches_reference(d):
    assert Fraction(str(kd(d))) == _kd_reference(d)


@pytest.mark.parametrize("r", range(1, 8))
def test_gram_matrix_positive_definite(r):
    cert = quadratic_form_positivity(r)
    assert cert.positive_definite
    G = sympy.Matrix(r, r, lambda i, j: sympy.Rational(str(cert.gram[i][j])))
    assert sympy.Rational(str(cert.minors[-1])) == G.det() == sympy.Rational(r + 1, 2 ** r)


def test_small_admissible_sets():
    assert admissible_degrees([], 2) == [(0, 0)]
    assert admissible_degrees([1], 2) == [(0, 0)]
    assert admissible_degrees([1, 1], 1) == [(0,), (1,)]
    assert admissible_degrees([1, 1, 2], 2) == [(0, 0), (1, 0), (1, 1)]
    # distinct indices: only the zero degree
    assert admissible_degrees([1, 2, 3], 3) == [(0, 0, 0)]


indices_st = st.integers(1, 3).flatmap(
    lambda r: st.tuples(st.just(r), st.lists(st.integers(1, r), max_size=5)))


@given(indices_st)
def test_admissible_matches_brute_force(case):
    r, idx = case
    wide = 2 * len(idx) + 3
    ref = []
    for d in product(range(wide + 1), repeat=r):
        lin = sum(d[i - 1] for i in idx)
        if lin - _kd_reference(d) >= 0:
            ref.append(d)
    assert sorted(admissible_degrees(idx, r)) == sorted(ref)


@given(indices_st, st.integers(1, 3))
def test_monotone_in_indices(case, extra):
    r, idx = case
    extra = min(extra, r)
    assert set(admissible_degrees(idx, r)) <= set(admissible_degrees(idx + [extra], r))


@pytest.mark.parametrize("r", [1, 2, 3, 4])
@pytest.mark.parametrize("l", [2, 3, 4])
def test_box_shell_is_clear(r, l):
    for idx in {tuple(sorted(c)) for c in product(range(1, r + 1), repeat=l)}:
        assert box_shell_is_clear(idx, r)


def test_naive_box_is_too_small():
    r, l = 11, 11
    d = (0, 5, 10, 15, 20, 25, 20, 15, 10, 5, 0)
    idx = [6] * l
    assert slack(d, idx, r) == 2 * 25
    assert is_admissible(d, idx, r)
    assert max(d) > 2 * l + 2
    assert max(d) <= enumeration_box(l, r)


def test_input_validation():
    with pytest.raises(ValueError):
        multiplicities([3], 2)
    with pytest.raises(ValueError):
        kd((-1,))
    with pytest.raises(ValueError):
        slack((1,), [1], 2)
