"""Acceptance criteria 1-9; each test prints a single PASS/FAIL line.

Criterion 3 fails for rank >= 2 (see the project notes); those cases are
strict xfails so an unexpected pass is reported too.
"""

import pytest

from conftest import ACCEPTANCE_LINES, make_ctx
from qkflag.cli import main
from qkflag.qkring import quantum_ring
from qkflag.verify import (
    check_basis_integrity,
    check_bounds,
    check_classical_oracle,
    check_degree_envelope,
    check_distinct_indices,
    check_finiteness,
    check_rank_one,
    check_relations_q0,
)

MODES = ("equivariant", "specialized", "nonequivariant")


def record(criterion, label, results):
    ok = all(r.passed for r in results)
    detail = "; ".join(r.summary for r in results)
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion} ({label}): {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


@pytest.fixture(scope="session")
def ring3():
    return quantum_ring(make_ctx(3, "specialized"))


def test_criterion_1_classical_oracle(ring3):
    rings = [quantum_ring(make_ctx(r, "equivariant")) for r in (1, 2)] + [ring3]
    assert record(1, "classical oracle, r=1,2 equivariant and r=3 specialized",
                  [check_classical_oracle(R) for R in rings])


def test_criterion_2_finiteness():
    rings = [quantum_ring(make_ctx(r, m)) for r in (1, 2) for m in MODES]
    assert record(2, "finiteness in both bases, r=1,2 all modes",
                  [check_finiteness(R, ("monomial", "schubert")) for R in rings])


def test_criterion_3_degree_envelope_rank_one():
    rings = [quantum_ring(make_ctx(1, m)) for m in MODES]
    assert record(3, "degree envelope, r=1 all modes", [check_degree_envelope(R) for R in rings])


@pytest.mark.xfail(strict=True, reason="normal-form coordinates leave the admissible set at rank 2")
def test_criterion_3_degree_envelope_rank_two():
    rings = [quantum_ring(make_ctx(2, m)) for m in MODES]
    assert record(3, "degree envelope, r=2 all modes", [check_degree_envelope(R) for R in rings])


@pytest.mark.xfail(strict=True, reason="normal-form coordinates leave the admissible set at rank 3")
def test_criterion_3_degree_envelope_rank_three(ring3):
    assert record(3, "degree envelope, r=3 specialized", [check_degree_envelope(ring3)])


def test_criterion_3_single_generators_have_degree_zero(ring3):
    rings = [quantum_ring(make_ctx(r, "specialized")) for r in (1, 2)] + [ring3]
    results = [check_degree_envelope(R) for R in rings]
    singles = [r.detail["single_generators_degree_zero"] for r in results]
    line = (f"[{'PASS' if all(singles) else 'FAIL'}] criterion 3 (single generators, r<=3): "
            f"Q-degree set is {{0}} for every P_i")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert all(singles)


def test_criterion_4_distinct_indices(ring3):
    rings = [quantum_ring(make_ctx(r, "specialized")) for r in (1, 2)] + [ring3]
    assert record(4, "distinct indices, r<=3 specialized", [check_distinct_indices(R) for R in rings])


def test_criterion_5_rank_one_closed_forms():
    rings = [quantum_ring(make_ctx(1, m)) for m in ("nonequivariant", "equivariant")]
    assert record(5, "rank-one closed forms", [check_rank_one(R) for R in rings])


def test_criterion_6_q_degeneration():
    ctxs = [make_ctx(r, m, b) for r in (1, 2, 3) for m in MODES for b in ("det", "paper")]
    assert record(6, "relations at Q=0, r<=3 all modes and boundaries",
                  [check_relations_q0(c) for c in ctxs])


def test_criterion_7_bounds():
    assert record(7, "k_d values and Gram positivity, r<=6", [check_bounds(6)])


def test_criterion_8_basis_integrity():
    ctxs = [make_ctx(r, m) for r in (1, 2) for m in ("equivariant", "specialized")]
    assert record(8, "Schubert basis change, r=1,2", [check_basis_integrity(c) for c in ctxs])


@pytest.mark.parametrize("rank", [1, 2])
def test_criterion_9_determinism(rank, tmp_path, capsys):
    outs = []
    codes = []
    for k in range(2):
        target = tmp_path / f"report{k}.json"
        codes.append(main(["verify", "--rank", str(rank), "--out", str(target)]))
        outs.append(target.read_bytes())
    capsys.readouterr()
    same = outs[0] == outs[1] and codes[0] == codes[1]
    line = (f"[{'PASS' if same else 'FAIL'}] criterion 9 (determinism, verify --rank {rank}): "
            f"two reports of {len(outs[0])} bytes {'identical' if same else 'differ'}")
    ACCEPTANCE_LINES.append(line)
    with capsys.disabled():
        print(line)
    assert same
