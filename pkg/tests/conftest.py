import os

import pytest
from hypothesis import HealthCheck, settings

from qkflag.context import FlagContext

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

LAMBDAS = {1: (2, 3), 2: (2, 3, 5), 3: (2, 3, 5, 7)}


def make_ctx(r, mode="equivariant", boundary="det"):
    if mode == "specialized":
        return FlagContext(r, mode, boundary, LAMBDAS[r])
    return FlagContext(r, mode, boundary)


def to_sympy(f, symbols=None):
    """LaurentPoly -> sympy expression through its text form."""
    import sympy

    names = {g: sympy.Symbol(g.replace("'", "p")) for g in f.gens}
    text = f.to_str().replace("^", "**").replace("'", "p")
    return sympy.sympify(text, locals={str(v): v for v in names.values()})


@pytest.fixture
def ctx_factory():
    return make_ctx


# one line per acceptance criterion, filled in by test_acceptance and echoed at the end
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
