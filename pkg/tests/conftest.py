import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dompoly.poly import IntPolynomial

settings.register_profile(
    "default",
    deadline=None,
    max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def int_polys(draw, min_degree=1, max_degree=5, height=20, nonzero_constant=False):
    n = draw(st.integers(min_degree, max_degree))
    coeff = st.integers(-height, height)
    lead = draw(coeff.filter(bool))
    tail = draw(st.lists(coeff, min_size=n, max_size=n))
    if nonzero_constant and n > 0 and tail[-1] == 0:
        tail[-1] = draw(coeff.filter(bool))
    return IntPolynomial([lead] + tail)


@pytest.fixture
def P():
    from dompoly.poly import parse_poly

    return parse_poly


def pytest_terminal_summary(terminalreporter):
    # one PASS/FAIL line per acceptance criterion that ran
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
