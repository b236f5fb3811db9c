import pytest
from hypothesis import strategies as st

from ncquot.laurent import LPoly
from ncquot.motives import MotiveCache


@pytest.fixture
def cache():
    return MotiveCache()


def lpolys(min_exp=-8, max_exp=8, max_terms=6, integral=False, coeffs=st.integers(-50, 50)):
    exps = st.integers(min_exp, max_exp)
    if integral:
        exps = exps.map(lambda e: 2 * (e // 2))
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(LPoly)


@st.composite
def unit_led_lpolys(draw, integral=False):
    """Nonzero LPoly whose top coefficient is +-1."""
    body = draw(lpolys(integral=integral, max_terms=4)).terms
    step = 2 if integral else 1
    top = max(body, default=-step) + step * draw(st.integers(1, 3))
    body[top] = draw(st.sampled_from([1, -1]))
    return LPoly(body)


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[num])
