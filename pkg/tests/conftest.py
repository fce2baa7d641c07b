from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from mdsblowup.certify import Main2Params

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def small_fractions(lo=-6, hi=6, max_den=7):
    return st.builds(Fraction, st.integers(lo * max_den, hi * max_den),
                     st.integers(1, max_den))


def admissible_main2(rnd, m):
    """Random (alpha, beta) strictly inside the main2 bounds for m."""
    while True:
        alpha = Main2Params(m, 0, 0).alpha_max * Fraction(rnd.randint(1, 99), 100)
        probe = Main2Params(m, alpha, 0)
        hi = probe.beta_max()
        if hi is None or hi <= probe.beta_min:
            continue
        beta = probe.beta_min + (hi - probe.beta_min) * Fraction(rnd.randint(1, 99), 100)
        params = Main2Params(m, alpha, beta)
        if params.admissible():
            return params


@pytest.fixture
def p5_77_101():
    from mdsblowup.lattice import RationalTriangle
    return RationalTriangle((0, 0), (2, 3), (Fraction(125, 101), Fraction(-5, 101)))


def admissible_main1(rnd, m):
    """Random (alpha, beta) >= 0 with alpha (m+1) + beta m <= 1, which is
    where the Newton polygon of xi_m fits and the area is at most m^2 / 2."""
    while True:
        alpha = Fraction(rnd.randint(0, 60), rnd.randint(1, 60) * (m + 1))
        beta = Fraction(rnd.randint(0, 60), rnd.randint(1, 60) * m)
        if (alpha or beta) and alpha * (m + 1) + beta * m <= 1:
            return alpha, beta


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
