import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from mcsusy.field import Number
from mcsusy.star import PhaseSpaceFunction

settings.register_profile(
    "default", max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []

small_rationals = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def gaussian_rationals(draw):
    return Number(draw(small_rationals), draw(small_rationals))


@st.composite
def numbers(draw):
    """Elements of Q(i, sqrt2, sqrt3) with small coefficients."""
    out = Number(0)
    for d in (1, 2, 3, 6):
        if draw(st.booleans()):
            out = out + Number(draw(small_rationals), draw(small_rationals)) * Number.sqrt(d)
    return out


def polynomials(max_terms=3, max_degree=2, formal=False, real=False):
    @st.composite
    def build(draw):
        terms = {}
        for _ in range(draw(st.integers(0, max_terms))):
            exps = tuple(draw(st.integers(0, max_degree)) for _ in range(4))
            hb = draw(st.integers(0, 1)) if formal else 0
            im = Fraction(0) if real else draw(small_rationals)
            terms[exps + (hb,)] = Number(draw(small_rationals), im)
        return PhaseSpaceFunction(terms, formal=formal)

    return build()


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
