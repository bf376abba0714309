from __future__ import annotations

import random
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from totpos import gmonoid
from totpos.coxeter import cartan_type, type_A
from totpos.semifield import T_RING, PosRational, PosRatFunc, TropicalInt

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

A1, A2, A3 = type_A(1), type_A(2), type_A(3)
A1xA1 = cartan_type("A1xA1")
DOUBLE = cartan_type("double")


def Q(x, y=1) -> PosRational:
    return PosRational(Fraction(x, y))


def trop(n) -> TropicalInt:
    return TropicalInt(n)


positive_fractions = st.builds(Fraction, st.integers(1, 50), st.integers(1, 50))
pos_rationals = positive_fractions.map(PosRational)
tropicals = st.integers(-20, 20).map(TropicalInt)


@st.composite
def ratfuncs(draw, max_degree=3):
    """t^e * f0/f1 with positive constant terms (other coefficients of either sign)."""
    e = draw(st.integers(-3, 3))

    def poly():
        c0 = draw(st.integers(1, 5))
        rest = draw(st.lists(st.integers(-4, 4), max_size=max_degree))
        return T_RING.from_list(list(reversed([c0] + rest)))

    return PosRatFunc(e, poly(), poly())


def random_letters(rng: random.Random, graph, length):
    return [gmonoid.Letter(rng.choice((1, -1, 0)), rng.choice(graph.nodes)) for _ in range(length)]


def random_q(rng: random.Random, top=9) -> PosRational:
    return Q(rng.randint(1, top), rng.randint(1, top))


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("tests.test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(acceptance.RESULTS):
            terminalreporter.write_line(acceptance.RESULTS[n])
