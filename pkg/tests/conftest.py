"""Shared fixtures: the small worked systems most test modules revisit."""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from ergocap.capacity import envelope
from ergocap.measure import Prob
from ergocap.space import Transformation

settings.register_profile(
    "suite",
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
    deadline=None,
)
settings.load_profile("suite")

F = Fraction
HALF = F(1, 2)


def frac_tuple(*xs) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


@pytest.fixture
def swap_pairs() -> Transformation:
    # 0 <-> 1 and 2 <-> 3, the standard two-block permutation
    return Transformation((1, 0, 3, 2))


@pytest.fixture
def q1() -> Prob:
    return Prob((HALF, HALF, F(0), F(0)))


@pytest.fixture
def q2() -> Prob:
    return Prob((F(0), F(0), HALF, HALF))


@pytest.fixture
def two_blocks(q1, q2):
    """Envelope of the two block uniforms; the canonical n = 2 system."""
    return envelope([q1, q2])


@pytest.fixture
def tilted(q1):
    """Envelope of Q1 and (3/4)Q1 + (1/4)Q2; zero-one fails on {2, 3}."""
    mix = Prob((F(3, 8), F(3, 8), F(1, 8), F(1, 8)))
    return envelope([q1, mix])
