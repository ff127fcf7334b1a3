import pytest
from hypothesis import HealthCheck, settings

from a1deg import PrimeField, RationalFunctionField, Rationals, closed_point, parse_field, parse_poly

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture
def Q():
    return Rationals()


@pytest.fixture
def F5():
    return PrimeField(5)


@pytest.fixture
def F5t():
    return RationalFunctionField(5)


@pytest.fixture
def gaussian():
    """The point x^2 + 1 over Q, generator named i."""
    return closed_point(parse_poly("x^2+1", Rationals()), "i")


@pytest.fixture
def cube_root_two():
    return closed_point(parse_poly("x^3-2", Rationals()))


def P(src, field):
    return parse_poly(src, field)


def field(text):
    return parse_field(text)
