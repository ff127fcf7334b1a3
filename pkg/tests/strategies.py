"""Hypothesis strategies for field elements and polynomials."""

from fractions import Fraction

from hypothesis import strategies as st

from a1deg import Poly, PrimeField, RationalFunctionField, Rationals, closed_point, parse_poly

Q = Rationals()
F7 = PrimeField(7)
F5t = RationalFunctionField(5)
QI = closed_point(parse_poly("x^2+1", Q), "i").L
F9 = closed_point(parse_poly("x^2+1", PrimeField(3))).L

FIELDS = {"Q": Q, "F7": F7, "F5(t)": F5t, "Q(i)": QI, "F9": F9}

small_fractions = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 50))


def raws(F):
    if isinstance(F, Rationals):
        return small_fractions
    if isinstance(F, PrimeField):
        return st.integers(0, F.p - 1)
    if isinstance(F, RationalFunctionField):
        coeff = st.integers(0, F.p - 1)
        num = st.lists(coeff, min_size=1, max_size=4)
        den = st.lists(coeff, max_size=2)
        return st.builds(lambda n, d: F.from_poly(n, d + [1]), num, den)
    base = raws(F.base)
    return st.lists(base, min_size=F.degree, max_size=F.degree).map(tuple)


def elements(F):
    return raws(F).map(F.element)


def nonzero(F):
    return elements(F).filter(lambda a: not a.is_zero())


def polys(F, max_degree=5):
    return st.lists(raws(F), max_size=max_degree + 1).map(lambda cs: Poly(F, cs))


def monic_polys(F, min_degree=1, max_degree=5):
    return st.lists(raws(F), min_size=min_degree, max_size=max_degree).map(lambda cs: Poly(F, list(cs) + [F.one_raw]))
