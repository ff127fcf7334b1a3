import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from a1deg import (
    GWClass,
    Poly,
    RationalFunctionField,
    Verdict,
    bezoutian,
    block_basis,
    closed_point,
    diagonalize,
    global_degree,
    gw_equal,
    local_degree,
    local_degree_rational,
    local_form_rational,
    parse_poly,
)
from a1deg import matrix as mx
from a1deg.degree import block_basis_form, localized_bezoutian, naive_local_rank
from a1deg.errors import NotReduced, NotVanishing, ZeroPair

from strategies import F7, Q, QI, monic_polys, nonzero, polys


def P(src, F=Q):
    return parse_poly(src, F)


def ints(M):
    return [[int(c.raw) for c in row] for row in M]


def gw(F, *entries):
    return GWClass(F, tuple(F(a) for a in entries))


class TestBezoutian:
    def test_cubic(self):
        B = bezoutian(P("x^3 + 3x^2 - 4x + 1"))
        assert ints(B.matrix()) == [[-4, 3, 1], [3, 1, 0], [1, 0, 0]]

    def test_quadratic(self):
        assert ints(bezoutian(P("x^2 - 2")).matrix()) == [[0, 1], [1, 0]]

    def test_rational_function(self):
        # (X(Y^2+1) - Y(X^2+1))/(X - Y) = 1 - XY
        assert ints(bezoutian(P("x"), P("x^2+1")).matrix()) == [[1, 0], [0, -1]]

    def test_zero_pair(self):
        with pytest.raises(ZeroPair):
            bezoutian(Poly(Q), Poly(Q))

    @given(f=polys(F7, 5), g=polys(F7, 5))
    def test_symmetric_and_antisymmetric_in_pair(self, f, g):
        if f.is_zero() and g.is_zero():
            return
        C = bezoutian(f, g).matrix()
        assert mx.is_symmetric(C)
        swapped = bezoutian(g, f).matrix()
        assert swapped == [[-c for c in row] for row in C]

    @given(f=polys(Q, 5), g=polys(Q, 5))
    def test_defining_identity(self, f, g):
        if f.is_zero() and g.is_zero():
            return
        X, Y = sympy.symbols("X Y")
        fs = sympy.Integer(0) + sum(sympy.Rational(c.raw) * X**i for i, c in enumerate(f.coeffs))
        gs = sympy.Integer(0) + sum(sympy.Rational(c.raw) * X**i for i, c in enumerate(g.coeffs))
        bez = sympy.cancel((fs * gs.subs(X, Y) - fs.subs(X, Y) * gs) / (X - Y))
        C = bezoutian(f, g).matrix()
        ours = sympy.Integer(0) + sum(sympy.Rational(C[i][j].raw) * X**i * Y**j for i in range(len(C)) for j in range(len(C)))
        assert sympy.expand(bez - ours) == 0


class TestGlobal:
    def test_cubic(self):
        assert str(global_degree(P("x^3 + 3x^2 - 4x + 1"))) == "H + <1>"

    def test_scaled(self):
        assert str(global_degree(P("-2x^3 + x"))) == "H + <-2>"

    def test_even(self):
        assert str(global_degree(P("x^4 + 7"))) == "2H"

    def test_rational_function(self):
        assert str(global_degree(P("x"), P("x^2+1"))) == "H"

    def test_constant_denominator(self):
        assert str(global_degree(P("x"), P("3"))) == "<3>"

    def test_not_reduced(self):
        with pytest.raises(NotReduced):
            global_degree(P("x^2-1"), P("x-1"))

    def test_constant(self):
        with pytest.raises(ZeroPair):
            global_degree(P("5"))

    @given(f=polys(Q, 6).filter(lambda f: f.degree >= 1))
    def test_shape(self, f):
        cls = global_degree(f)
        n = f.degree
        assert cls.rank == n
        expect = GWClass.hyperbolic(Q, n // 2)
        if n % 2:
            expect = expect + gw(Q, f.lc)
        assert gw_equal(cls, expect) == Verdict.EQUAL
        assert gw_equal(cls, global_degree(f, Poly.constant(Q, 1))) == Verdict.EQUAL


class TestLocal:
    def test_worked_example(self):
        p = closed_point(P("x^2+1"))
        cls = local_degree(P("(x^2+1)^3*(x+2)*(x-2)"), p)
        assert str(cls) == "3H"

    def test_simple_root(self):
        assert str(local_degree(P("x^2-4"), closed_point(P("x-2")))) == "<4>"
        assert str(local_degree(P("x^3-x"), closed_point(P("x")))) == "<-1>"

    def test_tail_reduced_before_bezoutian(self):
        # u = x^2 + 1 has degree above n*d = 1; without reducing it the rank would be 3
        f = P("x*(x^2+1)")
        bez, fac = localized_bezoutian(f, P("x"))
        assert bez.size == 1
        assert str(local_degree(f, closed_point(P("x")))) == "<1>"

    def test_not_vanishing(self):
        with pytest.raises(NotVanishing):
            local_degree(P("x^2+2"), closed_point(P("x^2+1")))

    def test_block_basis(self):
        m = P("x^2+1")
        assert block_basis(m, 2) == [P("x^3+x"), P("x^2+1"), P("x"), P("1")]

    def test_block_form_is_block_triangular(self):
        form, fac = block_basis_form(P("(x^2+1)^3*(x-3)"), P("x^2+1"))
        n, d = 2, 3
        assert all(
            form.gram[i][j].is_zero() for i in range(n * d) for j in range(n * d) if i // n + j // n > d - 1
        )

    @pytest.mark.parametrize(
        "f, m",
        [("(x^2+1)^2*(x-3)", "x^2+1"), ("(x^3-2)^3*(x+1)", "x^3-2"), ("(x^2-3)*(2x^2+x+5)", "x^2-3")],
    )
    def test_methods_agree(self, f, m):
        p = closed_point(P(m))
        block = local_degree(P(f), p, "block")
        direct = local_degree(P(f), p, "bezoutian")
        assert gw_equal(block, direct) == Verdict.EQUAL

    @given(u=polys(F7, 3).filter(bool), m=monic_polys(F7, 1, 3), d=st.integers(1, 4))
    def test_rank_law(self, u, m, d):
        try:
            p = closed_point(m)
        except Exception:
            return
        if (u % m).is_zero():
            return
        cls = local_degree(u * m**d, p)
        assert cls.rank == m.degree * d
        assert gw_equal(cls, local_degree(u * m**d, p, "bezoutian")) == Verdict.EQUAL


def _closed_points_sympy(f, modulus=None):
    """Monic irreducible factors of ``f`` as found by sympy."""
    x = sympy.symbols("x")
    expr = sympy.Integer(0) + sum(sympy.Rational(c.raw) * x**i for i, c in enumerate(f.coeffs))
    _, factors = sympy.factor_list(expr, modulus=modulus) if modulus else sympy.factor_list(expr)
    for g, _ in factors:
        coeffs = [sympy.Rational(c) for c in sympy.Poly(g, x).all_coeffs()[::-1]]
        if modulus:
            coeffs = [int(c) % modulus for c in coeffs]
        yield Poly(f.field, coeffs).monic()


@given(f=polys(Q, 5).filter(lambda f: f.degree >= 1))
def test_local_degrees_sum_to_global_rationals(f):
    total = None
    for m in _closed_points_sympy(f):
        cls = local_degree(f, closed_point(m))
        total = cls if total is None else total + cls
    assert gw_equal(total, global_degree(f)) == Verdict.EQUAL


@given(f=polys(F7, 6).filter(lambda f: f.degree >= 1))
def test_local_degrees_sum_to_global_finite_field(f):
    total = None
    for m in _closed_points_sympy(f, modulus=7):
        cls = local_degree(f, closed_point(m))
        total = cls if total is None else total + cls
    assert gw_equal(total, global_degree(f)) == Verdict.EQUAL


class TestRationalPoints:
    def test_hasse_layout(self):
        x = Poly.x(Q)
        f = (x - 1) ** 3 * (x**2 + 2)
        form = local_form_rational(f, Q(1))
        # u = x^2 + 2: u(1) = 3, u'(1) = 2, u''(1)/2 = 1
        assert ints(form.matrix()) == [[1, 2, 3], [2, 3, 0], [3, 0, 0]]
        assert str(local_degree_rational(f, Q(1))) == "H + <3>"

    def test_over_extension(self):
        x = Poly.x(QI)
        i = QI.gen
        f = (x - i) ** 2 * (x + 3)
        assert str(local_degree_rational(f, i)) == "H"

    @given(u=polys(QI, 3).filter(bool), t=nonzero(QI), d=st.integers(1, 3))
    def test_matches_bezoutian_over_residue(self, u, t, d):
        lin = Poly(QI, [-t, 1])
        if u(t).is_zero():
            return
        f = u * lin**d
        cls = local_degree_rational(f, t)
        bez, _ = localized_bezoutian(f, lin)
        direct = diagonalize(bez.form())
        assert cls.rank == direct.rank == d
        assert gw_equal(cls, direct) != Verdict.NOT_EQUAL

    @given(u=polys(F7, 3).filter(bool), t=st.integers(0, 6), d=st.integers(1, 4))
    def test_matches_bezoutian_finite_field(self, u, t, d):
        t = F7(t)
        lin = Poly(F7, [-t, 1])
        if u(t).is_zero():
            return
        f = u * lin**d
        assert gw_equal(local_degree_rational(f, t), local_degree(f, closed_point(lin), "bezoutian")) == Verdict.EQUAL


def test_naive_rank_inseparable():
    K = RationalFunctionField(5)
    m = P("x^5 - t", K)
    p = closed_point(m)
    f = P("x+1", K) * m**2
    assert naive_local_rank(f, p) == 10
    assert local_degree(f, p).rank == 10
