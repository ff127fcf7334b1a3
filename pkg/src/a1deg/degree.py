"""Bezoutians and A1-degrees of univariate polynomial maps.

The global degree of ``f/g`` is the class of the Bezoutian form
``(f(X)g(Y) - f(Y)g(X)) / (X - Y)``.  The local degree of a polynomial ``f``
at a closed point ``(m)`` with ``f = u * m^d`` is the global degree of
``m^d / (u mod m^d)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import matrix as mx
from .errors import NotIsolated, NotMonic, NotReduced, NotVanishing, ZeroPair
from .fields import Extension, Field, FieldElement
from .forms import (
    GWClass,
    SymForm,
    block_hankel_diagonalize,
    diagonalize,
    upper_hankel_class,
)
from .poly import (
    FactoredAtPoint,
    Poly,
    base_change,
    hasse_derivative,
    horner_basis,
    multiplicity_at,
    poly_gcd,
)


@dataclass(frozen=True)
class Bezoutian:
    """``Bez = sum c[i][j] X^i Y^j`` (0-based indices)."""

    field: Field
    coeffs: tuple

    @property
    def size(self) -> int:
        return len(self.coeffs)

    def matrix(self):
        return [list(r) for r in self.coeffs]

    def form(self) -> SymForm:
        return SymForm(self.coeffs, self.field)


def bezoutian(f: Poly, g: Poly | None = None) -> Bezoutian:
    F = f.field
    if g is None:
        g = Poly.constant(F, F.one_raw)
    if g.field != F:
        from .errors import FieldMismatch

        raise FieldMismatch(f"{f.field} vs {g.field}")
    if f.is_zero() and g.is_zero():
        raise ZeroPair("Bezoutian of 0/0")
    N = max(f.degree, g.degree, 0)
    C = [[F.zero for _ in range(N)] for _ in range(N)]
    fc, gc = f.raw_coeffs, g.raw_coeffs
    # (X^a Y^b - X^b Y^a)/(X - Y) = X^b Y^b (X^(a-b) - Y^(a-b))/(X - Y) for a > b
    for a, fa in enumerate(fc):
        if F.is_zero(fa):
            continue
        for b, gb in enumerate(gc):
            if a == b or F.is_zero(gb):
                continue
            w = F.mul(fa, gb)
            lo, hi = min(a, b), max(a, b)
            if a < b:
                w = F.neg(w)
            for k in range(hi - lo):
                i, j = lo + k, hi - 1 - k
                C[i][j] = F.add(C[i][j], w)
    return Bezoutian(F, tuple(tuple(F.element(c) for c in row) for row in C))


def global_degree(f: Poly, g: Poly | None = None) -> GWClass:
    F = f.field
    if g is None:
        g = Poly.constant(F, F.one_raw)
    if f.is_zero() and g.is_zero():
        raise ZeroPair("0/0 is not a map")
    if max(f.degree, g.degree) < 1:
        raise ZeroPair("constant maps have no degree")
    if g.degree <= 0 and not g.is_zero():
        # Bez(f/c) = c * Bez(f/1), an upper-triangular Hankel form
        c = g.coeff(0)
        return upper_hankel_class([c * f.coeff(k) for k in range(1, f.degree + 1)])
    if poly_gcd(f, g).degree > 0:
        raise NotReduced(f"{f} and {g} share a common factor")
    return diagonalize(bezoutian(f, g).form())


# ---------------------------------------------------------------------------
# closed points


@dataclass(frozen=True, eq=False)
class ClosedPoint:
    """A monic irreducible ``m`` with residue field ``L = k[x]/(m)`` and ``t`` the image of x."""

    m: Poly
    L: Extension
    t: FieldElement

    @property
    def degree(self) -> int:
        return self.m.degree

    def __str__(self):
        return f"({self.m.format()})"


_SYMBOLS = ("a", "b", "c", "w", "z", "r")


def closed_point(m: Poly, sym: str | None = None) -> ClosedPoint:
    """Build the residue field of ``m`` (policy-checked for irreducibility)."""
    if not m.is_monic() or m.degree < 1:
        raise NotMonic(f"{m} is not monic of positive degree")
    k = m.field
    if sym is None:
        sym = next(s for s in _SYMBOLS if s not in k.symbols)
    L = Extension(k, m, sym)
    return ClosedPoint(m, L, L.gen)


# ---------------------------------------------------------------------------
# local degrees


def reduced_factor(f: Poly, m: Poly) -> tuple[FactoredAtPoint, Poly]:
    """``f = u * m^d`` together with ``u mod m^d``."""
    fac = multiplicity_at(f, m)
    return fac, fac.u % (m ** fac.d)


def localized_bezoutian(f: Poly, m: Poly) -> tuple[Bezoutian, FactoredAtPoint]:
    """``Bez(m^d / (u mod m^d))``, a form of rank ``deg(m) * d``."""
    fac, ubar = reduced_factor(f, m)
    return bezoutian(m**fac.d, ubar), fac


def block_basis(m: Poly, d: int) -> list[Poly]:
    """Horner polynomials times descending powers of ``m``.

    Block ``I`` is ``Hor_{n-1} m^(d-1-I), ..., Hor_0 m^(d-1-I)``; degrees run
    from ``nd - 1`` down to 0.
    """
    hor = horner_basis(m)
    out = []
    for I in range(d):
        mp = m ** (d - 1 - I)
        out += [h * mp for h in hor]
    return out


def _coefficient_rows(polys, N, field):
    return [[p.coeff(k) for k in range(N)] for p in polys]


def block_basis_form(f: Poly, m: Poly) -> tuple[SymForm, FactoredAtPoint]:
    """The localized Bezoutian expressed in :func:`block_basis` coordinates.

    If ``C`` is the Gram matrix in monomials and the rows of ``P`` are the
    block basis polynomials, the returned Gram is ``P^-T C P^-1``.  It is
    block upper-left triangular and every antidiagonal block is the Scharlau
    form of ``<u(t)>``.
    """
    bez, fac = localized_bezoutian(f, m)
    N = bez.size
    F = f.field
    P = _coefficient_rows(block_basis(m, fac.d), N, F)
    Pinv = mx.inverse(P)
    G = mx.congruence(Pinv, bez.matrix())
    return SymForm(G, F), fac


def local_degree(f: Poly, p: ClosedPoint, method: str = "block") -> GWClass:
    """Local A1-degree of ``f`` at ``p``.

    ``method="block"`` splits off the hyperbolic planes explicitly in the
    block basis; ``method="bezoutian"`` diagonalizes the localized Bezoutian
    directly.
    """
    if p.m.field != f.field:
        from .errors import FieldMismatch

        raise FieldMismatch(f"{f.field} vs {p.m.field}")
    if method == "block":
        form, _ = block_basis_form(f, p.m)
        return block_hankel_diagonalize(form, p.m.degree)
    if method == "bezoutian":
        bez, _ = localized_bezoutian(f, p.m)
        return diagonalize(bez.form())
    raise ValueError(f"unknown method {method!r}")


def local_form_rational(f: Poly, t: FieldElement) -> SymForm:
    """Upper Hankel form with antidiagonals ``u^(d-1)(t), ..., u'(t), u(t)``.

    This is the local degree form of ``f = u * (x - t)^d`` in the basis
    ``(x - t)^(d-1), ..., 1``.
    """
    L = f.field
    t = L(t)
    if not f(t).is_zero():
        raise NotVanishing(f"{f} does not vanish at {t}")
    fac = multiplicity_at(f, Poly(L, [-t, L.one_element]))
    d = fac.d
    if fac.u(t).is_zero():  # pragma: no cover - excluded by maximality of d
        raise NotIsolated("u(t) vanishes after factoring")
    s = [hasse_derivative(fac.u, d - 1 - k)(t) for k in range(d)]
    return SymForm.upper_hankel(s)


def local_degree_rational(f: Poly, t: FieldElement) -> GWClass:
    form = local_form_rational(f, t)
    return upper_hankel_class(form.structure.s)


def naive_local_rank(f: Poly, p: ClosedPoint) -> int:
    """Multiplicity of ``t`` as a root of ``f`` base-changed to the residue field."""
    fL = base_change(f, p.L)
    return multiplicity_at(fL, Poly(p.L, [-p.t, p.L.one_element])).d
