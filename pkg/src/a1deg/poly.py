"""Dense univariate polynomials over the fields of :mod:`a1deg.fields`."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import _dense as dense
from .errors import (
    FieldMismatch,
    NotAnExtension,
    NotMonic,
    NotSeparableResidue,
    NotVanishing,
    ZeroPolynomial,
)
from .fields import Extension, Field, FieldElement, format_sum, monomial


class Poly:
    """Immutable polynomial; ``raw_coeffs`` holds raw field values, lowest degree first."""

    __slots__ = ("field", "raw_coeffs")

    def __init__(self, field: Field, coeffs=()):
        raws = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.field != field:
                    raise FieldMismatch(f"coefficient in {c.field}, expected {field}")
                raws.append(c.raw)
            elif isinstance(c, (int, Fraction)):
                raws.append(field.raw_from_rational(c))
            else:
                raws.append(c)
        self.field = field
        self.raw_coeffs = tuple(dense.strip(field, raws))

    # -- constructors --------------------------------------------------------
    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, [field.zero, field.one_raw])

    @classmethod
    def constant(cls, field: Field, c) -> "Poly":
        return cls(field, [c])

    @classmethod
    def _raw(cls, field, raws) -> "Poly":
        p = object.__new__(cls)
        p.field = field
        p.raw_coeffs = tuple(raws)
        return p

    # -- accessors -----------------------------------------------------------
    @property
    def coeffs(self) -> tuple:
        return tuple(self.field.element(c) for c in self.raw_coeffs)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.raw_coeffs) - 1

    def is_zero(self) -> bool:
        return not self.raw_coeffs

    def __bool__(self):
        return bool(self.raw_coeffs)

    def coeff(self, k: int) -> FieldElement:
        if 0 <= k < len(self.raw_coeffs):
            return self.field.element(self.raw_coeffs[k])
        return self.field.zero_element

    @property
    def lc(self) -> FieldElement:
        if not self.raw_coeffs:
            raise ZeroPolynomial("leading coefficient of 0")
        return self.field.element(self.raw_coeffs[-1])

    def is_monic(self) -> bool:
        return bool(self.raw_coeffs) and self.raw_coeffs[-1] == self.field.one_raw

    # -- arithmetic ----------------------------------------------------------
    def _other(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (FieldElement, int, Fraction)):
            return Poly(self.field, [other])
        return None

    def _new(self, raws) -> "Poly":
        return Poly._raw(self.field, raws)

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._new(dense.add(self.field, self.raw_coeffs, o.raw_coeffs))

    __radd__ = __add__

    def __neg__(self):
        return self._new(dense.neg(self.field, self.raw_coeffs))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._new(dense.sub(self.field, self.raw_coeffs, o.raw_coeffs))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._new(dense.mul(self.field, self.raw_coeffs, o.raw_coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        return self._new(dense.power(self.field, list(self.raw_coeffs), e))

    def __divmod__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        q, r = dense.divrem(self.field, self.raw_coeffs, o.raw_coeffs)
        return self._new(q), self._new(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.raw_coeffs == other.raw_coeffs
        if isinstance(other, (FieldElement, int, Fraction)):
            return self == Poly(self.field, [other])
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key, self.raw_coeffs))

    def monic(self) -> "Poly":
        return self._new(dense.monic(self.field, self.raw_coeffs))

    def derivative(self) -> "Poly":
        return self._new(dense.deriv(self.field, self.raw_coeffs))

    def __call__(self, x):
        """Evaluate at an element of the coefficient field or of an extension of it."""
        if isinstance(x, (int, Fraction)):
            x = self.field(x)
        if x.field == self.field:
            return self.field.element(dense.evaluate(self.field, self.raw_coeffs, x.raw))
        return base_change(self, x.field)(x)

    def compose_power(self, k: int) -> "Poly":
        """``self(x^k)``."""
        F = self.field
        out = [F.zero] * (k * self.degree + 1) if self.raw_coeffs else []
        for i, c in enumerate(self.raw_coeffs):
            out[i * k] = c
        return self._new(out)

    # -- display -------------------------------------------------------------
    def format(self, var: str = "x") -> str:
        F = self.field
        return format_sum(
            [
                (F.format_raw(c), monomial(var, k))
                for k, c in reversed(list(enumerate(self.raw_coeffs)))
                if not F.is_zero(c)
            ]
        )

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.field}, {self})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero only when both inputs are zero)."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    return Poly._raw(a.field, dense.gcd(a.field, a.raw_coeffs, b.raw_coeffs))


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    g, s, t = dense.xgcd(a.field, a.raw_coeffs, b.raw_coeffs)
    return tuple(Poly._raw(a.field, v) for v in (g, s, t))


def hasse_derivative(u: Poly, i: int) -> Poly:
    """``sum_j C(j, i) c_j x^(j-i)``; the i-th Taylor coefficient operator."""
    if i < 0:
        raise ValueError("Hasse derivative order must be nonnegative")
    F = u.field
    return Poly(
        F,
        [F.mul(F.from_int(comb(j, i)), c) for j, c in enumerate(u.raw_coeffs) if j >= i],
    )


@dataclass(frozen=True)
class FactoredAtPoint:
    """``f = u * m**d`` with ``m`` not dividing ``u``."""

    u: Poly
    d: int
    m: Poly


def multiplicity_at(f: Poly, m: Poly) -> FactoredAtPoint:
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no finite multiplicity")
    if not m.is_monic() or m.degree < 1:
        raise NotMonic(f"{m} is not a monic nonconstant polynomial")
    u, d = f, 0
    while True:
        q, r = divmod(u, m)
        if r:
            break
        u, d = q, d + 1
    if d == 0:
        raise NotVanishing(f"{m.format()} does not divide {f.format()}")
    if u * m**d != f:  # pragma: no cover - arithmetic self-check
        raise AssertionError("multiplicity round-trip failed")
    return FactoredAtPoint(u, d, m)


@dataclass(frozen=True)
class InsepDecomposition:
    """``m(x) = m0(x^(p^i))`` with ``m0`` separable."""

    m0: Poly
    i: int


def _is_separable(m: Poly) -> bool:
    return poly_gcd(m, m.derivative()).degree == 0


def separability_decompose(m: Poly) -> InsepDecomposition:
    if not m.is_monic() or m.degree < 1:
        raise NotMonic(f"{m} is not a monic nonconstant polynomial")
    p = m.field.characteristic
    candidates = [(m, 0)]
    if p:
        cur, i = m, 0
        while all(k % p == 0 for k, c in enumerate(cur.raw_coeffs) if not m.field.is_zero(c)):
            cur = Poly._raw(m.field, cur.raw_coeffs[::p])
            i += 1
            candidates.append((cur, i))
    for m0, i in reversed(candidates):
        if _is_separable(m0):
            return InsepDecomposition(m0, i)
    raise NotSeparableResidue(f"{m} is not of the form m0(x^(p^i)) with m0 separable")


def horner_basis(m: Poly) -> list[Poly]:
    """``[Hor_{n-1}, ..., Hor_0]`` with ``Hor_0 = 1`` and ``Hor_i = x*Hor_{i-1} + a_{n-i}``."""
    if not m.is_monic() or m.degree < 1:
        raise NotMonic(f"{m} is not a monic nonconstant polynomial")
    n = m.degree
    x = Poly.x(m.field)
    hor = [Poly.constant(m.field, m.field.one_raw)]
    for i in range(1, n):
        hor.append(x * hor[-1] + m.coeff(n - i))
    return hor[::-1]


def base_change(f: Poly, L: Field) -> Poly:
    """Embed the coefficients of ``f`` into the extension ``L``."""
    if L == f.field:
        return f
    if not isinstance(L, Extension) or not L.extends(f.field):
        raise NotAnExtension(f"{L} does not extend {f.field}")
    pad = (f.field.zero,) * (L.degree - 1)
    return Poly._raw(L, [(c,) + pad for c in f.raw_coeffs])


def coords_poly(L: Extension, a: FieldElement) -> Poly:
    """``a(x) = sum a_i x^i`` over the base, from the canonical coordinates of ``a``."""
    return Poly(L.base, list(a.raw))
