"""Exact fields: Q, F_p, F_p(t), and simple extensions of one of those.

Every field works on *raw* values (``Fraction`` for Q, ``int`` for F_p, a
reduced ``(num, den)`` pair of coefficient tuples for F_p(t), a coefficient
tuple for extensions).  Raw values are always canonical, so ``==`` on raw
values is field equality.  :class:`FieldElement` wraps a raw value for
operator-level use.
"""

from __future__ import annotations

import functools
import random
from fractions import Fraction
from math import isqrt

import sympy

from . import _dense as dense
from .errors import (
    CharacteristicTwo,
    DivisionByZero,
    FieldMismatch,
    IrreducibilityViolated,
    NotAnExtension,
    ParseError,
    ReducibleModulus,
    UnsupportedField,
    ZeroArgument,
)


class FieldElement:
    __slots__ = ("field", "raw")

    def __init__(self, field: "Field", raw):
        self.field = field
        self.raw = raw

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.raw
        if isinstance(other, (int, Fraction)):
            return self.field.raw_from_rational(other)
        return NotImplemented

    def _wrap(self, raw):
        return FieldElement(self.field, raw)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.sub(o, self.raw))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.mul(self.raw, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.mul(self.raw, self.field.inv(o)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.mul(o, self.field.inv(self.raw)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.raw))

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        acc, base = self.field.one_raw, self.raw
        while e:
            if e & 1:
                acc = self.field.mul(acc, base)
            e >>= 1
            if e:
                base = self.field.mul(base, base)
        return self._wrap(acc)

    def inverse(self):
        return self._wrap(self.field.inv(self.raw))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.raw)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return (other.field is self.field or other.field == self.field) and self.raw == other.raw
        if isinstance(other, (int, Fraction)):
            try:
                return self.raw == self.field.raw_from_rational(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key, self.raw))

    def __str__(self):
        return self.field.format_raw(self.raw)

    def __repr__(self):
        return f"FieldElement({self.field}, {self})"


class Field:
    """Common interface.  Subclasses implement the raw-value operations."""

    characteristic = 0
    degree = 1
    base: "Field | None" = None
    symbols: tuple = ()

    # -- raw layer -----------------------------------------------------------
    zero: object
    one_raw: object

    def neg(self, a):
        return self.sub(self.zero, a)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def from_int(self, n: int):
        return self.raw_from_rational(n)

    # -- element layer -------------------------------------------------------
    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if self.base is not None and value.field == self.base:
                return self.from_coords([value])
            if value.field != self:
                raise FieldMismatch(f"{value.field} vs {self}")
            return value
        if isinstance(value, (int, Fraction)):
            return FieldElement(self, self.raw_from_rational(value))
        if isinstance(value, str):
            from .parsing import parse_element

            return parse_element(value, self)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def element(self, raw) -> FieldElement:
        return FieldElement(self, raw)

    @property
    def zero_element(self) -> FieldElement:
        return FieldElement(self, self.zero)

    @property
    def one_element(self) -> FieldElement:
        return FieldElement(self, self.one_raw)

    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"<field {self}>"

    @property
    def root(self) -> "Field":
        """The ground field (Q, F_p or F_p(t)) underneath any extension."""
        return self if self.base is None else self.base.root

    def supports_square_test(self) -> bool:
        return True


def char(field: Field) -> int:
    return field.characteristic


def degree_over_base(field: Field) -> int:
    return field.degree


# ---------------------------------------------------------------------------
# Q


@functools.lru_cache(maxsize=65536)
def _factor(n: int) -> tuple:
    return tuple(sorted(sympy.factorint(n).items()))


def squarefree_part(n: int) -> int:
    """Signed squarefree integer in the square class of the nonzero ``n``."""
    if n == 0:
        raise ZeroArgument("squarefree part of 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    for p, e in _factor(n):
        if e % 2:
            out *= p
    return sign * out


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in _factor(abs(n))]


def _is_square_int(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


class Rationals(Field):
    key = ("Q",)
    zero = Fraction(0)
    one_raw = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise DivisionByZero("division by zero in Q")
        return 1 / Fraction(a)

    def is_zero(self, a):
        return not a

    def raw_from_rational(self, v):
        return Fraction(v)

    def format_raw(self, a):
        return str(a)

    def is_square_raw(self, a) -> bool:
        return a > 0 and _is_square_int(a.numerator) and _is_square_int(a.denominator)

    def square_class_raw(self, a):
        # numerator and denominator are coprime, so the product is squarefree
        return Fraction(squarefree_part(a.numerator) * squarefree_part(a.denominator))

    def random_raw(self, rng: random.Random, size: int = 5):
        return Fraction(rng.randint(-size, size), rng.randint(1, size))

    def __str__(self):
        return "Q"


# ---------------------------------------------------------------------------
# F_p


class PrimeField(Field):
    def __init__(self, p: int):
        if p == 2:
            raise CharacteristicTwo("characteristic 2 is not supported")
        if p < 2 or not sympy.isprime(p):
            raise ParseError(f"F{p}: {p} is not prime")
        self.p = p
        self.characteristic = p
        self.key = ("F", p)
        self.zero = 0
        self.one_raw = 1
        self._nonresidue = next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if not a:
            raise DivisionByZero(f"division by zero in F{self.p}")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return not a

    def raw_from_rational(self, v):
        v = Fraction(v)
        if v.denominator % self.p == 0:
            raise DivisionByZero(f"{v} has no image in F{self.p}")
        return v.numerator * pow(v.denominator, -1, self.p) % self.p

    def format_raw(self, a):
        return str(a)

    def is_square_raw(self, a) -> bool:
        return pow(a, (self.p - 1) // 2, self.p) == 1

    def square_class_raw(self, a):
        return 1 if self.is_square_raw(a) else self._nonresidue

    def random_raw(self, rng, size=5):
        return rng.randrange(self.p)

    def __str__(self):
        return f"F{self.p}"


# ---------------------------------------------------------------------------
# F_p(t)


def format_sum(terms) -> str:
    """Join ``(coefficient_str, monomial_str)`` pairs into a readable sum.

    Compound coefficients are parenthesized so the output re-parses.
    """
    if len(terms) == 1 and not terms[0][1]:
        return terms[0][0]
    parts = []
    for cs, mono in terms:
        compound = any(ch in cs for ch in "+ ") or "-" in cs[1:]
        negative = cs.startswith("-") and not compound
        mag = f"({cs})" if compound else (cs[1:] if negative else cs)
        if mono:
            body = mono if mag == "1" else f"{mag}*{mono}"
        else:
            body = mag
        parts.append((negative, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for negative, body in parts[1:]:
        out += (" - " if negative else " + ") + body
    return out


def monomial(var: str, k: int) -> str:
    return "" if k == 0 else (var if k == 1 else f"{var}^{k}")


def _format_int_poly(coeffs, var: str) -> str:
    return format_sum([(str(c), monomial(var, k)) for k, c in reversed(list(enumerate(coeffs))) if c])


class RationalFunctionField(Field):
    """F_p(var), elements stored as reduced fractions with monic denominator."""

    def __init__(self, p: int, var: str = "t"):
        self.F = PrimeField(p)
        self.p = p
        self.var = var
        self.characteristic = p
        self.symbols = (var,)
        self.key = ("Ft", p, var)
        self.zero = ((), (1,))
        self.one_raw = ((1,), (1,))

    # canonical form
    def _make(self, num, den):
        F = self.F
        num = dense.strip(F, num)
        den = dense.strip(F, den)
        if not den:
            raise DivisionByZero(f"division by zero in {self}")
        if not num:
            return self.zero
        if len(den) > 1:
            g = dense.gcd(F, num, den)
            if len(g) > 1:
                num = dense.divrem(F, num, g)[0]
                den = dense.divrem(F, den, g)[0]
        lc = den[-1]
        if lc != 1:
            c = F.inv(lc)
            num = dense.scale(F, num, c)
            den = dense.scale(F, den, c)
        return (tuple(num), tuple(den))

    def add(self, a, b):
        F = self.F
        if a[1] == b[1]:
            return self._make(dense.add(F, a[0], b[0]), a[1])
        return self._make(
            dense.add(F, dense.mul(F, a[0], b[1]), dense.mul(F, b[0], a[1])),
            dense.mul(F, a[1], b[1]),
        )

    def neg(self, a):
        return (tuple(dense.neg(self.F, a[0])), a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        F = self.F
        if not a[0] or not b[0]:
            return self.zero
        return self._make(dense.mul(F, a[0], b[0]), dense.mul(F, a[1], b[1]))

    def inv(self, a):
        if not a[0]:
            raise DivisionByZero(f"division by zero in {self}")
        return self._make(a[1], a[0])

    def is_zero(self, a):
        return not a[0]

    def raw_from_rational(self, v):
        c = self.F.raw_from_rational(v)
        return ((c,), (1,)) if c else self.zero

    def from_poly(self, num, den=(1,)):
        return self._make(list(num), list(den))

    @property
    def gen(self) -> FieldElement:
        return self.element(((0, 1), (1,)))

    def format_raw(self, a):
        num, den = a
        ns = _format_int_poly(num, self.var)
        if den == (1,):
            return ns
        ds = _format_int_poly(den, self.var)
        if sum(1 for c in num if c) > 1:
            ns = f"({ns})"
        if sum(1 for c in den if c) > 1 or len(den) > 2 or den[-1] != 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def _odd_part(self, poly):
        """Product of the irreducible factors of odd multiplicity (monic)."""
        F = self.F
        out = [1]
        for mult, factor in squarefree_decomposition(F, list(poly)):
            if mult % 2:
                out = dense.mul(F, out, factor)
        return out

    def is_square_raw(self, a) -> bool:
        F = self.F
        prod = dense.mul(F, a[0], a[1])
        lc = prod[-1]
        if not F.is_square_raw(lc):
            return False
        return dense.sqrt_monic(F, dense.monic(F, prod)) is not None

    def square_class_raw(self, a):
        F = self.F
        if not a[0]:
            raise ZeroArgument("square class of 0")
        prod = dense.mul(F, a[0], a[1])
        unit = F.square_class_raw(prod[-1])
        core = self._odd_part(dense.monic(F, prod))
        return self._make(dense.scale(F, core, unit), [1])

    def random_raw(self, rng, size=2):
        num = [rng.randrange(self.p) for _ in range(rng.randint(0, size) + 1)]
        den = [rng.randrange(self.p) for _ in range(rng.randint(0, 1))] + [1]
        return self._make(num, den)

    def __str__(self):
        return f"F{self.p}({self.var})"


def squarefree_decomposition(F: PrimeField, f):
    """Squarefree decomposition of a monic polynomial over F_p.

    Returns ``[(multiplicity, factor), ...]`` with pairwise coprime monic
    squarefree factors whose product (with multiplicities) is ``f``.
    """
    f = dense.monic(F, f)
    if len(f) <= 1:
        return []
    p = F.p
    out: dict[int, list] = {}

    def put(k, g):
        if len(g) > 1:
            out[k] = dense.mul(F, out.get(k, [1]), g)

    df = dense.deriv(F, f)
    if df:
        c = dense.gcd(F, f, df)
        w = dense.divrem(F, f, c)[0]
        i = 1
        while len(w) > 1:
            y = dense.gcd(F, w, c)
            put(i, dense.divrem(F, w, y)[0])
            i += 1
            w = y
            c = dense.divrem(F, c, y)[0]
        rest = c
    else:
        rest = f
    if len(rest) > 1:
        # rest is a p-th power; F_p is perfect so coefficients are unchanged
        root = [rest[k] for k in range(0, len(rest), p)]
        for k, g in squarefree_decomposition(F, root):
            put(k * p, g)
    return sorted(out.items())


# ---------------------------------------------------------------------------
# simple extensions


class Extension(Field):
    """``base[sym]/(modulus)`` with modulus monic and (policy-checked) irreducible."""

    def __init__(self, base: Field, modulus, sym: str = "a", check: bool = True):
        if isinstance(base, Extension):
            raise UnsupportedField("only one extension level is supported")
        modulus = dense.strip(base, list(getattr(modulus, "raw_coeffs", modulus)))
        if len(modulus) < 2:
            raise ReducibleModulus("modulus must have degree >= 1")
        if modulus[-1] != base.one_raw:
            raise ParseError(f"modulus over {base} must be monic")
        if sym in base.symbols:
            raise ParseError(f"symbol {sym!r} already used by {base}")
        self.base = base
        self.modulus = tuple(modulus)
        self.sym = sym
        self.degree = len(modulus) - 1
        self.characteristic = base.characteristic
        self.symbols = base.symbols + (sym,)
        self.key = ("Ext", base.key, self.modulus, sym)
        self.zero = (base.zero,) * self.degree
        self.one_raw = (base.one_raw,) + (base.zero,) * (self.degree - 1)
        if check:
            check_irreducible(base, list(self.modulus))

    def _pad(self, poly):
        return tuple(poly) + (self.base.zero,) * (self.degree - len(poly))

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        B = self.base
        prod = dense.mul(B, dense.strip(B, a), dense.strip(B, b))
        return self._pad(dense.rem(B, prod, self.modulus))

    def inv(self, a):
        B = self.base
        a = dense.strip(B, a)
        if not a:
            raise DivisionByZero(f"division by zero in {self}")
        g, s, _ = dense.xgcd(B, a, self.modulus)
        if len(g) != 1:
            raise IrreducibilityViolated(
                f"modulus of {self} shares a factor with {self.format_raw(self._pad(a))}"
            )
        return self._pad(dense.rem(B, s, self.modulus))

    def is_zero(self, a):
        return all(self.base.is_zero(x) for x in a)

    def raw_from_rational(self, v):
        return (self.base.raw_from_rational(v),) + (self.base.zero,) * (self.degree - 1)

    def embed(self, x) -> FieldElement:
        """Image of a base-field element."""
        if isinstance(x, FieldElement):
            if x.field != self.base:
                raise NotAnExtension(f"{self} does not extend {x.field}")
            x = x.raw
        return self.element((x,) + (self.base.zero,) * (self.degree - 1))

    def from_coords(self, coords) -> FieldElement:
        B = self.base
        raws = [B(c).raw if isinstance(c, (FieldElement, int, Fraction)) else c for c in coords]
        return self.element(self._pad(dense.rem(B, dense.strip(B, raws), self.modulus)))

    def coords(self, a: FieldElement) -> list[FieldElement]:
        return [self.base.element(c) for c in a.raw]

    @property
    def gen(self) -> FieldElement:
        if self.degree == 1:
            return self.element((self.base.neg(self.modulus[0]),))
        return self.element(self._pad([self.base.zero, self.base.one_raw]))

    def extends(self, other: Field) -> bool:
        return self.base == other

    def multiplication_matrix(self, a: FieldElement):
        """Matrix (over the base) of y -> a*y in the power basis; column j is a*t^j."""
        t = self.gen
        cols, cur = [], a
        for _ in range(self.degree):
            cols.append(cur.raw)
            cur = cur * t
        n = self.degree
        return [[self.base.element(cols[j][i]) for j in range(n)] for i in range(n)]

    def trace(self, a: FieldElement) -> FieldElement:
        M = self.multiplication_matrix(a)
        acc = self.base.zero_element
        for i in range(self.degree):
            acc = acc + M[i][i]
        return acc

    def norm(self, a: FieldElement) -> FieldElement:
        from .matrix import det

        return det(self.multiplication_matrix(a))

    def format_raw(self, a):
        B = self.base
        terms = [
            (B.format_raw(a[k]), monomial(self.sym, k))
            for k in range(self.degree - 1, -1, -1)
            if not B.is_zero(a[k])
        ]
        return format_sum(terms)

    def supports_square_test(self) -> bool:
        return not isinstance(self.base, RationalFunctionField)

    def is_square_raw(self, a) -> bool:
        if isinstance(self.base, PrimeField):
            q = self.base.p ** self.degree
            return self.element(a) ** ((q - 1) // 2) == 1
        if isinstance(self.base, Rationals):
            return _number_field_is_square(self, a)
        raise UnsupportedField(f"square testing in {self} is not supported")

    def square_class_raw(self, a):
        return a

    def random_raw(self, rng, size=3):
        return tuple(self.base.random_raw(rng, size) for _ in range(self.degree))

    def __str__(self):
        from .poly import Poly

        m = Poly(self.base, list(self.modulus))
        return f"{self.base}[{self.sym}]/({m.format(self.sym)})"


def _number_field_is_square(L: Extension, a) -> bool:
    # cheap necessary condition first: the norm must be a rational square
    nrm = L.norm(L.element(a))
    if not L.base.is_square_raw(nrm.raw):
        return False
    if L.degree == 1:
        return True
    try:
        x, z = sympy.symbols("x z")
        m_expr = sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(L.modulus))
        alpha = sympy.CRootOf(sympy.Poly(m_expr, x), 0)
        K = sympy.QQ.algebraic_field(alpha)
        a_expr = sum(sympy.Rational(c.numerator, c.denominator) * alpha**k for k, c in enumerate(a))
        poly = sympy.Poly([K.one, K.zero, -K.from_sympy(a_expr)], z, domain=K)
        _, factors = poly.factor_list()
    except Exception as exc:  # pragma: no cover - defensive
        raise UnsupportedField(f"square test in {L} inconclusive: {exc}") from exc
    return any(f.degree() == 1 for f, _ in factors)


# ---------------------------------------------------------------------------
# irreducibility policy


def check_irreducible(base: Field, m: list) -> None:
    """Raise ReducibleModulus when the policy can refute irreducibility of ``m``."""
    n = len(m) - 1
    if n == 1:
        return
    if isinstance(base, PrimeField):
        if not _rabin_irreducible(base, m):
            raise ReducibleModulus(f"modulus is reducible over {base}")
        return
    if isinstance(base, Rationals):
        x = sympy.Symbol("x")
        expr = sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(m))
        if not sympy.Poly(expr, x, domain=sympy.QQ).is_irreducible:
            raise ReducibleModulus("modulus is reducible over Q")
        return
    if isinstance(base, RationalFunctionField):
        from .poly import Poly, separability_decompose
        from .errors import NotSeparableResidue

        try:
            separability_decompose(Poly(base, m))
        except NotSeparableResidue:
            raise ReducibleModulus(f"modulus is not squarefree over {base}") from None
        for c in range(base.p):
            if base.is_zero(dense.evaluate(base, m, base.raw_from_rational(c))):
                raise ReducibleModulus(f"modulus has the root {c} in {base}")
        return
    raise UnsupportedField(f"cannot extend {base}")


def _rabin_irreducible(F: PrimeField, m: list) -> bool:
    n = len(m) - 1
    p = F.p
    x = [0, 1]
    if len(dense.gcd(F, m, dense.deriv(F, m))) > 1:
        return False
    if dense.sub(F, dense.powmod(F, x, p**n, m), x) != []:
        return False
    for q in sympy.primefactors(n):
        h = dense.sub(F, dense.powmod(F, x, p ** (n // q), m), x)
        if len(dense.gcd(F, h, m)) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# element-level helpers


def is_square(a: FieldElement) -> bool:
    if a.is_zero():
        raise ZeroArgument("is_square of 0")
    return a.field.is_square_raw(a.raw)


def square_class_rep(a: FieldElement) -> FieldElement:
    if a.is_zero():
        raise ZeroArgument("square class of 0")
    return a.field.element(a.field.square_class_raw(a.raw))


def same_square_class(a: FieldElement, b: FieldElement) -> bool:
    return is_square(a / b)


def field_make(text: str) -> Field:
    """Build a field from ``Q``, ``F<p>``, ``F<p>(<var>)`` or ``<base>[<sym>]/(<poly>)``."""
    from .parsing import parse_field

    return parse_field(text)
