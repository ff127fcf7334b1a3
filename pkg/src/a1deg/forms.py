"""Symmetric bilinear forms and their Grothendieck-Witt classes.

A form is a symmetric Gram matrix over a field.  Classes are diagonal
representations ``<a1, ..., an>``; the hyperbolic plane ``H`` is ``<1, -1>``.
Equality of classes is decided completely over Q (rank, signature,
discriminant and Hasse invariants) and over finite fields (rank and
discriminant); over F_p(t) the procedure is sound but may be undecided.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass, field as dc_field
from enum import Enum
from fractions import Fraction

import sympy

from . import matrix as mx
from .errors import (
    CharacteristicTwo,
    Degenerate,
    FieldMismatch,
    NotAPlace,
    NotSymmetric,
    ZeroArgument,
    ZeroLeading,
)
from .fields import (
    Extension,
    Field,
    FieldElement,
    PrimeField,
    Rationals,
    is_square,
    prime_divisors,
    square_class_rep,
)


# ---------------------------------------------------------------------------
# structure tags


@dataclass(frozen=True)
class UpperHankel:
    """Gram entry (i, j) is ``s[i + j]`` while ``i + j < d``, else 0 (0-based)."""

    s: tuple


@dataclass(frozen=True)
class BlockHankel:
    """Block (I, J) is ``blocks[I + J]`` while ``I + J < d``, else 0 (0-based)."""

    n: int
    blocks: tuple


def _upper_hankel_gram(s):
    F = s[0].field
    d = len(s)
    zero = F.zero_element
    return [[s[i + j] if i + j < d else zero for j in range(d)] for i in range(d)]


def _block_hankel_gram(n, blocks):
    F = blocks[0][0][0].field
    d = len(blocks)
    G = mx.zeros(F, n * d)
    for I in range(d):
        for J in range(d - I):
            A = blocks[I + J]
            for a in range(n):
                for b in range(n):
                    G[I * n + a][J * n + b] = A[a][b]
    return G


class SymForm:
    """A symmetric Gram matrix with an optional structure tag."""

    __slots__ = ("field", "gram", "structure")

    def __init__(self, gram, field: Field | None = None, structure=None):
        rows = [list(r) for r in gram]
        if field is None:
            if not rows:
                raise ValueError("an empty form needs an explicit field")
            field = rows[0][0].field
        rows = [[field(c) for c in r] for r in rows]
        if not mx.is_symmetric(rows):
            raise NotSymmetric("Gram matrix is not symmetric")
        if isinstance(structure, UpperHankel):
            expected = _upper_hankel_gram([field(c) for c in structure.s])
        elif isinstance(structure, BlockHankel):
            expected = _block_hankel_gram(structure.n, structure.blocks)
        else:
            expected = None
        if expected is not None and expected != rows:
            raise ValueError("structure tag does not match the Gram matrix")
        self.field = field
        self.gram = tuple(tuple(r) for r in rows)
        self.structure = structure

    @classmethod
    def diagonal(cls, field: Field, entries) -> "SymForm":
        entries = [field(c) for c in entries]
        G = mx.zeros(field, len(entries))
        for i, a in enumerate(entries):
            G[i][i] = a
        return cls(G, field)

    @classmethod
    def upper_hankel(cls, s) -> "SymForm":
        s = tuple(s)
        return cls(_upper_hankel_gram(s), s[0].field, UpperHankel(s))

    @classmethod
    def block_hankel(cls, blocks) -> "SymForm":
        blocks = tuple(tuple(tuple(r) for r in A) for A in blocks)
        n = len(blocks[0])
        return cls(_block_hankel_gram(n, blocks), blocks[0][0][0].field, BlockHankel(n, blocks))

    @property
    def dim(self) -> int:
        return len(self.gram)

    def matrix(self):
        return [list(r) for r in self.gram]

    def scaled(self, c) -> "SymForm":
        c = self.field(c)
        structure = None
        if isinstance(self.structure, UpperHankel):
            structure = UpperHankel(tuple(c * x for x in self.structure.s))
        return SymForm([[c * x for x in r] for r in self.gram], self.field, structure)

    def det(self) -> FieldElement:
        return mx.det(self.matrix())

    def __eq__(self, other):
        return isinstance(other, SymForm) and self.field == other.field and self.gram == other.gram

    def __hash__(self):
        return hash((self.field.key, self.gram))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(c) for c in r) + "]" for r in self.gram) + "]"

    def __repr__(self):
        return f"SymForm({self.field}, {self})"


# ---------------------------------------------------------------------------
# GW classes


class Verdict(str, Enum):
    EQUAL = "Equal"
    NOT_EQUAL = "NotEqual"
    UNDECIDED = "ConsistentUndecided"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Reduced:
    """Result of greedy hyperbolic cancellation."""

    hyperbolic_count: int
    residue: tuple


@dataclass(frozen=True, eq=False)
class GWClass:
    """``<a1, ..., an>`` with every entry nonzero; ``radical`` records dropped zeros."""

    field: Field
    diag: tuple
    radical: int = 0
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        entries = tuple(self.field(a) for a in self.diag)
        if any(a.is_zero() for a in entries):
            raise ZeroArgument("diagonal entries of a GW class must be nonzero")
        object.__setattr__(self, "diag", entries)

    @classmethod
    def hyperbolic(cls, field: Field, count: int = 1) -> "GWClass":
        return cls(field, (field.one_element, -field.one_element) * count)

    @property
    def rank(self) -> int:
        return len(self.diag)

    @property
    def disc(self) -> FieldElement:
        if "disc" not in self._cache:
            acc = self.field.one_element
            for a in self.diag:
                acc = acc * a
            self._cache["disc"] = square_class_rep(acc) if self.field.supports_square_test() else acc
        return self._cache["disc"]

    @property
    def signature(self) -> int | None:
        if not isinstance(self.field, Rationals):
            return None
        return sum(1 if a.raw > 0 else -1 for a in self.diag)

    def relevant_places(self) -> list:
        """``inf``, 2 and the odd primes dividing a diagonal square class (Q only)."""
        primes = {2}
        for a in self._square_ints():
            primes.update(prime_divisors(a))
        return ["inf"] + sorted(primes)

    def _square_ints(self) -> list[int]:
        if "sq" not in self._cache:
            self._cache["sq"] = [int(square_class_rep(a).raw) for a in self.diag]
        return self._cache["sq"]

    def hasse(self, place) -> int:
        if not isinstance(self.field, Rationals):
            raise NotAPlace("Hasse invariants are only defined here over Q")
        return _hasse_of_ints(tuple(self._square_ints()), place)

    def hasse_data(self, places=None) -> dict | None:
        if not isinstance(self.field, Rationals):
            return None
        return {pl: self.hasse(pl) for pl in (places or self.relevant_places())}

    def reduced(self) -> Reduced:
        if "reduced" not in self._cache:
            self._cache["reduced"] = hyperbolic_reduce(self)
        return self._cache["reduced"]

    def __add__(self, other: "GWClass") -> "GWClass":
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return GWClass(self.field, self.diag + other.diag)

    def scaled(self, c) -> "GWClass":
        c = self.field(c)
        return GWClass(self.field, tuple(c * a for a in self.diag))

    def format(self) -> str:
        """``aH + <c1,...,cm>`` after hyperbolic cancellation."""
        red = self.reduced()
        parts = []
        if red.hyperbolic_count:
            parts.append("H" if red.hyperbolic_count == 1 else f"{red.hyperbolic_count}H")
        if red.residue or not parts:
            parts.append("<" + ", ".join(str(a) for a in red.residue) + ">")
        return " + ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"GWClass({self.field}, <{', '.join(str(a) for a in self.diag)}>)"

    def to_dict(self) -> dict:
        red = self.reduced()
        hasse = self.hasse_data()
        return {
            "field": str(self.field),
            "diag": [str(a) for a in self.diag],
            "rank": self.rank,
            "disc": str(self.disc),
            "signature": self.signature,
            "hasse": None if hasse is None else {str(k): v for k, v in hasse.items()},
            "hyperbolic_count": red.hyperbolic_count,
            "residue": [str(a) for a in red.residue],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


# ---------------------------------------------------------------------------
# diagonalization


def _check_char(field: Field):
    if field.characteristic == 2:
        raise CharacteristicTwo("characteristic 2 is not supported")


def diagonalize_with_basis(form: SymForm):
    """Return ``(entries, P)`` with ``P^T G P = diag(entries)`` and ``P`` invertible.

    Whenever an isotropic basis vector pairs with another vector, the pair is
    split off as an explicit ``<1, -1>``; otherwise an anisotropic pivot is
    eliminated.  Zero entries mark the radical.
    """
    F = form.field
    _check_char(F)
    N = form.dim
    A = form.matrix()
    V = mx.identity(F, N)  # V[i] = current i-th basis vector in original coordinates
    half = F(Fraction(1, 2))
    live = list(range(N))
    entries, basis = [], []

    while live:
        # Split off a hyperbolic plane at an isotropic basis vector.  Vectors
        # orthogonal to many others are preferred: they tend to lie in a large
        # totally isotropic subspace, which the splitting then preserves.
        pair, best = None, -1
        for k in live:
            if A[k][k].is_zero():
                support = [j for j in live if j != k and not A[k][j].is_zero()]
                zeros = len(live) - len(support)
                if support and zeros > best:
                    pair, best = (k, support[0]), zeros
        if pair is not None:
            k, j = pair
            b, c = A[k][j], A[j][j]
            # f1 = e_k, f2 = (e_j - c/(2b) e_k)/b are isotropic with B(f1, f2) = 1
            r = c * half / b
            binv = b.inverse()
            f2 = [(vj - r * vk) * binv for vj, vk in zip(V[j], V[k])]
            vp = [vk + half * w for vk, w in zip(V[k], f2)]
            vm = [vk - half * w for vk, w in zip(V[k], f2)]
            rest = [i for i in live if i not in pair]
            # pairings of the remaining vectors with v+ (norm 1) and v- (norm -1)
            bp, bm = {}, {}
            for i in rest:
                bf2 = (A[i][j] - r * A[i][k]) * binv
                bp[i] = A[i][k] + half * bf2
                bm[i] = A[i][k] - half * bf2
            for i in rest:
                V[i] = [x - bp[i] * y + bm[i] * z for x, y, z in zip(V[i], vp, vm)]
            for i in rest:
                for l in rest:
                    if l < i:
                        continue
                    val = A[i][l] - bp[i] * bp[l] + bm[i] * bm[l]
                    A[i][l] = A[l][i] = val
            entries += [F.one_element, -F.one_element]
            basis += [vp, vm]
            live = rest
            continue
        k = next((k for k in live if not A[k][k].is_zero()), None)
        if k is None:
            for i in live:
                entries.append(F.zero_element)
                basis.append(V[i])
            break
        piv = A[k][k]
        pinv = piv.inverse()
        rest = [i for i in live if i != k]
        coef = {i: A[i][k] * pinv for i in rest}
        for i in rest:
            if not coef[i].is_zero():
                V[i] = [x - coef[i] * y for x, y in zip(V[i], V[k])]
        for i in rest:
            for l in rest:
                if l < i:
                    continue
                if not coef[i].is_zero() and not A[k][l].is_zero():
                    A[i][l] = A[l][i] = A[i][l] - coef[i] * A[k][l]
        entries.append(piv)
        basis.append(V[k])
        live = rest

    P = mx.transpose(basis)
    return entries, P


def diagonalize(form: SymForm) -> GWClass:
    entries, _ = diagonalize_with_basis(form)
    nonzero = tuple(a for a in entries if not a.is_zero())
    return GWClass(form.field, nonzero, radical=len(entries) - len(nonzero))


def upper_hankel_class(s) -> GWClass:
    """Class of the upper-triangular Hankel form with antidiagonals ``s_1..s_d``."""
    s = list(s)
    if not s:
        raise ValueError("empty Hankel data")
    F = s[-1].field
    _check_char(F)
    if s[-1].is_zero():
        raise ZeroLeading("the last antidiagonal entry must be nonzero")
    d = len(s)
    entries = (F.one_element, -F.one_element) * (d // 2)
    if d % 2:
        entries += (s[-1],)
    return GWClass(F, entries)


def block_structure(form: SymForm, n: int | None = None):
    """``(n, d)`` for a block upper-left triangular form (from its tag or ``n``)."""
    if n is None:
        if not isinstance(form.structure, BlockHankel):
            raise ValueError("block size required for an untagged form")
        n = form.structure.n
    N = form.dim
    if n < 1 or N % n:
        raise ValueError(f"block size {n} does not divide dimension {N}")
    d = N // n
    G = form.gram
    for i in range(N):
        for j in range(N):
            if i // n + j // n > d - 1 and not G[i][j].is_zero():
                raise ValueError("form is not block upper-left triangular")
    return n, d


def block_hankel_congruence(form: SymForm, n: int | None = None):
    """Explicit hyperbolic splitting of a block upper-left triangular form.

    Returns ``(Q, D, pairs)`` with ``Q^T D Q == G``.  ``D`` is block diagonal:
    ``pairs`` copies of ``[[0, 1], [1, 0]]`` followed by the middle block when
    the number of blocks is odd.  Row ``2r`` of ``Q`` is the coordinate of a
    first-half basis vector and row ``2r+1`` the matching linear form ``psi``.
    """
    n, d = block_structure(form, n)
    F = form.field
    _check_char(F)
    G = form.gram
    N = n * d
    half = F(Fraction(1, 2))
    zero, one = F.zero_element, F.one_element
    first = [I * n + l for I in range(d // 2) for l in range(n)]
    middle = [(d // 2) * n + l for l in range(n)] if d % 2 else []

    Q = []
    done = set()
    for r in first:
        x = [zero] * N
        x[r] = one
        psi = [zero] * N
        psi[r] = G[r][r] * half
        for c in range(N):
            if c != r and c not in done:
                psi[c] = G[r][c]
        done.add(r)
        Q += [x, psi]
    for c in middle:
        x = [zero] * N
        x[c] = one
        Q.append(x)

    pairs = len(first)
    D = mx.zeros(F, N)
    for k in range(pairs):
        D[2 * k][2 * k + 1] = D[2 * k + 1][2 * k] = one
    base = 2 * pairs
    for a, ra in enumerate(middle):
        for b, rb in enumerate(middle):
            D[base + a][base + b] = G[ra][rb]

    if mx.rank(Q) < N:
        raise Degenerate("the hyperbolic coordinate change is not invertible")
    if mx.congruence(Q, D) != [list(r) for r in G]:  # pragma: no cover - self-check
        raise AssertionError("hyperbolic splitting failed to reproduce the form")
    return Q, D, pairs


def block_hankel_diagonalize(form: SymForm, n: int | None = None) -> GWClass:
    """``(nd/2)H`` for an even number of blocks, else ``(n(d-1)/2)H + <middle block>``."""
    Q, D, pairs = block_hankel_congruence(form, n)
    F = form.field
    entries = (F.one_element, -F.one_element) * pairs
    m = len(D) - 2 * pairs
    if m:
        mid = SymForm([r[2 * pairs :] for r in D[2 * pairs :]], F)
        cls = diagonalize(mid)
        if cls.radical:
            raise Degenerate("middle block is singular")
        entries += cls.diag
    return GWClass(F, entries)


# ---------------------------------------------------------------------------
# hyperbolic cancellation


def hyperbolic_reduce(c: GWClass) -> Reduced:
    """Greedily cancel pairs ``a, b`` with ``-ab`` a square."""
    if not c.field.supports_square_test():
        return Reduced(0, c.diag)
    rest = list(c.diag)
    kept, count = [], 0
    while rest:
        a = rest.pop(0)
        for j, b in enumerate(rest):
            if is_square(-(a * b)):
                rest.pop(j)
                count += 1
                break
        else:
            kept.append(a)
    return Reduced(count, tuple(kept))


# ---------------------------------------------------------------------------
# Hilbert symbols over Q


def _as_int(a) -> int:
    if isinstance(a, FieldElement):
        if not isinstance(a.field, Rationals):
            raise FieldMismatch("Hilbert symbols are computed over Q")
        a = a.raw
    a = Fraction(a)
    if not a:
        raise ZeroArgument("Hilbert symbol of 0")
    # same square class, integral
    return a.numerator * a.denominator


def _split(a: int, p: int):
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def _legendre(a: int, p: int) -> int:
    return 1 if pow(a % p, (p - 1) // 2, p) == 1 else -1


def hilbert_symbol(a, b, place) -> int:
    """Hilbert symbol ``(a, b)`` of nonzero rationals at a prime or ``"inf"``."""
    a, b = _as_int(a), _as_int(b)
    if place in ("inf", "oo", None) or place == float("inf"):
        return -1 if a < 0 and b < 0 else 1
    if not isinstance(place, int) or not sympy.isprime(place):
        raise NotAPlace(f"{place!r} is neither a prime nor infinity")
    p = place
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p == 2:
        eps = lambda w: ((w - 1) // 2) % 2  # noqa: E731
        omega = lambda w: ((w * w - 1) // 8) % 2  # noqa: E731
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    lu = _legendre(u, p) if beta % 2 else 1
    lv = _legendre(v, p) if alpha % 2 else 1
    return sign * lu * lv


def relevant_places(*values) -> list:
    """``inf``, 2 and every odd prime dividing a numerator or denominator."""
    primes = {2}
    for a in values:
        q = Fraction(a.raw if isinstance(a, FieldElement) else a)
        primes.update(prime_divisors(q.numerator))
        primes.update(prime_divisors(q.denominator))
    return ["inf"] + sorted(primes)


def _hasse_of_ints(entries: tuple, place) -> int:
    acc = 1
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            acc *= hilbert_symbol(entries[i], entries[j], place)
    return acc


def hasse_invariant(c: GWClass, place) -> int:
    """``prod_{i<j} (a_i, a_j)`` at ``place``."""
    if not isinstance(c.field, Rationals):
        raise FieldMismatch("Hasse invariants are computed over Q")
    return c.hasse(place)


# ---------------------------------------------------------------------------
# equality


def _match_residues(x: Reduced, y: Reduced) -> bool:
    """Entrywise square-class matching; square class is an equivalence, so greedy is exact."""
    if x.hyperbolic_count != y.hyperbolic_count or len(x.residue) != len(y.residue):
        return False
    pool = list(y.residue)
    for a in x.residue:
        for j, b in enumerate(pool):
            if is_square(a / b):
                pool.pop(j)
                break
        else:
            return False
    return True


def gw_equal(x: GWClass, y: GWClass) -> Verdict:
    if x.field != y.field:
        raise FieldMismatch(f"{x.field} vs {y.field}")
    F = x.field
    if x.rank != y.rank:
        return Verdict.NOT_EQUAL
    if x.rank == 0:
        return Verdict.EQUAL
    if isinstance(F, Rationals):
        if x.signature != y.signature:
            return Verdict.NOT_EQUAL
        if not _same_disc(x, y):
            return Verdict.NOT_EQUAL
        if _match_residues(x.reduced(), y.reduced()):
            return Verdict.EQUAL
        places = sorted(set(x.relevant_places()) | set(y.relevant_places()), key=_place_key)
        for pl in places:
            if x.hasse(pl) != y.hasse(pl):
                return Verdict.NOT_EQUAL
        return Verdict.EQUAL
    finite = isinstance(F, PrimeField) or (isinstance(F, Extension) and isinstance(F.base, PrimeField))
    if finite:
        return Verdict.EQUAL if _same_disc(x, y) else Verdict.NOT_EQUAL
    if not F.supports_square_test():
        pool = list(y.diag)
        for a in x.diag:
            if a not in pool:
                return Verdict.UNDECIDED
            pool.remove(a)
        return Verdict.EQUAL
    if not _same_disc(x, y):
        return Verdict.NOT_EQUAL
    if _match_residues(x.reduced(), y.reduced()):
        return Verdict.EQUAL
    return Verdict.UNDECIDED


def _place_key(pl):
    return -1 if pl == "inf" else pl


def _same_disc(x: GWClass, y: GWClass) -> bool:
    dx = functools.reduce(lambda a, b: a * b, x.diag, x.field.one_element)
    dy = functools.reduce(lambda a, b: a * b, y.diag, y.field.one_element)
    return is_square(dx / dy)
