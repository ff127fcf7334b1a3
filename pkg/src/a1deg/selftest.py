"""Seeded randomized property checks across all modules.

Every property draws its instances from its own ``random.Random`` derived
from the seed, so the report is byte-identical for a fixed seed.
"""

from __future__ import annotations

import random
import shlex
from dataclasses import dataclass, field
from fractions import Fraction

from . import forms
from . import matrix as mx
from .degree import bezoutian, closed_point
from .errors import ReducibleModulus
from .fields import (
    Extension,
    PrimeField,
    RationalFunctionField,
    Rationals,
    is_square,
    square_class_rep,
)
from .forms import SymForm, Verdict, diagonalize, gw_equal, upper_hankel_class
from .poly import Poly, hasse_derivative, horner_basis
from .transfer import (
    cohomological_transfer,
    geometric_transfer,
    omega0,
    scharlau_apply,
    trace_form,
    verify_transfer_identity,
)

SIZES = {"small": 1, "medium": 4}


@dataclass
class PropertyResult:
    name: str
    passed: int = 0
    total: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, detail: str):
        self.total += 1
        if ok:
            self.passed += 1
        elif len(self.failures) < 3:
            self.failures.append(detail)


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def _q(rng, c=5):
    return Fraction(rng.randint(-c, c), rng.randint(1, c))


def _nonzero(rng, F, c=5):
    while True:
        a = F.element(F.random_raw(rng, c) if not isinstance(F, Rationals) else _q(rng, c))
        if not a.is_zero():
            return a


def _rand_poly(rng, F, deg, monic=False, c=3):
    coeffs = [F.random_raw(rng, c) if not isinstance(F, Rationals) else Fraction(rng.randint(-c, c)) for _ in range(deg + 1)]
    if monic:
        coeffs[-1] = F.one_raw
    return Poly(F, coeffs)


def random_point(rng, F, max_deg=4, c=3):
    while True:
        m = _rand_poly(rng, F, rng.randint(1, max_deg), monic=True, c=c)
        try:
            return closed_point(m)
        except ReducibleModulus:
            continue


def random_instance(rng, F, max_deg=4, max_d=4, max_u=3):
    """``(f, p)`` with ``f = u m^d``, ``m`` irreducible and ``m`` not dividing ``u``."""
    p = random_point(rng, F, max_deg)
    while True:
        u = _rand_poly(rng, F, rng.randint(0, max_u))
        if u and (u % p.m):
            break
    d = rng.randint(1, max_d)
    return u * p.m**d, p, u, d


def _cli(*args) -> str:
    return "a1deg " + " ".join(shlex.quote(str(a)) for a in args)


# ---------------------------------------------------------------------------
# properties


def prop_field_axioms(rng, scale, res):
    fields = [Rationals(), PrimeField(7), RationalFunctionField(5), closed_point(Poly(Rationals(), [1, 0, 1]), "i").L]
    for _ in range(20 * scale):
        for F in fields:
            x, y, z = (F.element(F.random_raw(rng)) for _ in range(3))
            ok = (x * y) * z == x * (y * z) and x * (y + z) == x * y + x * z
            if not x.is_zero():
                ok = ok and x * x.inverse() == F.one_element
            res.record(ok, f"field {F}: x={x}, y={y}, z={z}")


def prop_square_classes(rng, scale, res):
    fields = [Rationals(), PrimeField(5), PrimeField(11), RationalFunctionField(3)]
    for _ in range(8 * scale):
        for F in fields:
            a, n = _nonzero(rng, F), _nonzero(rng, F)
            rep = square_class_rep(n)
            ok = (
                is_square(a * a)
                and is_square(a * a * n) == is_square(n)
                and square_class_rep(rep) == rep
                and is_square(n / rep)
            )
            res.record(ok, f"field {F}: a={a}, n={n}")


def prop_taylor(rng, scale, res):
    for _ in range(20 * scale):
        F = rng.choice([Rationals(), PrimeField(5), PrimeField(3)])
        u = _rand_poly(rng, F, rng.randint(0, 6))
        t = F.element(F.random_raw(rng))
        d = rng.randint(1, 6)
        lin = Poly(F, [-t, F.one_element])
        acc = Poly(F)
        for i in range(d):
            acc = acc + hasse_derivative(u, i)(t) * lin**i
        res.record((acc - u) % lin**d == Poly(F), f"field {F}: u={u}, t={t}, d={d}")


def prop_horner(rng, scale, res):
    for _ in range(20 * scale):
        F = rng.choice([Rationals(), PrimeField(7)])
        n = rng.randint(1, 5)
        m = _rand_poly(rng, F, n, monic=True)
        L = Extension(F, m, "a", check=False)
        hor = horner_basis(m)
        x = Poly.x(F)
        ok = all(
            scharlau_apply(L, L.from_coords((x**i * hor[j]).coeffs)) == (1 if i == j else 0)
            for i in range(n)
            for j in range(n)
        )
        g = _rand_poly(rng, F, rng.randint(0, 2 * n))
        expansion = Poly(F)
        for i in range(n):
            expansion = expansion + hor[i] * scharlau_apply(L, L.from_coords((x**i * g % m).coeffs))
        ok = ok and (expansion - g) % m == Poly(F)
        # (m(X) - m(Y))/(X - Y) = sum_i X^i Hor_{n-1-i}(Y)
        B = bezoutian(m)
        ok = ok and all(B.coeffs[i][j] == hor[i].coeff(j) for i in range(n) for j in range(n))
        res.record(ok, f"field {F}: m={m}, g={g}")


def prop_bezoutian_symmetry(rng, scale, res):
    for _ in range(20 * scale):
        F = rng.choice([Rationals(), PrimeField(5)])
        f = _rand_poly(rng, F, rng.randint(1, 5))
        g = _rand_poly(rng, F, rng.randint(0, 5))
        if not f and not g:
            continue
        C = bezoutian(f, g).coeffs
        res.record(mx.is_symmetric(C), f"field {F}: f={f}, g={g}")


def prop_upper_hankel(rng, scale, res):
    for _ in range(20 * scale):
        F = rng.choice([Rationals(), PrimeField(5), PrimeField(7)])
        d = rng.randint(1, 6)
        s = [F.element(F.random_raw(rng)) for _ in range(d - 1)] + [_nonzero(rng, F)]
        form = SymForm.upper_hankel(s)
        ok = gw_equal(upper_hankel_class(s), diagonalize(form)) == Verdict.EQUAL
        res.record(ok, f"field {F}: s=({', '.join(map(str, s))})")


def prop_block_hankel(rng, scale, res):
    Q = Rationals()
    for _ in range(20 * scale):
        n, d = rng.randint(1, 3), rng.randint(1, 4)
        blocks = []
        for k in range(d):
            h = [Q(rng.randint(-3, 3)) for _ in range(2 * n - 1)]
            blocks.append([[h[a + b] for b in range(n)] for a in range(n)])
        form = SymForm.block_hankel(blocks)
        if form.det().is_zero():
            continue
        ok = gw_equal(forms.block_hankel_diagonalize(form), diagonalize(form)) == Verdict.EQUAL
        res.record(ok, f"n={n}, d={d}, blocks={[[str(c) for c in A[0]] for A in blocks]}")


def prop_hilbert(rng, scale, res):
    for _ in range(40 * scale):
        a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 10**4), rng.randint(1, 10**4))
        b = Fraction(rng.choice([-1, 1]) * rng.randint(1, 10**4), rng.randint(1, 10**4))
        places = forms.relevant_places(a, b)
        prod = 1
        for pl in places:
            prod *= forms.hilbert_symbol(a, b, pl)
        res.record(prod == 1, f"a={a}, b={b}: product over {places} is {prod}")


def prop_transfer_identity(rng, scale, res):
    for F in [Rationals(), PrimeField(3), PrimeField(5), PrimeField(7)]:
        for _ in range(5 * scale):
            f, p, _, _ = random_instance(rng, F)
            rep = verify_transfer_identity(f, p)
            ok = (
                rep.verdict_geometric == Verdict.EQUAL
                and rep.verdict_cohomological == Verdict.EQUAL
                and rep.block_antidiagonal_check
                and rep.determinant_check
            )
            res.record(ok, _cli("verify", "--field", F, "--poly", f, "--point", p.m))


def prop_inseparable(rng, scale, res):
    for _ in range(3 * scale):
        q = rng.choice([3, 5])
        F = RationalFunctionField(q)
        m = Poly(F, [F.neg(F.gen.raw)] + [F.zero] * (q - 1) + [F.one_raw])
        p = closed_point(m)
        while True:
            u = _rand_poly(rng, F, rng.randint(0, 2))
            if u and (u % m):
                break
        d = rng.randint(1, 3)
        f = u * m**d
        rep = verify_transfer_identity(f, p)
        ok = (
            Verdict.NOT_EQUAL not in (rep.verdict_geometric, rep.verdict_cohomological)
            and rep.lhs.rank == q * d
            and rep.ranks["lift"] == d
            and rep.ranks["naive_base_change"] == q * d
        )
        res.record(ok, _cli("verify", "--field", F, "--poly", f, "--point", m))


def prop_trace_identities(rng, scale, res):
    for _ in range(5 * scale):
        F = rng.choice([Rationals(), PrimeField(5), PrimeField(7)])
        p = random_point(rng, F, 3)
        L = p.L
        a = _nonzero(rng, L, 3)
        tr = diagonalize(trace_form(L, a))
        beta = SymForm.diagonal(L, [a])
        coh = diagonalize(cohomological_transfer(beta, p))
        geo = diagonalize(geometric_transfer(beta.scaled(p.m.derivative()(p.t))))
        ok = (
            omega0(p).value_at_t == p.m.derivative()(p.t)
            and gw_equal(tr, coh) == Verdict.EQUAL
            and gw_equal(coh, geo) == Verdict.EQUAL
        )
        res.record(ok, _cli("trace-form", "--field", F, "--modulus", p.m, "--scale", Poly(F, list(a.raw))))


PROPERTIES = [
    ("field_axioms", prop_field_axioms),
    ("square_classes", prop_square_classes),
    ("hasse_taylor", prop_taylor),
    ("horner_duality", prop_horner),
    ("bezoutian_symmetry", prop_bezoutian_symmetry),
    ("upper_hankel_class", prop_upper_hankel),
    ("block_hankel_splitting", prop_block_hankel),
    ("hilbert_reciprocity", prop_hilbert),
    ("transfer_identity", prop_transfer_identity),
    ("inseparable_points", prop_inseparable),
    ("trace_identities", prop_trace_identities),
]


def run_selftest(seed: int = 1, size: str = "small", only: list[str] | None = None) -> tuple[bool, str]:
    """Run the property suite; return ``(all_passed, report_text)``."""
    scale = SIZES[size]
    lines = [f"selftest seed={seed} size={size}"]
    ok_all, total = True, 0
    for name, prop in PROPERTIES:
        if only and name not in only:
            continue
        res = PropertyResult(name)
        try:
            prop(_rng(seed, name), scale, res)
        except Exception as exc:  # a crash is a failure of that property
            res.record(False, f"raised {type(exc).__name__}: {exc}")
        total += res.total
        status = "ok" if res.passed == res.total else "FAIL"
        lines.append(f"{name}: {res.passed}/{res.total} {status}")
        for detail in res.failures:
            lines.append(f"  counterexample: {detail}")
        if res.passed != res.total:
            ok_all = False
            lines.append(f"  rerun: {_cli('selftest', '--seed', seed, '--size', size, '--only', name)}")
    lines.append(f"total instances: {total}")
    lines.append("result: " + ("pass" if ok_all else "FAIL"))
    return ok_all, "\n".join(lines) + "\n"
