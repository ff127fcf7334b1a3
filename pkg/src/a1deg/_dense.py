"""Dense univariate polynomial kernels over an abstract field.

Polynomials are lists of raw field values, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  ``K`` is any field object
from :mod:`a1deg.fields`; only its raw-value methods are used here.
"""

from .errors import DivisionByZero


def strip(K, a):
    n = len(a)
    while n and K.is_zero(a[n - 1]):
        n -= 1
    return list(a[:n])


def add(K, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = K.add(out[i], c)
    return strip(K, out)


def neg(K, a):
    return [K.neg(c) for c in a]


def sub(K, a, b):
    return add(K, a, neg(K, b))


def scale(K, a, c):
    if K.is_zero(c):
        return []
    return strip(K, [K.mul(x, c) for x in a])


def shift(a, k, zero):
    return [zero] * k + list(a) if a else []


def mul(K, a, b):
    if not a or not b:
        return []
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if K.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = K.add(out[i + j], K.mul(x, y))
    return strip(K, out)


def divrem(K, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], strip(K, a)
    lead_inv = K.inv(b[-1])
    q = [K.zero] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if K.is_zero(c):
            continue
        c = K.mul(c, lead_inv)
        q[k - db] = c
        for j in range(db + 1):
            a[k - db + j] = K.sub(a[k - db + j], K.mul(c, b[j]))
    return strip(K, q), strip(K, a[:db])


def rem(K, a, b):
    return divrem(K, a, b)[1]


def monic(K, a):
    if not a:
        return []
    return scale(K, a, K.inv(a[-1]))


def gcd(K, a, b):
    a, b = strip(K, a), strip(K, b)
    while b:
        a, b = b, rem(K, a, b)
    return monic(K, a)


def xgcd(K, a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    r0, r1 = strip(K, a), strip(K, b)
    s0, s1 = [K.one_raw], []
    t0, t1 = [], [K.one_raw]
    while r1:
        q, r = divrem(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(K, s0, mul(K, q, s1))
        t0, t1 = t1, sub(K, t0, mul(K, q, t1))
    if not r0:
        return [], [], []
    c = K.inv(r0[-1])
    return scale(K, r0, c), scale(K, s0, c), scale(K, t0, c)


def deriv(K, a):
    return strip(K, [K.mul(K.from_int(i), a[i]) for i in range(1, len(a))])


def evaluate(K, a, x):
    acc = K.zero
    for c in reversed(a):
        acc = K.add(K.mul(acc, x), c)
    return acc


def powmod(K, a, e, m):
    result = [K.one_raw]
    base = rem(K, a, m)
    while e:
        if e & 1:
            result = rem(K, mul(K, result, base), m)
        e >>= 1
        if e:
            base = rem(K, mul(K, base, base), m)
    return result


def power(K, a, e):
    result = [K.one_raw]
    while e:
        if e & 1:
            result = mul(K, result, a)
        e >>= 1
        if e:
            a = mul(K, a, a)
    return result


def sqrt_monic(K, a):
    """Square root of a monic polynomial, or ``None`` if it is not a square.

    Requires characteristic different from 2.  Solves for the root
    coefficient by coefficient from the top degree down, then verifies.
    """
    if not a:
        return []
    deg = len(a) - 1
    if deg % 2:
        return None
    h = deg // 2
    half = K.inv(K.from_int(2))
    root = [K.zero] * (h + 1)
    root[h] = K.one_raw
    for k in range(1, h + 1):
        # coefficient of x^(deg-k) in root^2 must match a[deg-k]
        acc = a[deg - k]
        for i in range(1, k):
            acc = K.sub(acc, K.mul(root[h - i], root[h - k + i]))
        root[h - k] = K.mul(acc, half)
    root = strip(K, root)
    return root if mul(K, root, root) == strip(K, a) else None
