"""Dense univariate polynomials over a finite field.

Polynomials are lists of raw field values, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``). Every function takes the
coefficient field ``F`` explicitly and only uses its raw-level operations
(``add``, ``sub``, ``mul``, ``neg``, ``inv``, ``zero``, ``one``).
"""

from __future__ import annotations

from .errors import DivisionByZero


def trim(F, a):
    a = list(a)
    z = F.zero
    while a and a[-1] == z:
        a.pop()
    return a


def degree(a):
    return len(a) - 1


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(F, out)


def sub(F, a, b):
    out = list(a) + [F.zero] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = F.sub(out[i], c)
    return trim(F, out)


def neg(F, a):
    return [F.neg(c) for c in a]


def scale(F, c, a):
    if c == F.zero:
        return []
    return trim(F, [F.mul(c, x) for x in a])


def mul(F, a, b):
    if not a or not b:
        return []
    z = F.zero
    out = [z] * (len(a) + len(b) - 1)
    fm, fa = F.mul, F.add
    for i, x in enumerate(a):
        if x == z:
            continue
        for j, y in enumerate(b):
            out[i + j] = fa(out[i + j], fm(x, y))
    return trim(F, out)


def divmod_(F, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lead_inv = F.inv(b[-1])
    if len(a) <= db:
        return [], trim(F, a)
    q = [F.zero] * (len(a) - db)
    fm, fs = F.mul, F.sub
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == F.zero:
            continue
        c = fm(c, lead_inv)
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] = fs(a[i - db + j], fm(c, b[j]))
    return trim(F, q), trim(F, a[:db])


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def monic(F, a):
    if not a:
        return []
    return scale(F, F.inv(a[-1]), a)


def gcd(F, a, b):
    a, b = trim(F, a), trim(F, b)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def xgcd(F, a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = trim(F, a), trim(F, b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], s0, t0
    c = F.inv(r0[-1])
    return scale(F, c, r0), scale(F, c, s0), scale(F, c, t0)


def mulmod(F, a, b, m):
    return mod(F, mul(F, a, b), m)


def powmod(F, a, e, m):
    result = [F.one]
    base = mod(F, a, m)
    while e:
        if e & 1:
            result = mulmod(F, result, base, m)
        e >>= 1
        if e:
            base = mulmod(F, base, base, m)
    return mod(F, result, m)


def evaluate(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def from_roots(F, roots):
    out = [F.one]
    for r in roots:
        out = mul(F, out, [F.neg(r), F.one])
    return out
