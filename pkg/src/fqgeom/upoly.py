"""Univariate polynomials over GF(q): lists of codes, low degree first.

Includes squarefree, distinct-degree and equal-degree (Cantor-Zassenhaus)
factorization, which back root finding for binary forms.
"""

from __future__ import annotations

import random


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1 if a else -1


def add(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(F.add(x, y))
    return trim(out)


def sub(F, a, b):
    return add(F, a, [F.neg(y) for y in b])


def scale(F, a, c):
    if c == 0:
        return []
    return trim([F.mul(c, x) for x in a])


def mul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def divmod_(F, a, b):
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    inv = F.inv(b[-1])
    q = [0] * max(0, len(a) - db)
    r = list(a)
    while len(r) - 1 >= db and r:
        c = F.mul(r[-1], inv)
        shift = len(r) - 1 - db
        q[shift] = c
        for i, bi in enumerate(b):
            if bi:
                r[shift + i] = F.sub(r[shift + i], F.mul(c, bi))
        r = trim(r)
    return trim(q), r


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def monic(F, a):
    a = trim(a)
    if not a:
        return a
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def powmod(F, base, e, m):
    result = [1]
    base = mod(F, base, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        base = mod(F, mul(F, base, base), m)
        e >>= 1
    return result


def derivative(F, a):
    return trim([F.mul(F.from_int(i), c) for i, c in enumerate(a)][1:])


def evaluate(F, a, x):
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _pth_root(F, a):
    p = F.p
    e = F.q // p  # x -> x^(q/p) inverts Frobenius
    return trim([F.pow(a[i], e) for i in range(0, len(a), p)])


def squarefree_factorization(F, f):
    """List of (squarefree factor, multiplicity) with f = prod factor^mult (up to a unit)."""
    f = monic(F, f)
    out = []
    if deg(f) < 1:
        return out
    c = gcd(F, f, derivative(F, f))
    w = divmod_(F, f, c)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(F, w, c)
        fac = divmod_(F, w, y)[0]
        if deg(fac) > 0:
            out.append((monic(F, fac), i))
        w = y
        c = divmod_(F, c, y)[0]
        i += 1
    if deg(c) > 0:
        for g, m in squarefree_factorization(F, _pth_root(F, c)):
            out.append((g, m * F.p))
    return out


def distinct_degree_factorization(F, f):
    """For squarefree monic f: list of (product of all degree-d factors, d)."""
    out = []
    fs = monic(F, f)
    x = [0, 1]
    h = x
    d = 1
    while deg(fs) >= 2 * d:
        h = powmod(F, h, F.q, fs)
        g = gcd(F, fs, sub(F, h, x))
        if deg(g) > 0:
            out.append((g, d))
            fs = divmod_(F, fs, g)[0]
            h = mod(F, h, fs)
        d += 1
    if deg(fs) > 0:
        out.append((fs, deg(fs)))
    return out


def equal_degree_factorization(F, f, d, rng=None):
    """Split a squarefree monic f whose irreducible factors all have degree d."""
    f = monic(F, f)
    n = deg(f)
    if n == d:
        return [f]
    if rng is None:
        rng = random.Random(0x5EED)
    while True:
        a = trim([rng.randrange(F.q) for _ in range(n)])
        if deg(a) < 1:
            continue
        if F.p == 2:
            # trace map of GF(q^d) down to GF(2)
            t = a
            acc = a
            for _ in range(F.k * d - 1):
                t = mod(F, mul(F, t, t), f)
                acc = add(F, acc, t)
            g = gcd(F, acc, f)
        else:
            e = (F.q ** d - 1) // 2
            b = powmod(F, a, e, f)
            g = gcd(F, sub(F, b, [1]), f)
        if 0 < deg(g) < n:
            return (equal_degree_factorization(F, g, d, rng)
                    + equal_degree_factorization(F, divmod_(F, f, g)[0], d, rng))


def factor(F, f):
    """Monic irreducible factors with multiplicities, sorted by (degree, coeffs)."""
    out = []
    for sq, m in squarefree_factorization(F, f):
        for part, d in distinct_degree_factorization(F, sq):
            for g in equal_degree_factorization(F, part, d):
                out.append((g, m))
    out.sort(key=lambda gm: (deg(gm[0]), [F.key(c) for c in reversed(gm[0])], gm[1]))
    return out


def roots(F, f):
    """Roots of f in F with multiplicities, sorted by lexicographic key."""
    out = []
    for sq, m in squarefree_factorization(F, f):
        g = gcd(F, sq, sub(F, powmod(F, [0, 1], F.q, sq), [0, 1]))
        if deg(g) > 0:
            for lin in equal_degree_factorization(F, g, 1):
                out.append((F.neg(lin[0]), m))
    out.sort(key=lambda rm: F.key(rm[0]))
    return out


def from_roots(F, rts):
    out = [1]
    for r in rts:
        out = mul(F, out, [F.neg(r), 1])
    return out
