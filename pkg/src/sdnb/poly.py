"""Dense univariate polynomials over an arbitrary finite field object.

A polynomial is a list of field elements, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  Every function takes the
coefficient field ``F`` explicitly; ``F`` only needs ``zero``, ``one``,
``add``, ``sub``, ``neg``, ``mul`` and ``inv``.
"""

from __future__ import annotations

import random
from typing import Any, List, Sequence, Tuple

Poly = List[Any]


def strip(F, a: Sequence) -> Poly:
    a = list(a)
    z = F.zero
    while a and a[-1] == z:
        a.pop()
    return a


def degree(a: Sequence) -> int:
    return len(a) - 1


def add(F, a: Sequence, b: Sequence) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return strip(F, out)


def sub(F, a: Sequence, b: Sequence) -> Poly:
    return add(F, a, [F.neg(c) for c in b])


def scale(F, a: Sequence, c) -> Poly:
    return strip(F, [F.mul(x, c) for x in a])


def mul(F, a: Sequence, b: Sequence) -> Poly:
    if not a or not b:
        return []
    z = F.zero
    out = [z] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == z:
            continue
        for j, y in enumerate(b):
            if y != z:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return strip(F, out)


def divmod_(F, a: Sequence, b: Sequence) -> Tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], strip(F, r)
    lead_inv = F.inv(b[-1])
    z = F.zero
    qt = [z] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c == z:
            continue
        c = F.mul(c, lead_inv)
        qt[k - db] = c
        for j in range(db + 1):
            if b[j] != z:
                r[k - db + j] = F.sub(r[k - db + j], F.mul(c, b[j]))
    return strip(F, qt), strip(F, r[:db])


def mod(F, a: Sequence, b: Sequence) -> Poly:
    return divmod_(F, a, b)[1]


def monic(F, a: Sequence) -> Poly:
    if not a:
        return []
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a: Sequence, b: Sequence) -> Poly:
    a, b = strip(F, a), strip(F, b)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def xgcd(F, a: Sequence, b: Sequence) -> Tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = strip(F, a), strip(F, b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        qt, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, qt, s1))
        t0, t1 = t1, sub(F, t0, mul(F, qt, t1))
    if not r0:
        return [], s0, t0
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def powmod(F, a: Sequence, e: int, m: Sequence) -> Poly:
    result: Poly = [F.one]
    base = mod(F, a, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), m)
    return mod(F, result, m)


def evaluate(F, a: Sequence, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def is_irreducible(F, f: Sequence) -> bool:
    """Ben-Or irreducibility test over ``F`` (field of size ``F.order``)."""
    f = monic(F, strip(F, f))
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [F.zero, F.one]
    h = list(x)
    for _ in range(d // 2):
        h = powmod(F, h, F.order, f)
        if len(gcd(F, f, sub(F, h, x))) > 1:
            return False
    return True


def find_root(F, f: Sequence, seed: int = 0):
    """Deterministic equal-degree splitting: return one root of ``f`` in ``F``.

    ``f`` must split into distinct linear factors over ``F``; a
    ``ValueError`` is raised if it has no root at all.
    """
    g = monic(F, strip(F, f))
    x = [F.zero, F.one]
    # restrict to the product of the linear factors
    g = gcd(F, g, sub(F, powmod(F, x, F.order, g), x))
    if len(g) < 2:
        raise ValueError("polynomial has no root in this field")
    Q = F.order
    # small indices only reach a small subfield, whose elements may all
    # have trace zero; a seeded generator keeps the choice reproducible
    rng = random.Random(f"root:{Q}:{seed}")
    while len(g) > 2:
        delta = F.element(rng.randrange(1, Q))
        if F.p == 2:
            # absolute trace of delta*x, a 0/1-valued splitting polynomial
            t = mod(F, [F.zero, delta], g)
            acc = list(t)
            for _ in range(F.degree_over_prime - 1):
                t = mod(F, mul(F, t, t), g)
                acc = add(F, acc, t)
            h = acc
        else:
            h = sub(F, powmod(F, [delta, F.one], (Q - 1) // 2, g), [F.one])
        d = gcd(F, g, h)
        if 1 < len(d) < len(g):
            other = divmod_(F, g, d)[0]
            g = d if len(d) <= len(other) else monic(F, other)
    return F.neg(F.mul(g[0], F.inv(g[1])))
