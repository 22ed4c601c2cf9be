"""Finite field arithmetic: the base field F_q and relative extensions F_{q^n}.

``GF`` models F_q = F_p[y]/(g) with elements encoded as integers in
``[0, q)`` whose base-p digits are the power-basis coordinates (little
endian).  ``ExtField`` models F_{q^n} = F_q[x]/(f) with elements stored as
length-n tuples of base-field integers.  Both share the generic algorithms
in ``_FieldAlgorithms`` (powering, square roots, elements of given order),
so the polynomial helpers in :mod:`sdnb.poly` work over either.

Moduli are chosen deterministically as the smallest monic irreducible
polynomial when the coefficient tuple ``(c_0, ..., c_{d-1})`` is read as a
base-|F| integer with ``c_0`` least significant.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint, isprime, perfect_power

from . import poly
from .errors import DomainError, InternalError

# log/exp tables are built for prime-power fields up to this size
TABLE_LIMIT = 1 << 16
# dense addition table for odd prime powers up to this size
ADD_TABLE_LIMIT = 1024


def prime_power(q: int) -> Tuple[int, int]:
    """Return ``(p, r)`` with ``q == p**r``; raise ``DomainError`` otherwise."""
    if q < 2:
        raise DomainError(f"{q} is not a prime power")
    if isprime(q):
        return int(q), 1
    pp = perfect_power(q)
    if pp:
        base, e = pp
        f = factorint(base)
        if len(f) == 1:
            (p, k), = f.items()
            return int(p), int(k * e)
    raise DomainError(f"{q} is not a prime power")


def lowest_irreducible(F, d: int) -> tuple:
    """Smallest monic irreducible of degree ``d`` over ``F`` (see module doc)."""
    Q = F.order
    k = 0
    while True:
        tail = []
        t = k
        for _ in range(d):
            tail.append(F.element(t % Q))
            t //= Q
        if t:
            raise InternalError(f"no irreducible polynomial of degree {d} found")
        f = tail + [F.one]
        if tail[0] != F.zero or d == 1:
            if poly.is_irreducible(F, f):
                return tuple(f)
        k += 1


class _FieldAlgorithms:
    """Algorithms written purely in terms of the basic field operations."""

    order: int
    p: int

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def is_square(self, a) -> bool:
        if a == self.zero or self.p == 2:
            return True
        return self.pow(a, (self.order - 1) // 2) == self.one

    def _nonresidue(self):
        cached = getattr(self, "_nonres", None)
        if cached is not None:
            return cached
        minus_one = self.neg(self.one)
        for k in range(1, self.order):
            z = self.element(k)
            if self.pow(z, (self.order - 1) // 2) == minus_one:
                self._nonres = z
                return z
        raise InternalError("no quadratic non-residue found")

    def sqrt(self, a):
        """Canonical square root of ``a``, or ``None`` if ``a`` is not a square.

        Of the two roots the one with the lexicographically smaller
        coordinate vector is returned.
        """
        if a == self.zero:
            return self.zero
        Q = self.order
        if self.p == 2:
            return self.pow(a, Q // 2)
        if not self.is_square(a):
            return None
        s, t = 0, Q - 1
        while t % 2 == 0:
            s, t = s + 1, t // 2
        z = self.pow(self._nonresidue(), t)
        x = self.pow(a, (t + 1) // 2)
        b = self.pow(a, t)
        m = s
        while b != self.one:
            i, b2 = 0, b
            while b2 != self.one:
                b2 = self.mul(b2, b2)
                i += 1
            c = z
            for _ in range(m - i - 1):
                c = self.mul(c, c)
            x = self.mul(x, c)
            z = self.mul(c, c)
            b = self.mul(b, z)
            m = i
        if self.mul(x, x) != a:
            raise InternalError("Tonelli-Shanks produced a wrong root")
        y = self.neg(x)
        return x if self.coords(x) <= self.coords(y) else y

    def multiplicative_order(self, a) -> int:
        if a == self.zero:
            raise DomainError("zero has no multiplicative order")
        d = self.order - 1
        for ell, e in factorint(d).items():
            for _ in range(e):
                if self.pow(a, d // ell) == self.one:
                    d //= ell
                else:
                    break
        return d

    def element_of_order(self, d: int):
        """Deterministically chosen element of multiplicative order exactly ``d``."""
        if d < 1 or (self.order - 1) % d:
            raise DomainError(f"{d} does not divide {self.order - 1}")
        if d == 1:
            return self.one
        primes = list(factorint(d))
        cof = (self.order - 1) // d
        for k in range(1, self.order):
            g = self.pow(self.element(k), cof)
            if all(self.pow(g, d // ell) != self.one for ell in primes):
                return g
        raise InternalError(f"no element of order {d}")

    def random(self, rng: random.Random):
        return self.element(rng.randrange(self.order))


class GF(_FieldAlgorithms):
    """The field F_q, q = p**r, with integer-encoded elements."""

    def __init__(self, p: int, r: int = 1, modulus: Optional[Sequence[int]] = None):
        if p < 2 or not isprime(p):
            raise DomainError(f"characteristic {p} is not prime")
        if r < 1:
            raise DomainError("degree must be >= 1")
        self.p, self.r = p, r
        self.q = self.order = p**r
        self.degree_over_prime = r
        self.zero, self.one = 0, 1
        if r == 1:
            self.modulus = (0, 1)
        else:
            Fp = prime_field(p)
            if modulus is None:
                modulus = lowest_irreducible(Fp, r)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != r + 1 or modulus[-1] != 1:
                raise DomainError("modulus must be monic of degree r")
            if not poly.is_irreducible(Fp, list(modulus)):
                raise DomainError(f"modulus {modulus} is reducible over F_{p}")
            self.modulus = modulus
        self._pows = [p**i for i in range(r)]
        self._log = self._exp = self._add = None
        if r > 1 and self.q <= TABLE_LIMIT:
            self._build_tables()

    def __repr__(self):
        return f"GF({self.q})"

    # -- encoding -------------------------------------------------------
    def element(self, k: int) -> int:
        return k % self.q

    def coords(self, a: int) -> Tuple[int, ...]:
        out = []
        for _ in range(self.r):
            a, c = divmod(a, self.p)
            out.append(c)
        return tuple(out)

    def from_coords(self, cs: Sequence[int]) -> int:
        if len(cs) != self.r:
            raise DomainError(f"expected {self.r} coordinates, got {len(cs)}")
        return sum((int(c) % self.p) * w for c, w in zip(cs, self._pows))

    def from_int(self, k: int) -> int:
        """Image of the integer ``k`` under Z -> F_p -> F_q."""
        return k % self.p

    # -- slow polynomial-basis arithmetic (tables are built from it) ----
    def _mul_slow(self, a: int, b: int) -> int:
        p, r = self.p, self.r
        ca, cb = self.coords(a), self.coords(b)
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        f = self.modulus
        for k in range(2 * r - 2, r - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(r):
                    if f[j]:
                        prod[k - r + j] -= c * f[j]
        return self.from_coords([c % p for c in prod[:r]])

    def _add_slow(self, a: int, b: int) -> int:
        p = self.p
        out, w = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * w
            w *= p
        return out

    def _build_tables(self):
        q = self.q
        gen = None
        for g in range(2, q):
            d = q - 1
            x = g
            ok = True
            for ell in factorint(d):
                e, y, base = d // ell, 1, x
                while e:
                    if e & 1:
                        y = self._mul_slow(y, base)
                    e >>= 1
                    if e:
                        base = self._mul_slow(base, base)
                if y == 1:
                    ok = False
                    break
            if ok:
                gen = g
                break
        if gen is None:
            raise InternalError("no primitive element")
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for k in range(q - 1):
            exp[k] = x
            log[x] = k
            x = self._mul_slow(x, gen)
        exp[q - 1:] = exp[: q - 1]
        self._exp, self._log = exp, log
        self._exp_list, self._log_list = exp.tolist(), log.tolist()
        if self.p != 2 and q <= ADD_TABLE_LIMIT:
            digits = np.array([self.coords(a) for a in range(q)], dtype=np.int64)
            s = (digits[:, None, :] + digits[None, :, :]) % self.p
            self._add = (s * np.array(self._pows, dtype=np.int64)).sum(axis=2)
            self._add_list = self._add.tolist()
            neg = [0] * q
            for a in range(q):
                neg[a] = self._add_list[a].index(0)
            self._neg_list = neg

    # -- scalar arithmetic ---------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add_list[a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.r == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        if self._add is not None:
            return self._neg_list[a]
        return self.from_coords([(-c) % self.p for c in self.coords(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a * b) % self.p
        if not a or not b:
            return 0
        if self._exp is not None:
            return self._exp_list[self._log_list[a] + self._log_list[b]]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("inversion of zero")
        if self.r == 1:
            return pow(a, -1, self.p)
        if self._exp is not None:
            return self._exp_list[(self.q - 1 - self._log_list[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if self.r == 1:
            if a % self.p == 0:
                if e < 0:
                    raise DomainError("inversion of zero")
                return 0 if e else 1
            return pow(a, e, self.p)
        if self._exp is not None:
            if a == 0:
                if e < 0:
                    raise DomainError("inversion of zero")
                return 0 if e else 1
            return self._exp_list[(self._log_list[a] * e) % (self.q - 1)]
        return super().pow(a, e)

    # -- vectorised arithmetic on integer numpy arrays -----------------
    @property
    def vectorized(self) -> bool:
        return self.r == 1 or self._exp is not None

    def _need_tables(self):
        if not self.vectorized:
            raise DomainError(f"vector arithmetic unsupported for q={self.q}")

    def vadd(self, a, b):
        if self.r == 1:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self._add is not None:
            return self._add[a, b]
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self._pows:
            out += (((a // w) % self.p + (b // w) % self.p) % self.p) * w
        return out

    def vneg(self, a):
        if self.r == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        out = np.zeros(np.shape(a), dtype=np.int64)
        for w in self._pows:
            out += ((-((a // w) % self.p)) % self.p) * w
        return out

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.r == 1:
            return (a * b) % self.p
        self._need_tables()
        a = np.asarray(a)
        b = np.asarray(b)
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vsum(self, a, axis: int):
        a = np.asarray(a)
        if self.r == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        a = np.moveaxis(a, axis, 0)
        acc = a[0]
        for k in range(1, a.shape[0]):
            acc = self.vadd(acc, a[k])
        return acc


class ExtField(_FieldAlgorithms):
    """F_{q^n} as F_q[x]/(f) for a monic irreducible f of degree n over F_q."""

    def __init__(self, base: GF, n: int, modulus: Optional[Sequence[int]] = None):
        if n < 1:
            raise DomainError("extension degree must be >= 1")
        self.base = base
        self.n = n
        self.p = base.p
        self.q = base.q
        self.order = base.q**n
        self.degree_over_prime = base.r * n
        self.zero = (0,) * n
        self.one = (1,) + (0,) * (n - 1)
        if modulus is None:
            modulus = lowest_irreducible(base, n)
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise DomainError("modulus must be monic of degree n")
        if not poly.is_irreducible(base, list(modulus)):
            raise DomainError(f"modulus {modulus} is reducible over F_{base.q}")
        self.modulus = modulus
        self._low = [(j, c) for j, c in enumerate(modulus[:n]) if c]
        self._prime = base.r == 1
        self._bits = (n * (base.p - 1) ** 2).bit_length() + 1
        self._frob_images: Dict[int, List[tuple]] = {}
        self._trace_vec: Optional[List[int]] = None

    def __repr__(self):
        return f"ExtField(q={self.q}, n={self.n})"

    # -- encoding -------------------------------------------------------
    def element(self, k: int) -> tuple:
        out = []
        for _ in range(self.n):
            k, c = divmod(k, self.q)
            out.append(c)
        return tuple(out)

    def coords(self, a) -> Tuple[int, ...]:
        return tuple(c for x in a for c in self.base.coords(x))

    def from_base(self, c: int) -> tuple:
        return (c,) + (0,) * (self.n - 1)

    def is_base(self, a) -> bool:
        return all(c == 0 for c in a[1:])

    def gen(self) -> tuple:
        if self.n == 1:
            return self.from_base(self.base.neg(self.modulus[0]))
        return (0, 1) + (0,) * (self.n - 2)

    def check(self, a) -> tuple:
        a = tuple(int(c) for c in a)
        if len(a) != self.n or any(not 0 <= c < self.q for c in a):
            raise DomainError(f"{a} is not an element of {self!r}")
        return a

    # -- arithmetic ----------------------------------------------------
    def add(self, a, b):
        if self._prime:
            p = self.p
            return tuple((x + y) % p for x, y in zip(a, b))
        F = self.base
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self._prime:
            p = self.p
            return tuple((x - y) % p for x, y in zip(a, b))
        F = self.base
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        F = self.base
        return tuple(F.neg(x) for x in a)

    def smul(self, c: int, a):
        """Multiply ``a`` by the base-field scalar ``c``."""
        F = self.base
        return tuple(F.mul(c, x) for x in a)

    def mul(self, a, b):
        n = self.n
        if self._prime:
            p, bits = self.p, self._bits
            A = 0
            for c in reversed(a):
                A = (A << bits) | c
            B = 0
            for c in reversed(b):
                B = (B << bits) | c
            C = A * B
            mask = (1 << bits) - 1
            prod = []
            for _ in range(2 * n - 1):
                prod.append(C & mask)
                C >>= bits
            for k in range(2 * n - 2, n - 1, -1):
                c = prod[k] % p
                if c:
                    for j, fj in self._low:
                        prod[k - n + j] -= c * fj
            return tuple(c % p for c in prod[:n])
        F = self.base
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = F.add(prod[i + j], F.mul(x, y))
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                for j, fj in self._low:
                    prod[k - n + j] = F.sub(prod[k - n + j], F.mul(c, fj))
        return tuple(prod[:n])

    def inv(self, a):
        if a == self.zero:
            raise DomainError("inversion of zero")
        F = self.base
        g, s, _ = poly.xgcd(F, list(a), list(self.modulus))
        if len(g) != 1:
            raise InternalError("modulus is not irreducible")
        s = list(s) + [0] * (self.n - len(s))
        return tuple(s)

    # -- Galois structure ----------------------------------------------
    def _images(self, k: int) -> List[tuple]:
        """Images of the power basis x^j under the q^k-power map."""
        k %= self.n
        if k not in self._frob_images:
            if k == 0:
                imgs = []
                for j in range(self.n):
                    v = [0] * self.n
                    v[j] = 1
                    imgs.append(tuple(v))
            else:
                if k == 1:
                    xk = self.pow(self.gen(), self.q)
                else:
                    xk = self.frobenius(self._images(k - 1)[1], 1)
                imgs = [self.one]
                for _ in range(1, self.n):
                    imgs.append(self.mul(imgs[-1], xk))
            self._frob_images[k] = imgs
        return self._frob_images[k]

    def frobenius(self, a, k: int = 1):
        """Return ``a ** (q ** k)`` via the precomputed F_q-linear map."""
        imgs = self._images(k)
        n = self.n
        if self._prime:
            p = self.p
            out = [0] * n
            for c, row in zip(a, imgs):
                if c:
                    for i in range(n):
                        out[i] += c * row[i]
            return tuple(x % p for x in out)
        F = self.base
        out = [0] * n
        for c, row in zip(a, imgs):
            if c:
                for i in range(n):
                    if row[i]:
                        out[i] = F.add(out[i], F.mul(c, row[i]))
        return tuple(out)

    def conjugates(self, a) -> List[tuple]:
        return [self.frobenius(a, k) for k in range(self.n)]

    def trace(self, a) -> int:
        """Relative trace to F_q, returned as a base-field element."""
        if self._trace_vec is None:
            F = self.base
            vec = []
            for j in range(self.n):
                acc = self.zero
                for k in range(self.n):
                    acc = self.add(acc, self._images(k)[j])
                if not self.is_base(acc):
                    raise InternalError("trace left the base field")
                vec.append(acc[0])
            self._trace_vec = vec
        F = self.base
        if self._prime:
            return sum(c * t for c, t in zip(a, self._trace_vec)) % self.p
        acc = 0
        for c, t in zip(a, self._trace_vec):
            if c and t:
                acc = F.add(acc, F.mul(c, t))
        return acc

    def is_normal(self, a) -> bool:
        """gcd(X^n - 1, sum_i a^{q^i} X^i) == 1 over F_{q^n}[X]."""
        if a == self.zero:
            return False
        xn1 = [self.neg(self.one)] + [self.zero] * (self.n - 1) + [self.one]
        g = poly.gcd(self, xn1, self.conjugates(a))
        return len(g) == 1

    def find_normal_element(self, seed: int = 0):
        """Deterministic pseudo-random search for a normal element."""
        rng = random.Random(f"normal:{self.q}:{self.n}:{seed}")
        for _ in range(64 * self.n):
            a = self.random(rng)
            if self.is_normal(a):
                return a
        raise InternalError(f"no normal element after {64 * self.n} trials")


@lru_cache(maxsize=None)
def prime_field(p: int) -> GF:
    return GF(p, 1)


@lru_cache(maxsize=None)
def base_field(q: int) -> GF:
    p, r = prime_power(q)
    return GF(p, r)


@lru_cache(maxsize=None)
def extension(q: int, n: int) -> ExtField:
    return ExtField(base_field(q), n)


def frobenius(a, E: ExtField, k: int = 1):
    return E.frobenius(a, k)


def trace_to_base(a, E: ExtField):
    return E.trace(a)


def sqrt(a, F):
    return F.sqrt(a)


def element_of_order(d: int, F):
    return F.element_of_order(d)


def find_normal_element(E: ExtField, seed: int = 0):
    return E.find_normal_element(seed)
