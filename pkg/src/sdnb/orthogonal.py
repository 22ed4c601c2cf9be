"""The orthogonal circulant group O(n, q) = {v in F_q[G] : v * conj(v) = 1}.

Every element has a stable integer index in [0, |O|), so the group can be
split into contiguous shards and enumerated in numpy batches.

Semi-simple case: O is a product of cyclic groups, one per self-paired
class (order q^c + 1), one per pair of paired classes (order q^d - 1),
and a sign factor of order 2 when q is odd.  An index is a mixed-radix
number whose last digit runs fastest.

Ramified odd case: v = sum v_k (X - 1)^k with v_0 = +-1, free odd
coefficients and even coefficients forced by a quadratic recurrence.
The index is the sign digit followed by v_1, v_3, ... in base q.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, List, Optional, Sequence

import numpy as np

from .errors import DomainError, InternalError, NoSdnbError, UnsupportedCaseError
from .fields import GF, base_field, prime_power
from .fourier import FourierCtx
from .group_algebra import GaElement, batch_is_orthogonal, batch_mul


class Case(enum.Enum):
    SEMISIMPLE = "semisimple"
    RAMIFIED_ODD = "ramified"
    RAMIFIED_EVEN_N2 = "ramified-even-2"


@dataclass
class CyclicFactor:
    label: str
    order: int
    generator: GaElement
    table: np.ndarray = field(repr=False)  # table[k] = generator^k


def _power_table(h: GaElement, order: int) -> np.ndarray:
    rows = np.zeros((order, h.n), dtype=np.int64)
    acc = GaElement.one(h.F, h.n)
    for k in range(order):
        rows[k] = acc.coeffs
        acc = acc * h
    if acc != GaElement.one(h.F, h.n):
        raise InternalError(f"generator order is not {order}")
    return rows


class GroupSpec:
    """Index-addressable description of O(n, q)."""

    def __init__(self, q: int, n: int):
        p, _ = prime_power(q)
        if n < 1:
            raise DomainError("n must be positive")
        self.q, self.n, self.p = q, n, p
        self.F: GF = base_field(q)
        if n % 2 == 0:
            if n == 2 and p == 2:
                self.case = Case.RAMIFIED_EVEN_N2
                self.cardinality = q
                return
            if p == 2 and n % 4 == 2:
                raise UnsupportedCaseError(f"n={n} is a mixed degree for q={q}")
            raise NoSdnbError(f"no SDNB exists for q={q}, n={n}")
        if n % p:
            self.case = Case.SEMISIMPLE
            self._init_semisimple()
            return
        e = n
        while e % p == 0:
            e //= p
        if e != 1:
            raise UnsupportedCaseError(f"n={n} is a mixed degree for q={q}")
        self.case = Case.RAMIFIED_ODD
        self.free = (n - 1) // 2
        self.cardinality = 2 * q**self.free
        self._init_ramified()

    # -- semi-simple ------------------------------------------------------
    def _init_semisimple(self):
        q, n, F = self.q, self.n, self.F
        self.factors: List[CyclicFactor] = []
        if q % 2:
            minus = GaElement.constant(F, n, F.neg(1))
            self.factors.append(CyclicFactor("sign", 2, minus, _power_table(minus, 2)))
        if n == 1:
            self.cardinality = 2 if q % 2 else 1
            return
        fc = FourierCtx(q, n)
        Em, decomp = fc.E, fc.decomposition
        self.fourier = fc
        for c in decomp.self_paired:
            order = q ** (c.size // 2) + 1
            g = Em.element_of_order(order)
            vals = [Em.one] * n
            for k, t in enumerate(c.members):
                vals[t] = Em.frobenius(g, k)
            h = fc.inverse(vals)
            self.factors.append(CyclicFactor(f"self-paired {c.rep}", order, h, _power_table(h, order)))
        for c in decomp.paired_canonical:
            order = q**c.size - 1
            g = Em.element_of_order(order)
            vals = [Em.one] * n
            for k, t in enumerate(c.members):
                vals[t] = Em.frobenius(g, k)
                vals[(n - t) % n] = Em.inv(vals[t])
            h = fc.inverse(vals)
            self.factors.append(
                CyclicFactor(f"paired {c.rep}/{c.partner}", order, h, _power_table(h, order))
            )
        card = 1
        for f in self.factors:
            card *= f.order
        self.cardinality = card
        if card != predicted_cardinality(q, n):
            raise InternalError("group order disagrees with the class census")

    def _digits(self, idx: np.ndarray) -> List[np.ndarray]:
        out = []
        rest = idx.copy()
        for f in reversed(self.factors):
            out.append(rest % f.order)
            rest //= f.order
        return out[::-1]

    # -- ramified odd -----------------------------------------------------
    def _init_ramified(self):
        p, n, F = self.p, self.n, self.F
        # binom[a][b] = C(a, b) mod p, needed for C(n - k, l)
        self._binom = [[comb(a, b) % p for b in range(n + 1)] for a in range(n + 1)]
        # (X - 1)^k = sum_j C(k, j) (-1)^{k-j} X^j
        basis = np.zeros((n, n), dtype=np.int64)
        for k in range(n):
            for j in range(k + 1):
                c = self._binom[k][j]
                basis[k, j] = F.from_int(c) if (k - j) % 2 == 0 else F.neg(F.from_int(c))
        self._to_standard = basis
        self._half_neg_inv = F.neg(F.inv(F.from_int(2)))

    def _ramified_coeffs(self, idx: np.ndarray) -> np.ndarray:
        """Coefficients (B, n) in the (X - 1)-power basis."""
        F, n, q, p = self.F, self.n, self.q, self.p
        B = idx.shape[0]
        v = np.zeros((B, n), dtype=np.int64)
        span = q**self.free
        sign = idx // span
        rest = idx % span
        v[:, 0] = np.where(sign == 0, 1, F.neg(1))
        for i in range(self.free, 0, -1):
            v[:, 2 * i - 1] = rest % q
            rest //= q
        for i in range(1, self.free + 1):
            S = np.zeros(B, dtype=np.int64)
            for j in range(1, 2 * i + 1):
                for k in range(j + 1):
                    if j == 2 * i and k in (0, 2 * i):
                        continue  # the two v_0 v_{2i} terms
                    c = self._binom[n - k][2 * i - j]
                    if c == 0:
                        continue
                    c = F.from_int(c) if k % 2 == 0 else F.neg(F.from_int(c))
                    term = F.vmul(F.vmul(v[:, k], v[:, j - k]), c)
                    S = F.vadd(S, term)
            # v_0 = v_0^{-1}, so v_{2i} = -S v_0 / 2
            v[:, 2 * i] = F.vmul(F.vmul(S, v[:, 0]), self._half_neg_inv)
        return v

    def _ramified_standard(self, v: np.ndarray) -> np.ndarray:
        F = self.F
        if F.r == 1:
            return (v @ self._to_standard) % F.p
        prod = F.vmul(v[:, :, None], self._to_standard[None, :, :])
        return F.vsum(prod, axis=1)

    # -- public -----------------------------------------------------------
    def batch(self, start: int, stop: int, check: bool = True) -> np.ndarray:
        """Standard-basis coefficients (stop - start, n) of elements start..stop-1."""
        if not 0 <= start <= stop <= self.cardinality:
            raise DomainError(f"index range [{start}, {stop}) outside [0, {self.cardinality})")
        idx = np.arange(start, stop, dtype=np.int64)
        if self.case is Case.RAMIFIED_EVEN_N2:
            out = np.stack([idx, self.F.vadd(idx, np.ones_like(idx))], axis=1)
        elif self.case is Case.RAMIFIED_ODD:
            out = self._ramified_standard(self._ramified_coeffs(idx))
        else:
            out = np.zeros((len(idx), self.n), dtype=np.int64)
            out[:, 0] = 1
            for f, d in zip(self.factors, self._digits(idx)):
                out = batch_mul(self.F, out, f.table[d])
        if check and len(out) and not batch_is_orthogonal(self.F, out).all():
            raise InternalError("enumerated element is not orthogonal")
        return out

    def element(self, index: int) -> GaElement:
        return GaElement.make(self.F, self.batch(index, index + 1)[0])

    def iter_batches(self, start: int = 0, stop: Optional[int] = None, size: int = 4096):
        stop = self.cardinality if stop is None else stop
        for a in range(start, stop, size):
            b = min(a + size, stop)
            yield a, self.batch(a, b)

    def __len__(self) -> int:
        return self.cardinality

    def __iter__(self) -> Iterator[GaElement]:
        for _, rows in self.iter_batches():
            for row in rows:
                yield GaElement.make(self.F, row)


def group_spec(q: int, n: int) -> GroupSpec:
    return GroupSpec(q, n)


def predicted_cardinality(q: int, n: int) -> int:
    """|O(n, q)| from the class census (semi-simple) or 2 q^{(n-1)/2} (ramified odd)."""
    p, _ = prime_power(q)
    if n == 2 and p == 2:
        return q
    if n % 2 == 0:
        if p == 2 and n % 4 == 2:
            raise UnsupportedCaseError(f"n={n} is a mixed degree for q={q}")
        raise NoSdnbError(f"no SDNB exists for q={q}, n={n}")
    if n % p == 0:
        e = n
        while e % p == 0:
            e //= p
        if e != 1:
            raise UnsupportedCaseError(f"n={n} is a mixed degree for q={q}")
        return 2 * q ** ((n - 1) // 2)
    from .cyclotomic import decompose

    card = 2 if q % 2 else 1
    if n == 1:
        return card
    _, _, cs, ds = decompose(n, q).census()
    for c in cs:
        card *= q**c + 1
    for d in ds:
        card *= q**d - 1
    return card


def enumerate_orthogonal(q: int, n: int) -> Iterator[GaElement]:
    return iter(GroupSpec(q, n))


def enumerate_semisimple(spec: GroupSpec) -> Iterator[GaElement]:
    if spec.case is not Case.SEMISIMPLE:
        raise DomainError("not a semi-simple group")
    return iter(spec)


def enumerate_ramified(spec: GroupSpec) -> Iterator[GaElement]:
    if spec.case not in (Case.RAMIFIED_ODD, Case.RAMIFIED_EVEN_N2):
        raise DomainError("not a ramified group")
    return iter(spec)


def brute_force_orthogonal(q: int, n: int) -> List[GaElement]:
    """All v with v * conj(v) = 1 by exhaustive search (test oracle, q^n small)."""
    F = base_field(q)
    if q**n > 1 << 16:
        raise DomainError("too large for exhaustive search")
    out = []
    for k in range(q**n):
        coeffs = []
        for _ in range(n):
            coeffs.append(k % q)
            k //= q
        v = GaElement(F, tuple(coeffs))
        if v * v.conjugate() == GaElement.one(F, n):
            out.append(v)
    return out


# -- skew elements and the iterative parametrisation ------------------------

def skew_vector(F: GF, n: int, rs: Sequence[int]) -> GaElement:
    """r = sum_{i>=1} r_i (X^i - X^{n-i}), so that conj(r) = -r."""
    if len(rs) != (n - 1) // 2:
        raise DomainError("need (n-1)/2 coefficients")
    c = [0] * n
    for i, r in enumerate(rs, start=1):
        c[i] = F.add(c[i], r)
        c[n - i] = F.sub(c[n - i], r)
    return GaElement(F, tuple(c))


def macwilliams_iterate(r: GaElement) -> GaElement:
    """The unique w in the augmentation ideal with r = w + w conj(w)/2.

    P = w conj(w) is the fixed point of P <- -r^2 + P^2/4 started at 0;
    then w = r - P/2 and 1 + w is orthogonal.
    """
    F, n = r.F, r.n
    if F.p == 2:
        raise DomainError("needs odd characteristic")
    if r.conjugate() != -r:
        raise DomainError("r is not skew")
    half = F.inv(F.from_int(2))
    quarter = F.mul(half, half)
    r2 = r * r
    P = GaElement(F, (0,) * n)
    for _ in range(n + 1):
        nxt = (P * P).scale(quarter) - r2
        if nxt == P:
            break
        P = nxt
    else:
        raise InternalError("iteration did not stabilise")
    w = r - P.scale(half)
    one = GaElement.one(F, n)
    if (one + w) * (one + w).conjugate() != one:
        raise InternalError("1 + w is not orthogonal")
    return w


# -- all self-dual normal basis generators ----------------------------------

def generator_from(v: GaElement, cert) -> tuple:
    """The generator conj(v) o gamma0 reached from the certificate by v."""
    return v.conjugate().act(cert.field, cert.gamma)


def all_sdnb_generators(cert) -> Iterator[tuple]:
    for v in GroupSpec(cert.q, cert.n):
        yield generator_from(v, cert)
