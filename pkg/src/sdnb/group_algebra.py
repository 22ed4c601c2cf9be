"""The group algebra F_q[G] of the cyclic Galois group, realised as F_q[X]/(X^n - 1).

The Frobenius generator of G is identified with X, so an element is its
length-n coefficient sequence.  ``GaElement`` is a small immutable value
type; the ``batch_*`` helpers apply the same operations to stacks of
coefficient vectors held in numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from . import poly
from .errors import DomainError, InternalError
from .fields import GF, ExtField


class NotInvertibleError(DomainError):
    def __init__(self, gcd):
        super().__init__(f"element is not a unit: gcd with X^n - 1 is {gcd}")
        self.gcd = gcd


@dataclass(frozen=True)
class GaElement:
    F: GF
    coeffs: tuple

    @classmethod
    def make(cls, F: GF, coeffs: Sequence[int]) -> "GaElement":
        return cls(F, tuple(int(c) for c in coeffs))

    @classmethod
    def one(cls, F: GF, n: int) -> "GaElement":
        return cls(F, (1,) + (0,) * (n - 1))

    @classmethod
    def constant(cls, F: GF, n: int, c: int) -> "GaElement":
        return cls(F, (c,) + (0,) * (n - 1))

    @classmethod
    def monomial(cls, F: GF, n: int, k: int, c: int = 1) -> "GaElement":
        v = [0] * n
        v[k % n] = c
        return cls(F, tuple(v))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def _same(self, other: "GaElement"):
        if self.n != other.n or self.F.q != other.F.q:
            raise DomainError("group algebra elements from different rings")

    def __add__(self, other: "GaElement") -> "GaElement":
        self._same(other)
        F = self.F
        return GaElement(F, tuple(F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "GaElement") -> "GaElement":
        self._same(other)
        F = self.F
        return GaElement(F, tuple(F.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "GaElement":
        F = self.F
        return GaElement(F, tuple(F.neg(a) for a in self.coeffs))

    def scale(self, c: int) -> "GaElement":
        F = self.F
        return GaElement(F, tuple(F.mul(c, a) for a in self.coeffs))

    def __mul__(self, other: "GaElement") -> "GaElement":
        """Cyclic convolution of coefficient sequences."""
        self._same(other)
        F, n = self.F, self.n
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        k = (i + j) % n
                        out[k] = F.add(out[k], F.mul(a, b))
        return GaElement(F, tuple(out))

    def __pow__(self, e: int) -> "GaElement":
        if e < 0:
            return self.inverse() ** (-e)
        result = GaElement.one(self.F, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def conjugate(self) -> "GaElement":
        """The involution induced by X -> X^{n-1}: index k moves to (n - k) mod n."""
        c, n = self.coeffs, self.n
        return GaElement(self.F, tuple(c[(-k) % n] for k in range(n)))

    def augmentation(self) -> int:
        F = self.F
        acc = 0
        for a in self.coeffs:
            acc = F.add(acc, a)
        return acc

    def is_unit(self) -> bool:
        return len(self._gcd_data()[0]) == 1

    def _gcd_data(self):
        F, n = self.F, self.n
        xn1 = [F.neg(1)] + [0] * (n - 1) + [1]
        return poly.xgcd(F, list(self.coeffs), xn1)

    def inverse(self) -> "GaElement":
        g, s, _ = self._gcd_data()
        if len(g) != 1:
            raise NotInvertibleError(g)
        s = list(s) + [0] * (self.n - len(s))
        return GaElement(self.F, tuple(s))

    def act(self, E: ExtField, x) -> tuple:
        """u o x = sum_k u_k x^{q^k}."""
        if E.n != self.n or E.q != self.F.q:
            raise DomainError("action needs the degree-n extension of the same base field")
        acc = E.zero
        for k, c in enumerate(self.coeffs):
            if c:
                acc = E.add(acc, E.smul(c, E.frobenius(x, k)))
        return acc

    def circulant(self) -> List[List[int]]:
        """The circulant matrix (rho_{j-i mod n})_{i,j}."""
        c, n = self.coeffs, self.n
        return [[c[(j - i) % n] for j in range(n)] for i in range(n)]

    def to_json(self) -> list:
        return [list(self.F.coords(c)) for c in self.coeffs]

    @classmethod
    def from_json(cls, F: GF, data) -> "GaElement":
        return cls(F, tuple(F.from_coords(c) for c in data))


def ga_mul(a: GaElement, b: GaElement) -> GaElement:
    return a * b


def conjugate(a: GaElement) -> GaElement:
    return a.conjugate()


def augmentation(a: GaElement) -> int:
    return a.augmentation()


def ga_inverse(a: GaElement) -> GaElement:
    return a.inverse()


def act(a: GaElement, x, E: ExtField) -> tuple:
    return a.act(E, x)


def circulant_of(a: GaElement) -> List[List[int]]:
    return a.circulant()


def compute_R(alpha, E: ExtField) -> GaElement:
    """R = sum_i tr(alpha * alpha^{q^i}) X^i for a normal element alpha."""
    coeffs = tuple(E.trace(E.mul(alpha, E.frobenius(alpha, i))) for i in range(E.n))
    R = GaElement(E.base, coeffs)
    if not R.is_unit():
        raise InternalError("R is not a unit; alpha is not normal")
    return R


# -- batched arithmetic on numpy stacks of coefficient vectors -------------

def _shift_index(n: int) -> np.ndarray:
    i = np.arange(n)
    return (i[None, :] - i[:, None]) % n  # [i, k] -> (k - i) mod n


def batch_mul(F: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise products in F_q[X]/(X^n - 1) of two (B, n) arrays."""
    n = a.shape[1]
    idx = _shift_index(n)
    if F.r == 1:
        return np.einsum("bi,bik->bk", a, b[:, idx]) % F.p
    prod = F.vmul(a[:, :, None], b[:, idx])
    return F.vsum(prod, axis=1)


def batch_conjugate(a: np.ndarray) -> np.ndarray:
    n = a.shape[1]
    return a[:, (-np.arange(n)) % n]


def batch_is_orthogonal(F: GF, a: np.ndarray) -> np.ndarray:
    """Boolean mask of rows v with v * conjugate(v) == 1."""
    prod = batch_mul(F, a, batch_conjugate(a))
    target = np.zeros(a.shape[1], dtype=prod.dtype)
    target[0] = 1
    return np.all(prod == target, axis=1)
