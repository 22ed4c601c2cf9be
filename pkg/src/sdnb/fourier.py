"""Evaluation at the powers of an n-th root of unity and its inverse.

For gcd(n, q) = 1 the map u(X) -> (u(zeta^s))_{0 <= s < n} sends
F_q[X]/(X^n - 1) into (F_{q^m})^n, m = ord_n(q).  Components indexed by one
cyclotomic class are Frobenius conjugates of each other, so a class is
determined by its value at the representative.
"""

from __future__ import annotations

import random
from typing import Dict, List, Sequence

from .cyclotomic import CyclotomicDecomposition, decompose
from .errors import DomainError, InternalError
from .fields import ExtField, base_field, extension
from .group_algebra import GaElement


class FourierCtx:
    def __init__(self, q: int, n: int):
        self.q, self.n = q, n
        self.decomposition: CyclotomicDecomposition = decompose(n, q)
        self.m = self.decomposition.m
        self.F = base_field(q)
        self.E: ExtField = extension(q, self.m)
        self.zeta = self.E.element_of_order(n)
        E = self.E
        pows = [E.one]
        for _ in range(1, n):
            pows.append(E.mul(pows[-1], self.zeta))
        self.zeta_pows = pows
        self._n_inv = self.F.inv(self.F.from_int(n))
        self._self_check()

    def _self_check(self):
        if self.E.pow(self.zeta, self.n) != self.E.one or (
            self.n > 1 and self.E.multiplicative_order(self.zeta) != self.n
        ):
            raise InternalError("zeta does not have order n")
        rng = random.Random(f"fourier:{self.q}:{self.n}")
        u = GaElement(self.F, tuple(self.F.random(rng) for _ in range(self.n)))
        if self.inverse(self.forward(u)) != u:
            raise InternalError("F(zeta^-1) F(zeta) != n I")

    def forward(self, u: GaElement) -> List[tuple]:
        """(u(zeta^s))_s for s = 0..n-1."""
        if u.n != self.n:
            raise DomainError("length mismatch")
        E, n = self.E, self.n
        out = []
        for s in range(n):
            acc = E.zero
            for k, c in enumerate(u.coeffs):
                if c:
                    acc = E.add(acc, E.smul(c, self.zeta_pows[(s * k) % n]))
            out.append(acc)
        return out

    def inverse(self, vals: Sequence[tuple]) -> GaElement:
        """u_t = n^{-1} sum_i r_i zeta^{-t i}; the result must be rational over F_q."""
        E, n = self.E, self.n
        if len(vals) != n:
            raise DomainError("length mismatch")
        coeffs = []
        for t in range(n):
            acc = E.zero
            for i, r in enumerate(vals):
                if r != E.zero:
                    acc = E.add(acc, E.mul(r, self.zeta_pows[(-t * i) % n]))
            if not E.is_base(acc):
                raise DomainError("result not rational over F_q")
            coeffs.append(self.F.mul(acc[0], self._n_inv))
        return GaElement(self.F, tuple(coeffs))

    def spread(self, class_values: Dict[int, tuple]) -> List[tuple]:
        """Fill every component from the values at class representatives.

        The component at q^k s is the q^k-th power of the component at s.
        """
        E, n = self.E, self.n
        out: List = [None] * n
        for c in self.decomposition.classes:
            v = class_values[c.rep]
            for k, t in enumerate(c.members):
                out[t] = E.frobenius(v, k) if k else v
        return out

    @staticmethod
    def conjugate_in_frequency(vals: Sequence) -> list:
        n = len(vals)
        return [vals[(-s) % n] for s in range(n)]


def forward(u: GaElement, ctx: FourierCtx) -> List[tuple]:
    return ctx.forward(u)


def inverse(vals: Sequence[tuple], ctx: FourierCtx) -> GaElement:
    return ctx.inverse(vals)


def conjugate_in_frequency(vals: Sequence) -> list:
    return FourierCtx.conjugate_in_frequency(vals)
