"""q-cyclotomic classes of Z/nZ and their classification under s -> -s."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Tuple

from .errors import DomainError


class Kind(enum.Enum):
    ZERO = "zero"
    SELF_PAIRED = "self_paired"
    PAIRED = "paired"


@dataclass(frozen=True)
class CyclotomicClass:
    rep: int
    members: Tuple[int, ...]  # orbit order s, qs, q^2 s, ...
    kind: Kind
    partner: Optional[int] = None  # representative of the class of n - s (PAIRED only)

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class CyclotomicDecomposition:
    n: int
    q: int
    m: int
    classes: Tuple[CyclotomicClass, ...]
    class_of: Dict[int, int] = field(compare=False, repr=False)

    def cls(self, s: int) -> CyclotomicClass:
        return self.classes[self.class_of[s % self.n]]

    @property
    def self_paired(self) -> List[CyclotomicClass]:
        return [c for c in self.classes if c.kind is Kind.SELF_PAIRED]

    @property
    def paired_canonical(self) -> List[CyclotomicClass]:
        """One class per paired couple: the one with the smaller representative."""
        return [c for c in self.classes if c.kind is Kind.PAIRED and c.rep < c.partner]

    def census(self) -> Tuple[int, int, List[int], List[int]]:
        return class_type_census(self)

    def to_json(self) -> dict:
        sigma, tau, cs, ds = self.census()
        return {
            "n": self.n,
            "q": self.q,
            "m": self.m,
            "sigma": sigma,
            "tau": tau,
            "c": cs,
            "d": ds,
            "classes": [
                {
                    "rep": c.rep,
                    "members": list(c.members),
                    "kind": c.kind.value,
                    **({"partner": c.partner} if c.partner is not None else {}),
                }
                for c in self.classes
            ],
        }


def multiplicative_order(q: int, n: int) -> int:
    if n == 1:
        return 1
    k, x = 1, q % n
    while x != 1:
        x = (x * q) % n
        k += 1
    return k


def decompose(n: int, q: int) -> CyclotomicDecomposition:
    if n < 1:
        raise DomainError("n must be positive")
    if gcd(n, q) != 1:
        raise DomainError(f"gcd(n={n}, q={q}) != 1: use the ramified construction")
    if n % 2 == 0:
        raise DomainError("cyclotomic classification is only used for odd n")
    seen: Dict[int, int] = {}
    orbits: List[Tuple[int, ...]] = []
    for s in range(n):
        if s in seen:
            continue
        orbit = [s]
        t = (s * q) % n
        while t != s:
            orbit.append(t)
            t = (t * q) % n
        for t in orbit:
            seen[t] = len(orbits)
        orbits.append(tuple(orbit))
    classes = []
    for orbit in orbits:
        s = orbit[0]
        if s == 0:
            classes.append(CyclotomicClass(0, orbit, Kind.ZERO))
        elif seen[(n - s) % n] == seen[s]:
            classes.append(CyclotomicClass(s, orbit, Kind.SELF_PAIRED))
        else:
            partner = orbits[seen[(n - s) % n]][0]
            classes.append(CyclotomicClass(s, orbit, Kind.PAIRED, partner))
    return CyclotomicDecomposition(
        n=n, q=q, m=multiplicative_order(q, n), classes=tuple(classes), class_of=seen
    )


def class_type_census(d: CyclotomicDecomposition) -> Tuple[int, int, List[int], List[int]]:
    """Return (sigma, tau, [c_i], [d_j]) with 2 c_i = deg f_i and d_j = deg g_j."""
    sp = d.self_paired
    pc = d.paired_canonical
    return 1 + len(sp), len(pc), [c.size // 2 for c in sp], [c.size for c in pc]
