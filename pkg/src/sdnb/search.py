"""Complexity of self-dual normal bases and exhaustive search over O(n, q).

The complexity of a self-dual normal basis generated by gamma is the
number of nonzero entries of T = (tr(gamma gamma^{q^i} gamma^{q^j}))_{i,j}.

The search never leaves F_q.  Write every generator in coordinates over
the normal basis of a fixed generator gamma0: gamma = u o gamma0 with
u = conj(v) for v in O(n, q).  With M0 = C t0 C^T, where t0 is the table
of gamma0 and C[i, d] = u_{d-i}, the table of gamma is
T[i, j] = sum_a u_a M0[i - a, j - a], all indices mod n, which along each
wrapped diagonal j - i = D is a cyclic convolution: three batched matrix
products per block of generators.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from sympy import isprime

from .errors import DomainError, InternalError
from .fields import ExtField, prime_power
from .group_algebra import GaElement, batch_conjugate
from .orthogonal import GroupSpec

WITNESS_CAP = 16


def trace_table(gamma, E: ExtField) -> List[List[int]]:
    """T[i][j] = tr(gamma gamma^{q^i} gamma^{q^j}), filled from the upper triangle."""
    n = E.n
    conj = E.conjugates(gamma)
    T = [[0] * n for _ in range(n)]
    for i in range(n):
        gi = E.mul(gamma, conj[i])
        for j in range(i, n):
            T[i][j] = T[j][i] = E.trace(E.mul(gi, conj[j]))
    return T


def complexity(gamma, E: ExtField) -> int:
    from .construct import verify_sdnb

    if not verify_sdnb(gamma, E):
        raise DomainError("not a self-dual normal basis generator")
    return sum(1 for row in trace_table(gamma, E) for t in row if t)


# -- batched kernel ---------------------------------------------------------

class _Kernel:
    """Complexities of many generators given by their gamma0-coordinates."""

    def __init__(self, E: ExtField, gamma0):
        self.F, self.n = E.base, E.n
        n = self.n
        self.t0 = np.array(trace_table(gamma0, E), dtype=np.int64)
        i = np.arange(n)
        self.circ = (i[None, :] - i[:, None]) % n  # [i, d] -> d - i
        self.diag_rows = np.repeat(i[:, None], n, axis=1)
        self.diag_cols = (i[:, None] + i[None, :]) % n
        p = self.F.p
        self.exact_float = self.F.r == 1 and n * (p - 1) ** 2 < 2**52

    def _matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        F = self.F
        if self.exact_float:
            return np.rint(np.matmul(a.astype(np.float64), b.astype(np.float64))).astype(np.int64) % F.p
        if F.r == 1:
            return np.matmul(a, b) % F.p
        return F.vsum(F.vmul(a[..., :, :, None], b[..., None, :, :]), axis=-2)

    def tables(self, U: np.ndarray) -> np.ndarray:
        """Tables of the generators, rows re-indexed as T'[i, D] = T[i, i + D]."""
        C = U[:, self.circ]
        M0 = self._matmul(self._matmul(C, self.t0), np.swapaxes(C, 1, 2))
        # T[i, i+D] = sum_x u_{i-x} M0[x, x+D]: a circulant times the diagonals of M0
        diagonals = M0[:, self.diag_rows, self.diag_cols]
        return self._matmul(np.swapaxes(C, 1, 2), diagonals)

    def complexities(self, U: np.ndarray) -> np.ndarray:
        return np.count_nonzero(self.tables(U), axis=(1, 2))


# -- reports ----------------------------------------------------------------

def _normalise(intervals) -> List[Tuple[int, int]]:
    out: List[List[int]] = []
    for a, b in sorted((int(a), int(b)) for a, b in intervals if b > a):
        if out and a < out[-1][1]:
            raise DomainError(f"overlapping coverage at [{a}, {b})")
        if out and a == out[-1][1]:
            out[-1][1] = b
        else:
            out.append([a, b])
    return [tuple(x) for x in out]


@dataclass
class SearchReport:
    q: int
    n: int
    group_cardinality: int
    min_complexity: Optional[int] = None
    count: int = 0
    histogram: Optional[Dict[int, int]] = None
    witnesses: List[dict] = field(default_factory=list)
    coverage: List[Tuple[int, int]] = field(default_factory=list)
    elapsed_ms: float = field(default=0.0, compare=False)

    @property
    def visited(self) -> int:
        return sum(b - a for a, b in self.coverage)

    @property
    def complete(self) -> bool:
        return self.coverage == [(0, self.group_cardinality)]

    @property
    def divisor(self) -> int:
        return self.n if self.q % 2 == 0 else 2 * self.n

    @property
    def integrity_ok(self) -> bool:
        """Minimal generators come in orbits of size n (times 2 for odd q)."""
        return not self.complete or self.count % self.divisor == 0

    @property
    def multiplier(self) -> Optional[int]:
        if not self.complete or self.count % self.divisor:
            return None
        return self.count // self.divisor

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "group_cardinality": self.group_cardinality,
            "min_complexity": self.min_complexity,
            "count": self.count,
            "multiplier": self.multiplier,
            "integrity_ok": self.integrity_ok,
            "complete": self.complete,
            "histogram": None if self.histogram is None
            else {str(k): v for k, v in sorted(self.histogram.items())},
            "witnesses": self.witnesses,
            "coverage": [list(c) for c in self.coverage],
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_json(cls, d: dict) -> "SearchReport":
        hist = d.get("histogram")
        return cls(
            q=d["q"],
            n=d["n"],
            group_cardinality=d["group_cardinality"],
            min_complexity=d["min_complexity"],
            count=d["count"],
            histogram=None if hist is None else {int(k): v for k, v in hist.items()},
            witnesses=list(d.get("witnesses", [])),
            coverage=[tuple(c) for c in d.get("coverage", [])],
            elapsed_ms=d.get("elapsed_ms", 0.0),
        )

    CSV_HEADER = "q,n,min_complexity,multiplier,group_cardinality,elapsed_ms"

    def csv_row(self) -> str:
        m = "" if self.multiplier is None else self.multiplier
        mc = "" if self.min_complexity is None else self.min_complexity
        return f"{self.q},{self.n},{mc},{m},{self.group_cardinality},{self.elapsed_ms:.0f}"


def merge_reports(a: SearchReport, b: SearchReport) -> SearchReport:
    if (a.q, a.n, a.group_cardinality) != (b.q, b.n, b.group_cardinality):
        raise DomainError("reports describe different searches")
    coverage = _normalise(list(a.coverage) + list(b.coverage))
    mins = [r.min_complexity for r in (a, b) if r.min_complexity is not None]
    best = min(mins) if mins else None
    count = sum(r.count for r in (a, b) if r.min_complexity == best and best is not None)
    wit = [w for r in (a, b) if r.min_complexity == best for w in r.witnesses]
    wit = sorted(wit, key=lambda w: w["index"])[:WITNESS_CAP]
    if a.histogram is None or b.histogram is None:
        hist = None
    else:
        hist = dict(a.histogram)
        for k, v in b.histogram.items():
            hist[k] = hist.get(k, 0) + v
    return SearchReport(a.q, a.n, a.group_cardinality, best, count, hist, wit, coverage,
                        a.elapsed_ms + b.elapsed_ms)


def shard_range(cardinality: int, shard: Tuple[int, int]) -> Tuple[int, int]:
    i, k = shard
    if k < 1 or not 0 <= i < k:
        raise DomainError(f"bad shard {i}/{k}")
    return i * cardinality // k, (i + 1) * cardinality // k


def search_min(
    cert,
    shard: Optional[Tuple[int, int]] = None,
    histogram: Optional[bool] = None,
    witness_cap: int = WITNESS_CAP,
    time_limit: Optional[float] = None,
    batch_size: Optional[int] = None,
    verify_every: int = 256,
    index_range: Optional[Tuple[int, int]] = None,
) -> SearchReport:
    """Minimum complexity over the generators conj(v) o gamma0, v in O(n, q).

    Every ``verify_every``-th visited index (and the first) is recomputed
    in the field and must agree with the batched value.  The histogram is
    kept by default for n <= 15.
    """
    t_start = time.perf_counter()
    E, n = cert.field, cert.n
    if histogram is None:
        histogram = n <= 15
    group = GroupSpec(cert.q, n)
    N = group.cardinality
    if index_range is not None:
        lo, hi = index_range
        if not 0 <= lo <= hi <= N:
            raise DomainError("index range outside the group")
    elif shard is not None:
        lo, hi = shard_range(N, shard)
    else:
        lo, hi = 0, N
    kernel = _Kernel(E, cert.gamma)
    if batch_size is None:
        batch_size = max(16, min(4096, 2**21 // (n**3)))
    best, count = None, 0
    best_idx: List[int] = []
    hist: Dict[int, int] = {}
    reached = lo
    for a in range(lo, hi, batch_size):
        b = min(a + batch_size, hi)
        V = group.batch(a, b)
        U = batch_conjugate(V)
        comp = kernel.complexities(U)
        if histogram:
            vals, cnts = np.unique(comp, return_counts=True)
            for c, k in zip(vals.tolist(), cnts.tolist()):
                hist[c] = hist.get(c, 0) + k
        m = int(comp.min())
        if best is None or m < best:
            best, count, best_idx = m, 0, []
        if m == best:
            hits = np.flatnonzero(comp == best)
            count += len(hits)
            room = witness_cap - len(best_idx)
            best_idx.extend((a + hits[:room]).tolist())
        stride = max(1, verify_every)
        first = a + ((-(a - lo)) % stride)
        for idx in range(first, b, stride):
            gamma = GaElement.make(E.base, U[idx - a]).act(E, cert.gamma)
            if complexity(gamma, E) != int(comp[idx - a]):
                raise InternalError(f"batched complexity disagrees with the field at index {idx}")
        reached = b
        if time_limit is not None and time.perf_counter() - t_start > time_limit:
            break
    witnesses = []
    for idx in best_idx:
        u = GaElement.make(E.base, batch_conjugate(group.batch(idx, idx + 1))[0])
        gamma = u.act(E, cert.gamma)
        witnesses.append({"index": int(idx), "gamma": [list(E.base.coords(c)) for c in gamma]})
    elapsed = (time.perf_counter() - t_start) * 1000
    return SearchReport(cert.q, n, N, best, count, hist if histogram else None, witnesses,
                        _normalise([(lo, reached)]), elapsed)


def witness_certificate(cert, index: int):
    """Certificate for the generator conj(v) o gamma0, v the group element at ``index``."""
    from .construct import SdnbCertificate, verify_sdnb

    group = GroupSpec(cert.q, cert.n)
    v = group.element(index)
    gamma = v.conjugate().act(cert.field, cert.gamma)
    if not verify_sdnb(gamma, cert.field):
        raise InternalError("witness is not self-dual")
    return SdnbCertificate(cert.q, cert.n, cert.field, gamma, None, f"search-witness({index})")


def best_certificate(cert, report: Optional[SearchReport] = None):
    """A minimum-complexity certificate, running a full search if no report is given."""
    if report is None:
        report = search_min(cert, histogram=False, witness_cap=1)
    if not report.witnesses:
        raise DomainError("report has no witness")
    out = witness_certificate(cert, report.witnesses[0]["index"])
    if out.get_complexity() != report.min_complexity:
        raise InternalError("witness complexity disagrees with the report")
    return out


def optimality_precheck(q: int, n: int) -> bool:
    """Whether an optimal self-dual normal basis is predicted (q even only).

    True iff 2n + 1 is prime and 2 generates the multiplicative group of
    Z/(2n + 1) or has order n there.
    """
    p, _ = prime_power(q)
    if p != 2:
        raise DomainError("the prediction applies to even q only")
    ell = 2 * n + 1
    if not isprime(ell):
        return False
    k, x = 1, 2 % ell
    while x != 1:
        x = (x * 2) % ell
        k += 1
    return k in (n, 2 * n)
