"""Construction of one self-dual normal basis generator for F_{q^n}/F_q.

Starting from a normal element alpha and R = sum_i tr(alpha alpha^{q^i}) X^i,
any v with v * conj(v) = R gives the generator v^{-1} o alpha.  The
semi-simple case solves that equation class by class in the Fourier
domain; the ramified odd case takes a Hensel square root of R; the even
quadratic case is explicit; everything else is a product of coprime pieces.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from math import gcd
from typing import Dict, Optional

from . import poly
from .errors import DomainError, InternalError, NoSdnbError
from .fields import GF, ExtField, base_field, extension, prime_power
from .fourier import FourierCtx
from .group_algebra import GaElement, compute_R
from .cyclotomic import Kind


@dataclass
class SdnbCertificate:
    q: int
    n: int
    field: ExtField = dc_field(repr=False)
    gamma: tuple
    v: Optional[GaElement] = None
    route: str = ""
    complexity: Optional[int] = None
    # provenance, not serialised: the normal element v was solved for, and
    # the factor certificates of a composite
    alpha: Optional[tuple] = dc_field(default=None, repr=False, compare=False)
    parts: tuple = dc_field(default=(), repr=False, compare=False)

    def get_complexity(self) -> int:
        if self.complexity is None:
            from .search import complexity

            self.complexity = complexity(self.gamma, self.field)
        return self.complexity

    def to_json(self) -> dict:
        E = self.field
        F = E.base
        return {
            "q": self.q,
            "n": self.n,
            "route": self.route,
            "base_modulus": list(F.modulus),
            "modulus": [list(F.coords(c)) for c in E.modulus],
            "gamma_coords": [list(F.coords(c)) for c in self.gamma],
            "v_coeffs": None if self.v is None else self.v.to_json(),
            "complexity": self.complexity,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SdnbCertificate":
        q, n = int(data["q"]), int(data["n"])
        p, r = prime_power(q)
        F = base_field(q)
        if r > 1 and tuple(data["base_modulus"]) != F.modulus:
            F = GF(p, r, data["base_modulus"])
        modulus = tuple(F.from_coords(c) for c in data["modulus"])
        E = extension(q, n) if F is base_field(q) and modulus == extension(q, n).modulus else ExtField(F, n, modulus)
        gamma = E.check(F.from_coords(c) for c in data["gamma_coords"])
        v = None if data.get("v_coeffs") is None else GaElement.from_json(F, data["v_coeffs"])
        return cls(q, n, E, gamma, v, data.get("route", ""), data.get("complexity"))


def existence_check(q: int, n: int) -> bool:
    prime_power(q)
    if n < 1:
        raise DomainError("n must be positive")
    return n % 2 == 1 or (n % 4 == 2 and q % 2 == 0)


def verify_sdnb(gamma, E: ExtField) -> bool:
    """True iff tr(gamma^{q^i} gamma^{q^j}) = delta_ij for all i, j.

    The Gram matrix of a Frobenius orbit is circulant (tr is Frobenius
    invariant), so its first row tr(gamma gamma^{q^d}) determines it.
    """
    if gamma == E.zero:
        return False
    for d in range(E.n):
        t = E.trace(E.mul(gamma, E.frobenius(gamma, d)))
        if t != (1 if d == 0 else 0):
            return False
    return True


def gram_matrix(gamma, E: ExtField):
    conj = E.conjugates(gamma)
    return [[E.trace(E.mul(a, b)) for b in conj] for a in conj]


# -- semi-simple case -------------------------------------------------------

def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def smallest_t(p: int) -> int:
    """Smallest t >= 2 such that -t is a nonzero square modulo p."""
    t = 2
    while _legendre(-t, p) != 1:
        t += 1
    return t


def case_c_constants(p: int):
    """(t, eta, nu) with eta^2 = -t and nu^2 = t - 1 modulo p, found by scanning."""
    t = smallest_t(p)
    if _legendre(-(t - 1), p) == 1:
        raise InternalError(f"-(t-1) is a square modulo {p}")
    eta = next(x for x in range(1, p) if (x * x + t) % p == 0)
    nu = next((x for x in range(p) if (x * x - (t - 1)) % p == 0), None)
    if nu is None:
        raise InternalError(f"t - 1 = {t - 1} is not a square modulo {p}")
    return t, eta, nu


def solve_semisimple(alpha, E: ExtField, cases: Optional[Dict[int, str]] = None) -> GaElement:
    """A solution v of v * conj(v) = R for the normal element alpha (gcd(n, q) = 1, n odd)."""
    q, n = E.q, E.n
    F = E.base
    R = compute_R(alpha, E)
    fc = FourierCtx(q, n)
    Em = fc.E
    decomp = fc.decomposition
    Rf = fc.forward(R)
    values: Dict[int, tuple] = {}
    if cases is None:
        cases = {}
    for c in decomp.classes:
        s = c.rep
        if c.kind is Kind.ZERO:
            values[s] = Em.from_base(E.trace(alpha))
            cases[s] = "zero"
        elif c.kind is Kind.PAIRED:
            if s < c.partner:
                values[s] = Rf[s]
                values[c.partner] = Em.one
                cases[s] = cases[c.partner] = "paired"
        else:
            half = c.size // 2
            Rs = Rf[s]
            u = Em.sqrt(Rs)
            if u is None:
                raise InternalError(f"R_{s} is not a square")
            if Em.frobenius(u, half) == u:
                values[s], cases[s] = u, "a"
                continue
            u2 = Em.sqrt(Em.neg(Rs))
            if u2 is None:
                raise InternalError(f"-R_{s} is not a square")
            if Em.frobenius(u2, half) != u2:
                values[s], cases[s] = u2, "b"
                continue
            _, eta, nu = case_c_constants(E.p)
            num = Em.add(Em.smul(F.from_int(nu), u), u2)
            values[s], cases[s] = Em.smul(F.inv(F.from_int(eta)), num), "c"
    v = fc.inverse(fc.spread(values))
    if v * v.conjugate() != R:
        raise InternalError("semi-simple solution fails v conj(v) = R")
    return v


# -- ramified case ----------------------------------------------------------

def hensel_sqrt(R: GaElement, seed: int) -> GaElement:
    """Square root of R in F_q[X]/(X-1)^n lifting the root ``seed`` of eps(R).

    Newton steps w <- w + (R - w^2)(2w)^{-1} double the (X-1)-adic
    precision, so ceil(log2 n) steps reach an exact root.
    """
    F, n = R.F, R.n
    if F.p == 2:
        raise DomainError("Hensel square roots need odd characteristic")
    if F.mul(seed, seed) != R.augmentation():
        raise DomainError("seed is not a square root of the augmentation")
    if seed == 0:
        raise DomainError("R is not a unit")
    w = GaElement.constant(F, n, seed)
    two = F.from_int(2)
    for _ in range(n.bit_length() + 1):
        err = R - w * w
        if not any(err.coeffs):
            return w
        w = w + err * w.scale(two).inverse()
    if w * w != R:
        raise InternalError("Hensel lifting did not converge")
    return w


def solve_ramified(alpha, E: ExtField) -> GaElement:
    """omega with omega^2 = R and conj(omega) = omega (p odd, n = p^e)."""
    R = compute_R(alpha, E)
    t = E.trace(alpha)
    if t == 0:
        raise InternalError("normal element with zero trace")
    omega = hensel_sqrt(R, t)
    if omega.conjugate() != omega:
        raise InternalError("square root of R is not conjugation invariant")
    return omega


# -- assembling certificates ------------------------------------------------

def _finish(q, n, E, gamma, v, route, alpha=None, parts=()) -> SdnbCertificate:
    if not verify_sdnb(gamma, E):
        raise InternalError(f"constructed element fails self-duality ({route})")
    return SdnbCertificate(q, n, E, gamma, v, route, alpha=alpha, parts=tuple(parts))


def construct_even_quadratic(q: int) -> SdnbCertificate:
    """beta in F_{q^2} with tr(beta) = 1 (q even): x / tr(x) for the field generator x."""
    if q % 2:
        raise DomainError("the quadratic rule needs even q")
    E = extension(q, 2)
    x = E.gen()
    t = E.trace(x)
    beta = E.smul(E.base.inv(t), x)
    if E.trace(beta) != 1:
        raise InternalError("trace normalisation failed")
    return _finish(q, 2, E, beta, None, "even-quadratic")


def construct_semisimple(q: int, n: int) -> SdnbCertificate:
    E = extension(q, n)
    alpha = E.find_normal_element()
    v = solve_semisimple(alpha, E)
    gamma = v.inverse().act(E, alpha)
    return _finish(q, n, E, gamma, v, "semisimple", alpha)


def construct_ramified(q: int, n: int) -> SdnbCertificate:
    E = extension(q, n)
    alpha = E.find_normal_element()
    omega = solve_ramified(alpha, E)
    gamma = omega.inverse().act(E, alpha)
    return _finish(q, n, E, gamma, omega, "ramified", alpha)


def construct(q: int, n: int) -> SdnbCertificate:
    """A verified self-dual normal basis generator of F_{q^n}/F_q."""
    p, _ = prime_power(q)
    if not existence_check(q, n):
        raise NoSdnbError(
            f"no SDNB exists for q={q}, n={n}: need n odd, or n = 2 mod 4 with q even"
        )
    if n == 1:
        return _finish(q, 1, extension(q, 1), (1,), GaElement.one(base_field(q), 1), "trivial")
    if n % 2 == 0:
        quad = construct_even_quadratic(q)
        return quad if n == 2 else compose_coprime(quad, construct(q, n // 2))
    n1, pe = n, 1
    while n1 % p == 0:
        n1, pe = n1 // p, pe * p
    if pe == 1:
        return construct_semisimple(q, n)
    if n1 == 1:
        return construct_ramified(q, n)
    return compose_coprime(construct(q, n1), construct(q, pe))


# -- field embeddings -------------------------------------------------------

_ROOTS: Dict[tuple, object] = {}


def _root_in(dst, src_modulus, lift, key):
    if key not in _ROOTS:
        f = [lift(c) for c in src_modulus]
        _ROOTS[key] = poly.find_root(dst, f)
    return _ROOTS[key]


def embed(src: ExtField, dst: ExtField, a):
    """Image of ``a`` under F_q[x]/(f) -> dst, x -> a fixed root of f in dst."""
    if dst.n % src.n or src.base is not dst.base:
        raise DomainError("no embedding between these fields")
    key = ("ext", src.base.q, src.modulus, dst.modulus)
    rho = _root_in(dst, src.modulus, dst.from_base, key)
    acc = dst.zero
    power = dst.one
    for c in a:
        if c:
            acc = dst.add(acc, dst.smul(c, power))
        power = dst.mul(power, rho)
    return acc


def compose_coprime(a: SdnbCertificate, b: SdnbCertificate) -> SdnbCertificate:
    """Product generator in the compositum of coprime-degree extensions."""
    if a.q != b.q:
        raise DomainError("certificates over different base fields")
    if gcd(a.n, b.n) != 1:
        raise DomainError(f"degrees {a.n} and {b.n} are not coprime")
    if a.n == 1 or b.n == 1:
        small, big = (a, b) if a.n == 1 else (b, a)
        c = small.gamma[0]  # +-1, its own inverse
        v = None if big.v is None else big.v.scale(c)
        return replace(big, gamma=big.field.smul(c, big.gamma), v=v, complexity=None)
    q, n = a.q, a.n * b.n
    E = extension(q, n)
    gamma = E.mul(embed(a.field, E, a.gamma), embed(b.field, E, b.gamma))
    cert = _finish(q, n, E, gamma, None, f"composite({a.n}x{b.n})", parts=(a, b))
    expected = a.get_complexity() * b.get_complexity()
    if cert.get_complexity() != expected:
        raise InternalError("compositum complexity is not the product")
    return cert


def base_extension(cert: SdnbCertificate, r: int) -> SdnbCertificate:
    """The same generator viewed in F_{q^{rn}} over F_{q^r} (gcd(n, r) = 1)."""
    if r < 1 or gcd(cert.n, r) != 1:
        raise DomainError(f"extension degree {r} is not coprime to n={cert.n}")
    if r == 1:
        return cert
    E = cert.field
    F = E.base
    q2 = F.q**r
    F2 = base_field(q2)
    if F.r == 1:
        lift = int
    else:
        key = ("base", F.q, F.modulus, F2.q, F2.modulus)
        rho = _root_in(F2, F.modulus, int, key)

        def lift(c):
            acc, power = 0, 1
            for d in F.coords(c):
                if d:
                    acc = F2.add(acc, F2.mul(d, power))
                power = F2.mul(power, rho)
            return acc

    E2 = ExtField(F2, cert.n, [lift(c) for c in E.modulus])
    gamma = tuple(lift(c) for c in cert.gamma)
    out = _finish(q2, cert.n, E2, gamma, None, f"base-extension({cert.route})")
    if out.get_complexity() != cert.get_complexity():
        raise InternalError("base extension changed the complexity")
    return out
