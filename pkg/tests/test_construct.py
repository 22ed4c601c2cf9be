from math import gcd

import pytest

from sdnb.construct import (
    SdnbCertificate,
    base_extension,
    case_c_constants,
    compose_coprime,
    construct,
    construct_even_quadratic,
    existence_check,
    gram_matrix,
    hensel_sqrt,
    smallest_t,
    solve_ramified,
    solve_semisimple,
    verify_sdnb,
)
from sdnb.errors import DomainError, InternalError, NoSdnbError
from sdnb.fields import base_field, extension
from sdnb.group_algebra import GaElement, compute_R
from sdnb.orthogonal import all_sdnb_generators
from sdnb.search import complexity


def brute_force_sdnb(E):
    """All gamma whose orbit is orthonormal for the trace form, by full Gram matrices."""
    n = E.n
    out = set()
    for k in range(E.order):
        g = E.element(k)
        conj = [E.pow(g, E.q**i) for i in range(n)]
        if all(E.trace(E.mul(conj[i], conj[j])) == (i == j) for i in range(n) for j in range(n)):
            out.add(g)
    return out


def test_existence_examples():
    assert not existence_check(3, 2)
    assert not existence_check(2, 4)
    assert existence_check(2, 6)
    assert existence_check(9, 7)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_existence_rule(q):
    for n in range(1, 13):
        expected = n % 2 == 1 or (q % 2 == 0 and n % 4 == 2)
        assert existence_check(q, n) == expected


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 3), (2, 5), (4, 3), (5, 3), (3, 5), (2, 7), (4, 2)])
def test_sdnb_sets_match_brute_force(q, n):
    cert = construct(q, n)
    E = cert.field
    expected = brute_force_sdnb(E)
    got = set(all_sdnb_generators(cert))
    assert got == expected
    assert all(verify_sdnb(g, E) for g in got)
    assert all(not verify_sdnb(E.element(k), E) for k in range(E.order) if E.element(k) not in expected)


def _is_identity(rows):
    return all(t == (i == j) for i, row in enumerate(rows) for j, t in enumerate(row))


def test_verify_rejects_one_and_normal_non_self_dual():
    E8 = extension(2, 3)
    assert not verify_sdnb(E8.one, E8)
    # in F_8 the 3 normal elements are exactly the 3 self-dual ones, so the
    # non-self-dual witness comes from F_32
    normal8 = [E8.element(k) for k in range(8) if E8.is_normal(E8.element(k))]
    assert len(normal8) == 3 and all(_is_identity(gram_matrix(a, E8)) for a in normal8)
    E = extension(2, 5)
    witness = next(E.element(k) for k in range(E.order) if E.is_normal(E.element(k))
                   and not _is_identity(gram_matrix(E.element(k), E)))
    assert not verify_sdnb(witness, E)


@pytest.mark.parametrize("q,n", [(2, 3), (3, 5), (5, 3), (4, 5)])
def test_row_gram_check_equals_full_gram(q, n):
    E = extension(q, n)
    for seed in range(20):
        a = E.find_normal_element(seed)
        full = all(t == (i == j) for i, row in enumerate(gram_matrix(a, E)) for j, t in enumerate(row))
        assert verify_sdnb(a, E) == full
    g = construct(q, n).gamma
    assert verify_sdnb(g, E)


def test_case_c_constants():
    assert smallest_t(5) == 4
    assert smallest_t(3) == 2
    assert case_c_constants(3) == (2, 1, 1)
    assert case_c_constants(7) == (3, 2, 3)
    # -1 is a square mod 5, so the branch is unreachable and the helper refuses
    with pytest.raises(InternalError):
        case_c_constants(5)
    for p in (3, 7, 11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83):
        t, eta, nu = case_c_constants(p)
        assert (eta * eta + t) % p == 0 and (nu * nu - (t - 1)) % p == 0


SEMISIMPLE = [(q, n) for q in (2, 3, 4, 5, 7, 8, 11, 13, 19) for n in (3, 5, 7, 9) if gcd(n, q) == 1]


@pytest.mark.parametrize("q,n", SEMISIMPLE)
def test_solve_semisimple(q, n):
    E = extension(q, n)
    for seed in range(3):
        alpha = E.find_normal_element(seed)
        cases = {}
        v = solve_semisimple(alpha, E, cases)
        assert v * v.conjugate() == compute_R(alpha, E)
        if q % 2 == 0:
            assert set(cases.values()) <= {"zero", "a", "paired"}
        assert verify_sdnb(v.inverse().act(E, alpha), E)


def test_all_semisimple_branches_occur():
    seen = set()
    for q, n in [(11, 3), (5, 3), (3, 5), (2, 3), (7, 3)]:
        E = extension(q, n)
        for seed in range(4):
            cases = {}
            solve_semisimple(E.find_normal_element(seed), E, cases)
            seen |= set(cases.values())
    assert {"a", "b", "c"} <= seen


def test_sdnb_input_gives_orthogonal_v():
    cert = construct(2, 7)
    v = solve_semisimple(cert.gamma, cert.field)
    assert v * v.conjugate() == GaElement.one(cert.field.base, 7)


@pytest.mark.parametrize("q,n", [(3, 3), (5, 5), (3, 9), (9, 3), (7, 7), (27, 3), (25, 5)])
def test_solve_ramified(q, n):
    E = extension(q, n)
    for seed in range(3):
        alpha = E.find_normal_element(seed)
        R = compute_R(alpha, E)
        w = solve_ramified(alpha, E)
        assert w * w == R and w.conjugate() == w
        assert w.augmentation() == E.trace(alpha)


def test_hensel_sqrt_of_one():
    F = base_field(5)
    one = GaElement.one(F, 5)
    assert hensel_sqrt(one, 1) == one
    assert hensel_sqrt(one, F.neg(1)) == -one
    with pytest.raises(DomainError):
        hensel_sqrt(one, 2)


@pytest.mark.parametrize("q", [2, 4, 8, 16, 32])
def test_even_quadratic(q):
    cert = construct_even_quadratic(q)
    E = cert.field
    assert E.trace(cert.gamma) == 1
    assert verify_sdnb(E.frobenius(cert.gamma), E)
    # tr(beta^3) = 1 + N(beta); it vanishes only when beta^2 + beta + 1 = 0,
    # which is possible in F_{q^2} \ F_q only when F_4 is not inside F_q
    N = E.mul(cert.gamma, E.frobenius(cert.gamma))
    assert E.trace(E.pow(cert.gamma, 3)) == E.base.add(1, N[0])
    odd_r = E.base.r % 2 == 1
    assert cert.get_complexity() == (3 if odd_r else 4)


def test_even_quadratic_over_f2():
    cert = construct_even_quadratic(2)
    E = cert.field
    w = E.gen()
    assert cert.gamma == w
    assert E.frobenius(w) == E.add(w, E.one)


def test_pipeline_examples():
    assert construct(2, 3).get_complexity() == 5
    assert construct(3, 3).get_complexity() == 7
    with pytest.raises(NoSdnbError, match="no SDNB exists"):
        construct(3, 2)


MATRIX = [(q, n) for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16) for n in range(1, 16, 2)]


@pytest.mark.parametrize("q,n", MATRIX)
def test_construct_matrix(q, n):
    cert = construct(q, n)
    assert verify_sdnb(cert.gamma, cert.field)
    assert (cert.q, cert.n, cert.field.n) == (q, n, n)


def test_construct_is_deterministic():
    a, b = construct(13, 9), construct(13, 9)
    assert a.gamma == b.gamma and a.to_json() == b.to_json()


def test_compose_coprime():
    c6 = compose_coprime(construct_even_quadratic(2), construct(2, 3))
    assert c6.n == 6 and verify_sdnb(c6.gamma, c6.field)
    assert c6.get_complexity() == 15
    # direct count of the 6x6 table, independent of the product check
    E = c6.field
    conj = E.conjugates(c6.gamma)
    count = sum(1 for i in range(6) for j in range(6)
                if E.trace(E.mul(E.mul(c6.gamma, conj[i]), conj[j])))
    assert count == 15
    with pytest.raises(DomainError):
        compose_coprime(construct(2, 3), construct(2, 9))


def test_compose_with_trivial_factor():
    c = construct(3, 5)
    triv = construct(3, 1)
    out = compose_coprime(triv, c)
    assert out.gamma == c.gamma and out.n == 5


def test_base_extension():
    for n, expected in [(3, 5), (5, 9)]:
        cert = construct(2, n)
        ext = base_extension(cert, 2)
        assert ext.q == 4 and verify_sdnb(ext.gamma, ext.field)
        assert ext.get_complexity() == expected == cert.get_complexity()
    cert = construct(3, 5)
    assert base_extension(cert, 1) is cert
    ext = base_extension(cert, 2)
    assert ext.get_complexity() == cert.get_complexity()
    with pytest.raises(DomainError):
        base_extension(construct(2, 3), 3)


def test_certificate_json_round_trip():
    for q, n in [(2, 3), (9, 5), (2, 6), (3, 9)]:
        cert = construct(q, n)
        cert.get_complexity()
        again = SdnbCertificate.from_json(cert.to_json())
        assert again.gamma == cert.gamma
        assert again.to_json() == cert.to_json()
        assert verify_sdnb(again.gamma, again.field)


def test_complexity_examples():
    assert complexity(construct_even_quadratic(2).gamma, extension(2, 2)) == 3
    with pytest.raises(DomainError):
        complexity(extension(2, 3).one, extension(2, 3))
