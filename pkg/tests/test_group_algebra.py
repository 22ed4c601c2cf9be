import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdnb.construct import construct
from sdnb.fields import base_field, extension
from sdnb.group_algebra import (
    GaElement,
    NotInvertibleError,
    act,
    augmentation,
    batch_conjugate,
    batch_is_orthogonal,
    batch_mul,
    circulant_of,
    compute_R,
    conjugate,
    ga_inverse,
    ga_mul,
)

CASES = [(2, 3), (3, 5), (4, 3), (5, 3), (3, 3), (9, 4)]


def ga(q, n):
    F = base_field(q)
    return st.lists(st.integers(0, q - 1), min_size=n, max_size=n).map(lambda c: GaElement.make(F, c))


def matmul(F, A, B):
    n = len(A)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = F.add(acc, F.mul(A[i][k], B[k][j]))
            out[i][j] = acc
    return out


def test_small_products():
    F = base_field(2)
    one = GaElement.one(F, 3)
    X = GaElement.monomial(F, 3, 1)
    a = GaElement.make(F, [1, 1, 0])
    assert a * one == a
    assert GaElement.monomial(F, 3, 2) * X == one
    assert ga_mul(GaElement.make(F, [1, 1, 0]), GaElement.make(F, [1, 0, 1])) == GaElement.make(F, [0, 1, 1])


def test_conjugation_and_augmentation_examples():
    F = base_field(5)
    n = 4
    one = GaElement.one(F, n)
    X = GaElement.monomial(F, n, 1)
    assert conjugate(one) == one
    assert conjugate(X) == GaElement.monomial(F, n, n - 1)
    assert augmentation(one) == 1
    assert all(augmentation(GaElement.monomial(F, n, k)) == 1 for k in range(n))
    assert ga_inverse(one) == one
    assert ga_inverse(X) == GaElement.monomial(F, n, n - 1)


@pytest.mark.parametrize("q,n", CASES)
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_ring_properties(q, n, data):
    a, b = data.draw(ga(q, n)), data.draw(ga(q, n))
    F = a.F
    assert conjugate(conjugate(a)) == a
    assert conjugate(a * b) == conjugate(a) * conjugate(b)
    assert augmentation(a * b) == F.mul(augmentation(a), augmentation(b))
    assert a * b == b * a
    A, B = circulant_of(a), circulant_of(b)
    assert matmul(F, A, B) == circulant_of(a * b)
    if a.is_unit():
        assert a * a.inverse() == GaElement.one(F, n)
    else:
        with pytest.raises(NotInvertibleError):
            a.inverse()


def test_circulant_examples():
    F = base_field(2)
    assert circulant_of(GaElement.one(F, 3)) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert circulant_of(GaElement.monomial(F, 3, 1)) == [[0, 1, 0], [0, 0, 1], [1, 0, 0]]


@pytest.mark.parametrize("q,n", [(2, 3), (3, 5), (4, 3), (2, 4)])
@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_action_is_a_module_structure(q, n, data):
    E = extension(q, n)
    F = E.base
    a, b = data.draw(ga(q, n)), data.draw(ga(q, n))
    x = E.element(data.draw(st.integers(0, E.order - 1)))
    assert act(GaElement.one(F, n), x, E) == x
    assert act(GaElement.monomial(F, n, 1), x, E) == E.frobenius(x)
    assert act(GaElement.make(F, [1] * n), x, E) == E.from_base(E.trace(x))
    assert act(a * b, x, E) == act(a, act(b, x, E), E)
    assert act(a + b, x, E) == E.add(act(a, x, E), act(b, x, E))


@pytest.mark.parametrize("q,n", [(2, 3), (3, 5), (5, 3), (3, 3), (4, 5)])
def test_compute_R_properties(q, n):
    E = extension(q, n)
    F = E.base
    for seed in range(5):
        alpha = E.find_normal_element(seed)
        R = compute_R(alpha, E)
        assert R.conjugate() == R
        t = E.trace(alpha)
        assert R.augmentation() == F.mul(t, t)
    cert = construct(q, n)
    assert compute_R(cert.gamma, cert.field) == GaElement.one(F, n)


@pytest.mark.parametrize("q,n", [(2, 5), (3, 5), (4, 3), (9, 3)])
@settings(max_examples=15, deadline=None)
@given(data=st.data())
def test_batch_ops_match_scalar(q, n, data):
    rows_a = [data.draw(ga(q, n)) for _ in range(4)]
    rows_b = [data.draw(ga(q, n)) for _ in range(4)]
    F = rows_a[0].F
    A = np.array([r.coeffs for r in rows_a], dtype=np.int64)
    B = np.array([r.coeffs for r in rows_b], dtype=np.int64)
    assert batch_mul(F, A, B).tolist() == [list((a * b).coeffs) for a, b in zip(rows_a, rows_b)]
    assert batch_conjugate(A).tolist() == [list(a.conjugate().coeffs) for a in rows_a]
    one = GaElement.one(F, n)
    assert batch_is_orthogonal(F, A).tolist() == [a * a.conjugate() == one for a in rows_a]


def test_json_round_trip():
    F = base_field(9)
    a = GaElement.make(F, [0, 3, 8, 1])
    assert GaElement.from_json(F, a.to_json()) == a
