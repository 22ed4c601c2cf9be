from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdnb.cyclotomic import Kind, class_type_census, decompose
from sdnb.errors import DomainError
from sdnb.fields import base_field
from sdnb.fourier import FourierCtx, conjugate_in_frequency, forward, inverse
from sdnb.group_algebra import GaElement


def orbits_by_hand(n, q):
    # independent oracle: sets of {s q^k mod n}
    seen, out = set(), []
    for s in range(n):
        if s not in seen:
            orb = {(s * q**k) % n for k in range(n)}
            seen |= orb
            out.append(frozenset(orb))
    return set(out)


def test_decompose_examples():
    d = decompose(3, 2)
    assert [set(c.members) for c in d.classes] == [{0}, {1, 2}]
    assert d.classes[1].kind is Kind.SELF_PAIRED and d.m == 2
    assert class_type_census(d) == (2, 0, [1], [])

    d = decompose(5, 2)
    assert d.classes[1].members == (1, 2, 4, 3) and d.classes[1].kind is Kind.SELF_PAIRED
    assert d.m == 4 and d.census()[2] == [2]

    d = decompose(7, 2)
    assert [c.members for c in d.classes] == [(0,), (1, 2, 4), (3, 6, 5)]
    assert d.classes[1].kind is Kind.PAIRED and d.classes[1].partner == 3
    assert class_type_census(d) == (1, 1, [], [3])

    assert decompose(9, 2).census() == (3, 0, [3, 1], [])


COPRIME = [(n, q) for q in (2, 3, 4, 5, 7, 8, 13) for n in range(1, 40, 2) if gcd(n, q) == 1]


@pytest.mark.parametrize("n,q", COPRIME)
def test_classes_partition(n, q):
    d = decompose(n, q)
    assert {frozenset(c.members) for c in d.classes} == orbits_by_hand(n, q)
    for c in d.classes:
        assert c.rep == min(c.members)
        neg = {(-s) % n for s in c.members}
        if c.kind is Kind.SELF_PAIRED:
            assert neg == set(c.members) and c.size % 2 == 0
        elif c.kind is Kind.PAIRED:
            assert neg == set(d.cls(c.partner).members)
            assert d.cls(c.partner).partner == c.rep
    sigma, tau, cs, ds = d.census()
    assert 1 + 2 * sum(cs) + 2 * sum(ds) == n


def test_decompose_rejects():
    with pytest.raises(DomainError):
        decompose(9, 3)
    with pytest.raises(DomainError):
        decompose(4, 3)


FOURIER = [(2, 3), (2, 7), (3, 5), (2, 9), (4, 5), (5, 3), (9, 5)]


def ga(q, n):
    F = base_field(q)
    return st.lists(st.integers(0, q - 1), min_size=n, max_size=n).map(lambda c: GaElement.make(F, c))


@pytest.mark.parametrize("q,n", FOURIER)
def test_forward_examples(q, n):
    ctx = FourierCtx(q, n)
    E, F = ctx.E, ctx.F
    assert forward(GaElement.one(F, n), ctx) == [E.one] * n
    assert forward(GaElement.monomial(F, n, 1), ctx) == ctx.zeta_pows
    ones = GaElement.make(F, [1] * n)
    nn = E.from_base(F.from_int(n))
    assert forward(ones, ctx) == [nn] + [E.zero] * (n - 1)
    assert inverse([E.one] * n, ctx) == GaElement.one(F, n)
    assert inverse([nn] + [E.zero] * (n - 1), ctx) == ones


@pytest.mark.parametrize("q,n", FOURIER)
@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_fourier_properties(q, n, data):
    ctx = FourierCtx(q, n)
    E = ctx.E
    a, b = data.draw(ga(q, n)), data.draw(ga(q, n))
    fa, fb = forward(a, ctx), forward(b, ctx)
    assert inverse(fa, ctx) == a
    assert forward(a * b, ctx) == [E.mul(x, y) for x, y in zip(fa, fb)]
    assert conjugate_in_frequency(fa) == forward(a.conjugate(), ctx)
    assert conjugate_in_frequency(conjugate_in_frequency(fa)) == fa
    assert conjugate_in_frequency(fa)[0] == fa[0]
    # components on one class are Frobenius conjugates
    assert ctx.spread({c.rep: fa[c.rep] for c in ctx.decomposition.classes}) == fa


def test_inverse_rejects_irrational_values():
    ctx = FourierCtx(2, 3)
    E = ctx.E
    vals = [E.one, E.gen(), E.one]  # not Frobenius-compatible
    with pytest.raises(DomainError):
        inverse(vals, ctx)
