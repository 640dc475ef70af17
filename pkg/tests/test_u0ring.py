from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shapoval.exactfield import RationalFunction, UnitValue
from shapoval.u0ring import (
    U0Poly,
    WeightCharacter,
    char_eval,
    char_eval_lpoly,
    equal_up_to_unit,
    lattice_hnf,
    normalize_unit,
    quotient_specialize,
    reduce_mod_lattice,
    u0_mul,
)

N = 4
Q = UnitValue.zeta(N, 1)


def K(i=0, r=1):
    return U0Poly.K(i, r, N)


def L(i=0, r=1):
    return U0Poly.L(i, r, N)


def Kinv():
    return U0Poly.monomial((-1,), (0,), 1, N)


def u0polys(rank=2, n=N):
    mono = st.tuples(st.tuples(*[st.integers(-2, 2)] * rank), st.tuples(*[st.integers(-2, 2)] * rank))
    coeff = st.tuples(st.integers(1, 3), st.integers(0, n - 1)).map(lambda t: UnitValue(t[0], t[1], 0, n))
    return st.dictionaries(mono, coeff, max_size=4).map(
        lambda d: sum((U0Poly.monomial(k, l, c, n) for (k, l), c in d.items()), U0Poly.zero(rank, n)))


def test_mul_examples():
    one = U0Poly.one(1, N)
    assert u0_mul(K() - L(), one) == K() - L()
    assert u0_mul(K() - L(), K() + L()) == K() ** 2 - L() ** 2
    a = U0Poly.binomial((1,), Q, Q, N)
    b = U0Poly.binomial((1,), Q, Q ** 2, N)
    expected = (K() ** 2).scale(Q ** 2) - (K() * L()).scale(Q.to_field() ** 2 + Q.to_field() ** 3) + (L() ** 2).scale(Q ** 3)
    assert u0_mul(a, b) == expected


@given(u0polys(), u0polys(), u0polys())
def test_commutative_ring(a, b, c):
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert U0Poly.from_lpoly(a.to_lpoly(), 2) == a


def test_char_eval_examples():
    triv = WeightCharacter.trivial(1, N)
    assert not char_eval(triv, K() - L())
    lam = WeightCharacter((UnitValue.zvar(N),), (UnitValue.one(N),))
    assert char_eval(lam, K() - L()) == RationalFunction.z(N) - 1
    t = 2
    rho = Q
    p = U0Poly.binomial((1,), rho, Q ** t, N)
    assert char_eval(lam, p) == rho.to_field() * lam.K((1,)).to_field() - (Q ** t).to_field()


@given(u0polys(), u0polys())
def test_char_eval_is_a_ring_map(a, b):
    lam = WeightCharacter((UnitValue.zvar(N, 2), UnitValue(1, 1, -1, N)), (UnitValue.zeta(N, 3), UnitValue.zvar(N, 1)))
    assert char_eval(lam, a * b) == char_eval(lam, a) * char_eval(lam, b)
    assert char_eval(lam, a + b) == char_eval(lam, a) + char_eval(lam, b)
    via_lp = char_eval_lpoly(lam, a.to_lpoly(), 2)
    assert RationalFunction.from_laurent(N, {e[0]: c for e, c in via_lp.terms.items()}) == char_eval(lam, a)


def test_normalize_unit_examples():
    assert normalize_unit(K().scale(5)) == K()
    p = K().scale(Q) - L().scale(Q ** 2)
    assert normalize_unit(p) == K() - L().scale(Q)
    zp = (K() - L()).scale(UnitValue.zvar(N))
    assert normalize_unit(zp) == K() - L()
    with pytest.raises(ZeroDivisionError):
        normalize_unit(U0Poly.zero(1, N))


@given(u0polys())
def test_normalize_unit_absorbs_units(p):
    if not p:
        return
    for u in (UnitValue(3, 1, 2, N), UnitValue(1, 3, -1, N)):
        assert equal_up_to_unit(p, p.scale(u))


def test_negative_powers():
    assert K() ** -1 == Kinv()
    assert (K().scale(Q)) ** -2 * K().scale(Q) ** 2 == U0Poly.one(1, N)
    with pytest.raises(ValueError):
        (K() - L()) ** -1


def test_not_equal_up_to_unit():
    assert not equal_up_to_unit(K() - L(), K() + L().scale(2))


def test_quotient_specialize_examples():
    assert quotient_specialize(K() - L()) == K() - Kinv()
    assert quotient_specialize(K() ** 3, ((3,),)) == U0Poly.one(1, N)
    qb = K().scale(Q) - L().scale(Q ** 2)
    assert quotient_specialize(qb) == K().scale(Q) - Kinv().scale(Q ** 2)


def test_lattice_reduction():
    hnf = lattice_hnf([(3, 0), (0, 3), (3, 3)])
    assert reduce_mod_lattice((4, -1), hnf) == (1, 2)
    assert reduce_mod_lattice((3, 3), hnf) == (0, 0)


@given(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_lattice_reduction_is_canonical(v, shift):
    gens = [(2, 0), (1, 3)]
    hnf = lattice_hnf(gens)
    w = (v[0] + shift[0] * 2 + shift[1] * 1, v[1] + shift[1] * 3)
    assert reduce_mod_lattice(v, hnf) == reduce_mod_lattice(w, hnf)


def test_weight_character_on_monomial():
    lam = WeightCharacter((UnitValue.zvar(N, 1), UnitValue.zeta(N, 1)), (UnitValue.one(N), UnitValue.zvar(N, -1)))
    val = lam.on_monomial((2, -1), (0, 3))
    assert val == UnitValue(1, -1, -1, N)
