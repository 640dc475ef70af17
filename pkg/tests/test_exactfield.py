from __future__ import annotations

import math

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from shapoval.exactfield import (
    INF,
    Cyclotomic,
    RationalFunction,
    UnitValue,
    field_arith,
    gaussian_binomial,
    qfact,
    qnum,
    qnum_qfact,
    unit_order,
)

from conftest import units

N = 12


def cyclotomics(n=N):
    return st.lists(st.integers(-3, 3), min_size=n, max_size=n).map(
        lambda cs: sum((Cyclotomic.zeta_power(n, e, c) for e, c in enumerate(cs)), Cyclotomic.zero(n)))


def rational_functions(n=N):
    laurent = st.dictionaries(st.integers(-2, 2), cyclotomics(n), max_size=3)
    return st.tuples(laurent, laurent).map(
        lambda nd: RationalFunction.from_laurent(n, nd[0]) / (RationalFunction.from_laurent(n, nd[1]) or RationalFunction.constant(n, 1)))


def test_examples():
    z = RationalFunction.z(4)
    one = RationalFunction.constant(4, 1)
    assert field_arith(z - 1, one, "add") == z
    i = UnitValue.zeta(4, 1).to_field()
    assert field_arith(i, i, "mul") == RationalFunction.constant(4, -1)
    inv = field_arith(one + z, one, "inv")
    assert inv * (one + z) == one
    assert inv.den[-1] == 1


def test_division_by_zero_is_explicit():
    with pytest.raises(ZeroDivisionError):
        RationalFunction.constant(4, 0).inverse()
    with pytest.raises(ZeroDivisionError):
        Cyclotomic.zero(6).inverse()


def test_unit_order_examples():
    assert unit_order(UnitValue.zeta(6, 2)) == 3
    assert unit_order(UnitValue.zvar(6)) == INF
    assert unit_order(UnitValue.one(6)) == 1
    assert unit_order(UnitValue(2, 0, 0, 6)) == INF


def test_qnumbers():
    z3 = UnitValue.zeta(6, 2)
    assert qnum(3, z3).is_zero()
    assert not qnum(2, z3).is_zero()
    assert qnum_qfact(0, z3, "fact") == RationalFunction.constant(6, 1)
    z = UnitValue.zvar(2)
    assert qfact(2, z) == RationalFunction.from_laurent(2, {0: Cyclotomic.one(2), 1: Cyclotomic.one(2)})
    with pytest.raises(ValueError):
        qnum_qfact(2, z, "both")


@pytest.mark.parametrize("n,e", [(4, 1), (6, 1), (6, 2), (10, 2), (8, 3)])
def test_qnum_vanishes_exactly_at_order(n, e):
    q = UnitValue.zeta(n, e)
    order = unit_order(q)
    vanish = [m for m in range(1, 2 * order + 1) if qnum(m, q).is_zero()]
    assert vanish == [order, 2 * order]


@given(st.integers(0, 6), st.integers(0, 6))
def test_gaussian_binomial_symmetric_and_at_one(m, k):
    z = UnitValue.zvar(2)
    assert gaussian_binomial(m, k, z) == gaussian_binomial(m, m - k, z) if k <= m else True
    one = UnitValue.one(2)
    expected = math.comb(m, k) if k <= m else 0
    assert gaussian_binomial(m, k, one) == RationalFunction.constant(2, expected)


@given(st.integers(1, 6), st.integers(1, 5))
def test_gaussian_binomial_times_factorials(m, k):
    if k > m:
        return
    z = UnitValue.zvar(2)
    lhs = gaussian_binomial(m, k, z) * qfact(k, z) * qfact(m - k, z)
    assert lhs == qfact(m, z)


@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_cyclotomic_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    if a:
        assert a * a.inverse() == Cyclotomic.one(N)


def test_zeta_relations():
    for n in (4, 6, 10, 12):
        zeta = Cyclotomic.zeta_power(n, 1)
        assert zeta ** n == Cyclotomic.one(n)
        assert zeta ** (n // 2) == -Cyclotomic.one(n)
        assert zeta.mul_zeta(n - 1) == Cyclotomic.one(n)


@given(rational_functions(), rational_functions(), rational_functions())
def test_rational_function_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a - a == RationalFunction.constant(N, 0)
    if b:
        assert (a / b) * b == a
        assert b.den[-1] == 1


@given(units(), units())
def test_unit_embedding_is_multiplicative(u, v):
    assert (u * v).to_field() == u.to_field() * v.to_field()
    assert u.inverse().to_field() == u.to_field().inverse()
    assert (u / v) * v == u


def test_unit_validation():
    with pytest.raises(ValueError):
        UnitValue(mpq(-1), 0, 0, 4)
    with pytest.raises(ValueError):
        UnitValue(1, 0, 0, 3)
    assert UnitValue.minus_one(6).to_field() == RationalFunction.constant(6, -1)
    assert str(UnitValue(mpq(1, 2), 3, -2, 6)) == "-1/2*z^-2"


def test_laurent_round_trip():
    n = 6
    terms = {-2: Cyclotomic.zeta_power(n, 1), 3: Cyclotomic.rational(n, 5)}
    rf = RationalFunction.from_laurent(n, terms)
    assert rf.is_laurent()
    assert rf.to_laurent() == terms
    assert not (RationalFunction.constant(n, 1) / (RationalFunction.z(n) + 1)).is_laurent()
