from __future__ import annotations

import pytest

from shapoval.bicharacter import Bicharacter
from shapoval.errors import CapExceededError
from shapoval.exactfield import INF, UnitValue
from shapoval.weylgroupoid import (
    Caps,
    all_records,
    beta_sequence,
    check_axioms,
    classify,
    coxeter_number,
    coxeter_relations,
    length,
    longest_word,
    orbit,
    positive_roots,
    reduce_word,
    roots_of,
    tamper,
    word_from_letters,
)

from conftest import a2_generic, a2_zeta3, rank1, super_example, zunit


def test_orbit_sizes():
    assert len(orbit(a2_generic()).objects) == 1
    assert len(orbit(rank1(4, 1)).objects) == 1
    assert len(orbit(a2_zeta3()).objects) == 1
    assert len(orbit(super_example()).objects) == 3


def test_positive_roots_examples():
    _, rec = roots_of(rank1(4, 1))
    assert rec.positive_roots == ((1,),)
    _, rec = roots_of(a2_generic())
    assert set(rec.positive_roots) == {(1, 0), (0, 1), (1, 1)}
    assert all(b == INF for b in rec.bounds.values())
    _, rec = roots_of(a2_zeta3())
    assert set(rec.positive_roots) == {(1, 0), (0, 1), (1, 1)}
    assert all(b == 3 for b in rec.bounds.values())


@pytest.mark.parametrize("ctype,d,count", [
    (((2, -2), (-1, 2)), (1, 2), 4),
    (((2, -3), (-1, 2)), (1, 3), 6),
    (((2, -1, 0), (-1, 2, -1), (0, -1, 2)), (1, 1, 1), 6),
])
def test_finite_cartan_types_have_the_expected_number_of_roots(ctype, d, count):
    _, rec = roots_of(Bicharacter.cartan_type(ctype, d, zunit(1)))
    assert len(rec.positive_roots) == count


def test_reduce_word():
    scheme = orbit(a2_generic())
    w = word_from_letters(scheme, 0, (0, 0))
    assert len(reduce_word(scheme, w)) == 0
    w = word_from_letters(scheme, 0, (0, 1, 0))
    assert length(scheme, w) == 3
    assert len(reduce_word(scheme, word_from_letters(scheme, 0, ()))) == 0
    w = word_from_letters(scheme, 0, (0, 1, 0, 1, 0, 1))
    assert length(scheme, w) == 0


def test_longest_word_and_betas():
    scheme = orbit(rank1(4, 1))
    w = longest_word(scheme)
    assert w.letters == (0,) and beta_sequence(scheme, w) == [(1,)]
    scheme = orbit(a2_generic())
    w = longest_word(scheme)
    assert w.letters == (0, 1, 0)
    assert beta_sequence(scheme, w) == [(1, 0), (1, 1), (0, 1)]


def test_longest_word_super_every_object():
    scheme = orbit(super_example())
    for a in range(len(scheme.objects)):
        w = longest_word(scheme, a)
        rec = positive_roots(scheme, a)
        assert w.target == a
        assert len(w) == len(rec.positive_roots)
        assert set(beta_sequence(scheme, w)) == set(rec.positive_roots)


def test_beta_sequence_rejects_non_reduced():
    scheme = orbit(a2_generic())
    with pytest.raises(ValueError):
        beta_sequence(scheme, word_from_letters(scheme, 0, (0, 0)))


def test_classify():
    assert classify(a2_zeta3()) == "X5"
    assert classify(a2_generic()) == "X3"
    assert classify(Bicharacter(((UnitValue.one(2),),))) == "X3"
    assert classify(rank1(4, 1)) == "X5"
    assert classify(super_example()) == "X3"
    assert classify(Bicharacter(((zunit(2), zunit(1)), (zunit(1), zunit(2))))) == "not_X1"


def test_classify_cap():
    affine = Bicharacter(((zunit(2), zunit(-2)), (zunit(-2), zunit(2))))
    with pytest.raises(CapExceededError):
        classify(affine)
    with pytest.raises(CapExceededError):
        orbit(super_example(), Caps(max_objects=2))


@pytest.mark.parametrize("make", [lambda: rank1(4, 1), a2_generic, a2_zeta3, super_example],
                         ids=["rank1", "a2g", "a2z3", "super"])
def test_axioms_hold(make):
    chi = make()
    scheme = orbit(chi)
    records = all_records(scheme)
    assert check_axioms(scheme, records) == []
    assert coxeter_relations(scheme, records) == []


def test_coxeter_number_a2():
    scheme, rec = roots_of(a2_generic())
    assert coxeter_number(rec, 0, 1) == 3


def test_tamper_reports_c2():
    scheme = orbit(super_example())
    a, i = next((a, i) for (a, i), b in sorted(scheme.reflections.items()) if b != a)
    j = 1 - i
    bad = check_axioms(tamper(scheme, a, i, j))
    assert any(v.startswith("(C2)") for v in bad)


def test_root_finiteness_consistency():
    # a finite orbit with a finite morphism set gives finitely many roots, and vice versa
    for chi in (a2_generic(), a2_zeta3(), super_example()):
        scheme = orbit(chi)
        for a in range(len(scheme.objects)):
            w = longest_word(scheme, a)
            assert len(w) == len(positive_roots(scheme, a).positive_roots)
