import random
from fractions import Fraction

import pytest

from lcpde.catalog import INTEGRABLE, flat_entry, integrable_catalog, lax_pair, tetrahedral_lax_pair
from lcpde.errors import NotProportional
from lcpde.exact import MPoly
from lcpde.laxpair import JET_VARS, JetVectorField, LaxPair, commutator, verify_lax


def jet(text):
    return MPoly.parse(text, JET_VARS)


def test_constant_fields_commute():
    assert commutator(JetVectorField((1, 0, 0)), JetVectorField((0, 1, 0))).is_zero()


def test_hand_expanded_commutator():
    X = JetVectorField(("l", "-u1", 0))
    Y = JetVectorField((0, "l - u2", 1))
    c = commutator(X, Y).components
    assert c[0].is_zero() and c[2].is_zero()
    assert c[1] == jet("u13 + u1*u22 - u2*u12")


def test_antisymmetry():
    for _, lp in integrable_catalog()[1:]:
        assert commutator(lp.X, lp.Y).components == (-commutator(lp.Y, lp.X)).components


def test_recorded_multipliers():
    expected = {
        "[(33)]": ("0", "1", "0"),
        "[(11)(112)]": ("0", "0", "l^2"),
        "[(11)(22)]": ("0", "0", "-1"),
        "[(123)]": ("0", "0", "1"),
    }
    for label, mults in expected.items():
        lp = lax_pair(label)
        v = verify_lax(lp.X, lp.Y, flat_entry(label).F)
        assert v.ok
        assert tuple(m.num.pretty() if m.den.is_constant() else str(m) for m in v.multipliers) == tuple(
            jet(t).pretty() for t in mults)


def test_tetrahedral_with_denominators():
    lp = tetrahedral_lax_pair(0, 1, 2)
    v = verify_lax(lp.X, lp.Y, flat_entry("[(11)(11)(11)]").F)
    assert v.ok
    assert v.denominator == (jet("(l - 2)*u1") * jet("l*u1")) ** 2
    assert v.multipliers[1].is_zero() and v.multipliers[2].is_zero()


@pytest.mark.parametrize("label", INTEGRABLE)
def test_specializations(label):
    lp = lax_pair(label)
    S = flat_entry(label).F
    rng = random.Random(label)
    done = 0
    while done < 20:
        lam = Fraction(rng.randint(-30, 30), rng.randint(1, 7))
        if label == "[(11)(11)(11)]" and lam in (0, 2):
            continue  # poles of the spectral parameter
        sp = lp.specialize(lam)
        assert verify_lax(sp.X, sp.Y, S).ok
        done += 1


def test_flipped_sign():
    X = JetVectorField(("l", "-u1", 0))
    Y = JetVectorField((0, "-(l - u2)", 1))
    with pytest.raises(NotProportional):
        verify_lax(X, Y, flat_entry("[(33)]").F)


@pytest.mark.parametrize("label", INTEGRABLE)
def test_every_single_flip_fails(label):
    lp = lax_pair(label)
    S = flat_entry(label).F
    for i, c in enumerate(lp.X.coeffs):
        if not c.is_zero():
            with pytest.raises(NotProportional):
                verify_lax(lp.X.negate_term(i), lp.Y, S)


@pytest.mark.parametrize("target", ["[111(111)]*", "[(111)(111)]", "[(114)]", "[(24)]"])
def test_mismatched_pairs(target):
    S = flat_entry(target).F
    for label in INTEGRABLE:
        lp = lax_pair(label)
        with pytest.raises(NotProportional):
            verify_lax(lp.X, lp.Y, S)


def test_second_jets_rejected():
    with pytest.raises(ValueError):
        JetVectorField(("u11", 0, 0))
