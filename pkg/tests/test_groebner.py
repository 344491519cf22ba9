"""Groebner bases of the constraint ideals in the expansion unknowns."""

import pytest

from ckexpand.groebner import (
    ParamPoly,
    groebner_basis,
    ideal_equals,
    reduce_mod_ideal,
)
from ckexpand.poly import parse_scalar

AB = ("a1", "a2")


def pp(text):
    return ParamPoly.from_scalar(parse_scalar(text), AB)


def test_from_scalar_splits_unknowns_from_parameters():
    p = pp("4*w2*c1*a1^2 + w1")
    assert p.total_degree() == 2
    assert str(p) == "4*c1*w2*a1^2 + w1"
    assert p.constant_part() == parse_scalar("w1")


def test_from_scalar_rejects_unknowns_in_denominator():
    with pytest.raises(ValueError):
        ParamPoly.from_scalar(parse_scalar("w1 / a1"), AB)


def test_proportionality_over_the_parameter_field():
    a = pp("4*w2*c1*a1^2 + w1")
    assert a.proportional_to(pp("-8*w2*c1*a1^2 - 2*w1"))
    assert a.proportional_to(pp("w1*(4*w2*c1*a1^2 + w1)"))
    assert not a.proportional_to(pp("4*w2*c1*a1^2 - w1"))
    assert not a.proportional_to(pp("a1"))


def test_normalized_clears_denominators_and_content():
    raw = pp("2*a1^2 + 1/2").scale(parse_scalar("1/(w2)"))
    assert str(raw.normalized()) == "4*a1^2 + 1"
    assert str(pp("-6*w1*a1 - 2*w1*a2").normalized()) == "3*a1 + a2"


def test_principal_ideal():
    ideal = groebner_basis([pp("4*w2*c1*a1^2 + w1")], AB)
    assert len(ideal.groebner) == 1
    assert str(ideal.groebner[0]) == "a1^2 + (1/4*w1)/(c1*w2)"
    assert reduce_mod_ideal(pp("4*w2*c1*a1^2 + w1"), ideal).is_zero
    # a derived combination: -w1*w2 is the normal form of 4*w2^2*c1*a1^2
    nf = reduce_mod_ideal(pp("4*w2^2*c1*a1^2"), ideal)
    assert nf == pp("-w1*w2")


def test_two_quadratic_ideal_reduces_its_generators():
    g1 = pp("4*w1*c1*a1^2 + c1*a2^2 + 8*w1*c2*a1*a2 + w2")
    g2 = pp("4*w1*c2*a1^2 + c2*a2^2 + 2*c1*a1*a2")
    ideal = groebner_basis([g1, g2], AB)
    assert reduce_mod_ideal(g1, ideal).is_zero
    assert reduce_mod_ideal(g2, ideal).is_zero
    # the combination c2*g1 - c1*g2 is linear in the monomials a1*a2, 1
    combo = g1.scale(parse_scalar("c2")) - g2.scale(parse_scalar("c1"))
    assert reduce_mod_ideal(combo, ideal).is_zero
    assert combo.total_degree() == 2


def test_ideal_equality_modulo_presentation():
    # the a2-divisible generator presents the same ideal because the
    # constant term of the first quadratic is an invertible parameter
    with_factor = groebner_basis(
        [pp("c1*a2^2 + w2"), pp("2*c1*a1*a2 + c2*a2^2")], AB
    )
    linear = groebner_basis([pp("c1*a2^2 + w2"), pp("2*c1*a1 + c2*a2")], AB)
    assert ideal_equals(with_factor, linear)
    assert not ideal_equals(linear, groebner_basis([pp("a1")], AB))


def test_trivial_and_unit_ideals():
    empty = groebner_basis([], AB)
    assert empty.is_trivial
    p = pp("a1*a2 + w1")
    assert reduce_mod_ideal(p, empty) == p
    unit = groebner_basis([pp("a1"), pp("a1 + 1")], AB)
    assert [str(b) for b in unit.groebner] == ["1"]
    assert reduce_mod_ideal(pp("w1*a2^2"), unit).is_zero


def test_buchberger_textbook_example():
    # x^2 - y, x^3 - x over unknowns (x, y): the reduced basis exposes y
    xy = ("x", "y")
    f = ParamPoly.from_scalar(parse_scalar("x^2 - y"), xy)
    g = ParamPoly.from_scalar(parse_scalar("x^3 - x"), xy)
    ideal = groebner_basis([f, g], xy)
    members = [str(b) for b in ideal.groebner]
    assert "x^2 - y" in members
    assert any("y^2" in m or "x*y" in m for m in members)
    assert reduce_mod_ideal(
        ParamPoly.from_scalar(parse_scalar("x^4 - x^2"), xy), ideal
    ).is_zero


def test_unknown_budget_is_enforced():
    with pytest.raises(ValueError):
        groebner_basis([], ("a1", "a2", "a3", "a4"))
