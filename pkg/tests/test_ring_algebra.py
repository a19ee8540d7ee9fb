import pytest

from cfkcalc.ring_algebra import (
    Mode,
    Monomial,
    RingElement,
    RingError,
    add,
    inverse,
    is_unit,
    mul,
    parse,
    render,
)


def test_addition_is_mod_two():
    a = RingElement.monomial(1, 2)
    assert add(a, a).is_zero()
    b = RingElement.monomial(0, 1)
    assert render(add(a, b)) == render(add(b, a))


def test_multiplication_adds_exponents():
    a = RingElement.monomial(1, 2)
    b = RingElement.monomial(3, 0)
    assert mul(a, b) == RingElement.monomial(4, 2)


def test_distributive_law():
    a = parse("U^1 V^0 + U^0 V^1")
    b = parse("U^2 V^1")
    c = parse("U^0 V^0 + U^1 V^1")
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))


def test_negative_exponent_rejected_in_poly_mode():
    with pytest.raises(RingError):
        RingElement.monomial(-1, 0)


def test_local_mode_units():
    u = RingElement.monomial(-2, -2, Mode.LOCAL)
    assert is_unit(u)
    assert mul(u, inverse(u)) == RingElement.one(Mode.LOCAL)


def test_poly_mode_units():
    assert is_unit(RingElement.one())
    assert not is_unit(RingElement.monomial(1, 0))
    with pytest.raises(RingError):
        inverse(RingElement.monomial(0, 1))


def test_mode_mismatch_rejected():
    with pytest.raises(RingError):
        add(RingElement.one(Mode.POLY), RingElement.one(Mode.LOCAL))


def test_render_parse_round_trip():
    for text in ["0", "U^0 V^0", "U^1 V^3 + U^2 V^0"]:
        assert render(parse(text)) == render(parse(render(parse(text))))
    assert render(RingElement.zero()) == "0"


def test_monomial_division():
    assert Monomial(1, 1).divides(Monomial(2, 1))
    assert not Monomial(1, 2).divides(Monomial(2, 1))
