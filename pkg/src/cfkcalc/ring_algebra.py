"""Coefficient arithmetic over F2 in two formal variables U and V.

Two ring modes are supported.  ``Mode.POLY`` is the polynomial ring
F2[U, V]; every exponent is non-negative.  ``Mode.LOCAL`` inverts the
product UV, which makes every monomial a unit (U^-1 = V (UV)^-1).  The
one-variable U of the filtered model is the diagonal monomial U^k V^k.

Elements are kept fully expanded as a set of monomials, so equality is a
set comparison.  Text form is ``"U^a V^b + U^c V^d"`` and ``"0"`` for zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable


class Mode(str, Enum):
    POLY = "poly"
    LOCAL = "local"


class RingError(ValueError):
    """Raised on mode mismatches, negative polynomial exponents and bad text."""


@dataclass(frozen=True, order=True)
class Monomial:
    u_exp: int
    v_exp: int

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.u_exp + other.u_exp, self.v_exp + other.v_exp)

    def inverse(self) -> "Monomial":
        return Monomial(-self.u_exp, -self.v_exp)

    def divides(self, other: "Monomial") -> bool:
        """True when other / self has non-negative exponents."""
        return other.u_exp >= self.u_exp and other.v_exp >= self.v_exp

    def is_polynomial(self) -> bool:
        return self.u_exp >= 0 and self.v_exp >= 0

    def render(self) -> str:
        return f"U^{self.u_exp} V^{self.v_exp}"

    def __str__(self) -> str:
        return self.render()


ONE_MONOMIAL = Monomial(0, 0)


def u_power(k: int) -> Monomial:
    """The one-variable U^k, i.e. the diagonal monomial (UV)^k."""
    return Monomial(k, k)


@dataclass(frozen=True)
class RingElement:
    terms: frozenset[Monomial]
    mode: Mode = Mode.POLY

    def __post_init__(self) -> None:
        if self.mode is Mode.POLY:
            for m in self.terms:
                if not m.is_polynomial():
                    raise RingError(f"negative exponent {m} in polynomial mode")

    @classmethod
    def zero(cls, mode: Mode = Mode.POLY) -> "RingElement":
        return cls(frozenset(), mode)

    @classmethod
    def one(cls, mode: Mode = Mode.POLY) -> "RingElement":
        return cls(frozenset([ONE_MONOMIAL]), mode)

    @classmethod
    def monomial(cls, u_exp: int, v_exp: int, mode: Mode = Mode.POLY) -> "RingElement":
        return cls(frozenset([Monomial(u_exp, v_exp)]), mode)

    @classmethod
    def from_terms(cls, terms: Iterable[Monomial], mode: Mode = Mode.POLY) -> "RingElement":
        acc: set[Monomial] = set()
        for m in terms:
            acc ^= {m}
        return cls(frozenset(acc), mode)

    def is_zero(self) -> bool:
        return not self.terms

    def single(self) -> Monomial:
        """The unique monomial of a one-term element."""
        if len(self.terms) != 1:
            raise RingError(f"{self} is not a single monomial")
        return next(iter(self.terms))

    def __add__(self, other: "RingElement") -> "RingElement":
        return add(self, other)

    def __mul__(self, other: "RingElement") -> "RingElement":
        return mul(self, other)

    def __str__(self) -> str:
        return render(self)


def _check_modes(a: RingElement, b: RingElement) -> None:
    if a.mode is not b.mode:
        raise RingError(f"mode mismatch: {a.mode.value} vs {b.mode.value}")


def add(a: RingElement, b: RingElement) -> RingElement:
    _check_modes(a, b)
    return RingElement(a.terms ^ b.terms, a.mode)


def mul(a: RingElement, b: RingElement) -> RingElement:
    _check_modes(a, b)
    return RingElement.from_terms((x * y for x in a.terms for y in b.terms), a.mode)


def is_unit(a: RingElement) -> bool:
    if len(a.terms) != 1:
        return False
    if a.mode is Mode.LOCAL:
        return True
    return a.single() == ONE_MONOMIAL


def inverse(a: RingElement) -> RingElement:
    if not is_unit(a):
        raise RingError(f"{a} is not a unit in {a.mode.value} mode")
    return RingElement(frozenset([a.single().inverse()]), a.mode)


def render(a: RingElement) -> str:
    if a.is_zero():
        return "0"
    return " + ".join(m.render() for m in sorted(a.terms))


_TERM = re.compile(r"^U\^(-?\d+)\s*V\^(-?\d+)$")


def parse(text: str, mode: Mode = Mode.POLY) -> RingElement:
    """Inverse of :func:`render`."""
    text = text.strip()
    if text == "0":
        return RingElement.zero(mode)
    terms = []
    for chunk in text.split("+"):
        match = _TERM.match(chunk.strip())
        if match is None:
            raise RingError(f"cannot parse term {chunk!r}")
        terms.append(Monomial(int(match.group(1)), int(match.group(2))))
    return RingElement.from_terms(terms, mode)
