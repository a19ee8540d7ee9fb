"""Staircase complexes of L-space knots and the model complexes C_n, C_n*.

An L-space knot has symmetrized Alexander polynomial

    (-1)^m + sum_{i=1}^m (-1)^(m-i) (t^(n_i) + t^(-n_i)),   0 < n_1 < ... < n_m,

and its full knot complex is the staircase on 2m+1 generators
``x1_m, ..., x1_1, x0, x2_1, ..., x2_m`` determined by the step lengths
``l_s = n_s - n_(s-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .complexes import ChainComplex, Generator, convert_mode, from_pattern, make_complex
from .ring_algebra import Mode, RingElement


class StaircaseError(ValueError):
    pass


@dataclass(frozen=True)
class LSpaceKnotData:
    exps: tuple[int, ...]

    def __post_init__(self) -> None:
        exps = tuple(int(e) for e in self.exps)
        object.__setattr__(self, "exps", exps)
        if not exps:
            raise StaircaseError("at least one Alexander exponent is required")
        if exps[0] <= 0 or any(b <= a for a, b in zip(exps, exps[1:])):
            raise StaircaseError(f"exponents must be strictly increasing and positive: {exps}")
        if self.n_of_k < 1:
            raise StaircaseError(f"n(K) = {self.n_of_k} < 1 is not supported")

    @property
    def m(self) -> int:
        return len(self.exps)

    @property
    def genus(self) -> int:
        return self.exps[-1]

    @cached_property
    def n_of_k(self) -> int:
        m = len(self.exps)
        return sum((-1) ** (m - i) * n for i, n in enumerate(self.exps, start=1))

    def ell(self, s: int) -> int:
        """Step length l_s = n_s - n_(s-1), with n_0 = 0."""
        if not 1 <= s <= self.m:
            raise StaircaseError(f"step index {s} out of range")
        prev = self.exps[s - 2] if s >= 2 else 0
        return self.exps[s - 1] - prev

    def big_l(self, s: int) -> int:
        """L_s = l_m + l_(m-2) + ... + l_(s+2)."""
        return sum(self.ell(t) for t in range(self.m, s + 1, -2))

    def alexander(self) -> dict[int, int]:
        """Symmetrized Alexander polynomial as {power: coefficient}."""
        m = self.m
        poly = {0: (-1) ** m}
        for i, n in enumerate(self.exps, start=1):
            poly[n] = poly.get(n, 0) + (-1) ** (m - i)
            poly[-n] = poly.get(-n, 0) + (-1) ** (m - i)
        return {k: v for k, v in sorted(poly.items()) if v}


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact long division of integer polynomials (coefficient lists, low degree first)."""
    num = list(num)
    lead = den[-1]
    quot = [0] * max(len(num) - len(den) + 1, 1)
    for k in range(len(num) - len(den), -1, -1):
        c, r = divmod(num[k + len(den) - 1], lead)
        if r:
            raise StaircaseError("non-exact division")
        quot[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    return quot, num


def _t_power_minus_one(k: int) -> list[int]:
    return [-1] + [0] * (k - 1) + [1]


def torus_alexander_polynomial(p: int, q: int) -> dict[int, int]:
    """Symmetrized (t^(pq)-1)(t-1)/((t^p-1)(t^q-1)) as {power: coefficient}."""
    if p < 2 or q < 2 or gcd(p, q) != 1:
        raise StaircaseError(f"T({p},{q}) needs coprime p, q >= 2")
    num = _poly_mul(_t_power_minus_one(p * q), _t_power_minus_one(1))
    den = _poly_mul(_t_power_minus_one(p), _t_power_minus_one(q))
    quot, rem = _poly_divmod(num, den)
    if any(rem):
        raise StaircaseError("non-exact division")
    while quot and quot[-1] == 0:
        quot.pop()
    g = (len(quot) - 1) // 2
    return {k - g: c for k, c in enumerate(quot) if c}


def torus_alexander(p: int, q: int) -> LSpaceKnotData:
    poly = torus_alexander_polynomial(p, q)
    exps = tuple(k for k in sorted(poly) if k > 0)
    data = LSpaceKnotData(exps)
    if data.alexander() != poly:
        raise StaircaseError(f"T({p},{q}) polynomial is not of L-space form")
    return data


def staircase_positions(data: LSpaceKnotData) -> dict[str, tuple[int, int]]:
    """Filtration points with x0 at (0, 0) and x1_m at (-n, g - n)."""
    m, n, g = data.m, data.n_of_k, data.genus
    pos = {f"x1_{m}": (-n, g - n)}
    i, j = -n, g - n
    for s in range(m, 0, -1):
        # step from x1_s to x1_(s-1): horizontal when m - s is even, else vertical
        if (m - s) % 2 == 0:
            i += data.ell(s)
        else:
            j -= data.ell(s)
        pos["x0" if s == 1 else f"x1_{s - 1}"] = (i, j)
    if pos["x0"] != (0, 0):
        raise StaircaseError("staircase walk did not end at the origin")
    for s in range(1, m + 1):
        a, b = pos[f"x1_{s}"]
        pos[f"x2_{s}"] = (b, a)
    return pos


def staircase_order(m: int) -> list[str]:
    return [f"x1_{s}" for s in range(m, 0, -1)] + ["x0"] + [f"x2_{s}" for s in range(1, m + 1)]


def _is_source(m: int, s: int) -> bool:
    """x_s (s = 0 for x0) is a source of arrows: s even for m odd, s odd for m even."""
    return (s % 2 == 0) if m % 2 else (s % 2 == 1)


def staircase(data: LSpaceKnotData) -> ChainComplex:
    """The staircase complex in the filtered one-variable model.

    Targets sit in Maslov grading -2n(K) and sources in -2n(K)+1 at the
    drawn positions, which puts the surviving class of the i = 0 column in
    grading 0.  All differential coefficients are 1 in this placement.
    """
    m, n = data.m, data.n_of_k
    pos = staircase_positions(data)
    order = staircase_order(m)

    def level(name: str) -> int:
        return 0 if name == "x0" else int(name.split("_")[1])

    gens = []
    for name in order:
        i, j = pos[name]
        maslov = -2 * n + (1 if _is_source(m, level(name)) else 0)
        gens.append(Generator.placed(name, i, j, maslov))
    index = {name: k for k, name in enumerate(order)}
    out = [0] * len(order)
    def name_of(t: int, s: int) -> str:
        return "x0" if s == 0 else f"x{t}_{s}"

    arrows = set()
    for t in (1, 2):
        for s in range(0, m + 1):
            if not _is_source(m, s):
                continue
            for nb in (s - 1, s + 1):
                if 0 <= nb <= m:
                    arrows.add((name_of(t, s), name_of(t, nb)))
    for src, tgt in arrows:
        out[index[src]] |= 1 << index[tgt]
    return from_pattern(Mode.LOCAL, gens, out)


def cn_model(n: int) -> ChainComplex:
    """C_n over F2[U,V]: dy1 = U^(n-1) V^n x0 + U^n V^(n-1) x1."""
    if n < 1:
        raise StaircaseError("C_n needs n >= 1")
    gens = [Generator("x0", -2, 0), Generator("x1", 0, -2), Generator("y1", -2 * n + 1, -2 * n + 1)]
    diff = [
        ("y1", "x0", RingElement.monomial(n - 1, n)),
        ("y1", "x1", RingElement.monomial(n, n - 1)),
    ]
    return make_complex(Mode.POLY, gens, diff)


def cn_dual_model(n: int) -> ChainComplex:
    """C_n* over F2[U,V]: dx0* = U^(n-1) V^n y1*, dx1* = U^n V^(n-1) y1*."""
    if n < 1:
        raise StaircaseError("C_n* needs n >= 1")
    gens = [Generator("x0*", 2, 0), Generator("x1*", 0, 2), Generator("y1*", 2 * n - 1, 2 * n - 1)]
    diff = [
        ("x0*", "y1*", RingElement.monomial(n - 1, n)),
        ("x1*", "y1*", RingElement.monomial(n, n - 1)),
    ]
    return make_complex(Mode.POLY, gens, diff)


def corner_model(n: int) -> ChainComplex:
    """One-variable complex with corners at (n-1, n), (n, n-1) both mapping to (0, 0).

    For n = 0 this is the one-generator complex C_0.
    """
    if n == 0:
        return from_pattern(Mode.LOCAL, [Generator("x", 0, 0)], [0])
    return convert_mode(cn_dual_model(n), Mode.LOCAL, {"x0*": n - 1, "x1*": n})
