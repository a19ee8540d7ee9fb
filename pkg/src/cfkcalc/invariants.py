"""tau, nu, nu' and epsilon from subquotient homology of a filtered complex.

Everything is computed one Maslov grading at a time.  In a fixed grading d a
generator contributes at most one translate, so each subquotient below is a
finite F2 complex and the maps between them (inclusions, projections and
quotient-then-include maps) act as the identity on the translates that two
regions share.

The tower part of H_d(C{i >= 0}) is the image of H_d(C{i >= -N}) under the
projection, for N larger than the spread of the complex.  The code checks
that this image does not change when N grows by one.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2
from .complexes import (
    ChainComplex,
    F2Complex,
    Region,
    filtration_diameter,
    homology,
    region_column_below,
    region_i_eq,
    region_i_ge,
    region_max,
    region_min,
    subquotient,
    transfer,
)


class InvariantError(RuntimeError):
    pass


def _piece(C: ChainComplex, region: Region, d: int) -> F2Complex:
    return subquotient(C, region, gradings=(d - 1, d, d + 1), check=False)


def _span_dim(vectors, base: gf2.EchelonBasis) -> int:
    """dim of (span(vectors) + base) / base."""
    extended = gf2.EchelonBasis(base.vectors())
    return sum(1 for v in vectors if extended.add(v))


def _tower_window(C: ChainComplex) -> int:
    longest = max((sum(C.exps(x, y)) for x, y in C.arrows()), default=0)
    return filtration_diameter(C) + longest + 1


@dataclass
class _Grading:
    """Cached data for H_d(C{i >= 0})."""

    plus: F2Complex
    boundaries: gf2.EchelonBasis
    tower: list[int]  # cycle representatives of the tower image


class _Engine:
    def __init__(self, C: ChainComplex) -> None:
        self.C = C
        self.window = _tower_window(C)
        self.gradings = sorted({g.gr_u for g in C.gens})
        self._cache: dict[int, _Grading] = {}

    def grading(self, d: int) -> _Grading:
        if d in self._cache:
            return self._cache[d]
        plus = _piece(self.C, region_i_ge(0), d)
        bnd = gf2.EchelonBasis(plus.boundaries(d))
        images = {}
        for N in (self.window, self.window + 1):
            deep = _piece(self.C, region_i_ge(-N), d)
            images[N] = [transfer(deep, plus, z) for z in deep.cycles(d)]
        first, second = images[self.window], images[self.window + 1]
        dim1, dim2 = _span_dim(first, bnd), _span_dim(second, bnd)
        check = gf2.EchelonBasis(bnd.vectors())
        for v in first:
            check.add(v)
        if dim1 != dim2 or any(not check.contains(v) for v in second):
            raise InvariantError(f"tower image in grading {d} did not stabilize")
        data = _Grading(plus, bnd, first)
        self._cache[d] = data
        return data

    def hits_tower(self, region: Region) -> bool:
        """Does the image of H(C region) in H(C{i >= 0}) meet the tower?"""
        for d in self.gradings:
            data = self.grading(d)
            sub = _piece(self.C, region, d)
            image = [transfer(sub, data.plus, z) for z in sub.cycles(d)]
            dim_i = _span_dim(image, data.boundaries)
            dim_t = _span_dim(data.tower, data.boundaries)
            dim_sum = _span_dim(image + data.tower, data.boundaries)
            if dim_i + dim_t - dim_sum > 0:
                return True
        return False

    def nu_prime_holds(self, s: int) -> bool:
        """Every tower-hitting class of the hat homology survives v'_s."""
        for d in self.gradings:
            data = self.grading(d)
            hat = _piece(self.C, region_i_eq(0), d)
            hat_bnd = gf2.EchelonBasis(hat.boundaries(d))
            basis = gf2.EchelonBasis(hat_bnd.vectors())
            reps = [z for z in hat.cycles(d) if basis.add(z)]
            if not reps:
                continue
            rho = [transfer(hat, data.plus, z) for z in reps]
            tower_space = gf2.EchelonBasis(data.boundaries.vectors())
            for v in data.tower:
                tower_space.add(v)
            in_tower = gf2.preimage(rho, tower_space)
            rho_zero = gf2.EchelonBasis(gf2.preimage(rho, data.boundaries))
            target = _piece(self.C, region_min(s), d)
            killed = gf2.preimage([transfer(hat, target, z) for z in reps],
                                  gf2.EchelonBasis(target.boundaries(d)))
            for c in gf2.intersect(in_tower, killed):
                if not rho_zero.contains(c):
                    return False
        return True


def _s_range(C: ChainComplex) -> range:
    alex = [g.alex for g in C.gens] or [0]
    return range(min(alex) - 1, max(alex) + 2)


_ENGINES: dict[int, _Engine] = {}


def _engine(C: ChainComplex) -> _Engine:
    """One engine per complex object, so tau, nu and nu' share the tower data."""
    eng = _ENGINES.get(id(C))
    if eng is None or eng.C is not C:
        if len(_ENGINES) > 32:
            _ENGINES.clear()
        eng = _ENGINES[id(C)] = _Engine(C)
    return eng


def tau(C: ChainComplex) -> int:
    eng = _engine(C)
    for s in _s_range(C):
        if eng.hits_tower(region_column_below(s)):
            return s
    raise InvariantError("tau not found in the Alexander range")


def nu(C: ChainComplex) -> int:
    eng = _engine(C)
    for s in _s_range(C):
        if eng.hits_tower(region_max(s)):
            return s
    raise InvariantError("nu not found in the Alexander range")


def nu_prime(C: ChainComplex) -> int:
    eng = _engine(C)
    holds = [s for s in _s_range(C) if eng.nu_prime_holds(s)]
    if not holds:
        raise InvariantError("nu' not found in the Alexander range")
    return max(holds)


@dataclass(frozen=True)
class InvariantSummary:
    tau: int
    nu: int
    nu_prime: int
    epsilon: int


def summary(C: ChainComplex) -> InvariantSummary:
    t, n, npr = tau(C), nu(C), nu_prime(C)
    cases = [(n == t + 1 and npr == t), (n == t and npr == t - 1), (n == t and npr == t)]
    if sum(cases) != 1:
        raise InvariantError(f"(tau, nu, nu') = {(t, n, npr)} violates the trichotomy")
    eps = -1 if n == t + 1 else (1 if npr == t - 1 else 0)
    return InvariantSummary(t, n, npr, eps)


def epsilon(C: ChainComplex) -> int:
    return summary(C).epsilon


def alexander_from_complex(C: ChainComplex) -> dict[int, int]:
    """Graded Euler characteristic of the hat homology, {Alexander power: coefficient}."""
    poly: dict[int, int] = {}
    for (gr_u, gr_v), dim in homology(C).items():
        a = (gr_u - gr_v) // 2
        poly[a] = poly.get(a, 0) + (-1) ** (gr_u % 2) * dim
    return {k: v for k, v in sorted(poly.items()) if v}


def euler_from_generators(C: ChainComplex) -> dict[int, int]:
    """Same polynomial counted on generators (chain-level Euler characteristic)."""
    poly: dict[int, int] = {}
    for g in C.gens:
        poly[g.alex] = poly.get(g.alex, 0) + (-1) ** (g.gr_u % 2)
    return {k: v for k, v in sorted(poly.items()) if v}

