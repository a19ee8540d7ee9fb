"""Bigraded chain complexes over F2[U, V] and their filtered one-variable model.

A complex is a finite list of generators, each carrying the bigrading
``(gr_u, gr_v)``, together with the set of nonzero differential entries.
Because the differential lowers both gradings by one and ``U`` (resp. ``V``)
lowers ``gr_u`` (resp. ``gr_v``) by two, the coefficient of ``y`` in ``dx``
is forced by the gradings:

    dx = ... + U^a V^b y + ...   with   a = (gr_u(y) - gr_u(x) + 1) / 2,
                                        b = (gr_v(y) - gr_v(x) + 1) / 2.

So every entry is zero or a single monomial, composition of homogeneous
maps is F2 matrix multiplication on the pattern of nonzero entries, and all
algorithms below run on bitmask patterns with the gradings carried alongside.

The filtered one-variable model (``Mode.LOCAL``) draws the translate
``U^-shift x`` of each generator at ``(i, j) = (shift, alex + shift)`` with
Maslov grading ``gr_u + 2 shift``; its entries are powers of ``U = UV``.  The
shift only affects naming and display; the underlying complex is the same.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from . import gf2
from .ring_algebra import Mode, Monomial, RingElement, u_power

log = logging.getLogger(__name__)


class ComplexError(ValueError):
    """Invalid complex data: bad gradings, non-filtered entries, d^2 != 0."""


# ---------------------------------------------------------------------------
# Generators and complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    name: str
    gr_u: int
    gr_v: int
    shift: int = 0

    def __post_init__(self) -> None:
        if (self.gr_u - self.gr_v) % 2:
            raise ComplexError(f"{self.name}: gr_u - gr_v must be even")

    @classmethod
    def placed(cls, name: str, i: int, j: int, maslov: int) -> "Generator":
        """Generator whose drawn translate sits at (i, j) in Maslov grading maslov."""
        return cls(name, maslov - 2 * i, maslov - 2 * j, i)

    @property
    def alex(self) -> int:
        return (self.gr_u - self.gr_v) // 2

    @property
    def i(self) -> int:
        return self.shift

    @property
    def j(self) -> int:
        return self.alex + self.shift

    @property
    def maslov(self) -> int:
        return self.gr_u + 2 * self.shift

    @property
    def bigrading(self) -> tuple[int, int]:
        return (self.gr_u, self.gr_v)


def exponents(x: Generator, y: Generator) -> tuple[int, int] | None:
    """Exponents (a, b) of the coefficient of y in dx, or None if not integral."""
    du = y.gr_u - x.gr_u + 1
    dv = y.gr_v - x.gr_v + 1
    if du % 2 or dv % 2:
        return None
    return du // 2, dv // 2


def map_exponents(x: Generator, y: Generator) -> tuple[int, int] | None:
    """Exponents of the coefficient of y in f(x) for a grading-preserving f."""
    du = y.gr_u - x.gr_u
    dv = y.gr_v - x.gr_v
    if du % 2 or dv % 2:
        return None
    return du // 2, dv // 2


def entry_element(mode: Mode, x: Generator, y: Generator) -> RingElement:
    """The ring element stored for an arrow x -> y in the given mode."""
    a, b = exponents(x, y)
    if mode is Mode.LOCAL:
        return RingElement(frozenset([u_power(a + y.shift - x.shift)]), mode)
    return RingElement.monomial(a, b, mode)


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """Validated complex.  ``out[x]`` is the bitmask of targets of dx."""

    mode: Mode
    gens: tuple[Generator, ...]
    out: tuple[int, ...]
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._index.update({g.name: k for k, g in enumerate(self.gens)})

    def __len__(self) -> int:
        return len(self.gens)

    def index(self, name: str) -> int:
        return self._index[name]

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.gens]

    def arrows(self) -> Iterable[tuple[int, int]]:
        for x, mask in enumerate(self.out):
            for y in gf2.bits(mask):
                yield x, y

    def exps(self, x: int, y: int) -> tuple[int, int]:
        return exponents(self.gens[x], self.gens[y])

    def coefficient(self, x: int, y: int) -> RingElement:
        """Coefficient of generator y in the differential of generator x."""
        if not (self.out[x] >> y) & 1:
            return RingElement.zero(self.mode)
        return entry_element(self.mode, self.gens[x], self.gens[y])

    @property
    def diff(self) -> dict[str, dict[str, RingElement]]:
        """Sparse matrix: ``diff[y][x]`` is the coefficient of y in dx."""
        table: dict[str, dict[str, RingElement]] = {}
        for x, y in self.arrows():
            table.setdefault(self.gens[y].name, {})[self.gens[x].name] = self.coefficient(x, y)
        return table

    def boundary(self, name: str) -> dict[str, RingElement]:
        x = self.index(name)
        return {self.gens[y].name: self.coefficient(x, y) for y in gf2.bits(self.out[x])}

    def incoming(self) -> list[int]:
        return gf2.transpose(self.out, len(self.gens))

    def describe(self) -> str:
        lines = []
        for x, g in enumerate(self.gens):
            terms = [
                f"{coef_text(self.mode, self.coefficient(x, y))}{self.gens[y].name}"
                for y in gf2.bits(self.out[x])
            ]
            rhs = " + ".join(terms) if terms else "0"
            lines.append(f"d {g.name} = {rhs}")
        return "\n".join(lines)


def coef_text(mode: Mode, element: RingElement) -> str:
    m = element.single()
    if mode is Mode.LOCAL:
        return "" if m.u_exp == 0 else (f"U^{m.u_exp} " if m.u_exp != 1 else "U ")
    parts = []
    for sym, e in (("U", m.u_exp), ("V", m.v_exp)):
        if e == 1:
            parts.append(sym)
        elif e:
            parts.append(f"{sym}^{e}")
    return ("".join(parts) + " ") if parts else ""


def _admissible(mode: Mode, x: Generator, y: Generator) -> bool:
    e = exponents(x, y)
    return e is not None and e[0] >= 0 and e[1] >= 0


def from_pattern(mode: Mode, gens: Sequence[Generator], out: Sequence[int],
                 check: bool = True) -> ChainComplex:
    """Build a complex from a target-bitmask pattern, validating gradings."""
    gens = tuple(gens)
    out = tuple(out)
    if len(out) != len(gens):
        raise ComplexError("pattern length does not match generator count")
    names = [g.name for g in gens]
    if len(set(names)) != len(names):
        raise ComplexError("duplicate generator names")
    if check:
        for x, mask in enumerate(out):
            for y in gf2.bits(mask):
                if not _admissible(mode, gens[x], gens[y]):
                    raise ComplexError(
                        f"entry {gens[x].name} -> {gens[y].name} is incompatible with the "
                        "bigradings or lowers a filtration level by a negative amount"
                    )
    C = ChainComplex(mode, gens, out)
    if check and not verify_d_squared(C):
        raise ComplexError("d^2 != 0")
    return C


def make_complex(mode: Mode, gens: Sequence[Generator],
                 diff: Mapping[str, Mapping[str, RingElement]] | Iterable) -> ChainComplex:
    """Build and validate a complex.

    ``diff`` is either the nested mapping ``diff[y][x]`` (coefficient of y in
    dx) or an iterable of ``(source, target, coefficient)`` triples.  Each
    coefficient must be the single monomial forced by the bigradings.
    """
    gens = tuple(gens)
    index = {g.name: k for k, g in enumerate(gens)}
    if isinstance(diff, Mapping):
        triples = [(src, tgt, coef) for tgt, row in diff.items() for src, coef in row.items()]
    else:
        triples = list(diff)
    out = [0] * len(gens)
    for src, tgt, coef in triples:
        if src not in index or tgt not in index:
            raise ComplexError(f"unknown generator in entry {src} -> {tgt}")
        if coef.mode is not mode:
            raise ComplexError("coefficient mode does not match complex mode")
        if coef.is_zero():
            continue
        x, y = index[src], index[tgt]
        if not _admissible(mode, gens[x], gens[y]):
            raise ComplexError(f"entry {src} -> {tgt}: incompatible gradings")
        expected = entry_element(mode, gens[x], gens[y])
        if coef != expected:
            raise ComplexError(
                f"entry {src} -> {tgt}: coefficient {coef} does not match the "
                f"gradings (expected {expected})"
            )
        out[x] ^= 1 << y
    return from_pattern(mode, gens, out)


def verify_d_squared(C: ChainComplex) -> bool:
    return all(gf2.combine(C.out, mask) == 0 for mask in C.out)


def zero_complex(mode: Mode = Mode.POLY) -> ChainComplex:
    return ChainComplex(mode, (), ())


def trivial_complex(mode: Mode = Mode.POLY, name: str = "x") -> ChainComplex:
    """One generator in bigrading (0, 0): the unit for the tensor product."""
    return ChainComplex(mode, (Generator(name, 0, 0),), (0,))


def rename(C: ChainComplex, names: Mapping[str, str] | Callable[[str], str]) -> ChainComplex:
    fn = names if callable(names) else (lambda s: names.get(s, s))
    gens = tuple(Generator(fn(g.name), g.gr_u, g.gr_v, g.shift) for g in C.gens)
    return from_pattern(C.mode, gens, C.out, check=False)


def restrict(C: ChainComplex, keep: Sequence[int]) -> ChainComplex:
    """The induced pattern on a subset of generators (no validity claims)."""
    pos = {old: new for new, old in enumerate(keep)}
    out = []
    for old in keep:
        mask = 0
        for y in gf2.bits(C.out[old]):
            if y in pos:
                mask |= 1 << pos[y]
        out.append(mask)
    return ChainComplex(C.mode, tuple(C.gens[k] for k in keep), tuple(out))


# ---------------------------------------------------------------------------
# Algebraic constructions
# ---------------------------------------------------------------------------


def dual(C: ChainComplex) -> ChainComplex:
    gens = tuple(Generator(_star(g.name), -g.gr_u, -g.gr_v, -g.shift) for g in C.gens)
    return ChainComplex(C.mode, gens, tuple(C.incoming()))


def _star(name: str) -> str:
    return name[:-1] if name.endswith("*") else name + "*"


def tensor(C: ChainComplex, D: ChainComplex, sep: str = "⊗") -> ChainComplex:
    if C.mode is not D.mode:
        raise ComplexError("tensor of complexes in different modes")
    m = len(D)
    gens = tuple(
        Generator(f"{c.name}{sep}{d.name}", c.gr_u + d.gr_u, c.gr_v + d.gr_v, c.shift + d.shift)
        for c in C.gens for d in D.gens
    )
    out = []
    for x in range(len(C)):
        for y in range(m):
            mask = 0
            for x2 in gf2.bits(C.out[x]):
                mask |= 1 << (x2 * m + y)
            for y2 in gf2.bits(D.out[y]):
                mask |= 1 << (x * m + y2)
            out.append(mask)
    return ChainComplex(C.mode, gens, tuple(out))


def direct_sum(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    if C.mode is not D.mode:
        raise ComplexError("direct sum of complexes in different modes")
    n = len(C)
    return from_pattern(C.mode, C.gens + D.gens,
                        tuple(C.out) + tuple(mask << n for mask in D.out), check=False)


def convert_mode(C: ChainComplex, target: Mode,
                 shifts: Mapping[str, int] | None = None) -> ChainComplex:
    """Switch between F2[U,V] and the filtered one-variable model.

    Going to ``Mode.LOCAL`` places each undecorated generator at (0, alex)
    unless ``shifts`` names another translate.  Going to ``Mode.POLY`` keeps
    the bigradings and forgets the placement.
    """
    if target is Mode.LOCAL:
        shifts = shifts or {}
        gens = tuple(Generator(g.name, g.gr_u, g.gr_v, shifts.get(g.name, 0)) for g in C.gens)
    else:
        gens = tuple(Generator(g.name, g.gr_u, g.gr_v) for g in C.gens)
    return from_pattern(target, gens, C.out)


# ---------------------------------------------------------------------------
# Cancellation
# ---------------------------------------------------------------------------


@dataclass
class _Work:
    out: list[set[int]]
    inc: list[set[int]]
    alive: list[bool]
    rep: list[int]


def _work(n: int, out: Sequence[int]) -> _Work:
    outs = [set(gf2.bits(m)) for m in out]
    inc: list[set[int]] = [set() for _ in range(n)]
    for x, ys in enumerate(outs):
        for y in ys:
            inc[y].add(x)
    return _Work(outs, inc, [True] * n, [1 << k for k in range(n)])


def _cancel(w: _Work, x: int, y: int) -> None:
    sources = [z for z in w.inc[y] if z != x]
    targets = [t for t in w.out[x] if t != y]
    for z in sources:
        for t in targets:
            if t in w.out[z]:
                w.out[z].discard(t)
                w.inc[t].discard(z)
            else:
                w.out[z].add(t)
                w.inc[t].add(z)
        w.rep[z] ^= w.rep[x]
    for node in (x, y):
        for t in list(w.out[node]):
            w.inc[t].discard(node)
        for z in list(w.inc[node]):
            w.out[z].discard(node)
        w.out[node].clear()
        w.inc[node].clear()
        w.alive[node] = False


def _cancel_all(n: int, out: Sequence[int], eligible: Callable[[int, int], bool]) -> _Work:
    """Cancel eligible arrows in (source index, target index) order until none remain."""
    w = _work(n, out)
    changed = True
    while changed:
        changed = False
        for x in range(n):
            while w.alive[x]:
                pick = min((y for y in w.out[x] if eligible(x, y)), default=None)
                if pick is None:
                    break
                _cancel(w, x, pick)
                changed = True
    return w


def _is_unit_arrow(C: ChainComplex) -> Callable[[int, int], bool]:
    gens = C.gens

    def test(x: int, y: int) -> bool:
        return gens[y].gr_u == gens[x].gr_u - 1 and gens[y].gr_v == gens[x].gr_v - 1

    return test


@dataclass(frozen=True)
class Reduction:
    """A reduced complex with the inclusion of each survivor into the original."""

    complex: ChainComplex
    source: ChainComplex
    representatives: dict[str, frozenset[str]]


def reduce_with_inclusion(C: ChainComplex) -> Reduction:
    w = _cancel_all(len(C), C.out, _is_unit_arrow(C))
    keep = [k for k in range(len(C)) if w.alive[k]]
    pos = {old: new for new, old in enumerate(keep)}
    out = tuple(sum(1 << pos[t] for t in w.out[k]) for k in keep)
    R = ChainComplex(C.mode, tuple(C.gens[k] for k in keep), out)
    reps = {C.gens[k].name: frozenset(C.gens[b].name for b in gf2.bits(w.rep[k])) for k in keep}
    return Reduction(R, C, reps)


def reduce(C: ChainComplex) -> ChainComplex:
    """Cancel every differential entry with coefficient 1 (both filtrations kept)."""
    return reduce_with_inclusion(C).complex


def is_reduced(C: ChainComplex) -> bool:
    unit = _is_unit_arrow(C)
    return not any(unit(x, y) for x, y in C.arrows())


# ---------------------------------------------------------------------------
# Homology engines
# ---------------------------------------------------------------------------


def _pattern_homology_cancel(n: int, out: Sequence[int]) -> list[int]:
    w = _cancel_all(n, out, lambda x, y: True)
    return [k for k in range(n) if w.alive[k]]


def localized_homology_rank(C: ChainComplex, method: str = "cancel") -> tuple[int, dict[int, int]]:
    """Rank of the homology after inverting UV, with a count per Maslov parity."""
    if method == "gauss":
        per: dict[int, int] = {}
        for parity in (0, 1):
            idx = [k for k, g in enumerate(C.gens) if g.gr_u % 2 == parity]
            per[parity] = _graded_gauss(C, idx)
        return sum(per.values()), {p: d for p, d in per.items() if d}
    survivors = _pattern_homology_cancel(len(C), C.out)
    per = {}
    for k in survivors:
        per[C.gens[k].gr_u % 2] = per.get(C.gens[k].gr_u % 2, 0) + 1
    return len(survivors), per


def _graded_gauss(C: ChainComplex, idx: Sequence[int]) -> int:
    """dim ker d restricted to idx minus rank of d landing in idx."""
    chosen = set(idx)
    sel = 0
    for k in idx:
        sel |= 1 << k
    cycles_rank = len(idx) - gf2.rank(C.out[k] for k in idx)
    boundary_rank = gf2.rank(C.out[k] & sel for k in range(len(C)) if k not in chosen)
    return cycles_rank - boundary_rank


def vertical_homology_dim(C: ChainComplex, method: str = "cancel") -> int:
    """Rank of the homology after setting U = 0 and inverting V."""
    out = []
    for x, mask in enumerate(C.out):
        keep = 0
        for y in gf2.bits(mask):
            if C.exps(x, y)[0] == 0:
                keep |= 1 << y
        out.append(keep)
    if method == "gauss":
        return len(C) - 2 * gf2.rank(out)
    return len(_pattern_homology_cancel(len(C), out))


def hat_pattern(C: ChainComplex) -> list[int]:
    """Pattern of the complex with U = V = 0."""
    unit = _is_unit_arrow(C)
    return [sum(1 << y for y in gf2.bits(mask) if unit(x, y)) for x, mask in enumerate(C.out)]


def homology(C: "ChainComplex | F2Complex", method: str = "cancel") -> dict:
    """Graded F2 dimensions.

    For an :class:`F2Complex` the keys are Maslov gradings.  For a
    :class:`ChainComplex` this is the homology of the complex with U = V = 0,
    keyed by bigrading ``(gr_u, gr_v)``.
    """
    if isinstance(C, F2Complex):
        return C.homology(method)
    out = hat_pattern(C)
    table: dict = {}
    if method == "gauss":
        gradings = sorted({g.bigrading for g in C.gens})
        for gr in gradings:
            idx = [k for k, g in enumerate(C.gens) if g.bigrading == gr]
            sel = sum(1 << k for k in idx)
            cyc = len(idx) - gf2.rank(out[k] for k in idx)
            bnd = gf2.rank(out[k] & sel for k in range(len(C)) if k not in idx)
            if cyc - bnd:
                table[gr] = cyc - bnd
        return table
    for k in _pattern_homology_cancel(len(C), out):
        gr = C.gens[k].bigrading
        table[gr] = table.get(gr, 0) + 1
    return dict(sorted(table.items()))


# ---------------------------------------------------------------------------
# Regions and subquotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Region:
    """A subset of filtration points (i, j), given by a predicate."""

    label: str
    predicate: Callable[[int, int], bool] = field(compare=False)

    def contains(self, i: int, j: int) -> bool:
        return bool(self.predicate(i, j))

    def __and__(self, other: "Region") -> "Region":
        return Region(f"{self.label} & {other.label}",
                      lambda i, j: self.predicate(i, j) and other.predicate(i, j))

    def __or__(self, other: "Region") -> "Region":
        return Region(f"{self.label} | {other.label}",
                      lambda i, j: self.predicate(i, j) or other.predicate(i, j))


def region_all() -> Region:
    return Region("all", lambda i, j: True)


def region_i_eq(c: int = 0) -> Region:
    return Region(f"i={c}", lambda i, j: i == c)


def region_i_ge(c: int = 0) -> Region:
    return Region(f"i>={c}", lambda i, j: i >= c)


def region_column_below(s: int) -> Region:
    """{i = 0, j <= s}."""
    return Region(f"i=0,j<={s}", lambda i, j: i == 0 and j <= s)


def region_max(s: int) -> Region:
    """{max(i, j - s) = 0}."""
    return Region(f"max(i,j-{s})=0", lambda i, j: max(i, j - s) == 0)


def region_min(s: int) -> Region:
    """{min(i, j - s) = 0}."""
    return Region(f"min(i,j-{s})=0", lambda i, j: min(i, j - s) == 0)


def region_box(i_range: tuple[int, int], j_range: tuple[int, int]) -> Region:
    (i0, i1), (j0, j1) = i_range, j_range
    return Region(f"{i0}<=i<={i1},{j0}<=j<={j1}", lambda i, j: i0 <= i <= i1 and j0 <= j <= j1)


def is_betweenness_closed(region: Region, window: tuple[int, int, int, int]) -> bool:
    """Check convexity for the partial order on the window i0..i1 x j0..j1."""
    i0, i1, j0, j1 = window
    ni, nj = i1 - i0 + 1, j1 - j0 + 1
    inside = [[region.contains(i0 + a, j0 + b) for b in range(nj)] for a in range(ni)]
    up = [[False] * nj for _ in range(ni)]
    down = [[False] * nj for _ in range(ni)]
    for a in range(ni):
        for b in range(nj):
            up[a][b] = inside[a][b] or (a > 0 and up[a - 1][b]) or (b > 0 and up[a][b - 1])
    for a in reversed(range(ni)):
        for b in reversed(range(nj)):
            down[a][b] = (inside[a][b] or (a < ni - 1 and down[a + 1][b])
                          or (b < nj - 1 and down[a][b + 1]))
    return all(inside[a][b] == (up[a][b] and down[a][b]) for a in range(ni) for b in range(nj))


@dataclass(frozen=True)
class Translate:
    """The element U^k g of the filtered model, drawn at (-k, alex(g) - k)."""

    gen: int
    k: int
    i: int
    j: int
    maslov: int


@dataclass(frozen=True, eq=False)
class F2Complex:
    """A finite complex of F2 vector spaces spanned by translates."""

    basis: tuple[Translate, ...]
    boundary: tuple[int, ...]
    names: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.basis)

    def positions(self) -> dict[tuple[int, int], int]:
        return {(t.gen, t.k): n for n, t in enumerate(self.basis)}

    def homology(self, method: str = "cancel") -> dict[int, int]:
        table: dict[int, int] = {}
        if method == "gauss":
            for d in sorted({t.maslov for t in self.basis}):
                idx = [n for n, t in enumerate(self.basis) if t.maslov == d]
                sel = sum(1 << n for n in idx)
                cyc = len(idx) - gf2.rank(self.boundary[n] for n in idx)
                bnd = gf2.rank(self.boundary[n] & sel for n, t in enumerate(self.basis)
                               if t.maslov == d + 1)
                if cyc - bnd:
                    table[d] = cyc - bnd
            return table
        for n in _pattern_homology_cancel(len(self.basis), self.boundary):
            d = self.basis[n].maslov
            table[d] = table.get(d, 0) + 1
        return dict(sorted(table.items()))

    def total_dim(self, method: str = "cancel") -> int:
        return sum(self.homology(method).values())

    def cycles(self, d: int) -> list[int]:
        idx = [n for n, t in enumerate(self.basis) if t.maslov == d]
        combos = gf2.kernel([self.boundary[n] for n in idx])
        return [sum(1 << idx[b] for b in gf2.bits(c)) for c in combos]

    def boundaries(self, d: int) -> list[int]:
        return [self.boundary[n] for n, t in enumerate(self.basis) if t.maslov == d + 1]

    def label(self, n: int) -> str:
        t = self.basis[n]
        return translate_name(self.names[t.gen], t.k)


def translate_name(name: str, k: int) -> str:
    if k == 0:
        return name
    return f"U{'' if k == 1 else '^' + str(k)}{name}" if k > 0 else f"U^{k}{name}"


def filtration_window(C: ChainComplex) -> tuple[int, int, int, int]:
    """Generator placements padded by the filtration diameter plus one."""
    if not C.gens:
        return (0, 0, 0, 0)
    i_vals = [g.i for g in C.gens]
    j_vals = [g.j for g in C.gens]
    diam = max(max(i_vals) - min(i_vals), max(j_vals) - min(j_vals))
    pad = diam + 1
    return (min(i_vals) - pad, max(i_vals) + pad, min(j_vals) - pad, max(j_vals) + pad)


def filtration_diameter(C: ChainComplex) -> int:
    if not C.gens:
        return 0
    i_vals = [g.i for g in C.gens]
    j_vals = [g.j for g in C.gens]
    return max(max(i_vals) - min(i_vals), max(j_vals) - min(j_vals))


def translates(C: ChainComplex, region: Region, gradings: Iterable[int] | None = None,
               window: tuple[int, int, int, int] | None = None) -> list[Translate]:
    out = []
    if gradings is not None:
        for d in sorted(set(gradings)):
            for n, g in enumerate(C.gens):
                if (g.gr_u - d) % 2:
                    continue
                k = (g.gr_u - d) // 2
                i, j = -k, g.alex - k
                if region.contains(i, j):
                    out.append(Translate(n, k, i, j, d))
        return out
    i0, i1, j0, j1 = window or filtration_window(C)
    for n, g in enumerate(C.gens):
        for i in range(i0, i1 + 1):
            k = -i
            j = g.alex - k
            if j0 <= j <= j1 and region.contains(i, j):
                out.append(Translate(n, k, i, j, g.gr_u - 2 * k))
    return out


def subquotient(C: ChainComplex, region: Region, gradings: Iterable[int] | None = None,
                window: tuple[int, int, int, int] | None = None,
                check: bool = True) -> F2Complex:
    """The complex spanned by the translates lying in ``region``.

    With ``gradings`` the result is the exact finite piece in those Maslov
    gradings (each generator has at most one translate per grading).  Without
    it, translates are truncated to ``window`` (by default the filtration
    window of :func:`filtration_window`).
    """
    win = window or filtration_window(C)
    if check and not is_betweenness_closed(region, win):
        raise ComplexError(f"region {region.label} is not closed under betweenness")
    basis = translates(C, region, gradings, window)
    return _assemble(C, basis)


def _assemble(C: ChainComplex, basis: Sequence[Translate]) -> F2Complex:
    where = {(t.gen, t.k): n for n, t in enumerate(basis)}
    boundary = []
    for t in basis:
        mask = 0
        for y in gf2.bits(C.out[t.gen]):
            a, _ = C.exps(t.gen, y)
            hit = where.get((y, t.k + a))
            if hit is not None:
                mask |= 1 << hit
        boundary.append(mask)
    return F2Complex(tuple(basis), tuple(boundary), tuple(g.name for g in C.gens))


def transfer(source: F2Complex, target: F2Complex, vector: int) -> int:
    """Identity on translates present in both complexes, zero elsewhere."""
    where = target.positions()
    out = 0
    for n in gf2.bits(vector):
        t = source.basis[n]
        hit = where.get((t.gen, t.k))
        if hit is not None:
            out |= 1 << hit
    return out


# ---------------------------------------------------------------------------
# Chain maps, change of basis, isomorphism
# ---------------------------------------------------------------------------


def chain_map_space(C: ChainComplex, D: ChainComplex) -> tuple[list[tuple[int, int]], list[int]]:
    """Grading-preserving chain maps C -> D.

    Returns the admissible entries ``(x, y)`` (coefficient of y in f(x)) and a
    basis of the solution space as bitmasks over those entries.
    """
    variables = []
    for x, gx in enumerate(C.gens):
        for y, gy in enumerate(D.gens):
            e = map_exponents(gx, gy)
            if e is not None and e[0] >= 0 and e[1] >= 0:
                variables.append((x, y))
    var_index = {v: k for k, v in enumerate(variables)}
    d_in = D.incoming()
    rows = []
    for x in range(len(C)):
        for w in range(len(D)):
            row = 0
            # (d f)(x) at w: f(x) contains y, dy contains w
            for y in gf2.bits(d_in[w]):
                k = var_index.get((x, y))
                if k is not None:
                    row ^= 1 << k
            # (f d)(x) at w: dx contains z, f(z) contains w
            for z in gf2.bits(C.out[x]):
                k = var_index.get((z, w))
                if k is not None:
                    row ^= 1 << k
            if row:
                rows.append(row)
    return variables, gf2.nullspace(rows, len(variables))


def map_matrix(variables: Sequence[tuple[int, int]], vec: int, ncols: int) -> list[int]:
    """Column bitmasks (indexed by source) of the map encoded by vec."""
    cols = [0] * ncols
    for k in gf2.bits(vec):
        x, y = variables[k]
        cols[x] |= 1 << y
    return cols


@dataclass(frozen=True)
class BasisElement:
    """A homogeneous combination of old generators in the given bigrading."""

    name: str
    gr_u: int
    gr_v: int
    terms: tuple[str, ...]
    shift: int | None = None


def replacement(C: ChainComplex, lead: str, extra: Iterable[str] = (),
                name: str | None = None) -> BasisElement:
    """The element lead + (forced monomials) * extra, in lead's bigrading."""
    g = C.gens[C.index(lead)]
    return BasisElement(name or lead, g.gr_u, g.gr_v, (lead, *extra), g.shift)


def change_basis(C: ChainComplex, new_basis: Sequence[BasisElement]) -> ChainComplex:
    """Rewrite C in a new homogeneous basis.

    Each new element is a sum of old generators with the coefficients forced
    by the bigradings.  Those coefficients must have non-negative exponents
    (so the change is filtered) and the part of the transformation between
    equal bigradings must be invertible over F2 (so it is invertible over
    the ring).
    """
    n = len(C)
    if len(new_basis) != n:
        raise ComplexError("new basis has the wrong number of elements")
    gens = []
    T = []
    for e in new_basis:
        g = Generator(e.name, e.gr_u, e.gr_v, 0 if e.shift is None else e.shift)
        col = 0
        for t in e.terms:
            old = C.index(t)
            exps_ = map_exponents(g, C.gens[old])
            if exps_ is None or exps_[0] < 0 or exps_[1] < 0:
                raise ComplexError(f"{e.name}: term {t} is not a filtered multiple")
            col ^= 1 << old
        gens.append(g)
        T.append(col)
    try:
        T_inv = gf2.inverse(T)
    except ValueError as exc:
        raise ComplexError("change of basis is not invertible") from exc
    D_new = gf2.matmul(T_inv, gf2.matmul(C.out, T))
    return from_pattern(C.mode, gens, D_new)


def shift_gradings(C: ChainComplex, d: int) -> ChainComplex:
    """Add d to both gradings of every generator.

    Arrow exponents only depend on grading differences, so any integer d
    gives a complex; an odd d changes the Maslov parity of every generator.
    """
    gens = [Generator(g.name, g.gr_u + d, g.gr_v + d, g.shift) for g in C.gens]
    return from_pattern(C.mode, gens, C.out)


def grading_offset(C: ChainComplex, D: ChainComplex) -> int:
    """The overall shift that moves the lowest gr_u of D onto that of C."""
    return min(g.gr_u for g in C.gens) - min(g.gr_u for g in D.gens)


def is_isomorphic(C: ChainComplex, D: ChainComplex, bound: int = 12,
                  by_name: bool = False, up_to_shift: bool = False) -> bool:
    """Search for a grading-preserving chain isomorphism C -> D.

    With ``by_name`` the map must be the identity correspondence on names.
    With ``up_to_shift`` D is first moved by the overall grading shift that
    aligns the lowest gr_u of the two complexes.
    """
    if up_to_shift and len(C) and len(D):
        D = shift_gradings(D, grading_offset(C, D))
    if max(len(C), len(D)) > bound:
        raise ComplexError(f"is_isomorphic bound {bound} exceeded")
    if len(C) != len(D) or C.mode is not D.mode:
        return False
    if sorted(g.bigrading for g in C.gens) != sorted(g.bigrading for g in D.gens):
        return False
    if by_name:
        if sorted(C.names) != sorted(D.names):
            return False
        perm = [D.index(g.name) for g in C.gens]
        if any(C.gens[k].bigrading != D.gens[perm[k]].bigrading for k in range(len(C))):
            return False
        return all(
            sum(1 << perm[y] for y in gf2.bits(C.out[x])) == D.out[perm[x]]
            for x in range(len(C))
        )
    variables, basis = chain_map_space(C, D)
    same = [k for k, (x, y) in enumerate(variables) if C.gens[x].bigrading == D.gens[y].bigrading]
    # Project the solution space to the equal-bigrading block entries.
    projected = gf2.EchelonBasis()
    vectors = []
    for vec in basis:
        p = sum(1 << s for s, k in enumerate(same) if (vec >> k) & 1)
        if projected.add(p):
            vectors.append(p)
    blocks = sorted({g.bigrading for g in C.gens})
    src_blocks = {b: [k for k, g in enumerate(C.gens) if g.bigrading == b] for b in blocks}
    tgt_blocks = {b: [k for k, g in enumerate(D.gens) if g.bigrading == b] for b in blocks}

    def invertible(p: int) -> bool:
        for b in blocks:
            src, tgt = src_blocks[b], tgt_blocks[b]
            tpos = {y: r for r, y in enumerate(tgt)}
            cols = []
            for x in src:
                col = 0
                for s, k in enumerate(same):
                    if (p >> s) & 1 and variables[k][0] == x:
                        col |= 1 << tpos[variables[k][1]]
                cols.append(col)
            if gf2.rank(cols) != len(src):
                return False
        return True

    if len(vectors) > 24:
        raise ComplexError("isomorphism search space too large")
    for r in range(1 << len(vectors)):
        if invertible(gf2.combine(vectors, r)):
            return True
    return False


# ---------------------------------------------------------------------------
# Splitting off locally acyclic summands
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Split:
    """C = conn + acyclic in a new basis.

    ``pairs`` lists the two-generator summands removed by the greedy pass.
    ``certified`` is True when conn is known to be the connected complex,
    that is, every local self-map of conn is an isomorphism.
    """

    conn: ChainComplex
    acyclic: ChainComplex
    pairs: tuple[tuple[str, str], ...]
    certified: bool = False


def _try_split_edge(C: ChainComplex, x: int, y: int) -> ChainComplex | None:
    """Split off the two-generator summand through the arrow x -> y, if possible.

    Returns the complex in a new basis where x and y span a direct summand,
    or None when the divisibility conditions fail.
    """
    gens = C.gens
    cx = C.exps(x, y)
    # 1. y' = dx / c requires c to divide every coefficient of dx.
    extra_y = []
    for t in gf2.bits(C.out[x]):
        if t == y:
            continue
        e = C.exps(x, t)
        if e[0] < cx[0] or e[1] < cx[1]:
            return None
        extra_y.append(gens[t].name)
    basis = [replacement(C, g.name) for g in gens]
    basis[y] = replacement(C, gens[y].name, extra_y)
    C1 = change_basis(C, basis)
    # 2. Clear every other arrow into y' by adding a multiple of x.
    basis = [replacement(C1, g.name) for g in C1.gens]
    for z in gf2.bits(C1.incoming()[y]):
        if z == x:
            continue
        e = C1.exps(z, y)
        if e[0] < cx[0] or e[1] < cx[1]:
            return None
        basis[z] = replacement(C1, C1.gens[z].name, [gens[x].name])
    return change_basis(C1, basis)


def split_acyclic_greedy(C: ChainComplex) -> Split:
    """Repeatedly split off two-generator summands x -> y until none is found."""
    current = reduce(C) if not is_reduced(C) else C
    pairs: list[tuple[str, str]] = []
    split_names: set[str] = set()
    progress = True
    while progress:
        progress = False
        for x, y in current.arrows():
            nx, ny = current.gens[x].name, current.gens[y].name
            if nx in split_names or ny in split_names:
                continue
            attempt = _try_split_edge(current, x, y)
            if attempt is None:
                continue
            current = attempt
            pairs.append((nx, ny))
            split_names.update((nx, ny))
            progress = True
            break
    keep = [k for k, g in enumerate(current.gens) if g.name not in split_names]
    drop = [k for k, g in enumerate(current.gens) if g.name in split_names]
    conn = restrict(current, keep)
    acyclic = restrict(current, drop)
    for part in (conn, acyclic):
        if not verify_d_squared(part):
            raise ComplexError("split produced a non-complex")
    # The split must be a direct sum: no arrows between the two parts.
    for x in keep:
        for t in gf2.bits(current.out[x]):
            if t in drop:
                raise ComplexError("split parts are not independent")
    for x in drop:
        for t in gf2.bits(current.out[x]):
            if t in keep:
                raise ComplexError("split parts are not independent")
    return Split(conn, acyclic, tuple(pairs))


def disjoint_sum(parts: Sequence[ChainComplex]) -> ChainComplex:
    """Direct sum that renames clashing generators by appending '~'."""
    if not parts:
        return zero_complex()
    used: set[str] = set()
    gens: list[Generator] = []
    out: list[int] = []
    for part in parts:
        offset = len(gens)
        for g in part.gens:
            name = g.name
            while name in used:
                name += "~"
            used.add(name)
            gens.append(Generator(name, g.gr_u, g.gr_v, g.shift))
        out.extend(mask << offset for mask in part.out)
    return from_pattern(parts[0].mode, gens, out, check=False)


def split_acyclic(C: ChainComplex) -> Split:
    """Greedy splitting followed by splits along local self-maps.

    The greedy pass removes two-generator summands cheaply.  Whatever is
    left is handed to the local-map search, which removes larger acyclic
    summands and certifies the result when its search space is small enough.
    """
    from .concordance import shrink_to_connected  # local maps live with concordance

    greedy = split_acyclic_greedy(C)
    if len(greedy.conn) <= 1:
        return Split(greedy.conn, greedy.acyclic, greedy.pairs, True)
    shrink = shrink_to_connected(greedy.conn)
    if len(shrink.conn) < len(greedy.conn):
        log.info("greedy split left %d generators, local maps reduced it to %d",
                 len(greedy.conn), len(shrink.conn))
    if not shrink.certified:
        log.warning("connected part with %d generators is not certified minimal", len(shrink.conn))
    acyclic = disjoint_sum([greedy.acyclic, *shrink.acyclic])
    return Split(shrink.conn, acyclic, greedy.pairs, shrink.certified)


# ---------------------------------------------------------------------------
# Homology over F2[U, V] in a single bigrading
# ---------------------------------------------------------------------------

def graded_piece(C: ChainComplex, bigrading: tuple[int, int]) -> list[int]:
    """Generators x with a (unique) multiple U^a V^b x, a, b >= 0, in the bigrading."""
    if C.mode is not Mode.POLY:
        raise ComplexError("graded pieces are defined for F2[U,V] complexes")
    p, q = bigrading
    return [x for x, g in enumerate(C.gens)
            if g.gr_u >= p and g.gr_v >= q and (g.gr_u - p) % 2 == 0 and (g.gr_v - q) % 2 == 0]


def element_status(C: ChainComplex, bigrading: tuple[int, int],
                   names: Iterable[str]) -> tuple[bool, bool]:
    """(is a cycle, is a boundary) for the homogeneous element with the given terms."""
    piece = set(graded_piece(C, bigrading))
    vec = 0
    for nm in names:
        x = C.index(nm)
        if x not in piece:
            raise ComplexError(f"{nm} has no multiple in bigrading {bigrading}")
        vec ^= 1 << x
    image = 0
    for x in gf2.bits(vec):
        image ^= C.out[x]
    above = graded_piece(C, (bigrading[0] + 1, bigrading[1] + 1))
    return image == 0, gf2.EchelonBasis(C.out[z] for z in above).contains(vec)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def to_json(C: ChainComplex) -> str:
    data = {
        "mode": C.mode.value,
        "generators": [
            {"name": g.name, "gr_u": g.gr_u, "gr_v": g.gr_v, **({"shift": g.shift} if g.shift else {})}
            for g in C.gens
        ],
        "differential": [
            {
                "from": C.gens[x].name,
                "to": C.gens[y].name,
                "terms": [{"u": m.u_exp, "v": m.v_exp}
                          for m in sorted(C.coefficient(x, y).terms)],
            }
            for x, y in C.arrows()
        ],
    }
    return json.dumps(data, indent=2, ensure_ascii=False)


def from_json(text: str) -> ChainComplex:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexError(f"complex file is not valid JSON: {exc}") from exc
    try:
        mode = Mode(data["mode"])
        gens = [Generator(g["name"], int(g["gr_u"]), int(g["gr_v"]), int(g.get("shift", 0)))
                for g in data["generators"]]
        triples = []
        for entry in data["differential"]:
            coef = RingElement.from_terms(
                (Monomial(int(t["u"]), int(t["v"])) for t in entry["terms"]), mode)
            triples.append((entry["from"], entry["to"], coef))
    except (KeyError, TypeError, ValueError) as exc:
        raise ComplexError(f"malformed complex file: {exc}") from exc
    return make_complex(mode, gens, triples)

