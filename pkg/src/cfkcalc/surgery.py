"""The filtered mapping cone for +1 surgery and the reduced dual knot complex.

For a knot complex C of genus g with flip map phi, the cone X is built from
copies A_s (1-g <= s <= g) and B_s (2-g <= s <= g) of C.  A translate at
(i, j) in A_s gets the bifiltration

    I = max(i, j - s),   J = max(i + s - 1, j),

and in B_s it gets I = i, J = i + s - 1.  The maps are v_s = identity
A_s -> B_s and h_s = U^s phi : A_s -> B_(s+1).  Maslov gradings are shifted
by s(s-1) on A_s and by s(s-1) - 1 on B_s, so that v and h lower grading by
one.  Reducing X (cancelling arrows that keep both I and J) gives a model of
the dual knot complex; its generators are then renamed g_j, alpha_j, beta_j.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import gf2
from .complexes import (
    ChainComplex,
    F2Complex,
    Generator,
    Reduction,
    Region,
    Split,
    Translate,
    change_basis,
    from_pattern,
    map_exponents,
    reduce_with_inclusion,
    replacement,
    split_acyclic,
    subquotient,
)
from .ring_algebra import Mode
from .staircases import LSpaceKnotData, staircase


class SurgeryError(ValueError):
    pass


@dataclass(frozen=True)
class FlipMap:
    """phi(x) = U^k x' for each generator x, stored as name -> (x', k)."""

    images: dict[str, tuple[str, int]]

    def __call__(self, name: str) -> tuple[str, int]:
        return self.images[name]

    def compose(self, other: "FlipMap") -> "FlipMap":
        out = {}
        for name, (mid, k) in other.images.items():
            tgt, k2 = self.images[mid]
            out[name] = (tgt, k + k2)
        return FlipMap(out)

    def is_identity(self) -> bool:
        return all(tgt == name and k == 0 for name, (tgt, k) in self.images.items())


_STAIR_NAME = re.compile(r"^x([12])_(\d+)$")


def flip_map(C: ChainComplex) -> FlipMap:
    """The superscript swap x1_s <-> x2_s, x0 fixed, with forced U-powers.

    Checks that the result is a chain map, preserves Maslov grading and
    transposes the drawn filtration points.
    """
    images = {}
    for g in C.gens:
        match = _STAIR_NAME.match(g.name)
        if g.name == "x0":
            partner = "x0"
        elif match:
            partner = f"x{3 - int(match.group(1))}_{match.group(2)}"
        else:
            raise SurgeryError(f"{g.name}: no declared flip symmetry")
        if partner not in C.names:
            raise SurgeryError(f"{g.name}: partner {partner} missing")
        images[g.name] = partner
    phi = {}
    for g in C.gens:
        h = C.gens[C.index(images[g.name])]
        diff = h.maslov - g.maslov
        if diff % 2:
            raise SurgeryError("flip cannot preserve Maslov parity")
        k = diff // 2
        if (h.i - k, h.j - k) != (g.j, g.i):
            raise SurgeryError(f"flip of {g.name} does not transpose the filtration")
        phi[g.name] = (h.name, k)
    flip = FlipMap(phi)
    check_flip(C, flip)
    return flip


def check_flip(C: ChainComplex, flip: FlipMap) -> None:
    perm = [C.index(flip(g.name)[0]) for g in C.gens]
    for x in range(len(C)):
        image = sum(1 << perm[y] for y in gf2.bits(C.out[x]))
        if image != C.out[perm[x]]:
            raise SurgeryError("flip is not a chain map")


@dataclass(frozen=True)
class ConeIndex:
    part: str  # "A" or "B"
    s: int
    inner: str

    @property
    def name(self) -> str:
        prime = "'" if self.part == "B" else ""
        return f"({self.inner}){prime}_{self.s}"


def a_shift(s: int) -> int:
    return s * (s - 1)


def b_shift(s: int) -> int:
    return s * (s - 1) - 1


def cone_filtration(part: str, s: int, i: int, j: int) -> tuple[int, int]:
    if part == "A":
        return max(i, j - s), max(i + s - 1, j)
    return i, i + s - 1


@dataclass(frozen=True, eq=False)
class MappingCone:
    complex: ChainComplex
    indices: tuple[ConeIndex, ...]
    genus: int
    source: ChainComplex
    flip: FlipMap

    def index_of(self, name: str) -> ConeIndex:
        return self.indices[self.complex.index(name)]


def genus_of(C: ChainComplex) -> int:
    return max(abs(g.alex) for g in C.gens) if C.gens else 0


def build_mapping_cone(C: ChainComplex, flip: FlipMap, genus: int | None = None) -> MappingCone:
    """Assemble X from the copies A_s, B_s and the maps v_s, h_s."""
    if C.mode is not Mode.LOCAL:
        raise SurgeryError("the mapping cone needs a one-variable filtered complex")
    g = genus_of(C) if genus is None else genus
    indices: list[ConeIndex] = []
    gens: list[Generator] = []
    # B-copies come first: the reduction then cancels the internal arrows of
    # each B_s before touching A_s, which yields the standard g/alpha/beta basis.
    for part, lo in (("B", 2 - g), ("A", 1 - g)):
        for s in range(lo, g + 1):
            shift = a_shift(s) if part == "A" else b_shift(s)
            for c in C.gens:
                I, J = cone_filtration(part, s, c.i, c.j)
                idx = ConeIndex(part, s, c.name)
                indices.append(idx)
                gens.append(Generator.placed(idx.name, I, J, c.maslov + shift))
    where = {(idx.part, idx.s, idx.inner): k for k, idx in enumerate(indices)}
    out = [0] * len(gens)
    for k, idx in enumerate(indices):
        c = C.index(idx.inner)
        for d in gf2.bits(C.out[c]):
            out[k] |= 1 << where[(idx.part, idx.s, C.gens[d].name)]
        if idx.part != "A":
            continue
        v = where.get(("B", idx.s, idx.inner))
        if v is not None:
            out[k] |= 1 << v
        tgt_name, power = flip(idx.inner)
        h = where.get(("B", idx.s + 1, tgt_name))
        if h is not None:
            src, tgt = gens[k], gens[h]
            # h_s = U^s phi must be homogeneous of degree -1
            if _u_power(src, tgt) != idx.s + power:
                raise SurgeryError("h_s is not homogeneous of degree -1")
            out[k] |= 1 << h
    X = from_pattern(Mode.LOCAL, gens, out)
    return MappingCone(X, tuple(indices), g, C, flip)


def _u_power(src: Generator, tgt: Generator) -> int:
    a = (tgt.gr_u - src.gr_u + 1) // 2
    return a + tgt.shift - src.shift


def _level_region(j: int) -> Region:
    return Region(f"I=0,J={j}", lambda i, jj: i == 0 and jj == j)


def hat_summand(C: ChainComplex, flip: FlipMap, j: int, genus: int | None = None) -> F2Complex:
    """The hat-flavoured cone at Alexander level j.

    A_j{i <= 0, j' = j} + A_(j+1){i = 0, j' <= j} -> B_(j+1){i = 0}, and at the
    top level j = g only A_g{i <= 0, j' = g}.  Built directly from translates
    of C, independently of :func:`build_mapping_cone`.
    """
    g = genus_of(C) if genus is None else genus
    if not -g <= j <= g:
        raise SurgeryError(f"Alexander level {j} outside [-{g}, {g}]")
    n = len(C)
    pieces: list[tuple[str, int]] = []
    if 1 - g <= j <= g:
        pieces.append(("A", j))
    if 1 - g <= j + 1 <= g:
        pieces.append(("A", j + 1))
    if 2 - g <= j + 1 <= g:
        pieces.append(("B", j + 1))

    def member(part: str, s: int, i: int, jj: int) -> bool:
        if part == "A" and s == j:
            return i <= 0 and jj == j
        if part == "A":
            return i == 0 and jj <= j
        return i == 0

    names: list[str] = []
    basis: list[Translate] = []
    copy_of: dict[tuple[str, int], int] = {}
    for copy, (part, s) in enumerate(pieces):
        copy_of[(part, s)] = copy
        for c in C.gens:
            names.append(ConeIndex(part, s, c.name).name)
        shift = a_shift(s) if part == "A" else b_shift(s)
        for ci, c in enumerate(C.gens):
            # U^k c sits at (-k, alex - k); the level conditions pin k down
            for k in sorted({0, c.alex - j}):
                i, jj = -k, c.alex - k
                if member(part, s, i, jj):
                    basis.append(Translate(copy * n + ci, k, i, jj, c.gr_u - 2 * k + shift))
    where = {(t.gen, t.k): b for b, t in enumerate(basis)}
    boundary = []
    for t in basis:
        copy, ci = divmod(t.gen, n)
        part, s = pieces[copy]
        mask = 0
        for d in gf2.bits(C.out[ci]):
            a = C.exps(ci, d)[0]
            hit = where.get((copy * n + d, t.k + a))
            if hit is not None:
                mask |= 1 << hit
        if part == "A" and ("B", s) in copy_of:
            hit = where.get((copy_of[("B", s)] * n + ci, t.k))
            if hit is not None:
                mask |= 1 << hit
        if part == "A" and ("B", s + 1) in copy_of:
            tgt, power = flip(C.gens[ci].name)
            # translate of the target in canonical units: U^(k + s + power) at drawn level
            tc = C.gens[C.index(tgt)]
            k_new = t.k + s + power + (C.gens[ci].shift - tc.shift)
            hit = where.get((copy_of[("B", s + 1)] * n + C.index(tgt), k_new))
            if hit is not None:
                mask |= 1 << hit
        boundary.append(mask)
    return F2Complex(tuple(basis), tuple(boundary), tuple(names))


def hat_level_from_cone(cone: MappingCone, j: int) -> F2Complex:
    """The same summand as the subquotient {I = 0, J = j} of the cone."""
    X = cone.complex
    return subquotient(X, _level_region(j), check=False,
                       window=(0, 0, j, j))


# ---------------------------------------------------------------------------
# Reduction and the g / alpha / beta basis
# ---------------------------------------------------------------------------


def top_corner_placement(C: ChainComplex, n: int) -> ChainComplex:
    """Redraw the staircase so that x1_m sits at (0, g)."""
    gens = [Generator(g.name, g.gr_u, g.gr_v, g.shift + n) for g in C.gens]
    return from_pattern(C.mode, gens, C.out)


@dataclass(frozen=True, eq=False)
class SurgeryDual:
    data: LSpaceKnotData | None
    cone: MappingCone
    reduction: Reduction
    labels: dict[str, str]
    complex: ChainComplex
    lower: dict[int, str] = field(default_factory=dict)
    alphas: dict[int, str] = field(default_factory=dict)
    betas: dict[int, str] = field(default_factory=dict)

    def representative(self, label: str, hat_only: bool = True) -> str:
        """The survivor's chain in the cone, written at its I = 0 translate."""
        inverse = {v: k for k, v in self.labels.items()}
        return representative_text(self.cone, self.reduction, inverse[label], hat_only)

    def differential_text(self, label: str) -> str:
        C = self.complex
        x = C.index(label)
        terms = []
        for y in sorted(gf2.bits(C.out[x]), key=lambda y: _label_key(C.gens[y].name)):
            k = C.coefficient(x, y).single().u_exp
            coef = "" if k == 0 else ("U" if k == 1 else f"U^{k}")
            terms.append(f"{coef}{C.gens[y].name}" if not coef else f"{coef} {C.gens[y].name}")
        return " + ".join(terms) if terms else "0"


def _label_key(name: str) -> tuple[int, int]:
    kind, _, j = name.partition("_")
    return (int(j), {"g": 0, "beta": 1, "alpha": 2}.get(kind, 3))


def representative_text(cone: MappingCone, red: Reduction, name: str, hat_only: bool = True) -> str:
    X = cone.complex
    z = X.gens[X.index(name)]
    parts = []
    for term in sorted(red.representatives[name], key=lambda t: X.index(t)):
        t = X.gens[X.index(term)]
        k = (t.maslov - z.maslov) // 2 + z.i
        if hat_only and (t.i - k, t.j - k) != (0, z.j - z.i):
            continue
        coef = "" if k == 0 else ("U" if k == 1 else f"U^{k}")
        parts.append(f"{coef}{term}")
    return " + ".join(parts)


def _lower_name(m: int, j: int) -> str:
    return ConeIndex("B", j + 1, f"x1_{m}").name


def surgery_dual_basis(data: LSpaceKnotData) -> SurgeryDual:
    """Build, reduce and label the +1-surgery dual knot complex."""
    C = top_corner_placement(staircase(data), data.n_of_k)
    cone = build_mapping_cone(C, flip_map(C), data.genus)
    red = reduce_with_inclusion(cone.complex)
    return label_reduced(data, cone, red)


def label_reduced(data: LSpaceKnotData, cone: MappingCone, red: Reduction) -> SurgeryDual:
    R = red.complex
    m, g = data.m, data.genus
    lower: dict[int, str] = {}
    for j in range(1 - g, g):
        name = _lower_name(m, j)
        if name not in R.names:
            raise SurgeryError(f"lower corner {name} did not survive reduction")
        lower[j] = name
    lower_index = {R.index(nm): j for j, nm in lower.items()}
    labels = {nm: f"g_{j}" for j, nm in lower.items()}
    alphas: dict[int, str] = {}
    betas: dict[int, str] = {}
    for x, gen in enumerate(R.gens):
        if gen.name in labels:
            continue
        j = gen.alex
        hit = sorted(lower_index[y] for y in gf2.bits(R.out[x]) if y in lower_index)
        if len(hit) != len(gf2.bits(R.out[x])):
            raise SurgeryError(f"{gen.name} maps to a generator other than a lower corner")
        kind = _corner_kind(j, hit)
        if kind is None:
            raise SurgeryError(f"{gen.name} at level {j} hits lower corners {hit}")
        table = alphas if kind == "alpha" else betas
        if j in table:
            raise SurgeryError(f"two {kind} generators at level {j}")
        table[j] = gen.name
        labels[gen.name] = f"{kind}_{j}"
    gens = [Generator(labels[gn.name], gn.gr_u, gn.gr_v, 0) for gn in R.gens]
    relabelled = from_pattern(Mode.LOCAL, gens, R.out)
    return SurgeryDual(
        data, cone, red, labels, relabelled,
        {j: labels[nm] for j, nm in lower.items()},
        {j: labels[nm] for j, nm in alphas.items()},
        {j: labels[nm] for j, nm in betas.items()},
    )


def _corner_kind(j: int, hit: list[int]) -> str | None:
    if hit == [j - 1, j] or hit == [j - 1]:
        return "beta"
    if hit == [j, j + 1] or hit == [j + 1]:
        return "alpha"
    return None


def surgery_dual_complex(data: LSpaceKnotData) -> ChainComplex:
    return surgery_dual_basis(data).complex



# ---------------------------------------------------------------------------
# Structure of the reduced dual and the corner basis change
# ---------------------------------------------------------------------------

def _precedes(C: ChainComplex, low: str, high: str) -> bool:
    """Can a U-multiple of ``low`` sit at or below ``high`` in the same grading?

    Equivalently the coefficient that puts ``low`` into the bigrading of
    ``high`` has non-negative exponents, which is the coordinate comparison
    of the two translates in a common Maslov grading.
    """
    e = map_exponents(C.gens[C.index(high)], C.gens[C.index(low)])
    return e is not None and e[0] >= 0 and e[1] >= 0


def _same_parity(C: ChainComplex, a: str, b: str) -> bool:
    return (C.gens[C.index(a)].gr_u - C.gens[C.index(b)].gr_u) % 2 == 0


def upper_corners(dual: SurgeryDual) -> list[tuple[int, str]]:
    """(level, label) of every upper corner generator, alphas before betas per level."""
    items = [(j, lab) for j, lab in dual.alphas.items()] + [(j, lab) for j, lab in dual.betas.items()]
    return sorted(items, key=lambda t: (t[0], t[1].startswith("beta")))


def structure_report(dual: SurgeryDual) -> list[str]:
    """Failures of the lower/upper corner structure; an empty list means all checks pass."""
    C = dual.complex
    g = dual.data.genus
    problems = []
    if sorted(dual.lower) != list(range(1 - g, g)):
        problems.append(f"lower corners at levels {sorted(dual.lower)}, expected {1 - g}..{g - 1}")
    incoming = C.incoming()
    uppers = {lab for _, lab in upper_corners(dual)}
    if len(uppers) + len(dual.lower) != len(C):
        problems.append("some generator is neither a lower nor an upper corner")
    for j, lab in dual.lower.items():
        x = C.index(lab)
        if C.out[x]:
            problems.append(f"{lab} has non-zero differential")
        sources = [C.gens[z].name for z in gf2.bits(incoming[x])]
        if len(sources) != 2 or not set(sources) <= uppers:
            problems.append(f"{lab} is hit by {sources}, expected exactly two upper corners")
    top, bottom = dual.betas.get(g), dual.alphas.get(-g)
    if top is None or dual.differential_text(top) != dual.lower[g - 1]:
        problems.append(f"top generator at level {g} should map to {dual.lower[g - 1]}")
    if bottom is None or dual.differential_text(bottom) != f"U {dual.lower[1 - g]}":
        problems.append(f"bottom generator at level {-g} should map to U {dual.lower[1 - g]}")
    problems.extend(comparability_report(dual))
    return problems


def comparability_report(dual: SurgeryDual) -> list[str]:
    """Check that upper corners on the top half are ordered by level.

    For levels j > j' >= 0 a same-grading multiple of u_j must lie weakly
    below (in both coordinates) the multiple of u_j', and alpha_j must lie
    below beta_j.  The mirror statement is checked on the bottom half.
    """
    C = dual.complex
    problems = []
    ups = upper_corners(dual)
    for j, a in ups:
        for jj, b in ups:
            if not _same_parity(C, a, b):
                continue
            if j > jj >= 0 and not _precedes(C, a, b):
                problems.append(f"{a} does not precede {b}")
            if j < jj <= 0 and not _precedes(C, a, b):
                problems.append(f"{a} does not precede {b}")
    for j in dual.alphas.keys() & dual.betas.keys():
        a, b = dual.alphas[j], dual.betas[j]
        if not _same_parity(C, a, b):
            continue
        if j >= 0 and not _precedes(C, a, b):
            problems.append(f"{a} does not precede {b}")
        if j <= 0 and not _precedes(C, b, a):
            problems.append(f"{b} does not precede {a}")
    return problems


def corner_basis_change(dual: SurgeryDual) -> ChainComplex:
    """Rewrite the dual so that most upper corners pair off with lower corners.

    On the top half each beta_j (j >= 0) absorbs every alpha_j' with
    j' >= j and every beta_j' with j' > j; each alpha_j absorbs every upper
    corner at a higher level.  The bottom half is treated by the mirror rule
    with alpha and beta exchanged.  Only terms of matching Maslov parity are
    added, each with the U-power forced by the gradings.
    """
    C = dual.complex
    ups = upper_corners(dual)
    basis = []
    for gen in C.gens:
        extra: list[str] = []
        if gen.name.startswith(("alpha_", "beta_")):
            j = gen.alex
            is_beta = gen.name.startswith("beta_")
            for jj, other in ups:
                if other == gen.name or not _same_parity(C, gen.name, other):
                    continue
                other_beta = other.startswith("beta_")
                if j >= 0 and jj >= 0:
                    take = jj > j or (jj == j and is_beta and not other_beta)
                elif j < 0 and jj < 0:
                    take = jj < j or (jj == j and not is_beta and other_beta)
                else:
                    take = False
                if take:
                    extra.append(other)
        basis.append(replacement(C, gen.name, extra))
    return change_basis(C, basis)


def dual_conn(dual: SurgeryDual) -> Split:
    """Split the acyclic summands off the corner basis of the dual."""
    return split_acyclic(corner_basis_change(dual))
