"""Linear algebra over F2 with vectors stored as Python int bitmasks.

Bit ``k`` of a vector is its ``k``-th coordinate.  A matrix is a list of
column vectors.  Everything here is exact and deterministic.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class EchelonBasis:
    """Incrementally maintained row-echelon basis of a subspace."""

    def __init__(self, vectors: Iterable[int] = ()) -> None:
        self._rows: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        while v:
            top = v.bit_length() - 1
            row = self._rows.get(top)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v: int) -> bool:
        """Insert v; return True when it enlarged the span."""
        v = self.reduce(v)
        if not v:
            return False
        self._rows[v.bit_length() - 1] = v
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    @property
    def dim(self) -> int:
        return len(self._rows)

    def vectors(self) -> list[int]:
        return [self._rows[k] for k in sorted(self._rows)]


def rank(vectors: Iterable[int]) -> int:
    return EchelonBasis(vectors).dim


def kernel(vectors: Sequence[int]) -> list[int]:
    """Basis of {c : sum of c_i * vectors[i] = 0}; c is a bitmask over indices."""
    rows: dict[int, tuple[int, int]] = {}
    result = []
    for idx, v in enumerate(vectors):
        tag = 1 << idx
        while v:
            top = v.bit_length() - 1
            hit = rows.get(top)
            if hit is None:
                rows[top] = (v, tag)
                break
            v ^= hit[0]
            tag ^= hit[1]
        if not v:
            result.append(tag)
    return result


def preimage(vectors: Sequence[int], subspace: Iterable[int]) -> list[int]:
    """Basis of {c : sum c_i * vectors[i] lies in span(subspace)}."""
    basis = subspace if isinstance(subspace, EchelonBasis) else EchelonBasis(subspace)
    return kernel([basis.reduce(v) for v in vectors])


def combine(vectors: Sequence[int], coeffs: int) -> int:
    out = 0
    idx = 0
    while coeffs:
        if coeffs & 1:
            out ^= vectors[idx]
        coeffs >>= 1
        idx += 1
    return out


def intersect(first: Sequence[int], second: Sequence[int]) -> list[int]:
    """Basis of span(first) intersected with span(second)."""
    first = list(first)
    combos = kernel(first + list(second))
    mask = (1 << len(first)) - 1
    basis = EchelonBasis()
    for c in combos:
        basis.add(combine(first, c & mask))
    return basis.vectors()


def matmul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product of column-matrices: column j of a*b is a applied to b[j]."""
    return [combine(a, col) for col in b]


def identity(n: int) -> list[int]:
    return [1 << k for k in range(n)]


def inverse(a: Sequence[int]) -> list[int]:
    """Inverse of a square column-matrix; raises ValueError if singular."""
    n = len(a)
    rows: dict[int, tuple[int, int]] = {}
    for idx, v in enumerate(a):
        tag = 1 << idx
        while v:
            top = v.bit_length() - 1
            hit = rows.get(top)
            if hit is None:
                rows[top] = (v, tag)
                break
            v ^= hit[0]
            tag ^= hit[1]
        if not v:
            raise ValueError("matrix is singular over F2")
    # Back-substitute to express each unit vector as a combination of columns.
    cols = [0] * n
    for bit in range(n):
        v, tag = 1 << bit, 0
        while v:
            top = v.bit_length() - 1
            row, rtag = rows[top]
            v ^= row
            tag ^= rtag
        cols[bit] = tag
    return cols


def transpose(a: Sequence[int], nrows: int) -> list[int]:
    out = [0] * nrows
    for j, col in enumerate(a):
        while col:
            low = col & -col
            out[low.bit_length() - 1] |= 1 << j
            col ^= low
    return out


def bits(v: int) -> list[int]:
    """Indices of the set bits of v in increasing order."""
    out = []
    while v:
        low = v & -v
        out.append(low.bit_length() - 1)
        v ^= low
    return out


def nullspace(rows: Sequence[int], nvars: int) -> list[int]:
    """Basis of {x in F2^nvars : <row, x> = 0 for every row}."""
    pivots: dict[int, int] = {}
    for r in rows:
        for p, prow in pivots.items():
            if (r >> p) & 1:
                r ^= prow
        if not r:
            continue
        p = r.bit_length() - 1
        for q in list(pivots):
            if (pivots[q] >> p) & 1:
                pivots[q] ^= r
        pivots[p] = r
    basis = []
    for free in range(nvars):
        if free in pivots:
            continue
        vec = 1 << free
        for p, prow in pivots.items():
            if (prow >> free) & 1:
                vec |= 1 << p
        basis.append(vec)
    return basis
