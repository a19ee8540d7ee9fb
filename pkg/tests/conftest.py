"""Independent oracles shared by the tests.

These deliberately avoid the package's own linear algebra so that they can
be used to check it.
"""

from math import gcd

import pytest


def naive_rank(rows):
    """Rank over F2 of a matrix given as a list of 0/1 lists."""
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                rows[r] = [a ^ b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def pattern_matrix(C):
    """Dense 0/1 matrix M[y][x] = 1 when y appears in dx."""
    n = len(C)
    return [[(C.out[x] >> y) & 1 for x in range(n)] for y in range(n)]


def semigroup_alexander(p, q):
    """Symmetrized Alexander polynomial of T(p,q) from its semigroup.

    Delta(t) = (1 - t) * sum_{s in S} t^s with S the semigroup generated by
    p and q; only exponents below (p-1)(q-1) + 1 matter.
    """
    assert gcd(p, q) == 1
    top = (p - 1) * (q - 1)
    semigroup = {a * p + b * q for a in range(top + 1) for b in range(top + 1)
                 if a * p + b * q <= top}
    poly = {}
    for s in semigroup:
        poly[s] = poly.get(s, 0) + 1
        poly[s + 1] = poly.get(s + 1, 0) - 1
    # the tail sum_{s > top} t^s contributes (1 - t) t^(top+1) / (1 - t) = t^(top+1)
    poly[top + 1] = poly.get(top + 1, 0) + 1
    g = top // 2
    return {k - g: v for k, v in sorted(poly.items()) if v}


@pytest.fixture
def t35():
    from cfkcalc.staircases import torus_alexander

    return torus_alexander(3, 5)


def box_complex(k=1, l=1, gr=(0, 0), prefix="b"):
    """The square a -> U^k b + V^l c, b -> V^l d, c -> U^k d."""
    from cfkcalc.complexes import Generator, make_complex
    from cfkcalc.ring_algebra import RingElement

    u, v = gr
    gens = [
        Generator(f"{prefix}a", u, v),
        Generator(f"{prefix}b", u - 1 + 2 * k, v - 1),
        Generator(f"{prefix}c", u - 1, v - 1 + 2 * l),
        Generator(f"{prefix}d", u - 2 + 2 * k, v - 2 + 2 * l),
    ]
    diff = [
        (f"{prefix}a", f"{prefix}b", RingElement.monomial(k, 0)),
        (f"{prefix}a", f"{prefix}c", RingElement.monomial(0, l)),
        (f"{prefix}b", f"{prefix}d", RingElement.monomial(0, l)),
        (f"{prefix}c", f"{prefix}d", RingElement.monomial(k, 0)),
    ]
    return make_complex(gens=gens, diff=diff, mode=__import__("cfkcalc.ring_algebra").ring_algebra.Mode.POLY)


# Acceptance criteria report: test_acceptance.py appends one line per criterion.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
