import pytest

from cfkcalc.complexes import homology, localized_homology_rank, region_i_eq, subquotient
from cfkcalc.complexes import verify_d_squared
from cfkcalc.invariants import alexander_from_complex, euler_from_generators
from cfkcalc.staircases import (
    LSpaceKnotData,
    StaircaseError,
    cn_dual_model,
    cn_model,
    corner_model,
    staircase,
    staircase_positions,
    torus_alexander,
    torus_alexander_polynomial,
)
from conftest import semigroup_alexander

TORUS = [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (2, 11), (3, 7), (4, 5)]

# Drawn positions and parenthesized Maslov labels of the U^-2 copy of T(3,5).
T35_DRAWN = [
    ("x1_3", (-2, 2), 0), ("x1_2", (-1, 2), 1), ("x1_1", (-1, 0), 0), ("x0", (0, 0), 1),
    ("x2_1", (0, -1), 0), ("x2_2", (2, -1), 1), ("x2_3", (2, -2), 0),
]


def walk_positions(poly):
    """Corners of the staircase from the gaps between Alexander exponents.

    Starting at the top-left corner (0, g), steps alternate right and down
    with lengths equal to consecutive gaps; the middle corner is then moved
    to the origin.
    """
    powers = sorted(poly, reverse=True)
    gaps = [a - b for a, b in zip(powers, powers[1:])]
    i, j = 0, powers[0]
    points = [(i, j)]
    for k, gap in enumerate(gaps):
        if k % 2 == 0:
            i += gap
        else:
            j -= gap
        points.append((i, j))
    mi, mj = points[len(points) // 2]
    return [(a - mi, b - mj) for a, b in points]


@pytest.mark.parametrize("p,q", TORUS)
def test_alexander_polynomial_against_semigroup(p, q):
    assert torus_alexander_polynomial(p, q) == semigroup_alexander(p, q)
    assert torus_alexander(p, q).alexander() == semigroup_alexander(p, q)


def test_t35_data():
    data = torus_alexander(3, 5)
    assert data.exps == (1, 3, 4)
    assert data.genus == 4 and data.m == 3 and data.n_of_k == 2
    assert [data.ell(s) for s in (1, 2, 3)] == [1, 2, 1]


@pytest.mark.parametrize("p,q", TORUS)
def test_positions_match_gap_walk(p, q):
    data = torus_alexander(p, q)
    pos = staircase_positions(data)
    order = [f"x1_{s}" for s in range(data.m, 0, -1)] + ["x0"] + [f"x2_{s}" for s in range(1, data.m + 1)]
    assert [pos[n] for n in order] == walk_positions(semigroup_alexander(p, q))


def test_t35_staircase_drawing():
    C = staircase(torus_alexander(3, 5))
    assert len(C) == 7
    got = [(g.name, (g.i, g.j), g.maslov + 4) for g in C.gens]
    assert got == T35_DRAWN


@pytest.mark.parametrize("p,q", TORUS)
def test_staircase_is_a_knot_complex(p, q):
    data = torus_alexander(p, q)
    C = staircase(data)
    assert verify_d_squared(C)
    assert len(C) == 2 * data.m + 1
    assert localized_homology_rank(C)[0] == 1
    # the hat homology of a staircase has one generator per corner
    assert sum(homology(C).values()) == len(C)
    assert alexander_from_complex(C) == semigroup_alexander(p, q)
    assert euler_from_generators(C) == semigroup_alexander(p, q)
    assert subquotient(C, region_i_eq(0)).homology() == {0: 1}


def test_general_l_space_data():
    data = LSpaceKnotData((2, 5, 7))
    C = staircase(data)
    assert verify_d_squared(C)
    assert data.n_of_k == 7 - 5 + 2
    assert euler_from_generators(C) == data.alexander()


@pytest.mark.parametrize("exps", [(), (0, 1), (3, 2), (2, 2), (-1, 4)])
def test_invalid_exponents(exps):
    with pytest.raises(StaircaseError):
        LSpaceKnotData(exps)


@pytest.mark.parametrize("p,q", [(2, 4), (1, 5), (6, 9)])
def test_invalid_torus(p, q):
    with pytest.raises(StaircaseError):
        torus_alexander(p, q)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_models(n):
    C, D = cn_model(n), cn_dual_model(n)
    assert len(C) == len(D) == 3
    assert localized_homology_rank(C)[0] == localized_homology_rank(D)[0] == 1
    assert C.gens[C.index("y1")].bigrading == (1 - 2 * n, 1 - 2 * n)
    assert D.gens[D.index("y1*")].bigrading == (2 * n - 1, 2 * n - 1)
    assert verify_d_squared(corner_model(n))
    with pytest.raises(StaircaseError):
        cn_model(0)
