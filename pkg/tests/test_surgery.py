import pytest

from cfkcalc.complexes import (
    grading_offset,
    homology,
    is_isomorphic,
    localized_homology_rank,
    verify_d_squared,
)
from cfkcalc.staircases import corner_model, staircase, torus_alexander
from cfkcalc.surgery import (
    SurgeryError,
    build_mapping_cone,
    corner_basis_change,
    dual_conn,
    flip_map,
    hat_level_from_cone,
    hat_summand,
    structure_report,
    surgery_dual_basis,
    top_corner_placement,
)
from conftest import naive_rank, pattern_matrix

# Reduced dual of T(3,5): label -> (Alexander, Maslov, cone representative, differential).
# The alpha_-1 differential is read off from its representative, U^2 (x1_1)'_0 + U^2 (x1_1)'_1.
T35_DUAL = {
    "beta_4": (4, 12, "(x1_3)_4", {"g_3": 0}),
    "g_3": (3, 11, "(x1_3)'_4", {}),
    "g_2": (2, 5, "(x1_3)'_3", {}),
    "alpha_2": (2, 4, "U(x1_1)_3 + U(x1_2)'_3", {"g_2": 1, "g_3": 4}),
    "g_1": (1, 1, "(x1_3)'_2", {}),
    "beta_1": (1, -2, "U(x1_1)_1 + U^2(x0)'_2", {"g_0": 1, "g_1": 2}),
    "alpha_1": (1, 0, "U(x1_1)_2 + U(x1_2)'_2", {"g_1": 1, "g_2": 3}),
    "g_0": (0, -1, "(x1_3)'_1", {}),
    "g_-1": (-1, -1, "(x1_3)'_0", {}),
    "beta_-1": (-1, -2, "U^2(x2_1)_-1 + U(x1_2)'_0", {"g_-1": 1, "g_-2": 2}),
    "alpha_-1": (-1, -4, "U^2(x2_1)_0 + U^2(x0)'_0", {"g_-1": 2, "g_0": 2}),
    "g_-2": (-2, 1, "(x1_3)'_-1", {}),
    "beta_-2": (-2, 0, "U^3(x2_1)_-2 + U(x1_2)'_-1", {"g_-2": 1, "g_-3": 3}),
    "g_-3": (-3, 5, "(x1_3)'_-2", {}),
    "alpha_-4": (-4, 4, "U^4(x2_3)_-3", {"g_-3": 1}),
}

# dim of the hat homology at Alexander levels -4..4
T35_HAT_DIMS = [1, 1, 2, 3, 1, 3, 2, 1, 1]

KNOTS = [(2, 3), (2, 5), (2, 7), (2, 11), (3, 4), (3, 5), (3, 7), (4, 5)]


@pytest.fixture(scope="module")
def t35_dual():
    return surgery_dual_basis(torus_alexander(3, 5))


def _terms(text):
    return sorted(text.split(" + "))


def test_t35_cone_size_and_d_squared(t35_dual):
    X = t35_dual.cone.complex
    # 8 A-copies and 7 B-copies of the 7-generator staircase
    assert len(X) == 15 * 7
    assert verify_d_squared(X)
    assert localized_homology_rank(X)[0] == len(X) - 2 * naive_rank(pattern_matrix(X))
    assert localized_homology_rank(X)[0] == 1


def test_flip_is_an_involution():
    for p, q in KNOTS:
        C = staircase(torus_alexander(p, q))
        flip = flip_map(C)
        assert flip.compose(flip).is_identity()


def test_t35_reduced_dual_table(t35_dual):
    C = t35_dual.complex
    assert sorted(C.names) == sorted(T35_DUAL)
    for label, (alex, maslov, rep, diff) in T35_DUAL.items():
        g = C.gens[C.index(label)]
        assert (g.alex, g.gr_u) == (alex, maslov), label
        assert _terms(t35_dual.representative(label)) == _terms(rep), label
        x = C.index(label)
        got = {C.gens[y].name: C.exps(x, y)[0] for y in range(len(C)) if (C.out[x] >> y) & 1}
        assert got == diff, label


def test_t35_hat_dims_from_both_constructions(t35_dual):
    data = torus_alexander(3, 5)
    C = top_corner_placement(staircase(data), data.n_of_k)
    flip = flip_map(C)
    direct, from_cone = [], []
    for j in range(-4, 5):
        direct.append(sum(hat_summand(C, flip, j, data.genus).homology().values()))
        from_cone.append(sum(hat_level_from_cone(t35_dual.cone, j).homology().values()))
    assert direct == T35_HAT_DIMS
    assert from_cone == T35_HAT_DIMS
    assert sum(T35_HAT_DIMS) == len(t35_dual.complex)


def test_t35_level_one_classes(t35_dual):
    data = torus_alexander(3, 5)
    C = top_corner_placement(staircase(data), data.n_of_k)
    assert hat_summand(C, flip_map(C), 1, data.genus).homology() == {-2: 1, 0: 1, 1: 1}


def test_hat_level_outside_range():
    data = torus_alexander(2, 3)
    C = top_corner_placement(staircase(data), data.n_of_k)
    with pytest.raises(SurgeryError):
        hat_summand(C, flip_map(C), 5, data.genus)


def test_cone_needs_one_variable_model():
    from cfkcalc.staircases import cn_model

    C = cn_model(2)
    with pytest.raises(SurgeryError):
        build_mapping_cone(C, None)


@pytest.mark.parametrize("p,q", KNOTS)
def test_dual_structure(p, q):
    data = torus_alexander(p, q)
    dual = surgery_dual_basis(data)
    C = dual.complex
    assert verify_d_squared(C)
    assert structure_report(dual) == []
    assert len(dual.lower) == 2 * data.genus - 1
    assert len(C) == sum(homology(C).values())
    # the hat homology of the dual has odd total rank
    assert len(C) % 2 == 1
    assert localized_homology_rank(C)[0] == 1


@pytest.mark.parametrize("p,q", KNOTS)
def test_corner_basis_change_keeps_homology(p, q):
    dual = surgery_dual_basis(torus_alexander(p, q))
    D = corner_basis_change(dual)
    assert verify_d_squared(D)
    assert homology(D) == homology(dual.complex)


@pytest.mark.parametrize("q,n", [(3, 1), (7, 2), (11, 3)])
def test_conn_of_two_strand_duals(q, n):
    split = dual_conn(surgery_dual_basis(torus_alexander(2, q)))
    assert len(split.conn) == 3
    assert is_isomorphic(split.conn, corner_model(n), up_to_shift=True)
    if len(split.acyclic):
        assert localized_homology_rank(split.acyclic)[0] == 0


@pytest.mark.parametrize("p,q", [(3, 4), (2, 5), (3, 7)])
def test_conn_for_even_step_count(p, q):
    split = dual_conn(surgery_dual_basis(torus_alexander(p, q)))
    assert torus_alexander(p, q).m % 2 == 0
    assert len(split.conn) == 1


@pytest.mark.parametrize("p,q", [(3, 5), (4, 5)])
def test_conn_for_odd_step_count(p, q):
    data = torus_alexander(p, q)
    split = dual_conn(surgery_dual_basis(data))
    assert data.m % 2 == 1
    assert is_isomorphic(split.conn, corner_model(data.n_of_k), up_to_shift=True)


def test_isomorphism_holds_only_up_to_a_shift():
    conn = dual_conn(surgery_dual_basis(torus_alexander(2, 7))).conn
    assert not is_isomorphic(conn, corner_model(2))
    assert is_isomorphic(conn, corner_model(2), up_to_shift=True)
    assert grading_offset(conn, corner_model(2)) == -4
