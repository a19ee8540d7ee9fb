"""Randomized properties over L-space staircases and model sums."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from cfkcalc.complexes import (
    change_basis,
    direct_sum,
    dual,
    homology,
    is_isomorphic,
    localized_homology_rank,
    map_exponents,
    reduce,
    replacement,
    split_acyclic,
    tensor,
    verify_d_squared,
    vertical_homology_dim,
)
from cfkcalc.invariants import euler_from_generators, alexander_from_complex, summary
from cfkcalc.staircases import LSpaceKnotData, cn_dual_model, cn_model, staircase
from cfkcalc.surgery import dual_conn, structure_report, surgery_dual_basis
from conftest import box_complex, naive_rank, pattern_matrix

SETTINGS = settings(max_examples=25, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow])

exponent_lists = st.lists(st.integers(1, 6), min_size=1, max_size=4, unique=True).map(
    lambda xs: tuple(sorted(xs)))


def _factor(item):
    kind, n = item
    return cn_model(n) if kind == "C" else cn_dual_model(n)


model_sums = st.lists(st.tuples(st.sampled_from("CD"), st.integers(1, 3)), min_size=1, max_size=2)


def _model_sum(items):
    total = _factor(items[0])
    for s in items[1:]:
        total = tensor(total, _factor(s))
    return total


def _random_basis_change(C, data):
    """A filtered, invertible change of basis built from random extra terms."""
    basis = []
    for x, gx in enumerate(C.gens):
        extra = []
        for y, gy in enumerate(C.gens):
            if y == x:
                continue
            e = map_exponents(gx, gy)
            if e is None or e[0] < 0 or e[1] < 0:
                continue
            # equal bigradings only below the diagonal, so the change stays unitriangular
            if e == (0, 0) and y > x:
                continue
            if data.draw(st.booleans()):
                extra.append(gy.name)
        basis.append(replacement(C, gx.name, extra))
    return change_basis(C, basis)


@SETTINGS
@given(exponent_lists)
def test_staircase_properties(exps):
    data = LSpaceKnotData(exps)
    C = staircase(data)
    assert verify_d_squared(C)
    assert localized_homology_rank(C)[0] == 1
    assert euler_from_generators(C) == data.alexander()
    assert alexander_from_complex(C) == data.alexander()
    s = summary(C)
    assert (s.tau, s.epsilon) == (data.genus, 1)


@settings(max_examples=12, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(exponent_lists.filter(lambda e: e[-1] <= 5))
def test_surgery_dual_properties(exps):
    data = LSpaceKnotData(exps)
    dual_ = surgery_dual_basis(data)
    assert verify_d_squared(dual_.cone.complex)
    assert structure_report(dual_) == []
    C = dual_.complex
    assert localized_homology_rank(C)[0] == 1
    assert alexander_from_complex(C) == data.alexander()
    split = dual_conn(dual_)
    assert len(split.conn) == (3 if data.m % 2 else 1)
    if len(split.acyclic):
        assert localized_homology_rank(split.acyclic)[0] == 0


@SETTINGS
@given(model_sums)
def test_homology_engines_agree(factors):
    C = _model_sum(factors)
    assert verify_d_squared(C)
    rank = len(C) - 2 * naive_rank(pattern_matrix(C))
    assert localized_homology_rank(C, "cancel")[0] == rank == 1
    assert localized_homology_rank(C, "gauss")[0] == rank
    assert homology(C, "cancel") == homology(C, "gauss")
    assert vertical_homology_dim(C, "cancel") == vertical_homology_dim(C, "gauss")


@SETTINGS
@given(model_sums)
def test_reduce_and_dual(factors):
    C = _model_sum(factors)
    R = reduce(C)
    assert homology(R) == homology(C)
    assert vertical_homology_dim(R) == vertical_homology_dim(C)
    assert is_isomorphic(dual(dual(R)), R, by_name=True)
    s, t = summary(R), summary(dual(R))
    assert (t.tau, t.epsilon) == (-s.tau, -s.epsilon)


@SETTINGS
@given(model_sums, st.data())
def test_basis_change_preserves_everything(factors, data):
    C = reduce(_model_sum(factors))
    D = _random_basis_change(C, data)
    assert verify_d_squared(D)
    assert homology(D) == homology(C)
    assert summary(D) == summary(C)


@SETTINGS
@given(model_sums, st.integers(1, 2), st.integers(1, 2))
def test_split_removes_added_boxes(factors, k, l):
    C = reduce(_model_sum(factors))
    conn = split_acyclic(C).conn
    boxed = direct_sum(C, box_complex(k, l, prefix="p"))
    assert is_isomorphic(split_acyclic(boxed).conn, conn)
    assert summary(boxed) == summary(C)


@SETTINGS
@given(model_sums)
def test_tau_is_additive(factors):
    C = reduce(_model_sum(factors))
    expected = sum(1 if kind == "C" else -1 for kind, _ in factors)
    assert summary(C).tau == expected
