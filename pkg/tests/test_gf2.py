import random

from cfkcalc import gf2
from conftest import naive_rank


def _dense(cols, n):
    return [[(c >> r) & 1 for c in cols] for r in range(n)]


def test_rank_matches_naive_elimination():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 9)
        cols = [rng.getrandbits(n) for _ in range(rng.randint(1, 9))]
        assert gf2.rank(cols) == naive_rank(_dense(cols, n))


def test_kernel_vectors_combine_to_zero():
    rng = random.Random(3)
    for _ in range(30):
        vecs = [rng.getrandbits(6) for _ in range(8)]
        ker = gf2.kernel(vecs)
        assert len(ker) == len(vecs) - gf2.rank(vecs)
        for c in ker:
            assert gf2.combine(vecs, c) == 0


def test_inverse_and_identity():
    a = [0b011, 0b010, 0b100]
    inv = gf2.inverse(a)
    assert gf2.matmul(a, inv) == gf2.identity(3)


def test_preimage_and_intersection():
    vecs = [0b001, 0b010, 0b011]
    sub = gf2.EchelonBasis([0b001])
    pre = gf2.preimage(vecs, sub)
    for c in pre:
        assert sub.contains(gf2.combine(vecs, c))
    inter = gf2.intersect([0b011, 0b100], [0b011, 0b001])
    assert gf2.rank(inter) == 1


def test_nullspace_solves_rows():
    rows = [0b0110, 0b1010]
    for v in gf2.nullspace(rows, 4):
        for r in rows:
            assert bin(r & v).count("1") % 2 == 0
    assert len(gf2.nullspace(rows, 4)) == 2
