import itertools

import numpy as np
import pytest

from jordanpers.errors import PosetMismatch
from jordanpers.field import FieldMatrix, block_assemble, rank
from jordanpers.module import conjugate, direct_sum, interval_module, random_conjugation, random_module, zero_module
from jordanpers.poset import ZigzagPoset
from jordanpers.zigzag import (
    Barcode,
    R_vector,
    barcode_from_R,
    interval_R_matrix,
    interval_pairs,
    is_isomorphic,
    multirank,
    planted_module,
    random_barcode,
)

from conftest import load_fixture


def test_multirank_simple():
    Z = ZigzagPoset("FFF")
    assert multirank(interval_module(Z, 1, 4), [1], [4]) == 1
    assert multirank(zero_module(Z), [1, 2], [3, 4]) == 0


def test_multirank_n7_block_formula():
    Z = ZigzagPoset("FFBFFB")  # 1->2->3<-4->5->6<-7
    M = random_module(Z, 3, 21)
    A, B, C = M.arrow_map(1, 2), M.arrow_map(2, 3), M.arrow_map(4, 3)
    D, E, Fm = M.arrow_map(4, 5), M.arrow_map(5, 6), M.arrow_map(7, 6)
    z = FieldMatrix.zeros
    block = block_assemble([[B @ A, C, z(M.dim(3), M.dim(7))], [z(M.dim(6), M.dim(1)), E @ D, Fm]])
    assert multirank(M, [1, 4, 7], [3, 6]) == rank(block)
    assert R_vector(M)[(1, 7)] == rank(block)
    assert R_vector(M)[(4, 6)] == rank(E @ D)


def test_R_vector_n4_entries():
    Z = ZigzagPoset("FBF")  # 1->2<-3->4
    M = random_module(Z, 3, 4)
    A, B, C = M.arrow_map(1, 2), M.arrow_map(3, 2), M.arrow_map(3, 4)
    z = FieldMatrix.zeros
    R = R_vector(M)
    assert R[(1, 1)] == M.dim(1)
    assert R[(1, 2)] == rank(A)
    assert R[(1, 3)] == rank(block_assemble([[A, B]]))
    assert R[(1, 4)] == rank(block_assemble([[A, B], [z(M.dim(4), M.dim(1)), C]]))


def test_R_of_point_intervals_are_basis_vectors():
    Z = ZigzagPoset("FBBF")
    for i in range(1, 6):
        R = R_vector(interval_module(Z, i, i))
        assert {ij for ij in interval_pairs(5) if R[ij]} == {(i, i)}
        assert R[(i, i)] == 1


def test_R_additive():
    rng = np.random.default_rng(2)
    for seed in range(10):
        Z = ZigzagPoset("".join(rng.choice(list("FB"), size=4)))
        M, N = random_module(Z, 2, seed), random_module(Z, 2, seed + 50)
        assert R_vector(direct_sum(M, N)) == R_vector(M) + R_vector(N)


def test_interval_R_matrix_small():
    assert interval_R_matrix(ZigzagPoset("")).tolist() == [[1]]
    A = interval_R_matrix(ZigzagPoset("F"))
    # columns (11), (12), (22)
    assert [list(c) for c in zip(*A.tolist())] == [[1, 0, 0], [1, 1, 1], [0, 0, 1]]
    assert abs(A.determinant()) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_interval_R_matrix_unimodular(n):
    for o in itertools.product("FB", repeat=n - 1):
        assert abs(interval_R_matrix(ZigzagPoset("".join(o))).determinant()) == 1


def test_barcode_examples():
    M, _ = load_fixture("interval_2_5_zigzag.json")
    assert barcode_from_R(M) == Barcode({(2, 5): 1})
    for o in ("FFFFF", "BBBBB", "FBFBF"):
        assert barcode_from_R(interval_module(ZigzagPoset(o), 2, 5)) == {(2, 5): 1}
    assert barcode_from_R(zero_module(ZigzagPoset("FB"))) == Barcode()


def test_barcode_planted_random():
    rng = np.random.default_rng(5)
    for seed in range(15):
        n = int(rng.integers(2, 7))
        Z = ZigzagPoset("".join(rng.choice(list("FB"), size=n - 1)))
        bars = Barcode([tuple(sorted(int(v) for v in rng.integers(1, n + 1, size=2))) for _ in range(5)])
        assert barcode_from_R(planted_module(Z, bars, seed=seed)) == bars


def test_barcode_records_and_render():
    b = Barcode({(1, 2): 2, (3, 3): 0})
    assert b.records() == [{"i": 1, "j": 2, "multiplicity": 2}]
    R = R_vector(interval_module(ZigzagPoset("F"), 1, 2))
    assert R.render().splitlines() == ["1 1", "  1"]


def test_is_isomorphic():
    Z = ZigzagPoset("BFF")
    M = random_module(Z, 3, 8)
    assert is_isomorphic(M, conjugate(M, random_conjugation(M, 1)))
    A3 = ZigzagPoset("FF")
    assert not is_isomorphic(interval_module(A3, 1, 2), interval_module(A3, 2, 3))
    with pytest.raises(PosetMismatch):
        is_isomorphic(M, zero_module(A3))


def test_finer_pair_as_zigzag(finer_pair_zigzag):
    X, Y = finer_pair_zigzag
    assert multirank(X, [2], [1, 3]) == 1
    assert multirank(Y, [2], [1, 3]) == 2
    assert R_vector(X)[(1, 3)] == 1 and R_vector(Y)[(1, 3)] == 2
    assert not is_isomorphic(X, Y)


def test_random_barcode_in_range():
    rng = np.random.default_rng(0)
    for _ in range(20):
        for (i, j), m in random_barcode(6, 4, rng).items():
            assert 1 <= i <= j <= 6 and m > 0
