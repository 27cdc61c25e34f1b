import itertools

import pytest

from jordanpers.errors import OverlappingSlices, RangeError, UnknownElement
from jordanpers.poset import (
    GridPoset,
    Poset,
    SliceSequence,
    ZigzagPoset,
    hasse_arrows,
    leq,
    minkowski_window,
    norm_slices,
    validate_slices,
    zigzag_slices,
)


def test_leq_examples():
    assert leq(GridPoset((2, 1)), (0, 0), (2, 1))
    assert not leq(ZigzagPoset("FB"), 1, 3)
    assert leq(ZigzagPoset("FF"), 1, 3)
    assert not leq(GridPoset((2, 1)), (1, 0), (0, 1))


def test_zigzag_orientation_meaning():
    Z = ZigzagPoset("BF")
    assert sorted(hasse_arrows(Z)) == [(2, 1), (2, 3)]
    assert Z.leq(2, 1) and Z.leq(2, 3) and not Z.leq(1, 3)
    with pytest.raises(ValueError):
        ZigzagPoset("FX")


def test_general_poset_transitive_reduction():
    P = Poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    assert sorted(P.hasse_arrows()) == [("a", "b"), ("b", "c")]
    assert P.leq("a", "c") and not P.leq("c", "a")
    with pytest.raises(UnknownElement):
        P.leq("a", "z")
    with pytest.raises(ValueError):
        Poset([1, 2], [(1, 2), (2, 1)])


def test_grid_hasse_arrows_are_unit_steps():
    G = GridPoset((2, 1))
    arrows = hasse_arrows(G)
    assert len(arrows) == 2 * 2 + 3 * 1
    for x, y in arrows:
        assert sum(b - a for a, b in zip(x, y)) == 1


def test_validate_slices_worked_example_clean():
    G = GridPoset((2, 1))
    S = [[(0, 1), (1, 0)], [(1, 1), (2, 0)], [(2, 1)]]
    assert validate_slices(G, S, strict=True) == []


def test_validate_slices_overlap_and_comparable():
    G = GridPoset((2, 1))
    with pytest.raises(OverlappingSlices):
        validate_slices(G, [[(0, 0)], [(0, 0)]])
    with pytest.warns(UserWarning, match="comparable elements within a slice"):
        out = validate_slices(G, [[(0, 0), (1, 1)], [(2, 1)]], strict=True)
    assert any("comparable elements within a slice" in w for w in out)
    assert validate_slices(G, [[(0, 0), (1, 1)], [(2, 1)]], strict=False) == []


def test_norm_slices():
    S = norm_slices(GridPoset((2, 1)))
    assert S.n == 4
    assert [set(s) for s in S] == [{(0, 0)}, {(1, 0), (0, 1)}, {(2, 0), (1, 1)}, {(2, 1)}]
    single = norm_slices(GridPoset((0,)))
    assert single.n == 1 and list(single[0]) == [(0,)]


def test_norm_slices_3d_sizes_by_enumeration():
    S = norm_slices(GridPoset((1, 1, 1)))
    counts = [0] * 4
    for x in itertools.product(range(2), repeat=3):
        counts[sum(x)] += 1
    assert counts == [1, 3, 3, 1]
    assert [len(s) for s in S] == counts


def test_zigzag_slices():
    Z = ZigzagPoset("FFBFFB")  # 1->2->3<-4->5->6<-7
    assert zigzag_slices(Z, 1, 7) == ((1, 4, 7), (3, 6))
    assert zigzag_slices(Z, 4, 6) == ((4,), (6,))
    chain = ZigzagPoset("FFFF")
    for i in range(1, 6):
        for j in range(i, 6):
            assert zigzag_slices(chain, i, j) == ((i,), (j,))
    with pytest.raises(RangeError):
        zigzag_slices(Z, 3, 2)


def test_minkowski_window_singletons():
    G = GridPoset((1, 1))
    S = [[(0, 0)], [(1, 0)]]
    want = set(G.elements) | {(x - 1, y) for x, y in G.elements}
    assert minkowski_window(G, S) == want
    assert minkowski_window(G, []) == set()


def test_minkowski_window_brute_scan():
    G = GridPoset((2, 1))
    S = norm_slices(G)
    E = minkowski_window(G, S)
    box = set(itertools.product(range(-3, 3), range(-2, 2)))
    assert E <= box
    brute = {x for x in itertools.product(range(-10, 10), repeat=2)
             if any((x[0] + z[0], x[1] + z[1]) in G for z in S.points())}
    assert E == brute


def test_slice_sequence_sorted_and_disjoint():
    S = SliceSequence([[(1, 0), (0, 1)], [(1, 1)]])
    assert S[0] == ((0, 1), (1, 0))
    with pytest.raises(OverlappingSlices):
        SliceSequence([[1, 2], [2]])


def test_grid_origin_and_translation():
    G = GridPoset((1, 1), origin=(2, -1))
    assert (2, -1) in G and (0, 0) not in G
    assert G.translated((-2, 1)) == GridPoset((1, 1))
    assert [set(s) for s in norm_slices(G)] == [{(2, -1)}, {(3, -1), (2, 0)}, {(3, 0)}]


def _path_reachable(P, x, y):
    seen, stack = {x}, [x]
    while stack:
        u = stack.pop()
        for a, b in P.hasse_arrows():
            if a == u and b not in seen:
                seen.add(b)
                stack.append(b)
    return y in seen


def test_leq_agrees_with_path_search():
    posets = [GridPoset((2, 1)), GridPoset((1, 1, 1)), ZigzagPoset("FBBF"), ZigzagPoset("BFB"),
              Poset("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])]
    for P in posets:
        for x in P.elements:
            for y in P.elements:
                assert P.leq(x, y) == _path_reachable(P, x, y)


def test_zigzag_slices_overlap_only_at_isolated_points():
    for n in range(1, 8):
        for o in itertools.product("FB", repeat=n - 1):
            Z = ZigzagPoset("".join(o))
            for i in range(1, n + 1):
                for j in range(i, n + 1):
                    plus, minus = zigzag_slices(Z, i, j)
                    assert plus and minus
                    for k in set(plus) & set(minus):
                        assert not any(Z.lt(k, l) or Z.lt(l, k) for l in range(i, j + 1))


def test_norm_slices_partition():
    for shape in [(2, 1), (1, 1, 1), (3,), (0, 2)]:
        G = GridPoset(shape)
        S = norm_slices(G)
        pts = S.points()
        assert len(pts) == len(set(pts)) == len(G.elements)
        for i, s in enumerate(S):
            assert all(sum(x) == i for x in s)
