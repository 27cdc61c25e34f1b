"""Nilpotent slice operators, Jordan types and Jordan filtered rank invariants."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import field as F
from .errors import RangeError
from .field import FieldMatrix
from .module import PersModule
from .poset import GridPoset, SliceSequence, add, minkowski_window, sub, validate_slices


class JordanType(tuple):
    """(a_1, ..., a_n): a_i counts Jordan blocks of size i."""

    def __new__(cls, counts: Iterable[int]):
        return super().__new__(cls, tuple(int(a) for a in counts))

    @property
    def total_dimension(self) -> int:
        return sum(i * a for i, a in enumerate(self, start=1))

    def __add__(self, other):
        if len(self) != len(other):
            raise ValueError("Jordan types of different lengths")
        return JordanType(a + b for a, b in zip(self, other))

    def __repr__(self) -> str:
        return f"JordanType{tuple(self)}"


@dataclass(frozen=True)
class NilpotentOperator:
    """Block operator with blocks only on the subdiagonal.

    ``blocks[i]`` maps the sum over slice i+1 to the sum over slice i+2
    (0-based list, 1-based slices).
    """

    slice_dims: tuple[int, ...]
    blocks: tuple[FieldMatrix, ...]
    p: int

    @property
    def n(self) -> int:
        return len(self.slice_dims)

    @property
    def size(self) -> int:
        return sum(self.slice_dims)

    @property
    def assembled(self) -> FieldMatrix:
        n, dims = self.n, self.slice_dims
        grid = [[FieldMatrix.zeros(dims[r], dims[c], self.p) for c in range(n)] for r in range(n)]
        for i, b in enumerate(self.blocks):
            grid[i + 1][i] = b
        if self.size == 0:
            return FieldMatrix.zeros(0, 0, self.p)
        return F.block_assemble(grid)

    def power_ranks(self) -> list[int]:
        """[rank T^0, rank T^1, ..., rank T^n]."""
        T = self.assembled
        out = [self.size]
        P = FieldMatrix.identity(self.size, self.p)
        for _ in range(self.n):
            P = T @ P
            out.append(F.rank(P))
        return out


def _slice_operator(M: PersModule, S: SliceSequence, offset=None) -> NilpotentOperator:
    P = M.poset

    def pt(x):
        return add(x, offset) if offset is not None else x

    dims = tuple(sum(M.dim(pt(x)) for x in s) for s in S)
    blocks = []
    for i in range(S.n - 1):
        src, dst = S[i], S[i + 1]
        grid = [
            [
                M.structure_map(pt(x), pt(y)) if P.lt(x, y) else FieldMatrix.zeros(M.dim(pt(y)), M.dim(pt(x)), M.p)
                for x in src
            ]
            for y in dst
        ]
        blocks.append(_assemble(grid, dims[i + 1], dims[i], M.p))
    return NilpotentOperator(dims, tuple(blocks), M.p)


def _assemble(grid, rows: int, cols: int, p: int) -> FieldMatrix:
    if not grid or not grid[0] or rows == 0 or cols == 0:
        return FieldMatrix.zeros(rows, cols, p)
    return F.block_assemble(grid)


def _check_slices(M: PersModule, S) -> SliceSequence:
    if not isinstance(S, SliceSequence):
        S = SliceSequence(S)
    if S.n < 2:
        raise RangeError(f"a slice sequence needs at least 2 slices, got {S.n}")
    validate_slices(M.poset, S)
    return S


def nilpotent_operator(M: PersModule, S) -> NilpotentOperator:
    """The operator T_{M,S}: block (i+1, i) has entry M_yx for x < y, zero otherwise."""
    return _slice_operator(M, _check_slices(M, S))


def jordan_type_from_ranks(ranks: Sequence[int], n: int) -> JordanType:
    """a_i = r(i+1) + r(i-1) - 2 r(i), with r(0) the total dimension and r(k) = 0 past the list."""

    def r(k):
        return ranks[k] if k < len(ranks) else 0

    return JordanType(r(i + 1) + r(i - 1) - 2 * r(i) for i in range(1, n + 1))


def jordan_type(M: PersModule, S) -> JordanType:
    """Jordan type of T_{M,S} from the ranks of its powers."""
    T = nilpotent_operator(M, S)
    return jordan_type_from_ranks(T.power_ranks(), T.n)


def an_decomposition_counts(M: PersModule, S) -> JordanType:
    """Interval counts of the equioriented A_n representation built from the blocks.

    Uses ranks of composites of consecutive blocks, r(i, j), and the
    inclusion-exclusion formula for the multiplicity of [i, j].  This does
    not form powers of the assembled operator.
    """
    T = nilpotent_operator(M, S)
    n, dims = T.n, T.slice_dims
    r = {}
    for i in range(n):
        r[(i, i)] = dims[i]
        comp = FieldMatrix.identity(dims[i], T.p)
        for j in range(i + 1, n):
            comp = T.blocks[j - 1] @ comp
            r[(i, j)] = F.rank(comp)

    def rr(i, j):
        if i < 0 or j >= n:
            return 0
        return r[(i, j)]

    counts = [0] * n
    for i in range(n):
        for j in range(i, n):
            mult = rr(i, j) - rr(i - 1, j) - rr(i, j + 1) + rr(i - 1, j + 1)
            counts[j - i] += mult
    return JordanType(counts)


class RankInvariantTable:
    """Finite table of a functor P^op x P -> (N u {inf})^op.

    ``values`` holds every comparable pair (x, y) with both points in
    ``support``.  Comparable pairs outside give 0, incomparable pairs inf.
    """

    def __init__(self, poset, support: Iterable, values: dict):
        self.poset = poset
        self.support = frozenset(support)
        self.values = dict(values)

    @property
    def d(self) -> int | None:
        return getattr(self.poset, "d", None)

    def leq(self, x, y) -> bool:
        return self.poset.leq(x, y)

    def value(self, x, y):
        if not self.leq(x, y):
            return math.inf
        return self.values.get((x, y), 0)

    __call__ = value

    def positive_items(self):
        return [(k, v) for k, v in self.values.items() if v > 0]

    def max_value(self) -> int:
        return max(self.values.values(), default=0)

    def is_monotone(self) -> bool:
        """F(x, y) <= F(x', y') whenever x <= x' <= y' <= y."""
        for (x, y), v in self.values.items():
            for (a, b), w in self.values.items():
                if self.leq(x, a) and self.leq(b, y) and v > w:
                    return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, RankInvariantTable):
            return NotImplemented
        return {k: v for k, v in self.values.items() if v} == {k: v for k, v in other.values.items() if v}

    def to_records(self) -> list[dict]:
        recs = []
        for (x, y), v in sorted(self.values.items()):
            recs.append({"x": list(x) if isinstance(x, tuple) else x, "y": list(y) if isinstance(y, tuple) else y,
                         "value": "inf" if v == math.inf else v})
        return recs

    def __repr__(self) -> str:
        return f"RankInvariantTable({len(self.support)} points, {len(self.positive_items())} positive pairs)"


def _comparable_pairs(poset, pts: Iterable) -> list[tuple]:
    pts = sorted(pts)
    return [(x, y) for x in pts for y in pts if poset.leq(x, y)]


def rank_invariant(M: PersModule) -> RankInvariantTable:
    """Classical rank invariant (x, y) -> rank M_yx over the module's window."""
    P = M.poset
    pts = list(P.elements)
    vals = {}
    for x in pts:
        for y in pts:
            if P.leq(x, y):
                vals[(x, y)] = F.rank(M.structure_map(x, y)) if M.dim(x) and M.dim(y) else 0
    return RankInvariantTable(P, pts, vals)


@dataclass
class JordanModuleFamily:
    """Degree-i Jordan modules x -> Im(T^i_{M[x],S}) on the evaluation window.

    ``levels[i][x]`` is the canonical image basis inside the ambient space
    sum_{z in S} M_{x+z}, ordered as the slice points.
    """

    base: PersModule
    slices: SliceSequence
    eval_window: frozenset
    levels: list

    @property
    def n(self) -> int:
        return self.slices.n

    def ambient_dim(self, x) -> int:
        return sum(self.base.dim(add(x, z)) for z in self.slices.points())

    def ambient_map(self, x, y) -> FieldMatrix:
        """The shift map sum_z M_{y+z, x+z} between ambient spaces."""
        M = self.base
        return F.direct_sum_mat(*[M.structure_map(add(x, z), add(y, z)) for z in self.slices.points()]) \
            if self.slices.points() else FieldMatrix.zeros(0, 0, M.p)

    def level(self, i: int, x) -> FieldMatrix:
        if x in self.eval_window and 0 <= i < len(self.levels):
            return self.levels[i][x]
        return FieldMatrix.zeros(self.ambient_dim(x), 0, self.base.p)

    def dim(self, i: int, x) -> int:
        return self.level(i, x).cols

    def induced_map(self, i: int, x, y) -> FieldMatrix:
        """Matrix of (M^i_S)_{y,x} in the level-i bases at x and y."""
        image = self.ambient_map(x, y) @ self.level(i, x)
        X = F.solve(self.level(i, y), image)
        if X is None:
            raise ArithmeticError(f"image at {y} escapes level {i}")
        return X

    def rank(self, i: int, x, y) -> int:
        if not self.base.poset.leq(x, y):
            return math.inf
        B = self.level(i, x)
        if B.cols == 0:
            return 0
        return F.rank(self.ambient_map(x, y) @ B)


def jordan_module_family(M: PersModule, S) -> JordanModuleFamily:
    if not M.is_grid:
        raise TypeError("Jordan modules need a grid-indexed module")
    S = _check_slices(M, S)
    window = frozenset(minkowski_window(M.poset, S))
    levels = [dict() for _ in range(S.n + 1)]
    for x in window:
        T = _slice_operator(M, S, offset=x).assembled
        power = FieldMatrix.identity(T.rows, M.p)
        for i in range(S.n + 1):
            levels[i][x] = F.image_basis(power)
            power = T @ power
    return JordanModuleFamily(M, S, window, levels)


def filtered_rank(M: PersModule, S, family: JordanModuleFamily | None = None) -> list[RankInvariantTable]:
    """[rk^0, ..., rk^{n-1}]: rank invariants of the Jordan modules M^i_S."""
    fam = family if family is not None else jordan_module_family(M, S)
    P = M.poset
    pairs = _comparable_pairs(P, fam.eval_window)
    tables = []
    amb = {}
    for x, y in pairs:
        amb[(x, y)] = fam.ambient_map(x, y)
    for i in range(fam.n):
        vals = {}
        for x, y in pairs:
            B = fam.levels[i][x]
            vals[(x, y)] = F.rank(amb[(x, y)] @ B) if B.cols and amb[(x, y)].rows else 0
        tables.append(RankInvariantTable(P, fam.eval_window, vals))
    return tables


def degree_zero_by_sum(M: PersModule, S) -> RankInvariantTable:
    """rk^0(x, y) = sum over slice points z of rank M_{y+z, x+z}."""
    S = _check_slices(M, S)
    P = M.poset
    window = minkowski_window(P, S)
    ranks = rank_invariant(M)
    vals = {}
    for x, y in _comparable_pairs(P, window):
        vals[(x, y)] = sum(ranks.value(add(x, z), add(y, z)) for z in S.points())
    return RankInvariantTable(P, window, vals)


def classical_rank_from_degree_zero(rk0: RankInvariantTable, G: GridPoset) -> RankInvariantTable:
    """Recover rk_M on the window of G from rk^0 at the norm slices of G.

    With l the top corner offset, rk^0(x - l, y - l) equals rk_M(x, y) plus
    rk_M over the translates (x + w, y + w) with w <= 0, w != 0 staying in the
    window; those have strictly smaller norm at y, so the recovery runs by
    increasing norm of y.
    """
    ell = G.shape
    o = G.origin
    vals: dict = {}
    pts = sorted(G.elements, key=lambda y: (sum(y), y))
    for y in pts:
        for x in sorted(G.elements):
            if not G.leq(x, y):
                continue
            lo = tuple(oc - xc for oc, xc in zip(o, x))
            ranges = [range(a, 1) for a in lo]
            total = rk0.value(sub(x, add(ell, o)), sub(y, add(ell, o)))
            for w in itertools.product(*ranges):
                if any(w):
                    total -= vals[(add(x, w), add(y, w))]
            vals[(x, y)] = total
    return RankInvariantTable(G, G.elements, vals)
