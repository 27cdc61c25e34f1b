"""Multirank vectors of zigzag modules and barcode recovery from them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from . import field as F
from .errors import PosetMismatch, RangeError
from .field import DEFAULT_PRIME, FieldMatrix, IntMatrix
from .module import PersModule, conjugate, direct_sum, interval_module, random_conjugation, zero_module
from .poset import ZigzagPoset, zigzag_slices


def interval_pairs(n: int) -> list[tuple[int, int]]:
    """All (i, j) with 1 <= i <= j <= n in lexicographic order."""
    return [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


@dataclass(frozen=True)
class MultirankVector:
    n: int
    values: Mapping

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.values[ij]

    def flat(self) -> list[int]:
        return [self.values[ij] for ij in interval_pairs(self.n)]

    def __add__(self, other: "MultirankVector") -> "MultirankVector":
        if self.n != other.n:
            raise ValueError("multirank vectors of different sizes")
        return MultirankVector(self.n, {ij: self.values[ij] + other.values[ij] for ij in self.values})

    def __eq__(self, other) -> bool:
        return isinstance(other, MultirankVector) and self.n == other.n and self.flat() == other.flat()

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.flat())))

    def render(self) -> str:
        """Upper-triangular text rendering; row i lists (i, i) .. (i, n)."""
        width = max((len(str(v)) for v in self.values.values()), default=1)
        lines = []
        for i in range(1, self.n + 1):
            cells = [" " * width] * (i - 1) + [str(self.values[(i, j)]).rjust(width) for j in range(i, self.n + 1)]
            lines.append(" ".join(cells))
        return "\n".join(lines)


class Barcode(Counter):
    """Multiset of intervals (i, j); only positive multiplicities are kept."""

    def __init__(self, data: Mapping | Iterable | None = None):
        super().__init__()
        if data is None:
            return
        items = data.items() if isinstance(data, Mapping) else ((iv, 1) for iv in data)
        for iv, m in items:
            if m < 0:
                raise ValueError(f"negative multiplicity for {iv}")
            if m:
                self[tuple(iv)] += int(m)

    def records(self) -> list[dict]:
        return [{"i": i, "j": j, "multiplicity": m} for (i, j), m in sorted(self.items()) if m > 0]

    def __repr__(self) -> str:
        return "Barcode({" + ", ".join(f"[{i},{j}]: {m}" for (i, j), m in sorted(self.items())) + "})"


def multirank(M: PersModule, S1: Iterable, S2: Iterable) -> int:
    """Rank of the block map from sum_{S1} M_x to sum_{S2} M_y with entries M_yx for x < y."""
    P = M.poset
    src = list(dict.fromkeys(S1))
    dst = list(dict.fromkeys(S2))
    for x in src + dst:
        P._check(x)
    rows = sum(M.dim(y) for y in dst)
    cols = sum(M.dim(x) for x in src)
    if rows == 0 or cols == 0:
        return 0
    grid = [
        [M.structure_map(x, y) if P.lt(x, y) else FieldMatrix.zeros(M.dim(y), M.dim(x), M.p) for x in src]
        for y in dst
    ]
    return F.rank(F.block_assemble(grid))


def _zigzag(M: PersModule) -> ZigzagPoset:
    if not isinstance(M.poset, ZigzagPoset):
        raise TypeError("expected a zigzag module")
    return M.poset


def R_vector(M: PersModule) -> MultirankVector:
    """Multiranks from the minimal to the maximal elements of every {i..j}; dims on the diagonal."""
    Z = _zigzag(M)
    vals = {}
    for i, j in interval_pairs(Z.n):
        if i == j:
            vals[(i, j)] = M.dim(i)
        else:
            plus, minus = zigzag_slices(Z, i, j)
            vals[(i, j)] = multirank(M, plus, minus)
    return MultirankVector(Z.n, vals)


def interval_R_matrix(Z: ZigzagPoset) -> IntMatrix:
    """Column (i, j) is R(I_[i,j]); rows and columns in lexicographic pair order."""
    cols = [R_vector(interval_module(Z, i, j)).flat() for i, j in interval_pairs(Z.n)]
    return IntMatrix.from_columns(cols)


def barcode_from_R(M: PersModule) -> Barcode:
    """Interval multiplicities m with interval_R_matrix . m = R(M)."""
    Z = _zigzag(M)
    mult = F.solve_nonneg_integer(interval_R_matrix(Z), R_vector(M).flat())
    return Barcode(dict(zip(interval_pairs(Z.n), mult)))


def is_isomorphic(M: PersModule, N: PersModule) -> bool:
    if M.poset != N.poset:
        raise PosetMismatch("modules live over different zigzag posets")
    return R_vector(M) == R_vector(N)


def planted_module(Z: ZigzagPoset, barcode, seed: int | None = None, p: int = DEFAULT_PRIME) -> PersModule:
    """Direct sum of interval modules, optionally conjugated by random pointwise automorphisms."""
    bars = Barcode(barcode)
    M = zero_module(Z, p)
    for (i, j), m in sorted(bars.items()):
        if not (1 <= i <= j <= Z.n):
            raise RangeError(f"interval [{i},{j}] outside 1..{Z.n}")
        for _ in range(m):
            M = direct_sum(M, interval_module(Z, i, j, p))
    if seed is not None:
        M = conjugate(M, random_conjugation(M, seed))
    return M


def random_barcode(n: int, max_bars: int, rng: np.random.Generator) -> Barcode:
    k = int(rng.integers(0, max_bars + 1))
    bars = []
    for _ in range(k):
        i, j = sorted(int(v) for v in rng.integers(1, n + 1, size=2))
        bars.append((i, j))
    return Barcode(bars)
