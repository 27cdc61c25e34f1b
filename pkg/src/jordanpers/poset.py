"""Finite posets, grid windows of Z^d, zigzag posets and slice sequences."""

from __future__ import annotations

import itertools
import warnings
from typing import Hashable, Iterable, Sequence

from .errors import OverlappingSlices, RangeError, UnknownElement

Point = Hashable


class Poset:
    """A finite poset given by generating relations.

    The stored ``covering`` relation is the transitive reduction of the
    generators, so it holds exactly the Hasse arrows.
    """

    def __init__(self, elements: Iterable[Point], relations: Iterable[tuple[Point, Point]] = ()):
        self.elements: tuple = tuple(elements)
        self._index = {x: i for i, x in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("duplicate poset elements")
        succ: dict = {x: set() for x in self.elements}
        for a, b in relations:
            self._check(a)
            self._check(b)
            if a != b:
                succ[a].add(b)
        self._up = self._closure(succ)
        for x in self.elements:
            for y in self._up[x]:
                if y != x and x in self._up[y]:
                    raise ValueError(f"relations contain a cycle through {x!r} and {y!r}")
        cover = []
        for x in self.elements:
            strict = self._up[x] - {x}
            for y in strict:
                if not any(y in self._up[z] for z in strict if z != y):
                    cover.append((x, y))
        cover.sort(key=lambda e: (self._index[e[0]], self._index[e[1]]))
        self.covering: tuple = tuple(cover)
        self._down = {x: {y for y in self.elements if x in self._up[y]} for x in self.elements}
        self._preds = {x: [] for x in self.elements}
        self._succs = {x: [] for x in self.elements}
        for a, b in self.covering:
            self._preds[b].append(a)
            self._succs[a].append(b)

    @staticmethod
    def _closure(succ: dict) -> dict:
        up = {}
        for x in succ:
            seen = {x}
            stack = [x]
            while stack:
                v = stack.pop()
                for w in succ[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            up[x] = seen
        return up

    def _check(self, x: Point) -> None:
        if x not in self._index:
            raise UnknownElement(f"{x!r} is not an element of the poset")

    def __contains__(self, x) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if type(self) is not type(other):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def _key(self):
        return (self.elements, self.covering)

    def index(self, x: Point) -> int:
        self._check(x)
        return self._index[x]

    def leq(self, x: Point, y: Point) -> bool:
        self._check(x)
        self._check(y)
        return y in self._up[x]

    def lt(self, x: Point, y: Point) -> bool:
        return x != y and self.leq(x, y)

    def up_set(self, x: Point) -> set:
        self._check(x)
        return set(self._up[x])

    def down_set(self, x: Point) -> set:
        self._check(x)
        return set(self._down[x])

    def hasse_predecessors(self, y: Point) -> list:
        self._check(y)
        return list(self._preds[y])

    def hasse_successors(self, x: Point) -> list:
        self._check(x)
        return list(self._succs[x])

    def hasse_arrows(self) -> list[tuple]:
        return list(self.covering)

    def topological_order(self) -> list:
        """Elements sorted so that x precedes y whenever x < y."""
        return sorted(self.elements, key=lambda x: (len(self._down[x]), self._index[x]))

    def sort_points(self, pts: Iterable[Point]) -> tuple:
        return tuple(sorted(pts, key=self.index))


class GridPoset(Poset):
    """The box ``origin + [0, l_1] x ... x [0, l_d]`` inside Z^d.

    ``leq`` compares arbitrary integer points of Z^d componentwise; only the
    box itself is enumerated as ``elements``.
    """

    def __init__(self, shape: Sequence[int], origin: Sequence[int] | None = None):
        shape = tuple(int(s) for s in shape)
        if not shape or any(s < 0 for s in shape):
            raise ValueError(f"grid shape must be nonempty and nonnegative, got {shape}")
        origin = tuple(int(o) for o in origin) if origin is not None else (0,) * len(shape)
        if len(origin) != len(shape):
            raise ValueError("origin and shape have different dimensions")
        self.shape = shape
        self.origin = origin
        self.d = len(shape)
        self.elements = tuple(
            tuple(o + c for o, c in zip(origin, pt))
            for pt in itertools.product(*(range(s + 1) for s in shape))
        )
        self._index = {x: i for i, x in enumerate(self.elements)}
        cover = []
        for x in self.elements:
            for k in range(self.d):
                y = unit_step(x, k)
                if y in self._index:
                    cover.append((x, y))
        self.covering = tuple(cover)
        self._preds = {x: [] for x in self.elements}
        self._succs = {x: [] for x in self.elements}
        for a, b in self.covering:
            self._preds[b].append(a)
            self._succs[a].append(b)

    def _key(self):
        return (self.shape, self.origin)

    @property
    def upper(self) -> tuple[int, ...]:
        return tuple(o + s for o, s in zip(self.origin, self.shape))

    def _check_point(self, x) -> None:
        if not isinstance(x, tuple) or len(x) != self.d:
            raise UnknownElement(f"{x!r} is not a point of Z^{self.d}")

    def _check(self, x) -> None:
        self._check_point(x)

    def __contains__(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == self.d
            and all(o <= c <= u for o, c, u in zip(self.origin, x, self.upper))
        )

    def index(self, x) -> int:
        if x not in self:
            raise UnknownElement(f"{x!r} lies outside the grid window")
        return self._index[x]

    def leq(self, x, y) -> bool:
        self._check_point(x)
        self._check_point(y)
        return all(a <= b for a, b in zip(x, y))

    def up_set(self, x) -> set:
        return {y for y in self.elements if self.leq(x, y)}

    def down_set(self, x) -> set:
        return {y for y in self.elements if self.leq(y, x)}

    def hasse_predecessors(self, y) -> list:
        self._check_point(y)
        return [z for k in range(self.d) if (z := unit_step(y, k, -1)) in self]

    def hasse_successors(self, x) -> list:
        self._check_point(x)
        return [z for k in range(self.d) if (z := unit_step(x, k)) in self]

    def topological_order(self) -> list:
        return sorted(self.elements, key=lambda x: (sum(x), x))

    def sort_points(self, pts: Iterable) -> tuple:
        return tuple(sorted(pts))

    def translated(self, offset: Sequence[int]) -> "GridPoset":
        return GridPoset(self.shape, add(self.origin, offset))

    def __repr__(self) -> str:
        return f"GridPoset(shape={self.shape}, origin={self.origin})"


class ZigzagPoset(Poset):
    """Zigzag poset on 1..n.

    ``orientation[i-1] == "F"`` means the arrow i -> i+1, ``"B"`` means i+1 -> i.
    """

    def __init__(self, orientation: str = "", n: int | None = None):
        orientation = orientation.upper()
        if n is None:
            n = len(orientation) + 1
        if n < 1 or len(orientation) != n - 1 or set(orientation) - {"F", "B"}:
            raise ValueError(f"orientation must be a string of n-1={n - 1} letters F/B, got {orientation!r}")
        self.n = n
        self.orientation = orientation
        rel = [(i, i + 1) if c == "F" else (i + 1, i) for i, c in enumerate(orientation, start=1)]
        super().__init__(range(1, n + 1), rel)

    def _key(self):
        return (self.n, self.orientation)

    def sort_points(self, pts: Iterable) -> tuple:
        return tuple(sorted(pts))

    def __repr__(self) -> str:
        return f"ZigzagPoset({self.orientation!r}, n={self.n})"


def add(x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    return tuple(a - b for a, b in zip(x, y))


def unit_step(x: tuple, k: int, sign: int = 1) -> tuple:
    return x[:k] + (x[k] + sign,) + x[k + 1 :]


def diagonal(eps: int, d: int) -> tuple[int, ...]:
    return (int(eps),) * d


class SliceSequence:
    """Ordered tuple of pairwise disjoint finite slices.

    Points inside each slice are kept in lexicographic order (index order for
    zigzags; insertion order for unorderable points).
    """

    def __init__(self, slices: Iterable[Iterable[Point]]):
        out = []
        for s in slices:
            pts = list(dict.fromkeys(s))
            try:
                pts = sorted(pts)
            except TypeError:
                pass
            out.append(tuple(pts))
        seen: dict = {}
        for i, s in enumerate(out):
            for x in s:
                if x in seen:
                    raise OverlappingSlices(f"point {x!r} lies in slices {seen[x] + 1} and {i + 1}")
                seen[x] = i
        self.slices: tuple[tuple, ...] = tuple(out)

    @property
    def n(self) -> int:
        return len(self.slices)

    def __len__(self) -> int:
        return len(self.slices)

    def __getitem__(self, i: int) -> tuple:
        return self.slices[i]

    def __iter__(self):
        return iter(self.slices)

    def points(self) -> list:
        """All points of the union, in slice order."""
        return [x for s in self.slices for x in s]

    def __eq__(self, other) -> bool:
        return isinstance(other, SliceSequence) and self.slices == other.slices

    def __hash__(self) -> int:
        return hash(self.slices)

    def __repr__(self) -> str:
        return f"SliceSequence({[list(s) for s in self.slices]})"


def leq(P: Poset, x, y) -> bool:
    return P.leq(x, y)


def hasse_arrows(P: Poset) -> list[tuple]:
    return P.hasse_arrows()


def validate_slices(P: Poset, S, strict: bool = False) -> list[str]:
    """Check disjointness (raises) and, if ``strict``, report advisory warnings.

    The advisory conditions: points inside one slice are pairwise
    incomparable; no point of S_{i+1} lies below a point of S_i; every point
    of S_i with i < n has a strict successor in S_{i+1}.
    """
    if not isinstance(S, SliceSequence):
        S = SliceSequence(S)
    for s in S:
        for x in s:
            P._check(x)
    if not strict:
        return []
    out = []
    for i, s in enumerate(S, start=1):
        for a, b in itertools.combinations(s, 2):
            if P.leq(a, b) or P.leq(b, a):
                out.append(f"comparable elements within a slice: {a!r}, {b!r} in S{i}")
    for i in range(S.n - 1):
        for x in S[i]:
            for y in S[i + 1]:
                if P.leq(y, x):
                    out.append(f"{y!r} in S{i + 2} lies below {x!r} in S{i + 1}")
            if not any(P.lt(x, y) for y in S[i + 1]):
                out.append(f"{x!r} in S{i + 1} has no strict successor in S{i + 2}")
    for w in out:
        warnings.warn(w, stacklevel=2)
    return out


def norm_slices(G: GridPoset) -> SliceSequence:
    """Slice a grid by coordinate sum: S_i holds the points of norm i-1 (relative to the origin)."""
    n = sum(G.shape) + 1
    buckets: list[list] = [[] for _ in range(n)]
    for x in G.elements:
        buckets[sum(c - o for c, o in zip(x, G.origin))].append(x)
    return SliceSequence(buckets)


def zigzag_slices(Z: ZigzagPoset, i: int, j: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Minimal and maximal elements of ({i..j}, <=_Z)."""
    if not (1 <= i <= j <= Z.n):
        raise RangeError(f"need 1 <= i <= j <= {Z.n}, got ({i}, {j})")
    block = range(i, j + 1)
    minimal = tuple(k for k in block if not any(Z.lt(l, k) for l in block))
    maximal = tuple(k for k in block if not any(Z.lt(k, l) for l in block))
    return minimal, maximal


def minkowski_window(G: GridPoset, S) -> set[tuple[int, ...]]:
    """Points x of Z^d for which some slice point z puts x + z inside the window of ``G``."""
    pts = S.points() if isinstance(S, SliceSequence) else [x for s in S for x in s]
    out = set()
    for z in pts:
        for w in G.elements:
            out.add(sub(w, z))
    return out
