"""Exact dense linear algebra over a prime field GF(p) and over the integers.

Every rank in the package is computed here.  Matrices are stored as read-only
``int64`` numpy arrays of residues; products switch to Python integers when
``int64`` accumulation could overflow.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    NegativeMultiplicity,
    NonIntegralSolution,
    ShapeMismatch,
    SingularMatrix,
)

DEFAULT_PRIME = 32749
_MAX_PRIME = 2**31


@lru_cache(maxsize=64)
def check_prime(p: int) -> int:
    """Return ``p`` if it is a prime below 2**31, else raise ValueError."""
    p = int(p)
    if p < 2 or p >= _MAX_PRIME:
        raise ValueError(f"prime must satisfy 2 <= p < 2**31, got {p}")
    if p % 2 == 0:
        if p != 2:
            raise ValueError(f"{p} is not prime")
        return p
    d = 3
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"{p} is not prime")
        d += 2
    return p


class FieldMatrix:
    """Immutable dense matrix over GF(p)."""

    __slots__ = ("_a", "p")

    def __init__(self, entries, p: int = DEFAULT_PRIME, shape=None):
        p = check_prime(p)
        if isinstance(entries, FieldMatrix):
            a = entries._a
        elif shape is not None:
            a = np.asarray(list(entries), dtype=object).reshape(shape)
        else:
            a = np.asarray(entries, dtype=object) if not isinstance(entries, np.ndarray) else entries
            if a.ndim == 1 and a.size == 0:
                a = a.reshape(0, 0)
        if a.ndim != 2:
            raise ShapeMismatch(f"expected a 2-D matrix, got shape {a.shape}")
        if a.dtype == object:
            a = np.array([[int(v) % p for v in row] for row in a], dtype=np.int64).reshape(a.shape)
        else:
            a = np.mod(a.astype(np.int64, copy=False), p)
        a = np.array(a, dtype=np.int64, copy=True)
        a.flags.writeable = False
        self._a = a
        self.p = p

    @classmethod
    def _wrap(cls, a: np.ndarray, p: int) -> "FieldMatrix":
        # trusted constructor: entries already reduced
        m = object.__new__(cls)
        a = np.ascontiguousarray(a, dtype=np.int64)
        a.flags.writeable = False
        m._a = a
        m.p = p
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int = DEFAULT_PRIME) -> "FieldMatrix":
        return cls._wrap(np.zeros((rows, cols), dtype=np.int64), check_prime(p))

    @classmethod
    def identity(cls, n: int, p: int = DEFAULT_PRIME) -> "FieldMatrix":
        return cls._wrap(np.eye(n, dtype=np.int64), check_prime(p))

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the residues."""
        return self._a

    @property
    def T(self) -> "FieldMatrix":
        return FieldMatrix._wrap(self._a.T, self.p)

    def tolist(self) -> list[list[int]]:
        return self._a.tolist()

    def is_zero(self) -> bool:
        return not self._a.any()

    def _check_field(self, other: "FieldMatrix") -> None:
        if self.p != other.p:
            raise ValueError(f"prime mismatch: {self.p} vs {other.p}")

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        return matmul(self, other)

    def __add__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return FieldMatrix._wrap((self._a + other._a) % self.p, self.p)

    def __sub__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot subtract {other.shape} from {self.shape}")
        return FieldMatrix._wrap((self._a - other._a) % self.p, self.p)

    def __neg__(self) -> "FieldMatrix":
        return FieldMatrix._wrap((-self._a) % self.p, self.p)

    def scale(self, c: int) -> "FieldMatrix":
        return FieldMatrix._wrap((self._a * (int(c) % self.p)) % self.p, self.p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and np.array_equal(self._a, other._a)

    def __hash__(self) -> int:
        return hash((self.p, self.shape, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"FieldMatrix({self.tolist()}, p={self.p})"


def _dot(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    k = a.shape[1]
    if (p - 1) ** 2 * max(k, 1) < 2**63:
        return (a @ b) % p
    return np.array((a.astype(object) @ b.astype(object)) % p, dtype=np.int64).reshape(a.shape[0], b.shape[1])


def matmul(A: FieldMatrix, B: FieldMatrix) -> FieldMatrix:
    A._check_field(B)
    if A.cols != B.rows:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return FieldMatrix._wrap(_dot(A._a, B._a, A.p), A.p)


def block_assemble(blocks: Sequence[Sequence[FieldMatrix]]) -> FieldMatrix:
    """Assemble a grid of blocks; every block row must share heights, every block column widths."""
    if not blocks or not blocks[0]:
        raise ShapeMismatch("empty block grid")
    ncols = len(blocks[0])
    if any(len(row) != ncols for row in blocks):
        raise ShapeMismatch("ragged block grid")
    p = blocks[0][0].p
    heights = [row[0].rows for row in blocks]
    widths = [blk.cols for blk in blocks[0]]
    for r, row in enumerate(blocks):
        for c, blk in enumerate(row):
            if blk.p != p:
                raise ValueError("prime mismatch inside block grid")
            if blk.shape != (heights[r], widths[c]):
                raise ShapeMismatch(
                    f"block ({r},{c}) has shape {blk.shape}, expected {(heights[r], widths[c])}"
                )
    out = np.zeros((sum(heights), sum(widths)), dtype=np.int64)
    r0 = 0
    for r, row in enumerate(blocks):
        c0 = 0
        for c, blk in enumerate(row):
            out[r0 : r0 + heights[r], c0 : c0 + widths[c]] = blk._a
            c0 += widths[c]
        r0 += heights[r]
    return FieldMatrix._wrap(out, p)


def direct_sum_mat(*mats: FieldMatrix) -> FieldMatrix:
    """Block-diagonal matrix diag(A, B, ...)."""
    if not mats:
        raise ShapeMismatch("direct sum of no matrices")
    p = mats[0].p
    out = np.zeros((sum(m.rows for m in mats), sum(m.cols for m in mats)), dtype=np.int64)
    r0 = c0 = 0
    for m in mats:
        if m.p != p:
            raise ValueError("prime mismatch in direct sum")
        out[r0 : r0 + m.rows, c0 : c0 + m.cols] = m._a
        r0 += m.rows
        c0 += m.cols
    return FieldMatrix._wrap(out, p)


def hstack(mats: Sequence[FieldMatrix], rows: int, p: int) -> FieldMatrix:
    if not mats:
        return FieldMatrix.zeros(rows, 0, p)
    return block_assemble([list(mats)])


def _rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (matrix, pivot columns)."""
    a = np.array(a, dtype=np.int64, copy=True)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        if col.any():
            a = (a - np.outer(col, a[r]) % p) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(A: FieldMatrix) -> int:
    """GF(p)-rank by forward Gaussian elimination."""
    a = np.array(A._a, dtype=np.int64, copy=True)
    p = A.p
    rows, cols = a.shape
    if rows > cols:
        a = a.T.copy()
        rows, cols = cols, rows
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        below = a[r + 1 :, c]
        if below.any():
            factors = (below * inv) % p
            a[r + 1 :] = (a[r + 1 :] - np.outer(factors, a[r]) % p) % p
        r += 1
    return r


def rref(A: FieldMatrix) -> tuple[FieldMatrix, list[int]]:
    a, piv = _rref(A._a, A.p)
    return FieldMatrix._wrap(a, A.p), piv


def image_basis(A: FieldMatrix) -> FieldMatrix:
    """Canonical basis of the column space of ``A``.

    The columns are the nonzero rows of the reduced row echelon form of
    ``A.T``, so two matrices with the same column space give identical output.
    """
    a, piv = _rref(A._a.T, A.p)
    return FieldMatrix._wrap(a[: len(piv)].T, A.p)


def nullspace(A: FieldMatrix) -> FieldMatrix:
    """Matrix whose columns form a basis of ker(A)."""
    a, piv = _rref(A._a, A.p)
    p = A.p
    n = A.cols
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        out[f, j] = 1
        for i, pc in enumerate(piv):
            out[pc, j] = (-a[i, f]) % p
    return FieldMatrix._wrap(out, p)


def solve(A: FieldMatrix, B: FieldMatrix, rng: np.random.Generator | None = None) -> FieldMatrix | None:
    """Solve ``A X = B`` over GF(p).

    Returns ``None`` when the system is inconsistent.  With ``rng`` given, a
    uniformly random kernel element is added to the particular solution.
    """
    if A.rows != B.rows:
        raise ShapeMismatch(f"solve: {A.shape} vs right-hand side {B.shape}")
    p = A.p
    n = A.cols
    aug = np.hstack([A._a, B._a])
    red, piv = _rref(aug, p)
    if any(c >= n for c in piv):
        return None
    X = np.zeros((n, B.cols), dtype=np.int64)
    for i, c in enumerate(piv):
        X[c] = red[i, n:]
    if rng is not None:
        K = nullspace(A)
        if K.cols:
            coeffs = rng.integers(0, p, size=(K.cols, B.cols), dtype=np.int64)
            X = (X + _dot(K._a, coeffs, p)) % p
    return FieldMatrix._wrap(X, p)


def random_matrix(rows: int, cols: int, rng: np.random.Generator, p: int = DEFAULT_PRIME) -> FieldMatrix:
    return FieldMatrix._wrap(rng.integers(0, p, size=(rows, cols), dtype=np.int64), check_prime(p))


def random_invertible(n: int, seed: int, p: int = DEFAULT_PRIME) -> FieldMatrix:
    """Uniform invertible n x n matrix by rejection sampling, deterministic in ``seed``."""
    return _random_invertible(n, np.random.default_rng(seed), p)


def _random_invertible(n: int, rng: np.random.Generator, p: int) -> FieldMatrix:
    while True:
        m = random_matrix(n, n, rng, p)
        if rank(m) == n:
            return m


def inverse(A: FieldMatrix) -> FieldMatrix:
    if A.rows != A.cols:
        raise ShapeMismatch(f"cannot invert non-square {A.shape}")
    X = solve(A, FieldMatrix.identity(A.rows, A.p))
    if X is None or rank(A) != A.rows:
        raise SingularMatrix("matrix is singular over GF(p)")
    return X


class IntMatrix:
    """Immutable matrix of arbitrary-precision integers."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows_data: Iterable[Iterable[int]]):
        data = tuple(tuple(int(v) for v in row) for row in rows_data)
        ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise ShapeMismatch("ragged integer matrix")
        self.rows = len(data)
        self.cols = ncols
        self.entries = data

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "IntMatrix":
        if not columns:
            return cls([])
        return cls(zip(*columns))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, x: Sequence[int]) -> list[int]:
        if len(x) != self.cols:
            raise ShapeMismatch(f"vector of length {len(x)} for {self.rows}x{self.cols} matrix")
        return [sum(a * b for a, b in zip(row, x)) for row in self.entries]

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.entries]})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def determinant(self) -> int:
        """Exact determinant by fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise ShapeMismatch("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


def solve_rational(A: IntMatrix, b: Sequence[int]) -> list[Fraction]:
    """Unique rational solution of the square system ``A x = b``."""
    if A.rows != A.cols:
        raise ShapeMismatch("solve_rational needs a square matrix")
    if len(b) != A.rows:
        raise ShapeMismatch(f"right-hand side of length {len(b)} for {A.rows} rows")
    n = A.rows
    m = [[Fraction(v) for v in row] + [Fraction(int(bi))] for row, bi in zip(A.entries, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise SingularMatrix("integer system is singular")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [v * inv for v in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [vr - f * vc for vr, vc in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


def solve_nonneg_integer(A: IntMatrix, b: Sequence[int]) -> list[int]:
    """Solve ``A x = b`` and insist the solution is a nonnegative integer vector."""
    x = solve_rational(A, b)
    out = []
    for i, v in enumerate(x):
        if v.denominator != 1:
            raise NonIntegralSolution(f"coordinate {i} is {v}")
        if v < 0:
            raise NegativeMultiplicity(f"coordinate {i} is {v}")
        out.append(int(v))
    return out
