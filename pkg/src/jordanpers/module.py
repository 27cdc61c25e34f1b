"""Pointwise finite-dimensional persistence modules over finite posets.

A module stores one dimension per point and one matrix per Hasse arrow.
Grid-indexed modules are extended by zero outside their window, so
``dim`` and ``structure_map`` accept any point of Z^d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from . import field as F
from .errors import (
    NegativeShift,
    NotComparable,
    PosetMismatch,
    RangeError,
    ShapeMismatch,
    SingularMatrix,
    UnknownElement,
)
from .field import DEFAULT_PRIME, FieldMatrix
from .poset import GridPoset, Poset, ZigzagPoset, add, diagonal, sub, unit_step


class PersModule:
    def __init__(self, poset: Poset, dims: Mapping, maps: Mapping | None = None, p: int = DEFAULT_PRIME):
        self.poset = poset
        self.p = F.check_prime(p)
        self.dims: dict = {x: 0 for x in poset.elements}
        for x, d in dims.items():
            if x not in poset:
                raise UnknownElement(f"dimension given for {x!r}, which is not in the poset")
            if int(d) < 0:
                raise ValueError(f"negative dimension at {x!r}")
            self.dims[x] = int(d)
        arrows = set(poset.covering)
        self.maps: dict = {}
        for (x, y), m in (maps or {}).items():
            if (x, y) not in arrows:
                raise UnknownElement(f"{x!r}->{y!r} is not a Hasse arrow")
            fm = m if isinstance(m, FieldMatrix) and m.p == self.p else FieldMatrix(_as_rows(m, self.dims[y], self.dims[x]), self.p)
            if fm.shape != (self.dims[y], self.dims[x]):
                raise ShapeMismatch(
                    f"map {x!r}->{y!r} has shape {fm.shape}, expected {(self.dims[y], self.dims[x])}"
                )
            self.maps[(x, y)] = fm
        for x, y in poset.covering:
            if (x, y) not in self.maps:
                self.maps[(x, y)] = FieldMatrix.zeros(self.dims[y], self.dims[x], self.p)

    @property
    def is_grid(self) -> bool:
        return isinstance(self.poset, GridPoset)

    def dim(self, x) -> int:
        if x in self.poset:
            return self.dims[x]
        self.poset._check(x)
        return 0

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def arrow_map(self, x, y) -> FieldMatrix:
        return self.maps[(x, y)]

    @cached_property
    def _composites(self) -> dict:
        """Composite along a canonical Hasse path for every comparable pair x < y."""
        P = self.poset
        comp: dict = {}
        for y in P.topological_order():
            preds = P.hasse_predecessors(y)
            for x in P.down_set(y):
                if x == y:
                    continue
                u = next(u for u in preds if P.leq(x, u))
                a = self.maps[(u, y)]
                comp[(x, y)] = a if u == x else a @ comp[(x, u)]
        return comp

    def structure_map(self, x, y) -> FieldMatrix:
        """The map M_x -> M_y for x <= y (zero outside the stored window)."""
        if not self.poset.leq(x, y):
            raise NotComparable(f"{x!r} is not below {y!r}")
        if x == y:
            return FieldMatrix.identity(self.dim(x), self.p)
        if x in self.poset and y in self.poset:
            return self._composites[(x, y)]
        return FieldMatrix.zeros(self.dim(y), self.dim(x), self.p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PersModule):
            return NotImplemented
        return (
            self.poset == other.poset
            and self.p == other.p
            and self.dims == other.dims
            and self.maps == other.maps
        )

    def __hash__(self):
        return hash((self.poset, tuple(sorted(self.dims.items(), key=repr))))

    def __repr__(self) -> str:
        return f"PersModule({self.poset!r}, total_dim={self.total_dim()})"


def _as_rows(m, rows: int, cols: int):
    if isinstance(m, FieldMatrix):
        return m.array
    a = np.asarray(m, dtype=object)
    if a.size == 0:
        return np.zeros((rows, cols), dtype=np.int64)
    return a


@dataclass
class Violation:
    """First failure found by a validator; ``ok`` is False exactly when a failure exists."""

    ok: bool
    message: str = ""
    lower: object = None
    upper: object = None
    composites: tuple = field(default=(), repr=False)

    def __bool__(self) -> bool:
        return self.ok


def validate(M: PersModule) -> Violation:
    """Check path independence of the structure maps.

    Grids are checked on unit squares only.  Other posets are checked by
    comparing, for every pair x < y and every Hasse predecessor u of y above x,
    the composite through u against the canonical composite.
    """
    P = M.poset
    if isinstance(P, GridPoset):
        for x in P.elements:
            for a in range(P.d):
                for b in range(a + 1, P.d):
                    u, v = unit_step(x, a), unit_step(x, b)
                    y = unit_step(u, b)
                    if y not in P:
                        continue
                    left = M.maps[(u, y)] @ M.maps[(x, u)]
                    right = M.maps[(v, y)] @ M.maps[(x, v)]
                    if left != right:
                        return Violation(False, f"square {x}->{y} does not commute", x, y, (left, right))
        return Violation(True)
    comp = M._composites
    for y in P.topological_order():
        preds = P.hasse_predecessors(y)
        for x in P.down_set(y):
            if x == y:
                continue
            for u in preds:
                if not P.leq(x, u):
                    continue
                via = M.maps[(u, y)] if u == x else M.maps[(u, y)] @ comp[(x, u)]
                if via != comp[(x, y)]:
                    return Violation(False, f"paths {x!r}->{y!r} disagree (via {u!r})", x, y, (via, comp[(x, y)]))
    return Violation(True)


def structure_map(M: PersModule, x, y) -> FieldMatrix:
    return M.structure_map(x, y)


def zero_module(P: Poset, p: int = DEFAULT_PRIME) -> PersModule:
    return PersModule(P, {}, {}, p)


def direct_sum(M: PersModule, N: PersModule) -> PersModule:
    if M.poset != N.poset:
        raise PosetMismatch("direct sum of modules over different posets")
    if M.p != N.p:
        raise ValueError("direct sum of modules over different primes")
    dims = {x: M.dims[x] + N.dims[x] for x in M.poset.elements}
    maps = {e: F.direct_sum_mat(M.maps[e], N.maps[e]) for e in M.poset.covering}
    return PersModule(M.poset, dims, maps, M.p)


def _vec(eps, d: int) -> tuple[int, ...]:
    if isinstance(eps, (int, np.integer)):
        return diagonal(int(eps), d)
    eps = tuple(int(e) for e in eps)
    if len(eps) != d:
        raise ValueError(f"shift vector {eps} has the wrong dimension (expected {d})")
    return eps


def shift(M: PersModule, eps) -> PersModule:
    """M[eps]: the module x -> M_{x+eps}."""
    if not M.is_grid:
        raise TypeError("shift needs a grid-indexed module")
    G = M.poset
    e = _vec(eps, G.d)
    H = G.translated(tuple(-c for c in e))
    dims = {sub(x, e): d for x, d in M.dims.items()}
    maps = {(sub(x, e), sub(y, e)): m for (x, y), m in M.maps.items()}
    return PersModule(H, dims, maps, M.p)


def interval_module(Z: ZigzagPoset, i: int, j: int, p: int = DEFAULT_PRIME) -> PersModule:
    """Interval module I_[i,j]: K on i..j, identities inside, zero elsewhere."""
    if not (1 <= i <= j <= Z.n):
        raise RangeError(f"need 1 <= i <= j <= {Z.n}, got ({i}, {j})")
    dims = {k: 1 for k in range(i, j + 1)}
    maps = {(a, b): [[1]] for a, b in Z.covering if i <= a <= j and i <= b <= j}
    return PersModule(Z, dims, maps, p)


def box_module(lower: Sequence[int], upper: Sequence[int], p: int = DEFAULT_PRIME) -> PersModule:
    """Interval module of Z^d supported on the box [lower, upper], identity maps."""
    lower = tuple(int(c) for c in lower)
    upper = tuple(int(c) for c in upper)
    G = GridPoset(sub(upper, lower), lower)
    return PersModule(G, {x: 1 for x in G.elements}, {e: [[1]] for e in G.covering}, p)


def conjugate(M: PersModule, g: Mapping) -> PersModule:
    """Transport M along pointwise isomorphisms: arrows become g_y M_yx g_x^-1."""
    gs = {}
    for x in M.poset.elements:
        d = M.dims[x]
        gx = g.get(x)
        if gx is None:
            gs[x] = (FieldMatrix.identity(d, M.p), FieldMatrix.identity(d, M.p))
            continue
        gx = gx if isinstance(gx, FieldMatrix) else FieldMatrix(gx, M.p)
        if gx.shape != (d, d):
            raise ShapeMismatch(f"g at {x!r} has shape {gx.shape}, expected {(d, d)}")
        try:
            gs[x] = (gx, F.inverse(gx))
        except SingularMatrix:
            raise SingularMatrix(f"g at {x!r} is not invertible") from None
    maps = {(x, y): gs[y][0] @ m @ gs[x][1] for (x, y), m in M.maps.items()}
    return PersModule(M.poset, M.dims, maps, M.p)


def random_conjugation(M: PersModule, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    return {x: F._random_invertible(d, rng, M.p) for x, d in M.dims.items()}


def _random_low_rank(rows: int, cols: int, rng: np.random.Generator, p: int) -> FieldMatrix:
    r = int(rng.integers(0, min(rows, cols) + 1))
    if r == 0:
        return FieldMatrix.zeros(rows, cols, p)
    return F.random_matrix(rows, r, rng, p) @ F.random_matrix(r, cols, rng, p)


def random_module(P: Poset, max_dim: int, seed: int, p: int = DEFAULT_PRIME) -> PersModule:
    """Random module with dims in [0, max_dim]; always passes ``validate``.

    Points are visited in topological order.  The first incoming arrow of a
    point is a random matrix of random rank; every further incoming arrow is
    a random solution of the commutativity constraints against the arrows
    already fixed.  If those constraints are inconsistent, all incoming arrows
    of that point are set to zero.
    """
    rng = np.random.default_rng(seed)
    dims = {x: int(rng.integers(0, max_dim + 1)) for x in P.elements}
    maps: dict = {}
    comp: dict = {}

    def composite(x, u):
        if x == u:
            return FieldMatrix.identity(dims[x], p)
        return comp[(x, u)]

    for y in P.topological_order():
        preds = P.hasse_predecessors(y)
        for idx, v in enumerate(preds):
            if idx == 0:
                maps[(v, y)] = _random_low_rank(dims[y], dims[v], rng, p)
                continue
            lhs, rhs = [], []
            for u in preds[:idx]:
                for x in P.down_set(u) & P.down_set(v):
                    lhs.append(composite(x, v))
                    rhs.append(maps[(u, y)] @ composite(x, u))
            if not lhs:
                maps[(v, y)] = _random_low_rank(dims[y], dims[v], rng, p)
                continue
            A = F.hstack(lhs, dims[v], p)
            B = F.hstack(rhs, dims[y], p)
            X = F.solve(A.T, B.T, rng)
            if X is None:
                for u in preds:
                    maps[(u, y)] = FieldMatrix.zeros(dims[y], dims[u], p)
                break
            maps[(v, y)] = X.T
        for x in P.down_set(y):
            if x == y:
                continue
            u = next(u for u in preds if P.leq(x, u))
            comp[(x, y)] = maps[(u, y)] @ composite(x, u)
    return PersModule(P, dims, maps, p)


class ModuleHom:
    """Homomorphism f: source -> target given pointwise; missing components are zero."""

    def __init__(self, source: PersModule, target: PersModule, components: Mapping | None = None):
        if source.p != target.p:
            raise ValueError("homomorphism between modules over different primes")
        if source.is_grid != target.is_grid:
            raise PosetMismatch("homomorphism between grid and non-grid modules")
        if source.is_grid:
            if source.poset.d != target.poset.d:
                raise PosetMismatch("grid dimensions differ")
        elif source.poset != target.poset:
            raise PosetMismatch("homomorphism between modules over different posets")
        self.source = source
        self.target = target
        self.p = source.p
        self.components: dict = {}
        for x, m in (components or {}).items():
            fm = m if isinstance(m, FieldMatrix) else FieldMatrix(_as_rows(m, target.dim(x), source.dim(x)), self.p)
            if fm.shape != (target.dim(x), source.dim(x)):
                raise ShapeMismatch(
                    f"component at {x!r} has shape {fm.shape}, expected {(target.dim(x), source.dim(x))}"
                )
            if fm.rows and fm.cols:
                self.components[x] = fm

    def component(self, x) -> FieldMatrix:
        m = self.components.get(x)
        if m is None:
            return FieldMatrix.zeros(self.target.dim(x), self.source.dim(x), self.p)
        return m

    def support(self) -> list:
        """Points where both source and target are nonzero."""
        return [x for x in self.source.poset.elements if self.source.dim(x) and self.target.dim(x)]

    def __repr__(self) -> str:
        return f"ModuleHom({self.source!r} -> {self.target!r})"


def identity_hom(M: PersModule) -> ModuleHom:
    return ModuleHom(M, M, {x: FieldMatrix.identity(d, M.p) for x, d in M.dims.items() if d})


def compose(g: ModuleHom, f: ModuleHom) -> ModuleHom:
    """g o f; requires f.target == g.source."""
    if f.target != g.source:
        raise PosetMismatch("cannot compose: target of f differs from source of g")
    return ModuleHom(f.source, g.target, {x: g.component(x) @ f.component(x) for x in f.support()})


def shift_hom_of(f: ModuleHom, eps) -> ModuleHom:
    """f[eps]: source[eps] -> target[eps] with components x -> f_{x+eps}."""
    e = _vec(eps, f.source.poset.d)
    src, tgt = shift(f.source, e), shift(f.target, e)
    return ModuleHom(src, tgt, {sub(x, e): m for x, m in f.components.items()})


def shift_hom(M: PersModule, eps) -> ModuleHom:
    """The eps-shift homomorphism M -> M[eps] with components M_{x+eps, x}."""
    if not M.is_grid:
        raise TypeError("shift_hom needs a grid-indexed module")
    e = _vec(eps, M.poset.d)
    if any(c < 0 for c in e):
        raise NegativeShift(f"shift vector {e} has a negative coordinate")
    target = shift(M, e)
    return ModuleHom(M, target, {x: M.structure_map(x, add(x, e)) for x in M.poset.elements})


def validate_hom(f: ModuleHom) -> Violation:
    """Check every naturality square f_y M_yx = N_yx f_x over Hasse arrows x -> y."""
    M, N = f.source, f.target
    if M.is_grid:
        arrows = [
            (x, unit_step(x, k)) for x in M.poset.elements if M.dims[x] for k in range(M.poset.d)
        ]
    else:
        arrows = list(M.poset.covering)
    for x, y in arrows:
        left = f.component(y) @ M.structure_map(x, y)
        right = N.structure_map(x, y) @ f.component(x)
        if left != right:
            return Violation(False, f"naturality fails on {x!r}->{y!r}", x, y, (left, right))
    return Violation(True)


@dataclass
class InterleavingCertificate:
    """An eps-interleaving phi: M -> N[eps], psi: N -> M[eps] (diagonal eps)."""

    epsilon: int
    phi: ModuleHom
    psi: ModuleHom

    @property
    def M(self) -> PersModule:
        return self.phi.source

    @property
    def N(self) -> PersModule:
        return self.psi.source


def interleaving_report(cert: InterleavingCertificate) -> Violation:
    eps = int(cert.epsilon)
    if eps < 0:
        return Violation(False, "negative epsilon")
    M, N = cert.M, cert.N
    if not (M.is_grid and N.is_grid) or M.poset.d != N.poset.d:
        return Violation(False, "interleavings need grid modules of equal dimension")
    d = M.poset.d
    e = diagonal(eps, d)
    if cert.phi.target != shift(N, e):
        return Violation(False, "phi does not land in N[eps]")
    if cert.psi.target != shift(M, e):
        return Violation(False, "psi does not land in M[eps]")
    for name, f in (("phi", cert.phi), ("psi", cert.psi)):
        rep = validate_hom(f)
        if not rep:
            return Violation(False, f"{name}: {rep.message}", rep.lower, rep.upper, rep.composites)
    e2 = diagonal(2 * eps, d)
    for first, second, X, name in ((cert.phi, cert.psi, M, "psi[eps] o phi"), (cert.psi, cert.phi, N, "phi[eps] o psi")):
        for x in X.poset.elements:
            if not X.dims[x]:
                continue
            left = second.component(add(x, e)) @ first.component(x)
            right = X.structure_map(x, add(x, e2))
            if left != right:
                return Violation(False, f"{name} differs from the 2eps shift at {x}", x, add(x, e2), (left, right))
    return Violation(True)


def verify_interleaving(cert: InterleavingCertificate) -> bool:
    return interleaving_report(cert).ok


def canonical_shift_certificate(M: PersModule, delta: int) -> InterleavingCertificate:
    """Certificate that M and M[delta] are delta-interleaved.

    phi = sh_M^{2 delta}: M -> M[2 delta] = N[delta]; psi = identity of N viewed as N -> M[delta].
    """
    N = shift(M, delta)
    phi = shift_hom(M, 2 * delta)
    phi = ModuleHom(M, shift(N, delta), phi.components)
    psi = ModuleHom(N, shift(M, delta), identity_hom(N).components)
    return InterleavingCertificate(delta, phi, psi)
