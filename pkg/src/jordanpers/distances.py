"""Erosion distance, integer-grid landscapes and the stability chain d_L <= d_E <= eps.

All tables here are indexed by Z^d.  Erosion parameters are nonnegative
integers and shift along the diagonal (eps, ..., eps).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .errors import DimensionMismatch, InvalidCertificate
from .jordan import RankInvariantTable, filtered_rank, jordan_module_family
from .module import InterleavingCertificate, PersModule, interleaving_report
from .poset import add, diagonal, sub


@dataclass
class ErosionResult:
    """``witness`` is (x, y, direction) violating the (value - 1)-erosion; direction 'FG' or 'GF'."""

    value: float
    witness: tuple | None = None

    def __int__(self) -> int:
        return int(self.value)


def _dim(F: RankInvariantTable) -> int:
    d = F.d
    if d is None:
        raise DimensionMismatch("erosion and landscapes need Z^d-indexed tables")
    return d


def _search_bound(F: RankInvariantTable, G: RankInvariantTable) -> int:
    pts = list(F.support | G.support)
    if not pts:
        return 0
    d = len(pts[0])
    diam = max(max(p[k] for p in pts) - min(p[k] for p in pts) for k in range(d))
    return diam + 1


def erosion_violation(F: RankInvariantTable, G: RankInvariantTable, eps: int):
    """A pair (x, y) with F(x - eps, y + eps) > G(x, y), or None.

    Only pairs where F(x - eps, y + eps) > 0 can violate, and those are the
    positive entries of F moved inward by eps; pairs that stop being
    comparable after the move meet G = inf.
    """
    d = _dim(F)
    e = diagonal(eps, d)
    for (a, b), v in F.positive_items():
        x, y = add(a, e), sub(b, e)
        if all(p <= q for p, q in zip(x, y)) and G.value(x, y) < v:
            return (x, y)
    return None


def erosion_distance(F: RankInvariantTable, G: RankInvariantTable) -> ErosionResult:
    """Smallest integer eps >= 0 at which F and G erode into each other.

    The scan stops at the l-inf diameter of the joint support plus one; past
    that no positive entry stays comparable after moving inward, so every
    constraint is vacuous and the value cannot exceed the bound.
    """
    if _dim(F) != _dim(G):
        raise DimensionMismatch(f"tables over Z^{F.d} and Z^{G.d}")
    bound = _search_bound(F, G)
    witness = None
    for eps in range(bound + 1):
        w = erosion_violation(F, G, eps)
        direction = "FG"
        if w is None:
            w = erosion_violation(G, F, eps)
            direction = "GF"
        if w is None:
            return ErosionResult(eps, witness)
        witness = (w[0], w[1], direction)
    return ErosionResult(math.inf, witness)


@dataclass
class Landscape:
    k_max: int
    points: frozenset
    values: dict = field(repr=False)

    def value(self, k: int, x) -> int:
        return self.values.get((k, x), 0)

    def sup_distance(self, other: "Landscape") -> int:
        keys = set(self.values) | set(other.values)
        return max((abs(self.value(k, x) - other.value(k, x)) for k, x in keys), default=0)

    def to_csv_rows(self) -> list[list[int]]:
        return [[k, *x, v] for (k, x), v in sorted(self.values.items())]


def _box_shell(eps: int, d: int):
    """h in [0, eps]^d with max coordinate exactly eps."""
    for h in itertools.product(range(eps + 1), repeat=d):
        if max(h) == eps:
            yield h


def landscape(F: RankInvariantTable, k_max: int) -> Landscape:
    """lambda(k, x) = sup{eps > 0 : F(x - h, x + h) >= k for all integer ||h||_inf <= eps}.

    With h restricted to Z^d the supremum is m + 1, where m is the largest
    integer radius for which every h passes; it is 0 when h = 0 already
    fails.  Only h >= 0 can fail, since other h give incomparable pairs.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    d = _dim(F)
    vals = {}
    for x in F.support:
        for k in range(1, k_max + 1):
            if F.value(x, x) < k:
                break
            eps = 1
            while all(F.value(sub(x, h), add(x, h)) >= k for h in _box_shell(eps, d)):
                eps += 1
            vals[(k, x)] = eps
    return Landscape(k_max, F.support, vals)


def _default_k_max(tables) -> int:
    return max((t.max_value() for t in tables), default=0) or 1


def erosion_distance_at_S(M: PersModule, N: PersModule, S, tables=None) -> ErosionResult:
    """max over degrees i of d_E(rk^i_S(M), rk^i_S(N)); the witness comes from the worst degree."""
    tm, tn = tables if tables is not None else (filtered_rank(M, S), filtered_rank(N, S))
    best = ErosionResult(0)
    for a, b in zip(tm, tn):
        r = erosion_distance(a, b)
        if r.value > best.value:
            best = r
    return best


def landscape_distance_at_S(M: PersModule, N: PersModule, S, k_max: int | None = None, tables=None) -> int:
    """max over degrees i of the sup-norm distance between the landscapes of M^i_S and N^i_S."""
    tm, tn = tables if tables is not None else (filtered_rank(M, S), filtered_rank(N, S))
    if k_max is None:
        k_max = _default_k_max(list(tm) + list(tn))
    return max((landscape(a, k_max).sup_distance(landscape(b, k_max)) for a, b in zip(tm, tn)), default=0)


@dataclass
class StabilityReport:
    d_L: int
    d_E: float
    epsilon: int
    chain_ok: bool
    witnesses: dict

    def to_dict(self) -> dict:
        return {
            "d_L": self.d_L,
            "d_E": "inf" if self.d_E == math.inf else int(self.d_E),
            "epsilon": self.epsilon,
            "chain_ok": self.chain_ok,
            "witnesses": self.witnesses,
        }


def check_stability(M: PersModule, N: PersModule, S, cert: InterleavingCertificate) -> StabilityReport:
    """Verify the certificate, then report d_L <= d_E <= cert.epsilon."""
    rep = interleaving_report(cert)
    if not rep:
        raise InvalidCertificate(rep.message)
    if cert.M != M or cert.N != N:
        raise InvalidCertificate("certificate does not interleave the given modules")
    tm = filtered_rank(M, S, jordan_module_family(M, S))
    tn = filtered_rank(N, S, jordan_module_family(N, S))
    de = erosion_distance_at_S(M, N, S, tables=(tm, tn))
    dl = landscape_distance_at_S(M, N, S, tables=(tm, tn))
    witnesses = {}
    if de.witness is not None:
        x, y, direction = de.witness
        witnesses["erosion"] = {"x": list(x), "y": list(y), "direction": direction}
    ok = dl <= de.value <= cert.epsilon
    return StabilityReport(dl, de.value, int(cert.epsilon), ok, witnesses)
