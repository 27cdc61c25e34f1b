"""JSON schema for modules, slice specs and interleaving certificates.

Module files look like::

    {"prime": 32749,
     "poset": {"type": "grid", "shape": [2, 1], "origin": [0, 0]},
     "dims": {"0,1": 1, ...},
     "maps": {"0,1->1,1": [[0], [1]], ...},
     "slices": [["0,1", "1,0"], ...]}

``poset`` may also be ``{"type": "zigzag", "n": 4, "orientation": "FBF"}`` or
``{"type": "poset", "elements": [...], "covering": [[a, b], ...]}``.  Matrix
entries are integers of any sign, reduced mod the prime on load.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import JordanPersError, SchemaError
from .field import DEFAULT_PRIME, FieldMatrix
from .module import InterleavingCertificate, ModuleHom, PersModule, shift
from .poset import GridPoset, Poset, SliceSequence, ZigzagPoset, diagonal, norm_slices


def point_key(P: Poset, x) -> str:
    if isinstance(P, GridPoset):
        return ",".join(str(c) for c in x)
    return str(x)


def parse_point(P: Poset, key, ctx: str):
    if isinstance(P, GridPoset):
        try:
            pt = tuple(int(c) for c in str(key).split(","))
        except ValueError:
            raise SchemaError(f"bad grid point {key!r}", ctx) from None
        if len(pt) != P.d:
            raise SchemaError(f"point {key!r} has {len(pt)} coordinates, grid has {P.d}", ctx)
        return pt
    if isinstance(P, ZigzagPoset):
        try:
            k = int(key)
        except ValueError:
            raise SchemaError(f"bad zigzag vertex {key!r}", ctx) from None
        if k not in P:
            raise SchemaError(f"vertex {k} outside 1..{P.n}", ctx)
        return k
    for x in P.elements:
        if str(x) == str(key):
            return x
    raise SchemaError(f"unknown element {key!r}", ctx)


def poset_from_json(obj) -> Poset:
    if not isinstance(obj, dict) or "type" not in obj:
        raise SchemaError("poset must be an object with a 'type'", "poset")
    kind = obj["type"]
    try:
        if kind == "grid":
            return GridPoset(obj["shape"], obj.get("origin"))
        if kind == "zigzag":
            orient = obj.get("orientation", "")
            n = obj.get("n", len(orient) + 1)
            return ZigzagPoset(orient, int(n))
        if kind == "poset":
            return Poset(obj["elements"], [tuple(c) for c in obj.get("covering", [])])
    except KeyError as e:
        raise SchemaError(f"missing field {e}", "poset") from None
    except (TypeError, ValueError) as e:
        raise SchemaError(str(e), "poset") from None
    raise SchemaError(f"unknown poset type {kind!r}", "poset.type")


def poset_to_json(P: Poset) -> dict:
    if isinstance(P, GridPoset):
        out = {"type": "grid", "shape": list(P.shape)}
        if any(P.origin):
            out["origin"] = list(P.origin)
        return out
    if isinstance(P, ZigzagPoset):
        return {"type": "zigzag", "n": P.n, "orientation": P.orientation}
    return {"type": "poset", "elements": list(P.elements), "covering": [list(c) for c in P.covering]}


def _matrix(value, ctx: str) -> list:
    if not isinstance(value, list) or any(not isinstance(r, list) for r in value):
        raise SchemaError("matrix must be a list of rows", ctx)
    for r in value:
        if any(isinstance(v, bool) or not isinstance(v, int) for v in r):
            raise SchemaError("matrix entries must be integers", ctx)
    return value


def module_from_json(obj, prime: int | None = None) -> PersModule:
    if not isinstance(obj, dict):
        raise SchemaError("top level must be an object")
    p = int(prime if prime is not None else obj.get("prime", DEFAULT_PRIME))
    P = poset_from_json(obj.get("poset"))
    dims = {}
    for k, v in (obj.get("dims") or {}).items():
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise SchemaError("dimension must be a nonnegative integer", f"dims[{k!r}]")
        dims[parse_point(P, k, f"dims[{k!r}]")] = v
    maps = {}
    for k, v in (obj.get("maps") or {}).items():
        ctx = f"maps[{k!r}]"
        if "->" not in k:
            raise SchemaError("map keys look like 'src->dst'", ctx)
        a, b = k.split("->", 1)
        maps[(parse_point(P, a.strip(), ctx), parse_point(P, b.strip(), ctx))] = _matrix(v, ctx)
    try:
        for (x, y), rows in maps.items():
            want = (dims.get(y, 0), dims.get(x, 0))
            got = (len(rows), len(rows[0]) if rows else want[1])
            if rows and any(len(r) != got[1] for r in rows):
                raise SchemaError("ragged matrix", f"maps[{point_key(P, x)}->{point_key(P, y)}]")
            if got != want and not (want[0] == 0 or want[1] == 0):
                raise SchemaError(f"shape {got}, expected {want}", f"maps[{point_key(P, x)}->{point_key(P, y)}]")
        return PersModule(P, dims, {e: _fm(r, dims.get(e[1], 0), dims.get(e[0], 0), p) for e, r in maps.items()}, p)
    except SchemaError:
        raise
    except (JordanPersError, ValueError) as e:
        raise SchemaError(str(e), "maps") from None


def _fm(rows, r: int, c: int, p: int) -> FieldMatrix:
    if r == 0 or c == 0:
        return FieldMatrix.zeros(r, c, p)
    return FieldMatrix(rows, p)


def module_to_json(M: PersModule, slices=None) -> dict:
    P = M.poset
    out = {
        "prime": M.p,
        "poset": poset_to_json(P),
        "dims": {point_key(P, x): d for x, d in M.dims.items() if d},
        "maps": {
            f"{point_key(P, x)}->{point_key(P, y)}": m.tolist()
            for (x, y), m in M.maps.items()
            if m.rows and m.cols
        },
    }
    if slices is not None:
        out["slices"] = [[point_key(P, x) for x in s] for s in slices]
    return out


def slices_from_json(P: Poset, obj, ctx: str = "slices") -> SliceSequence:
    if obj == "norm":
        if not isinstance(P, GridPoset):
            raise SchemaError("'norm' slices need a grid poset", ctx)
        return norm_slices(P)
    if not isinstance(obj, list) or any(not isinstance(s, list) for s in obj):
        raise SchemaError("slices must be a list of lists of point keys", ctx)
    out = []
    for i, s in enumerate(obj):
        pts = []
        for k in s:
            if isinstance(P, GridPoset) and isinstance(k, list):
                pts.append(tuple(int(c) for c in k))
            else:
                pts.append(_slice_point(P, k, f"{ctx}[{i}]"))
        out.append(pts)
    try:
        return SliceSequence(out)
    except JordanPersError as e:
        raise SchemaError(str(e), ctx) from None


def _slice_point(P: Poset, key, ctx: str):
    # grid slice points may lie outside the window
    if isinstance(P, GridPoset):
        try:
            pt = tuple(int(c) for c in str(key).split(","))
        except ValueError:
            raise SchemaError(f"bad grid point {key!r}", ctx) from None
        if len(pt) != P.d:
            raise SchemaError(f"point {key!r} has the wrong dimension", ctx)
        return pt
    return parse_point(P, key, ctx)


def certificate_from_json(obj, M: PersModule, N: PersModule) -> InterleavingCertificate:
    if not isinstance(obj, dict):
        raise SchemaError("certificate must be an object")
    try:
        eps = int(obj["epsilon"])
    except (KeyError, TypeError, ValueError):
        raise SchemaError("missing or non-integer epsilon", "epsilon") from None
    if not M.is_grid or not N.is_grid:
        raise SchemaError("certificates need grid modules", "epsilon")
    e = diagonal(eps, M.poset.d)
    Ne, Me = shift(N, e), shift(M, e)
    homs = []
    for name, src, tgt in (("phi", M, Ne), ("psi", N, Me)):
        comps = {}
        for k, v in (obj.get(name) or {}).items():
            ctx = f"{name}[{k!r}]"
            x = _slice_point(src.poset, k, ctx)
            rows = _matrix(v, ctx)
            comps[x] = _fm(rows, tgt.dim(x), src.dim(x), M.p)
        try:
            homs.append(ModuleHom(src, tgt, comps))
        except JordanPersError as err:
            raise SchemaError(str(err), name) from None
    return InterleavingCertificate(eps, homs[0], homs[1])


def certificate_to_json(cert: InterleavingCertificate) -> dict:
    P = cert.M.poset
    return {
        "epsilon": cert.epsilon,
        "phi": {point_key(P, x): m.tolist() for x, m in sorted(cert.phi.components.items())},
        "psi": {point_key(P, x): m.tolist() for x, m in sorted(cert.psi.components.items())},
    }


def load_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise SchemaError(f"cannot read file: {e.strerror}", str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})", str(path)) from None


def load_module(path, prime: int | None = None) -> tuple[PersModule, object]:
    """Module plus its raw ``slices`` field (or None)."""
    obj = load_json(path)
    M = module_from_json(obj, prime)
    return M, obj.get("slices") if isinstance(obj, dict) else None
