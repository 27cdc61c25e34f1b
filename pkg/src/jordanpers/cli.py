"""Batch command-line front end.

Exit codes: 0 success, 1 validation failure (non-functorial module, failed
certificate or broken stability chain), 2 schema or usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import distances, io, jordan, module, poset, zigzag
from .errors import InvalidCertificate, JordanPersError, SchemaError
from .field import DEFAULT_PRIME, check_prime

EXIT_OK, EXIT_INVALID, EXIT_SCHEMA = 0, 1, 2


@dataclass(frozen=True)
class SessionConfig:
    prime: int | None
    seed: int
    output: str | None
    format: str

    def __post_init__(self):
        if self.prime is not None:
            check_prime(self.prime)


class _Failure(Exception):
    def __init__(self, payload, code=EXIT_INVALID):
        self.payload = payload
        self.code = code


def _env_prime() -> int | None:
    raw = os.environ.get("JORDANPERS_PRIME")
    if not raw:
        return None
    try:
        return check_prime(int(raw))
    except ValueError as e:
        raise SchemaError(str(e), "JORDANPERS_PRIME") from None


def _load(cfg: SessionConfig, path):
    obj = io.load_json(path)
    prime = cfg.prime
    if prime is None and not (isinstance(obj, dict) and "prime" in obj):
        prime = _env_prime() or DEFAULT_PRIME
    M = io.module_from_json(obj, prime)
    return M, obj.get("slices") if isinstance(obj, dict) else None


def _slices(M, given, embedded):
    if given is None:
        if embedded is None:
            if isinstance(M.poset, poset.GridPoset):
                return poset.norm_slices(M.poset)
            raise SchemaError("no slices given and the module file has none", "--slices")
        return io.slices_from_json(M.poset, embedded)
    if given == "norm":
        return io.slices_from_json(M.poset, "norm", "--slices")
    if Path(given).is_file():
        obj = io.load_json(given)
        if isinstance(obj, dict):
            obj = obj.get("slices")
        return io.slices_from_json(M.poset, obj, "--slices")
    try:
        obj = json.loads(given)
    except json.JSONDecodeError:
        raise SchemaError("not a file, 'norm', or inline JSON", "--slices") from None
    return io.slices_from_json(M.poset, obj, "--slices")


def _check_strict(M, S, strict: bool) -> list[str]:
    if not strict:
        return []
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return poset.validate_slices(M.poset, S, strict=True)


def _require_valid(M, label="module"):
    rep = module.validate(M)
    if not rep:
        raise _Failure({"ok": False, "error": f"{label}: {rep.message}"})


def cmd_validate(cfg, args):
    M, _ = _load(cfg, args.file)
    rep = module.validate(M)
    out = {"ok": rep.ok}
    if not rep.ok:
        out["violation"] = {
            "message": rep.message,
            "lower": io.point_key(M.poset, rep.lower),
            "upper": io.point_key(M.poset, rep.upper),
            "composites": [c.tolist() for c in rep.composites],
        }
        raise _Failure(out)
    return out, "ok"


def cmd_jordan_type(cfg, args):
    M, emb = _load(cfg, args.file)
    _require_valid(M)
    S = _slices(M, args.slices, emb)
    warns = _check_strict(M, S, args.strict_slices)
    jt = jordan.jordan_type(M, S)
    out = {"jordan_type": list(jt), "n": len(jt), "total_dimension": jt.total_dimension}
    if warns:
        out["warnings"] = warns
    return out, "(" + ",".join(str(a) for a in jt) + ")"


def cmd_multirank(cfg, args):
    M, _ = _load(cfg, args.file)
    _require_valid(M)
    R = zigzag.R_vector(M)
    out = {
        "n": R.n,
        "pairs": [list(ij) for ij in zigzag.interval_pairs(R.n)],
        "R": R.flat(),
        "triangular": [[R[(i, j)] for j in range(i, R.n + 1)] for i in range(1, R.n + 1)],
    }
    return out, R.render()


def cmd_barcode(cfg, args):
    M, _ = _load(cfg, args.file)
    _require_valid(M)
    try:
        bc = zigzag.barcode_from_R(M)
    except JordanPersError as e:
        raise _Failure({"ok": False, "error": str(e)}) from None
    text = "{" + ", ".join(f"[{r['i']},{r['j']}]:{r['multiplicity']}" for r in bc.records()) + "}"
    return {"barcode": bc.records()}, text


def cmd_filtered_rank(cfg, args):
    M, emb = _load(cfg, args.file)
    _require_valid(M)
    S = _slices(M, args.slices, emb)
    tables = jordan.filtered_rank(M, S)
    out = {"degrees": [{"degree": i, "records": t.to_records()} for i, t in enumerate(tables)]}
    lines = []
    for i, t in enumerate(tables):
        for r in t.to_records():
            if r["value"]:
                lines.append(f"{i} {tuple(r['x'])} {tuple(r['y'])} {r['value']}")
    return out, "\n".join(lines)


def _pair(cfg, args):
    M, emb = _load(cfg, args.file_a)
    N, _ = _load(cfg, args.file_b)
    _require_valid(M, "first module")
    _require_valid(N, "second module")
    if not (M.is_grid and N.is_grid) or M.poset.d != N.poset.d:
        raise SchemaError("both modules must be grid modules of the same dimension")
    S = _slices(M, args.slices, emb)
    return M, N, S


def _num(v):
    return "inf" if v == math.inf else int(v)


def cmd_erosion(cfg, args):
    M, N, S = _pair(cfg, args)
    tm, tn = jordan.filtered_rank(M, S), jordan.filtered_rank(N, S)
    per = [distances.erosion_distance(a, b) for a, b in zip(tm, tn)]
    de = max((r.value for r in per), default=0)
    dl = distances.landscape_distance_at_S(M, N, S, tables=(tm, tn))
    witnesses = {
        str(i): {"x": list(r.witness[0]), "y": list(r.witness[1]), "direction": r.witness[2]}
        for i, r in enumerate(per)
        if r.witness is not None
    }
    out = {"d_E": _num(de), "d_L": dl, "per_degree": [_num(r.value) for r in per], "witnesses": witnesses}
    return out, f"d_E={_num(de)} d_L={dl}"


def cmd_stability(cfg, args):
    M, N, S = _pair(cfg, args)
    cert = io.certificate_from_json(io.load_json(args.cert), M, N)
    try:
        rep = distances.check_stability(M, N, S, cert)
    except InvalidCertificate as e:
        raise _Failure({"ok": False, "error": f"invalid certificate: {e}"}) from None
    out = rep.to_dict()
    text = f"d_L={out['d_L']} <= d_E={out['d_E']} <= epsilon={out['epsilon']}: {'pass' if rep.chain_ok else 'FAIL'}"
    if not rep.chain_ok:
        raise _Failure(out)
    return out, text


def _parse_bars(text: str):
    bars = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            i, j = (int(v) for v in part.split("-"))
        except ValueError:
            raise SchemaError(f"bar {part!r} is not of the form i-j", "--bars") from None
        bars.append((i, j))
    return bars


def cmd_generate(cfg, args):
    prime = cfg.prime or _env_prime() or DEFAULT_PRIME
    kind = args.kind
    slices = None
    try:
        if kind == "grid":
            G = poset.GridPoset([int(s) for s in args.shape.split(",")])
            M = module.random_module(G, args.max_dim, cfg.seed, prime)
            slices = poset.norm_slices(G) if sum(G.shape) >= 1 else None
        elif kind == "zigzag":
            M = module.random_module(poset.ZigzagPoset(args.orientation), args.max_dim, cfg.seed, prime)
        elif kind == "planted":
            Z = poset.ZigzagPoset(args.orientation)
            M = zigzag.planted_module(Z, _parse_bars(args.bars or ""), cfg.seed, prime)
        elif kind in ("shift", "certificate"):
            if not args.file:
                raise SchemaError(f"'generate {kind}' needs --file", "--file")
            M0, _ = _load(cfg, args.file)
            if not M0.is_grid:
                raise SchemaError("shifts need a grid module", "--file")
            if kind == "certificate":
                return io.certificate_to_json(module.canonical_shift_certificate(M0, args.delta)), None
            M = module.shift(M0, args.delta)
        else:
            raise SchemaError(f"unknown kind {kind!r}")
    except SchemaError:
        raise
    except (ValueError, JordanPersError) as e:
        raise SchemaError(str(e), kind) from None
    return io.module_to_json(M, slices), None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--prime", type=int, default=argparse.SUPPRESS, help="field characteristic (default 32749)")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--output", default=argparse.SUPPRESS, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jordanpers", description=__doc__.splitlines()[0])
    _common(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        _common(sp)
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check functoriality of a module").add_argument("file")
    for name, func, help in (
        ("jordan-type", cmd_jordan_type, "Jordan type at a slice sequence"),
        ("filtered-rank", cmd_filtered_rank, "Jordan filtered rank invariant"),
    ):
        sp = add(name, func, help)
        sp.add_argument("file")
        sp.add_argument("--slices", help="JSON file, inline JSON list of lists, or 'norm'")
        sp.add_argument("--strict-slices", action="store_true", help="report advisory slice warnings")
    add("multirank", cmd_multirank, "R(M) of a zigzag module").add_argument("file")
    add("barcode", cmd_barcode, "barcode of a zigzag module from R(M)").add_argument("file")
    sp = add("erosion", cmd_erosion, "erosion and landscape distances at S")
    sp.add_argument("file_a")
    sp.add_argument("file_b")
    sp.add_argument("--slices")
    sp = add("stability", cmd_stability, "check d_L <= d_E <= eps for a certificate")
    sp.add_argument("file_a")
    sp.add_argument("file_b")
    sp.add_argument("cert")
    sp.add_argument("--slices")
    sp = add("generate", cmd_generate, "write a random, planted or shifted module (or a certificate)")
    sp.add_argument("kind", choices=("grid", "zigzag", "planted", "shift", "certificate"))
    sp.add_argument("--shape", default="2,2")
    sp.add_argument("--orientation", default="FF")
    sp.add_argument("--max-dim", type=int, default=2)
    sp.add_argument("--bars", help="comma separated intervals, e.g. 1-3,2-2")
    sp.add_argument("--file", help="input module for 'shift' and 'certificate'")
    sp.add_argument("--delta", type=int, default=1)
    return parser


def _emit(cfg: SessionConfig, payload, text) -> None:
    if cfg.format == "text" and text is not None:
        body = text + "\n"
    else:
        body = json.dumps(payload, indent=2) + "\n"
    if cfg.output:
        Path(cfg.output).write_text(body)
    else:
        sys.stdout.write(body)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = SessionConfig(
            prime=getattr(args, "prime", None),
            seed=getattr(args, "seed", 0),
            output=getattr(args, "output", None),
            format=getattr(args, "format", "json"),
        )
    except ValueError as e:
        print(f"error: --prime: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    try:
        payload, text = args.func(cfg, args)
    except _Failure as f:
        _emit(cfg, f.payload, None)
        return f.code
    except SchemaError as e:
        print(f"schema error: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    except JordanPersError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    _emit(cfg, payload, text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
