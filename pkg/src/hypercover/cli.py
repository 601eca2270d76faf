"""Command-line entry point.

Exit codes: 0 when the computation succeeds and every checked property
holds, 1 when a verification fails (the report says why), 2 for malformed
input or out-of-range parameters.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import constructions as cons
from .complexity import algebraic_complexity, describe_index, index_complexity_exact, index_complexity_greedy
from .cover import CoverFamily, describe, profile, verify_cover
from .fieldkit import (
    GridSpec,
    HypothesisError,
    SumsetInstance,
    check_res_sum_theorem,
    cn_witness,
    cw_generalized_search,
    erdos_heilbronn_check,
    restricted_sumset,
)
from .hypercube import CubePoint, PointSet, layer, tail_set
from .polycheck import (
    CERT_MODES,
    BoundViolation,
    check_degree_certificates,
    check_grid_theorem,
    from_family,
    verify_poly_cover,
    zero_multiplicity,
)
from .polynomial import SparsePoly, parse_poly
from .search import enumerate_traces, min_cover_search

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace
    fmt: str = "json"
    workers: int = 1
    out: list[str] = field(default_factory=list)


# -- input helpers ------------------------------------------------------


def _read_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _load_family(path: str) -> CoverFamily:
    data = _read_json(path)
    if "family" in data and "planes" not in data:
        data = data["family"]
    return CoverFamily.from_json(data)


def _load_poly(args, p: int | None = None, n: int | None = None) -> SparsePoly:
    if getattr(args, "family", None):
        return from_family(_load_family(args.family))
    if getattr(args, "poly_file", None):
        with open(args.poly_file) as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            return SparsePoly.from_json(json.loads(text))
        return parse_poly(text, n=n, p=p)
    if getattr(args, "poly", None):
        return parse_poly(args.poly, n=n, p=p)
    raise UsageError("give a polynomial with --poly, --poly-file or --family")


def _load_raw_points(path: str) -> list[tuple[int, ...]]:
    """Points in Z_p^n as lists of integers, or a cube point-set file."""
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("[") or stripped.startswith("{"):
        data = json.loads(text)
        pts = data.get("points", []) if isinstance(data, dict) else data
        if pts and isinstance(pts[0], list):
            return [tuple(int(x) for x in pt) for pt in pts]
    return [pt.coords() for pt in PointSet.load(path)]


def _check_range(name: str, value: int, lo: int, hi: int | None = None) -> None:
    if value < lo or (hi is not None and value > hi):
        top = "inf" if hi is None else hi
        raise UsageError(f"--{name} must be in [{lo}, {top}], got {value}")


# -- subcommands --------------------------------------------------------


def _family_payload(name: str, F: CoverFamily, **extra) -> dict:
    return {**F.to_json(), "size": F.size, "construction": name, "provenance": cons.PROVENANCE[name], **extra}


def cmd_construct(cfg: RunConfig) -> tuple[int, dict]:
    a = cfg.args
    kind = a.kind
    S = None
    extra: dict = {}
    if kind == "layer-cover":
        _need(a, "n", "k")
        F = cons.layer_complement_cover(a.n, a.k, a.t)
        S = layer(a.n, a.k)
    elif kind == "tail-cover":
        _need(a, "n", "l")
        F = cons.tail_cover(a.n, a.l)
        extra["tail_set_size"] = len(tail_set(a.n, a.l))
    elif kind == "layer-minus-point":
        _need(a, "n", "k")
        F, v = cons.layer_minus_point_cover(a.n, a.k)
        S = layer(a.n, a.k)
        extra["missed"] = str(v)
    elif kind == "halfcube":
        _need(a, "n")
        F, S = cons.halfcube_example_cover(a.n, a.t)
    elif kind == "venkitesh":
        F, S = cons.venkitesh_counterexample()
    else:
        _need(a, "n", "j")
        F = CoverFamily.of(a.n, [cons.level_plane(a.n, a.j)])
    if S is not None:
        extra["S"] = S.to_json()
        if a.S_out:
            with open(a.S_out, "w") as fh:
                json.dump({"n": S.n, "points": S.to_json()}, fh)
    payload = _family_payload(kind, F, **extra)
    if a.out:
        with open(a.out, "w") as fh:
            json.dump(payload, fh)
    cfg.out.append(describe(F))
    return OK, payload


def _need(args, *names: str) -> None:
    missing = [nm for nm in names if getattr(args, nm, None) is None]
    if missing:
        raise UsageError(f"missing required option(s): {', '.join('--' + m for m in missing)}")


def cmd_verify(cfg: RunConfig) -> tuple[int, dict]:
    a = cfg.args
    F = _load_family(a.family)
    S = PointSet.load(a.S, n=F.n)
    _check_range("t", a.t, 1)
    ell = a.t - 1 if a.l is None else a.l
    _check_range("l", ell, 0, a.t - 1)
    report = verify_cover(F, S, a.t, ell)
    payload = {"t": a.t, "l": ell, **report.to_json()}
    if a.profile:
        counts = profile(F).counts
        payload["profile"] = {str(CubePoint(F.n, m)): int(counts[m]) for m in range(1 << F.n)}
    for v in report.violations:
        cfg.out.append(f"{v.point}  needs {v.rule}, has {v.count}")
    return (OK if report.ok else FAILED), payload


def cmd_complexity(cfg: RunConfig) -> tuple[int, dict]:
    a = cfg.args
    if a.algebraic:
        if a.prime is None:
            raise UsageError("--algebraic needs --prime")
        pts = _load_raw_points(a.S)
        d, w = algebraic_complexity(pts, a.prime)
        return OK, {"a": d, "p": a.prime, "witness": w.to_json(), "verified": w.check(pts)}
    S = PointSet.load(a.S)
    if a.greedy:
        k, w = index_complexity_greedy(S)
        return OK, {"r_upper": k, "mode": "greedy", "witness": w.to_json(), "verified": w.check(S)}
    r, w = index_complexity_exact(S)
    cfg.out.append(describe_index(S, r, w))
    return OK, {"r": r, "mode": "exact", "witness": w.to_json() if w else None,
                "verified": w.check(S) if w else None}


def cmd_polynomial(cfg: RunConfig) -> tuple[int, dict]:
    a = cfg.args
    action = a.action
    if action == "grid":
        data = _read_json(a.input)
        p = data.get("p")
        n = len(data["grid"])
        f = _poly_field(data["f"], n, p)
        g = _poly_field(data.get("g", "1"), n, p)
        report = check_grid_theorem(f, g, [tuple(pt) for pt in data["T"]], data["grid"])
        return (OK if report.failing is None else FAILED), report.to_json()
    P = _load_poly(a)
    if action == "multiplicity":
        _need(a, "point")
        cert = zero_multiplicity(P, CubePoint.from_string(a.point), a.cap)
        return OK, cert.to_json()
    _need(a, "S", "t")
    S = PointSet.load(a.S, n=P.n)
    if action == "verify-cover":
        report = verify_poly_cover(P, S, a.t, cfg.workers)
        return (OK if report.ok else FAILED), report.to_json()
    try:
        cert = check_degree_certificates(P, S, a.t, a.mode, cfg.workers)
    except BoundViolation as exc:
        return FAILED, {"error": str(exc), **exc.report.to_json()}
    return OK, cert.to_json()


def _poly_field(value, n: int, p: int | None) -> SparsePoly:
    if isinstance(value, dict):
        data = dict(value)
        if p is not None:
            data.setdefault("p", p)
        return SparsePoly.from_json(data)
    return parse_poly(str(value), n=n, p=p)


def cmd_sumset(cfg: RunConfig) -> tuple[int, dict]:
    a = cfg.args
    if a.erdos_heilbronn:
        _need(a, "p", "A")
        A = [int(x) for x in a.A.split(",") if x.strip()]
        report = erdos_heilbronn_check(a.p, A)
        return (OK if report.holds else FAILED), report.to_json()
    _need(a, "input")
    data = _read_json(a.input)
    if "g" not in data:
        sums = restricted_sumset(data["A"], [tuple(s) for s in data.get("S", [])], int(data["p"]))
        return OK, {"p": int(data["p"]), "sumset": sorted(sums), "size": len(sums)}
    inst = SumsetInstance.from_json(data)
    report = check_res_sum_theorem(inst)
    payload = {"instance": inst.to_json(), **report.to_json()}
    return (OK if report.holds is not False else FAILED), payload


def cmd_cw(cfg: RunConfig) -> tuple[int, dict]:
    data = _read_json(cfg.args.input)
    p = int(data["p"])
    T = [tuple(pt) for pt in data["T"]]
    n = int(data.get("n", len(T[0]) if T else 0))
    polys = [_poly_field(f, n, p) for f in data["polys"]]
    report = cw_generalized_search(polys, T, cfg.workers)
    return (OK if report.status == "found" else FAILED), report.to_json()


def cmd_nullsatz(cfg: RunConfig) -> tuple[int, dict]:
    data = _read_json(cfg.args.input)
    p = int(data["p"])
    sets = [tuple(s) for s in data["sets"]]
    f = _poly_field(data["f"], len(sets), p)
    degrees = data.get("degrees")
    if degrees is None:
        raise UsageError("nullsatz input needs a 'degrees' list t_1..t_n")
    grid = GridSpec(p, tuple(sets), tuple(degrees))
    try:
        pt = cn_witness(f, grid, cfg.workers)
    except HypothesisError as exc:
        return FAILED, {"status": "hypothesis fails", "detail": str(exc)}
    return OK, {"status": "found", "point": list(pt), "value": int(f.evaluate(pt))}


def cmd_search(cfg: RunConfig) -> tuple[int, dict]:
    a = cfg.args
    S = PointSet.load(a.S, n=a.n)
    if S.n != a.n:
        raise UsageError(f"--n {a.n} does not match the set dimension {S.n}")
    _check_range("t", a.t, 1, 3)
    ell = a.t - 1 if a.l is None else a.l
    _check_range("l", ell, 0, a.t - 1)
    B = a.n + 1 if a.coeff_bound is None else a.coeff_bound
    catalog = enumerate_traces(a.n, B)
    result = min_cover_search(catalog, S, a.t, ell, max_size=a.max_size, use_bound=not a.no_bound)
    payload = {"n": a.n, "t": a.t, "l": ell, "catalog_size": len(catalog), **result.to_json()}
    if result.family is not None:
        cfg.out.append(describe(result.family))
    return (OK if result.size is not None else FAILED), payload


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "complexity": cmd_complexity,
    "polynomial": cmd_polynomial,
    "sumset": cmd_sumset,
    "cw": cmd_cw,
    "nullsatz": cmd_nullsatz,
    "search": cmd_search,
}


# -- argument parsing ---------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--workers", type=int, default=1, help="worker processes for exhaustive scans")

    parser = argparse.ArgumentParser(prog="hypercover", description="Hyperplane and polynomial covers of the Boolean cube.")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build an explicit cover family")
    c.add_argument("kind", choices=sorted(cons.PROVENANCE))
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--t", type=int, default=1)
    c.add_argument("--l", type=int, help="tail size for tail-cover")
    c.add_argument("--j", type=int, help="level for level-plane")
    c.add_argument("--out", help="also write the family JSON to this file")
    c.add_argument("--S-out", dest="S_out", help="write the companion point set S to this file")

    v = sub.add_parser("verify", parents=[common], help="check a (t, l)-cover")
    v.add_argument("--family", required=True)
    v.add_argument("--S", required=True)
    v.add_argument("--t", type=int, required=True)
    v.add_argument("--l", type=int, help="default t - 1")
    v.add_argument("--profile", action="store_true", help="include the full multiplicity profile")

    x = sub.add_parser("complexity", parents=[common], help="index or algebraic complexity")
    mode = x.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--greedy", action="store_true")
    mode.add_argument("--algebraic", action="store_true")
    x.add_argument("--prime", type=int)
    x.add_argument("--S", required=True)

    p = sub.add_parser("polynomial", parents=[common], help="multiplicities, polynomial covers, certificates")
    p.add_argument("action", choices=("multiplicity", "verify-cover", "certificates", "grid"))
    p.add_argument("--poly", help="polynomial text, e.g. 'x1^2*x2 - 3*x1'")
    p.add_argument("--poly-file")
    p.add_argument("--family", help="use the product of a family's planes")
    p.add_argument("--point")
    p.add_argument("--cap", type=int, default=8)
    p.add_argument("--S")
    p.add_argument("--t", type=int)
    p.add_argument("--mode", choices=CERT_MODES, default="index")
    p.add_argument("--input", help="JSON instance for 'grid': {f, g, T, grid, p?}")

    s = sub.add_parser("sumset", parents=[common], help="restricted sumsets")
    s.add_argument("--input", help='JSON {"p", "A", "S", "g", "k"}; without g only the sumset is computed')
    s.add_argument("--erdos-heilbronn", action="store_true")
    s.add_argument("--p", type=int)
    s.add_argument("--A", help="comma-separated residues")

    w = sub.add_parser("cw", parents=[common], help="generalized Chevalley-Warning search")
    w.add_argument("--input", required=True, help='JSON {"p", "polys", "T"}')

    z = sub.add_parser("nullsatz", parents=[common], help="Combinatorial Nullstellensatz witness")
    z.add_argument("--input", required=True, help='JSON {"p", "f", "sets", "degrees"}')

    q = sub.add_parser("search", parents=[common], help="minimum cover within a trace catalog")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--S", required=True)
    q.add_argument("--t", type=int, default=1)
    q.add_argument("--l", type=int, help="default t - 1")
    q.add_argument("--coeff-bound", type=int, help="default n + 1")
    q.add_argument("--max-size", type=int)
    q.add_argument("--no-bound", action="store_true", help="start at size 0 instead of the proven bound")
    return parser


def _render_table(payload: dict, lines: list[str]) -> str:
    rows = []
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value) if len(json.dumps(value)) <= 72 else f"<{type(value).__name__}, {len(value)} items>"
        rows.append(f"{key:<16} {value}")
    return "\n".join(rows + ([""] + lines if lines else []))


def run(cfg: RunConfig) -> tuple[int, dict]:
    if cfg.workers < 1:
        raise UsageError(f"--workers must be positive, got {cfg.workers}")
    return COMMANDS[cfg.command](cfg)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(args.command, args, args.format, args.workers)
    try:
        code, payload = run(cfg)
    except (UsageError, ValueError, KeyError, TypeError, OSError) as exc:
        msg = str(exc) if not isinstance(exc, KeyError) else f"missing field {exc}"
        print(f"hypercover: error: {msg}".splitlines()[0], file=sys.stderr)
        return USAGE
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(_render_table(payload, cfg.out))
    return code


if __name__ == "__main__":
    sys.exit(main())
