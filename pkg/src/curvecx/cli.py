"""Command-line front end.

Every command prints one JSON document (sorted keys, compact separators)
to stdout or to ``--out``.  Usage errors exit with status 2, violated
invariants with status 1 and a JSON diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import coarse, complex as cx, covering, curves, farey as fy, qm, surface

DEFAULTS = {
    "seed": 0,
    "weight_cap": 2,
    "samples": 100,
    "R": None,
    "engine": "farey",
    "out": None,
    "dot": None,
    "sig": "0,5",
}


_NEGATIVE = re.compile(r"^-\d+(/\d+)?$")


class UsageError(Exception):
    pass


class InvariantError(Exception):
    def __init__(self, msg: str, detail: Any = None):
        super().__init__(msg)
        self.detail = detail


# ---------------------------------------------------------------- parsing helpers


def _sig(cfg) -> surface.SurfaceSig:
    try:
        return surface.parse_signature(str(cfg["sig"]))
    except (ValueError, surface.SurfaceError) as exc:
        raise UsageError(f"bad signature {cfg['sig']!r}: {exc}") from None


def _tri(cfg) -> surface.IdealTriangulation:
    try:
        return surface.standard_triangulation(_sig(cfg))
    except surface.SurfaceError as exc:
        raise UsageError(str(exc)) from None


def _curve(tri: surface.IdealTriangulation, text: str) -> curves.NormalCurve:
    """``"w0,w1,..."`` normal coordinates, or ``"p/q"`` on the once-punctured torus."""
    text = text.strip()
    try:
        if "/" in text or text in ("inf", "oo"):
            if (tri.genus, tri.num_punctures) != (1, 1):
                raise UsageError("slopes are only accepted on the once-punctured torus")
            s = fy.slope(text)
            return curves.torus_slope_curve(tri, s.p, s.q)
        return curves.NormalCurve(tri, tuple(int(x) for x in text.split(",")))
    except (ValueError, curves.CurveError, fy.FareyError) as exc:
        raise UsageError(f"bad curve {text!r}: {exc}") from None


def _multicurve(tri, text: str) -> curves.MultiCurve:
    """Components separated by ``;``, each optionally followed by ``*m``."""
    parts = []
    for chunk in text.split(";"):
        mult = 1
        if "*" in chunk:
            chunk, m = chunk.split("*")
            mult = int(m)
        parts.append((_curve(tri, chunk), mult))
    try:
        return curves.MultiCurve(tuple(parts))
    except curves.CurveError as exc:
        raise UsageError(str(exc)) from None


def _slope(text: str) -> fy.FareySlope:
    try:
        return fy.slope(text)
    except (ValueError, fy.FareyError) as exc:
        raise UsageError(f"bad slope {text!r}: {exc}") from None


def _matrix(text: str) -> fy.IntMatrix:
    try:
        return fy.IntMatrix.from_rows(json.loads(text))
    except (ValueError, TypeError, fy.FareyError) as exc:
        raise UsageError(f"bad matrix {text!r}: {exc}") from None


def _fraction(text) -> Fraction:
    try:
        r = Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational {text!r}: {exc}") from None
    if r <= 0:
        raise UsageError("R must be positive")
    return r


def _path_json(vertices) -> list:
    return [str(v) if isinstance(v, fy.FareySlope) else list(v.weights) for v in vertices]


def _farey_dot(path: Sequence[fy.FareySlope]) -> str:
    lines = ["graph farey {"]
    for i, v in enumerate(path):
        lines.append(f'  v{i} [label="{v}"];')
    for i in range(len(path) - 1):
        lines.append(f"  v{i} -- v{i + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _config_block(cfg, **extra) -> dict:
    out = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in cfg.items() if k not in ("out", "dot", "config")}
    out.update(extra)
    return out


# ---------------------------------------------------------------- commands


def cmd_surface(args, cfg):
    sig = _sig(cfg)
    if args.action == "classify":
        return {"signature": sig.to_json(), "class": surface.classify(sig).value}
    tri = _tri(cfg)
    return {"signature": tri.signature.to_json(), "triangulation": tri.to_json()}


def cmd_curve(args, cfg):
    tri = _tri(cfg)
    if args.action == "enumerate":
        found = curves.enumerate_curves(tri, cfg["weight_cap"])
        return {"weight_cap": cfg["weight_cap"], "count": len(found), "curves": [list(c.weights) for c in found]}
    if len(args.items) < 2:
        raise UsageError(f"curve {args.action} needs two curves")
    if args.action == "intersect":
        a, b = _multicurve(tri, args.items[0]), _multicurve(tri, args.items[1])
        return {"intersection": curves.intersection_number(a, b)}
    if args.action == "filling":
        a, b = _multicurve(tri, args.items[0]), _multicurve(tri, args.items[1])
        return {"filling": curves.is_filling(a, b)}
    c, d = _curve(tri, args.items[0]), _curve(tri, args.items[1])
    img = curves.twist_curve(c, d, args.power)
    return {"weights": list(img.weights)}


def cmd_cc(args, cfg):
    tri = _tri(cfg)
    if args.action == "delta":
        u = cx.ComplexUniverse(tri, cfg["weight_cap"])
        rep = cx.probe_delta(u, cfg["samples"], cfg["seed"]).to_json()
        rep["config"] = _config_block(cfg)
        return rep
    if len(args.items) < 2:
        raise UsageError(f"cc {args.action} needs two curves")
    a, b = _curve(tri, args.items[0]), _curve(tri, args.items[1])
    if args.action == "distance":
        if args.strategy == "bfs":
            u = cx.ComplexUniverse(tri, cfg["weight_cap"], (a, b))
            try:
                return {"distance": u.distance(a, b)}
            except cx.Unreachable as exc:
                raise InvariantError(str(exc)) from None
        path = cx.surgery_path(a, b, args.strategy)
        return {"distance_upper_bound": path.length, "strategy": args.strategy}
    path = cx.surgery_path(a, b, args.strategy)
    if cfg["dot"]:
        with open(cfg["dot"], "w") as fh:
            fh.write(path.to_dot())
    out = path.to_json()
    out["intersection"] = curves.intersection_number(a, b)
    return out


def cmd_farey(args, cfg):
    if args.action == "qm":
        args.action = "eval"
        cfg["engine"] = "farey"
        return cmd_qm(args, cfg)
    if args.action == "act":
        if len(args.items) != 2:
            raise UsageError("farey act needs a matrix and a slope")
        return {"image": str(fy.act(_matrix(args.items[0]), _slope(args.items[1])))}
    if len(args.items) != 2:
        raise UsageError(f"farey {args.action} needs two slopes")
    u, v = _slope(args.items[0]), _slope(args.items[1])
    if args.action == "distance":
        return {"distance": fy.farey_distance(u, v)}
    path = fy.farey_path(u, v)
    if cfg["dot"]:
        with open(cfg["dot"], "w") as fh:
            fh.write(_farey_dot(path))
    return {"length": len(path) - 1, "path": [str(x) for x in path]}


def _coarse_pair(args, tri):
    if len(args.items) < 2:
        raise UsageError("need curve systems a and b")
    a, b = _multicurve(tri, args.items[0]), _multicurve(tri, args.items[1])
    try:
        return coarse.FillingPair(a, b)
    except coarse.NonFillingPair as exc:
        raise InvariantError(str(exc)) from None


def _R(cfg, tri):
    if cfg["R"] in (None, "calibrate"):
        R, _ = coarse.calibrate_R(tri, cfg["samples"], cfg["weight_cap"], cfg["seed"])
        return R
    return _fraction(cfg["R"])


def cmd_coarse(args, cfg):
    tri = _tri(cfg)
    cap = cfg["weight_cap"]
    if args.action == "calibrate-r":
        R, rep = coarse.calibrate_R(tri, cfg["samples"], cap, cfg["seed"])
        rep["config"] = _config_block(cfg)
        return rep
    if args.action == "axioms":
        R = _R(cfg, tri)
        lab = coarse.CoarseLab(tri, cap, R)
        reps = coarse.check_bowditch_axioms(lab, cfg["samples"], cfg["seed"])
        return {"axioms": [r.to_json() for r in reps], "config": _config_block(cfg, R=str(R))}
    if args.action == "length":
        fp = _coarse_pair(args, tri)
        if len(args.items) < 3:
            raise UsageError("coarse length needs a, b and c")
        c = _multicurve(tri, args.items[2])
        wp = coarse.WeightedPair(fp, args.q, args.p)
        return {"length": coarse.length(c, wp)}
    if args.action == "center":
        if len(args.items) < 3:
            raise UsageError("coarse center needs a, b and c")
        a, b, c = (_multicurve(tri, x) for x in args.items[:3])
        R = _R(cfg, tri)
        try:
            return coarse.center(a, b, c, R, cap).to_json()
        except coarse.NonFillingPair as exc:
            raise InvariantError(str(exc)) from None
    fp = _coarse_pair(args, tri)
    R = _R(cfg, tri)
    if args.action == "mid":
        return coarse.mid_prime(coarse.WeightedPair(fp, args.q, args.p), R, cap).to_json()
    slopes = [_fraction(s) for s in (args.slopes or "1/4,1/2,1,2,4").split(",")]
    geo = coarse.coarse_geodesic(fp, R, slopes, cap)
    return {"R": str(R), "cap": cap, "lambda": [{"slope": str(t), "set": s.to_json()} for t, s in geo]}


def _qm_spec(args, cfg) -> qm.QmSpec:
    if cfg["engine"] != "farey":
        raise UsageError("qm on the normal engine is available from the library (CurveEngine); the CLI drives the Farey engine")
    if args.axis:
        w = qm.axis_path(_matrix(args.axis), args.length)
    elif args.w:
        w = [_slope(x) for x in args.w.split(",")]
    else:
        raise UsageError("give --w or --axis")
    W = args.W if args.W is not None else qm.default_W(len(w) - 1)
    x0 = _slope(args.x0) if args.x0 else w[0]
    try:
        return qm.QmSpec(tuple(w), W, x0, qm.FareyEngine(args.fringe))
    except qm.QmError as exc:
        raise UsageError(str(exc)) from None


def cmd_qm(args, cfg):
    spec = _qm_spec(args, cfg)
    if args.action == "eval":
        if not args.g:
            raise UsageError("qm eval needs --g")
        try:
            return {"h": qm.h_w(_matrix(args.g), spec, args.search_cap)}
        except qm.SearchCapExceeded as exc:
            raise InvariantError(str(exc), {"lower_bound": exc.lower_bound, "direction": exc.direction}) from None
    if args.action == "defect":
        pairs = [(qm.evaluate_word(a), qm.evaluate_word(b))
                 for a, b in qm.sample_word_pairs(cfg["samples"], args.max_len, cfg["seed"])]
        rep = qm.defect_scan(spec, pairs, args.search_cap, cfg["seed"]).to_json()
        rep["spec"] = spec.to_json()
        rep["config"] = _config_block(cfg)
        return rep
    x = _slope(args.x) if args.x else fy.INF
    k = max(1, cfg["samples"] // 2)
    elems = qm.farey_stabilizer(x, [n for n in range(-k, k + 1) if n])
    try:
        rep = qm.stabilizer_probe(spec, x, elems, args.search_cap)
    except qm.BoundViolation as exc:
        raise InvariantError(str(exc), exc.report) from None
    rep["spec"] = spec.to_json()
    rep["config"] = _config_block(cfg)
    return rep


def _cover(args) -> covering.CoveringSpec:
    try:
        return covering.torus_cover(args.degree, args.edge)
    except covering.CoverError as exc:
        raise UsageError(str(exc)) from None


def cmd_cover(args, cfg):
    p = _cover(args)
    base = p.base
    if args.action == "pullback":
        if not args.items:
            raise UsageError("cover pullback needs a curve")
        m = covering.pullback(p, _multicurve(base, args.items[0]))
        return {"cover": p.signature.to_json(), "components": m.to_json()}
    if args.action == "scaling":
        try:
            if len(args.items) >= 3:
                a, b, c = (_multicurve(base, x) for x in args.items[:3])
                rep = covering.scaling_check(p, a, b, c)
                return {"length_ratio": rep["length_ratio"], "intersection_ratio": rep["intersection_ratio"]}
            found = curves.enumerate_curves(base, cfg["weight_cap"])
            checked = 0
            for a in found:
                for b in found:
                    if a == b or not curves.is_filling(a, b):
                        continue
                    for c in found:
                        covering.scaling_check(p, a, b, c)
                        checked += 1
        except covering.IdentityViolation as exc:
            raise InvariantError(str(exc), exc.report) from None
        return {"length_ratio": p.degree, "intersection_ratio": p.degree, "checked": checked,
                "config": _config_block(cfg, degree=p.degree)}
    rep = covering.quasiconvexity_probe(p, cfg["samples"], cfg["weight_cap"], cfg["seed"])
    rep["config"] = _config_block(cfg, degree=p.degree)
    return rep


# ---------------------------------------------------------------- driver


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int)
    common.add_argument("--weight-cap", dest="weight_cap", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--R")
    common.add_argument("--engine", choices=["farey", "normal"])
    common.add_argument("--out")
    common.add_argument("--dot")
    common.add_argument("--sig")
    common.add_argument("--config", help="JSON file whose keys mirror the flags")

    parser = argparse.ArgumentParser(prog="curvecx", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="group", required=True)

    def group(name, actions, fn):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("action", choices=actions)
        p.add_argument("items", nargs="*")
        p.set_defaults(func=fn)
        return p

    group("surface", ["classify", "triangulate"], cmd_surface)
    p = group("curve", ["intersect", "twist", "enumerate", "filling"], cmd_curve)
    p.add_argument("--power", type=int, default=1)
    p = group("cc", ["distance", "path", "delta"], cmd_cc)
    p.add_argument("--strategy", choices=["basic", "log", "bfs"], default="basic")
    qm_flags = argparse.ArgumentParser(add_help=False)
    qm_flags.add_argument("--w", help="comma-separated slopes")
    qm_flags.add_argument("--axis", help="matrix whose axis supplies w")
    qm_flags.add_argument("--length", type=int, default=4)
    qm_flags.add_argument("--W", type=int)
    qm_flags.add_argument("--x0")
    qm_flags.add_argument("--g", help="matrix [[a,b],[c,d]]")
    qm_flags.add_argument("--x", help="vertex for stabilizer probes")
    qm_flags.add_argument("--max-len", dest="max_len", type=int, default=10)
    qm_flags.add_argument("--fringe", type=int, default=3)
    qm_flags.add_argument("--search-cap", dest="search_cap", type=int, default=10_000)
    p = sub.add_parser("farey", parents=[common, qm_flags])
    p.add_argument("action", choices=["distance", "path", "act", "qm"])
    p.add_argument("items", nargs="*")
    p.set_defaults(func=cmd_farey)
    p = group("coarse", ["length", "mid", "lambda", "center", "calibrate-r", "axioms"], cmd_coarse)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--slopes")
    p = sub.add_parser("qm", parents=[common, qm_flags])
    p.add_argument("action", choices=["eval", "defect", "stabilizer"])
    p.add_argument("items", nargs="*")
    p.set_defaults(func=cmd_qm)
    p = group("cover", ["pullback", "scaling", "quasiconvex"], cmd_cover)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--edge", type=int, default=0)
    return parser


def resolve_config(args) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(data)
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        # positionals after flags (and negative slopes such as -1/2) land here
        bad = [x for x in extra if x.startswith("-") and not _NEGATIVE.match(x)]
        if bad:
            parser.error(f"unrecognized arguments: {' '.join(bad)}")
        args.items = list(getattr(args, "items", [])) + extra
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        result = args.func(args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (InvariantError, AssertionError, curves.CurveError, cx.Unreachable) as exc:
        diag = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, InvariantError) and exc.detail is not None:
            diag["detail"] = exc.detail
        print(dumps(diag), file=sys.stderr)
        return 1
    text = dumps(result)
    if cfg["out"]:
        with open(cfg["out"], "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
