"""Command-line interface: ``gtbend {solve,certify,render,complex,control}``.

Exit codes: 0 pass, 1 fail, 2 inconclusive, 64 usage or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .config import DEFAULT_SAMPLING, DEFAULT_TOLERANCES
from .convexity import (
    CertifyConfig,
    certify,
    check_adjacent_union_convex,
    check_disjoint_interiors,
    check_global_convexity,
    check_local_picture,
    check_strict_convexity_sampling,
    family_from_truncation,
    polygonal_control,
    torus_control,
)
from .gtmodel import (
    ModelError,
    TruncatedTessellation,
    build_model,
    build_nerve,
    build_unbent_control,
    corrupt,
    generate_truncation,
    suspend_model,
    vertex_closure_check,
)
from .lambert import DomainError, solve_lambert, solve_product, verify_product
from .nerve import (
    CellComplex2,
    ComplexError,
    ComplexParseError,
    bigon_census,
    check_small_cancellation,
    classify_bigons,
    enumerate_geodesics,
    find_corridors,
    geo_hull,
)
from .render import FigureOptions, render_svg
from .verdict import FAIL, INCONCLUSIVE, PASS, Verdict, combine

EXIT = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}
USAGE = 64


class UsageError(Exception):
    def __init__(self, message: str, line: int | None = None) -> None:
        super().__init__(message)
        self.line = line


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


# -- run configuration ----------------------------------------------------------------------

DEFAULTS: dict[str, dict[str, Any]] = {
    "solve": {"tau": None, "tolerance": DEFAULT_TOLERANCES.composition, "n": 2},
    "certify": {"m": None, "depth": 4, "seed": 1, "tau": None, "n": 2, "out": None, "corrupt": [],
                "trials": DEFAULT_SAMPLING.global_trials, "adjacency_trials": DEFAULT_SAMPLING.adjacency_trials,
                "bridge_trials": DEFAULT_SAMPLING.adjacency_trials, "directions": DEFAULT_SAMPLING.frontier_directions,
                "tol": {}, "save_truncation": None},
    "render": {"m": 8, "depth": 3, "tau": None, "out": None, "corrupt": [], "unbent": False, "chart": None,
               "color_by_depth": False, "clip_factor": 1.2, "size": 640, "truncation": None},
    "complex": {"fixture": None, "m": None, "depth": 4, "k": 14, "pair": None, "cap": DEFAULT_SAMPLING.geodesic_cap},
    "control": {"kind": "unbent", "m": 8, "depth": 3, "seed": 1, "trials": 2000, "layers": 3, "sides": 4},
}


@dataclass
class RunConfig:
    command: str
    values: dict[str, Any] = field(default_factory=dict)

    def __getattr__(self, key: str) -> Any:
        try:
            return self.__dict__["values"][key]
        except KeyError as exc:
            raise AttributeError(key) from exc

    @classmethod
    def build(cls, command: str, flags: dict[str, Any], file_values: dict[str, Any] | None) -> "RunConfig":
        allowed = DEFAULTS[command]
        values = dict(allowed)
        if file_values:
            unknown = sorted(set(file_values) - set(allowed) - {"command"})
            if unknown:
                raise UsageError(f"unknown config keys: {', '.join(unknown)}")
            if file_values.get("command", command) != command:
                raise UsageError(f"config file is for command {file_values['command']!r}")
            values.update({k: v for k, v in file_values.items() if k != "command"})
        for k, v in flags.items():
            if k in allowed and v is not None and v != []:
                values[k] = v
        cfg = cls(command, values)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        v = self.values
        for key in ("depth", "trials", "adjacency_trials", "bridge_trials", "directions", "k", "cap", "layers"):
            if key in v and v[key] is not None and (not isinstance(v[key], int) or v[key] < 0):
                raise UsageError(f"{key} must be a nonnegative integer")
        if v.get("k") == 0:
            raise UsageError("k must be positive")
        if "directions" in v and v["directions"] < 8:
            raise UsageError("directions must be at least 8")
        if "n" in v and (not isinstance(v["n"], int) or v["n"] < 2):
            raise UsageError("n must be an integer >= 2")
        if "clip_factor" in v and not v["clip_factor"] > 0:
            raise UsageError("clip_factor must be positive")
        if "sides" in v and v["sides"] < 3:
            raise UsageError("sides must be at least 3")
        if isinstance(v.get("tol"), dict):
            try:
                DEFAULT_TOLERANCES.updated(**v["tol"])
            except KeyError as exc:
                raise UsageError(str(exc.args[0])) from exc


def _load_config(path: str | None) -> dict[str, Any] | None:
    if path is None:
        return None
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config is not valid JSON: {exc.msg}", exc.lineno) from exc
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    return data


def _parse_pair(text: str) -> tuple[float, float]:
    try:
        a, b = (float(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected two comma-separated numbers, got {text!r}") from exc
    return a, b


def _parse_int_pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected two comma-separated integers, got {text!r}") from exc
    return a, b


def _parse_tol(text: str) -> tuple[str, float]:
    key, sep, val = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        return key.strip(), float(val)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"tolerance {key!r} needs a number") from exc


# -- parser -----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gtbend", description="Bent Gromov-Thurston cross-sections: solvers, certificates, figures.")
    p.add_argument("--version", action="version", version=f"gtbend {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--json", action="store_true", help="print a machine-readable JSON summary")
        sp.add_argument("--config", metavar="FILE", help="JSON file of option values; flags override it")

    s = sub.add_parser("solve", help="bending parameters for a target rotation tau")
    s.add_argument("--tau", type=float, help="rotation angle in (-pi/4, 0]")
    s.add_argument("--tolerance", type=float, help="residual threshold for exit code 0 (default 1e-10)")
    s.add_argument("--n", type=int, help="projective dimension for the residual (default 2)")
    common(s)

    def model_flags(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--m", type=int, help="number of unbent wedges; m >= 8 and divisible by 4")
        sp.add_argument("--depth", type=int, help="gallery depth of the truncation")
        sp.add_argument("--tau", type=float, help="override the product angle (calibration experiments)")
        sp.add_argument("--corrupt", action="append", metavar="SPEC",
                        help="perturb the bending vector: t1+=0.01, t1*=3, t2=-0.5, neg23 (repeatable)")

    c = sub.add_parser("certify", help="run all convexity checks and write a certificate")
    model_flags(c)
    c.add_argument("--n", type=int, help="suspension dimension (default 2)")
    c.add_argument("--seed", type=int, help="sampling seed (default 1)")
    c.add_argument("--out", metavar="FILE", help="certificate path (default: stdout unless --json)")
    c.add_argument("--trials", type=int, help="global convexity trials (default 10000)")
    c.add_argument("--adjacency-trials", type=int, help="trials per adjacent pair (default 1000)")
    c.add_argument("--bridge-trials", type=int, help="gallery-geodesy segments (default 1000)")
    c.add_argument("--directions", type=int, help="frontier directions for the strict check (default 2048)")
    c.add_argument("--tol", action="append", type=_parse_tol, metavar="NAME=VALUE",
                   help="override a tolerance, e.g. composition=1e-9 (repeatable)")
    c.add_argument("--save-truncation", metavar="FILE", help="also write the truncation as JSON")
    common(c)

    r = sub.add_parser("render", help="SVG figure of the developed fan")
    model_flags(r)
    r.add_argument("--unbent", action="store_true", default=None, help="draw the unbent control instead")
    r.add_argument("--truncation", metavar="FILE", help="draw a truncation saved by certify")
    r.add_argument("--out", metavar="FILE", help="SVG path (required)")
    r.add_argument("--chart", type=_parse_pair, metavar="X,Y", help="Klein point to move to the chart origin")
    r.add_argument("--color-by-depth", action="store_true", default=None, help="colour cells by word length")
    r.add_argument("--clip-factor", type=float, help="clip radius over bounding radius (default 1.2)")
    r.add_argument("--size", type=int, help="image size in pixels (default 640)")
    common(r)

    x = sub.add_parser("complex", help="small cancellation and bigon report for a 2-complex")
    x.add_argument("--fixture", metavar="FILE", help="complex in the text fixture format")
    x.add_argument("--m", type=int, help="use the nerve of the bent model instead")
    x.add_argument("--depth", type=int, help="truncation depth for --m (default 4)")
    x.add_argument("--k", type=int, help="small cancellation parameter C'(1/k) (default 14)")
    x.add_argument("--pair", type=_parse_int_pair, metavar="A,B",
                   help="vertex indices for geodesics (default: an antipodal pair of face 0)")
    x.add_argument("--cap", type=int, help="geodesic enumeration cap")
    common(x)

    k = sub.add_parser("control", help="baseline runs: unbent fan, torus counterexample, polygon")
    k.add_argument("--kind", choices=["unbent", "torus", "polygon"], help="which control (default unbent)")
    k.add_argument("--m", type=int, help="wedges for the unbent control, m >= 2 (default 8)")
    k.add_argument("--depth", type=int, help="depth for the unbent control (default 3)")
    k.add_argument("--seed", type=int, help="sampling seed (default 1)")
    k.add_argument("--trials", type=int, help="global convexity trials (default 2000)")
    k.add_argument("--layers", type=int, help="dilation layers of the torus control (default 3)")
    k.add_argument("--sides", type=int, help="sides of the polygonal control (default 4)")
    common(k)
    return p


# -- commands ---------------------------------------------------------------------------------


def _emit(args: argparse.Namespace, payload: dict[str, Any], text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _model(cfg: RunConfig):
    if cfg.m is None:
        raise UsageError("--m is required")
    try:
        model = build_model(cfg.m, tau=cfg.values.get("tau"))
    except (ModelError, DomainError) as exc:
        raise UsageError(str(exc)) from exc
    for spec in cfg.values.get("corrupt") or []:
        try:
            model = corrupt(model, spec)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    return model


def cmd_solve(cfg: RunConfig, args: argparse.Namespace) -> int:
    if cfg.tau is None:
        raise UsageError("--tau is required")
    try:
        bp = solve_product(cfg.tau)
        sol = solve_lambert(2.0 * cfg.tau)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    res = verify_product(bp, cfg.tau, n=cfg.n)
    status = PASS if res < cfg.tolerance else FAIL
    t = [float(x) for x in bp.t]
    payload = {"command": "solve", "tau": cfg.tau, "t": t, "ell1": sol.ell1, "ell2": sol.ell2,
               "residual": res, "tolerance": cfg.tolerance, "verdict": status}
    text = (f"tau      = {cfg.tau:.12g}\n"
            f"t        = ({', '.join(f'{x:.10f}' for x in t)})\n"
            f"residual = {res:.3e}  ({status} at tolerance {cfg.tolerance:g})")
    _emit(args, payload, text)
    return EXIT[status]


def cmd_certify(cfg: RunConfig, args: argparse.Namespace) -> int:
    model = _model(cfg)
    if cfg.n != 2:
        model = suspend_model(model, cfg.n)
    tol = DEFAULT_TOLERANCES.updated(**cfg.tol) if cfg.tol else DEFAULT_TOLERANCES
    conf = CertifyConfig(seed=cfg.seed, trials=cfg.trials, adjacency_trials=cfg.adjacency_trials,
                         bridge_trials=cfg.bridge_trials, directions=cfg.directions, tolerances=tol)
    cert = certify(model, cfg.depth, conf)
    text = cert.to_json()
    if cfg.out:
        _write(cfg.out, text)
    if cfg.save_truncation:
        _write(cfg.save_truncation, generate_truncation(model, cfg.depth, close_stars=True).to_json())
    if args.json:
        print(json.dumps({"command": "certify", "verdict": cert.verdict, "failing": cert.failing,
                          "out": cfg.out, "certificate": json.loads(text)}, sort_keys=True, indent=2))
    elif cfg.out:
        lines = [f"{c.name:24s} {c.status}" for c in cert.checks]
        lines.append(f"{'overall':24s} {cert.verdict}   -> {cfg.out}")
        print("\n".join(lines))
    else:
        sys.stdout.write(text)
    return EXIT[cert.verdict]


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def cmd_render(cfg: RunConfig, args: argparse.Namespace) -> int:
    if not cfg.out:
        raise UsageError("--out is required")
    if cfg.truncation:
        try:
            tess = TruncatedTessellation.from_dict(json.loads(Path(cfg.truncation).read_text()))
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot load truncation: {exc}") from exc
    elif cfg.unbent:
        if cfg.m is None or cfg.m < 2:
            raise UsageError("--m must be at least 2")
        tess = build_unbent_control(cfg.m, cfg.depth)
    else:
        tess = generate_truncation(_model(cfg), cfg.depth, close_stars=True)
    try:
        opts = FigureOptions(chart=tuple(cfg.chart) if cfg.chart else None, color_by_depth=bool(cfg.color_by_depth),
                             clip_factor=cfg.clip_factor, size=cfg.size)
        svg = render_svg(tess, opts)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _write(cfg.out, svg)
    digest = hashlib.sha256(svg.encode()).hexdigest()
    payload = {"command": "render", "out": cfg.out, "sha256": digest, "cells": len(tess.cells),
               "walls": len(tess.adjacency), "adjacency": [[a.lower, a.upper] for a in tess.adjacency]}
    _emit(args, payload, f"wrote {cfg.out}: {len(tess.cells)} cells, sha256 {digest}")
    return 0


def _complex_source(cfg: RunConfig) -> tuple[CellComplex2, str]:
    if cfg.fixture and cfg.m is not None:
        raise UsageError("give either --fixture or --m, not both")
    if cfg.fixture:
        try:
            return CellComplex2.load(cfg.fixture, min_half_perimeter=2), cfg.fixture
        except ComplexParseError as exc:
            raise UsageError(f"{cfg.fixture}: {exc}", exc.lineno) from exc
        except (ComplexError, OSError) as exc:
            raise UsageError(f"{cfg.fixture}: {exc}") from exc
    if cfg.m is None:
        raise UsageError("--fixture or --m is required")
    model = _model(cfg)
    return build_nerve(generate_truncation(model, cfg.depth, close_stars=True)), f"nerve m={cfg.m} depth={cfg.depth}"


def cmd_complex(cfg: RunConfig, args: argparse.Namespace) -> int:
    Z, source = _complex_source(cfg)
    rep = check_small_cancellation(Z, cfg.k)
    pair = cfg.pair
    if pair is None and Z.faces:
        fv = Z.face_vertices[0]
        pair = (fv[0], fv[len(fv) // 2])
    elif pair is None and Z.n_vertices:
        d = Z.distances_from(0)
        pair = (0, int(np.argmax(d)))
    geos = hull = census = dist = None
    if pair is not None:
        a, b = pair
        if not (0 <= a < Z.n_vertices and 0 <= b < Z.n_vertices):
            raise UsageError(f"pair {pair} out of range")
        try:
            paths = enumerate_geodesics(Z, a, b, cfg.cap)
            h = geo_hull(Z, a, b)
        except ComplexError as exc:
            raise UsageError(str(exc)) from exc
        geos, hull, dist = len(paths), h.diameter, h.distance
        census = bigon_census(classify_bigons(Z, a, b, cfg.cap))
    witness = None
    if rep.witness is not None:
        w = rep.witness
        witness = {"faces": list(w.faces), "edges": list(getattr(w, "edges", ()))} if hasattr(w, "edges") \
            else {"vertex": w.vertex, "faces": list(w.faces), "edge_pair": list(w.edge_pair)}
    status = PASS if rep.ok and not (census or {}).get("undecomposable") else FAIL
    payload = {"command": "complex", "source": source, "vertices": Z.n_vertices, "edges": len(Z.edges),
               "faces": len(Z.faces), "k": cfg.k, "small_cancellation": rep.ok,
               "pieces": {"count": len(rep.pieces), "max_length": rep.max_piece},
               "link_bigons": len(rep.link_bigons), "witness": witness,
               "pair": list(pair) if pair is not None else None, "distance": dist, "geodesics": geos,
               "hull_diameter": hull, "corridors": len(find_corridors(Z)), "bigons": census or {}, "verdict": status}
    sc_label = f"C'(1/{cfg.k})"
    text = "\n".join([
        f"complex          {source}",
        f"cells            V={Z.n_vertices} E={len(Z.edges)} F={len(Z.faces)}",
        f"pieces           {len(rep.pieces)} (max length {rep.max_piece})",
        f"{sc_label:17s}{'pass' if rep.ok else 'fail'}" + (f"  witness {witness}" if witness else ""),
        f"link bigons      {len(rep.link_bigons)}",
        f"geodesics        {geos} between {pair} (distance {dist}, hull diameter {hull})",
        f"bigon census     {census}",
        f"verdict          {status}",
    ])
    _emit(args, payload, text)
    return EXIT[status]


def cmd_control(cfg: RunConfig, args: argparse.Namespace) -> int:
    inside = None
    if cfg.kind == "unbent":
        if cfg.m < 2:
            raise UsageError("--m must be at least 2 for the unbent control")
        tess = build_unbent_control(cfg.m, cfg.depth)
        fam = family_from_truncation(tess)
        res = vertex_closure_check(tess)
        checks = [
            Verdict("vertex_closure", PASS if res < DEFAULT_TOLERANCES.single_op else FAIL, residual=res),
            check_disjoint_interiors(fam, seed=cfg.seed),
            check_adjacent_union_convex(fam, trials=200, seed=cfg.seed),
            check_local_picture(tess, 0),
            check_global_convexity(fam, trials=cfg.trials, seed=cfg.seed),
            check_strict_convexity_sampling(fam),
        ]
        pts = np.vstack(fam.outlines)
        inside = bool(np.all(np.linalg.norm(pts, axis=1) <= 1 + 1e-12))
        expected = PASS
        m = cfg.m
    elif cfg.kind == "torus":
        checks = [check_global_convexity(torus_control(cfg.layers), trials=cfg.trials, seed=cfg.seed)]
        expected, m = FAIL, None
    else:
        checks = [check_strict_convexity_sampling(polygonal_control(cfg.sides))]
        expected, m = FAIL, None
    status = combine([c.status for c in checks])
    payload = {"command": "control", "kind": cfg.kind, "m": m, "checks": [c.to_dict() for c in checks],
               "verdict": status, "expected": expected, "inside_unit_disk": inside}
    lines = [f"{c.name:24s} {c.status}" for c in checks]
    lines.append(f"{'overall':24s} {status} (designed outcome: {expected})")
    if inside is not None:
        lines.append(f"{'inside unit disk':24s} {inside}")
    _emit(args, payload, "\n".join(lines))
    return EXIT[status]


COMMANDS = {"solve": cmd_solve, "certify": cmd_certify, "render": cmd_render, "complex": cmd_complex,
            "control": cmd_control}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse errors, --help and --version
        return exc.code if isinstance(exc.code, int) else USAGE
    flags = {k: v for k, v in vars(args).items() if k not in {"command", "json", "config"}}
    if flags.get("tol"):
        flags["tol"] = dict(flags["tol"])
    try:
        cfg = RunConfig.build(args.command, flags, _load_config(args.config))
        return COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        if args.json:
            print(json.dumps({"error": str(exc), "exit_code": USAGE, "line": exc.line}, sort_keys=True))
        print(f"gtbend {args.command}: error: {exc}", file=sys.stderr)
        return USAGE


__all__ = ["RunConfig", "UsageError", "build_parser", "main"]
