"""Command line front end.

Exit codes: 0 success, 1 failed assertion, 2 usage or parse error,
3 resource cap hit.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional

from . import semigroup as sg
from .completion import CosetCapExceeded, abelianization, group_completion
from .constructions import MinimalIdealNotRectangular
from .expr import ParseError, parse
from .homology import DEFAULT_COLUMN_CAP, DegreeTooLarge, bar_complex, homology
from .theorems import (
    InfeasibleDegree,
    NotRegular,
    check_moore,
    check_regular_vanishing,
    check_suspension_shift,
    check_wedge_additivity,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
CAP_ENV = "SEMIGROUP_HOMOLOGY_COLUMN_CAP"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    input: str
    qmax: int = 3
    normalized: bool = True
    column_cap: int = DEFAULT_COLUMN_CAP
    output_format: str = "text"
    dump_boundaries: Optional[str] = None

    def __post_init__(self):
        if self.qmax < 0:
            raise UsageError("qmax must be >= 0")
        if self.column_cap < 1:
            raise UsageError("column cap must be >= 1")


def load_input(spec: str) -> sg.FiniteSemigroup:
    """A table file if ``spec`` names an existing file, else an expression."""
    if os.path.isfile(spec):
        return sg.load(spec)
    return parse(spec)


def emit(doc: dict, fmt: str, lines) -> None:
    if fmt == "json":
        sys.stdout.write(dumps(doc))
    else:
        for line in lines:
            print(line)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _flag(b: bool) -> str:
    return "true" if b else "false"


def cmd_analyze(cfg: RunConfig) -> int:
    S = load_input(cfg.input)
    K = sg.minimal_ideal(S)
    series = sg.principal_series(S)
    is_group = S.identity is not None and len(K) == S.order
    doc = {
        "input": cfg.input,
        "order": S.order,
        "identity": S.identity,
        "zero": S.zero,
        "idempotents": len(sg.idempotents(S)),
        "band": sg.is_band(S),
        "group": is_group,
        "minimal_ideal_size": len(K),
        "minimal_ideal_rectangular": sg.is_rectangular_band(S, K),
        "regular": sg.is_regular(S),
        "aperiodic": sg.is_aperiodic(S),
        "principal_series_length": len(series),
        "principal_series_certified": series.certified,
    }
    lines = [
        f"input: {cfg.input}",
        f"order: {S.order}",
        f"identity: {S.name(S.identity) if S.identity is not None else 'none'}",
        f"zero: {S.name(S.zero) if S.zero is not None else 'none'}",
        f"idempotents: {doc['idempotents']}",
        f"band: {_flag(doc['band'])}",
        f"group: {_flag(is_group)}",
        f"minimal ideal: size {len(K)}, rectangular {_flag(doc['minimal_ideal_rectangular'])}",
        f"regular: {_flag(doc['regular'])}",
        f"aperiodic: {_flag(doc['aperiodic'])}",
        f"principal series length: {len(series)}" + ("" if series.certified else " (uncertified)"),
    ]
    emit(doc, cfg.output_format, lines)
    return EXIT_OK


def cmd_homology(cfg: RunConfig) -> int:
    S = load_input(cfg.input)
    adjoined = False
    if cfg.normalized and S.identity is None:
        S = sg.adjoin_identity(S)
        adjoined = True
    text = cfg.output_format == "text"
    t0 = time.perf_counter()
    C = bar_complex(S, cfg.qmax, normalized=cfg.normalized, column_cap=cfg.column_cap)
    build_time = time.perf_counter() - t0
    if text:
        print(f"input: {cfg.input} (order {S.order}{', identity adjoined' if adjoined else ''})")
        print(f"bar complex built in {build_time:.3f}s, ranks {C.dims}")
    if cfg.dump_boundaries:
        os.makedirs(cfg.dump_boundaries, exist_ok=True)
        for q in range(1, C.qmax + 1):
            with open(os.path.join(cfg.dump_boundaries, f"d{q}.txt"), "w") as fh:
                fh.write(C.boundary(q).dumps())
    degrees = []
    for q in range(cfg.qmax):
        d = C.boundary(q + 1)
        if text:
            print(f"d_{q + 1}: {d.nrows} x {d.ncols}, {d.nnz} nonzeros", flush=True)
        t = time.perf_counter()
        H = homology(C, q)
        dt = time.perf_counter() - t
        degrees.append({"degree": q, "group": str(H), "free_rank": H.free_rank,
                        "torsion": list(H.torsion), "seconds": round(dt, 6)})
        if text:
            print(f"H_{q} = {H}    ({dt:.3f}s)")
    profile = "(" + ", ".join(d["group"] for d in degrees) + ")"
    if text:
        print(f"H = {profile}")
    else:
        emit({"input": cfg.input, "order": S.order, "identity_adjoined": adjoined,
              "normalized": cfg.normalized, "ranks": C.dims, "homology": degrees,
              "profile": profile, "build_seconds": round(build_time, 6)}, "json", [])
    return EXIT_OK


def cmd_completion(cfg: RunConfig, max_cosets: Optional[int] = None) -> int:
    S = load_input(cfg.input)
    t0 = time.perf_counter()
    G = group_completion(S, max_cosets)
    ab = abelianization(G)
    dt = time.perf_counter() - t0
    images = {S.name(s): G.generator_images[s] for s in range(S.order)}
    doc = {"input": cfg.input, "order": G.order, "generator_images": images,
           "abelianization": str(ab), "simply_connected": G.order == 1, "seconds": round(dt, 6)}
    lines = [f"input: {cfg.input}", f"group order: {G.order}", f"abelianization: {ab}",
             "generator images: " + ", ".join(f"{k}->{v}" for k, v in images.items()),
             f"simply_connected: {_flag(G.order == 1)}", f"time: {dt:.3f}s"]
    emit(doc, cfg.output_format, lines)
    return EXIT_OK


def _int_range(text: str) -> list:
    """``"2..6"`` -> [2, 3, 4, 5, 6]; a bare integer is a one-element range."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}, expected LO..HI") from exc
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def cmd_verify(args, fmt: str, column_cap: int) -> int:
    suite = args.suite
    reports = []
    if suite == "moore":
        ns = _int_range(args.n)
        if ns[0] < 2:
            raise UsageError("moore suite needs n >= 2")
        reports = [check_moore(n) for n in ns]
    elif suite == "suspension":
        _need(args.exprs, 1, suite)
        reports = [check_suspension_shift(load_input(args.exprs[0]), args.qmax, column_cap)]
    elif suite == "wedge":
        _need(args.exprs, 2, suite)
        M, N = (load_input(e) for e in args.exprs)
        reports = [check_wedge_additivity(M, N, args.qmax, column_cap)]
    elif suite == "regular-vanishing":
        _need(args.exprs, 1, suite)
        qs = _int_range(args.range)
        reports = [check_regular_vanishing(load_input(args.exprs[0]), qs[0], qs[-1], column_cap)]
    passed = all(r.verdict for r in reports)
    if fmt == "json":
        emit({"suite": suite, "passed": passed, "reports": [r.to_dict() for r in reports]}, "json", [])
    else:
        for r in reports:
            d = r.to_dict()
            print(f"[{d['verdict'].upper()}] {d['claim']} {json.dumps(d['parameters'], sort_keys=True)} "
                  f"({d['elapsed']:.3f}s)")
            print(f"    expected: {json.dumps(d['expected'], sort_keys=True)}")
            print(f"    computed: {json.dumps(d['computed'], sort_keys=True)}")
        print(f"suite {suite}: {'pass' if passed else 'FAIL'}")
    return EXIT_OK if passed else EXIT_FAIL


def _need(exprs, k, suite):
    if len(exprs) != k:
        raise UsageError(f"suite {suite} takes {k} expression(s), got {len(exprs)}")


def _default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_COLUMN_CAP
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_COLUMN_CAP


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", dest="output_format")
    common.add_argument("--column-cap", type=int, default=_default_cap(),
                        help=f"largest chain group rank allowed (env {CAP_ENV})")

    p = argparse.ArgumentParser(prog="semigroup-homology",
                                description="Homology and fundamental groups of classifying spaces of finite monoids.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="structural invariants")
    a.add_argument("input", help="constructor expression or table file")

    h = sub.add_parser("homology", parents=[common], help="integral homology via the bar complex")
    h.add_argument("input")
    h.add_argument("--qmax", type=int, default=3, help="compute H_0..H_(qmax-1)")
    h.add_argument("--unnormalized", action="store_true")
    h.add_argument("--dump-boundaries", metavar="DIR")

    c = sub.add_parser("completion", parents=[common], help="group completion, i.e. pi_1 of BS")
    c.add_argument("input")
    c.add_argument("--max-cosets", type=int, default=None)

    v = sub.add_parser("verify", parents=[common], help="run a theorem suite")
    v.add_argument("suite", choices=("moore", "suspension", "wedge", "regular-vanishing"))
    v.add_argument("exprs", nargs="*")
    v.add_argument("--n", default="2..6")
    v.add_argument("--qmax", type=int, default=4)
    v.add_argument("--range", default="5..5")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    fmt = args.output_format
    try:
        if args.command == "verify":
            if args.column_cap < 1:
                raise UsageError("column cap must be >= 1")
            return cmd_verify(args, fmt, args.column_cap)
        cfg = RunConfig(input=args.input, output_format=fmt, column_cap=args.column_cap)
        if args.command == "analyze":
            return cmd_analyze(cfg)
        if args.command == "homology":
            cfg.qmax = args.qmax
            cfg.normalized = not args.unnormalized
            cfg.dump_boundaries = args.dump_boundaries
            cfg.__post_init__()
            return cmd_homology(cfg)
        return cmd_completion(cfg, args.max_cosets)
    except (ParseError, UsageError, sg.SemigroupError, MinimalIdealNotRectangular, NotRegular,
            OSError) as exc:
        _error(fmt, "usage", exc)
        return EXIT_USAGE
    except (DegreeTooLarge, InfeasibleDegree) as exc:
        _error(fmt, "resource-cap", exc)
        return EXIT_CAP
    except CosetCapExceeded as exc:
        _error(fmt, "resource-cap", f"{exc}; rerun with a larger --max-cosets")
        return EXIT_CAP


def _error(fmt, kind, exc) -> None:
    if fmt == "json":
        sys.stdout.write(dumps({"error": kind, "message": str(exc)}))
    print(f"error: {exc}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
