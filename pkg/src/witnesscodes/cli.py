"""Command-line front end: ``witnesscodes <command> ...``.

Exit codes: 0 success, 1 property failure (``verify``), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import __version__
from .acceptance import run_all
from .analysis import mean_stats, min_witness
from .bounds import bounds_report
from .constructions import (
    cube_on_window,
    cw_code_search,
    from_family,
    sphere,
    steiner_3_4_8,
    steiner_5_6_12,
    two_part_sphere,
)
from .core import CoordSet, first_failure, has_w_witness_property, windows
from .io import (
    CACHE_ENV,
    FormatError,
    atomic_write,
    bound_report_json,
    cache_json,
    dumps,
    format_code,
    format_family,
    load_cache,
    mean_stats_json,
    read_code,
    read_family,
    record_result,
    save_cache,
    solver_result_json,
)
from .solver import Limits, MonotonicityViolation, f_cw_exact, f_exact, monotonicity_audit, open_problem_probe


class UsageError(Exception):
    pass


def _cache_path(arg: str | None) -> str | None:
    return arg if arg is not None else os.environ.get(CACHE_ENV) or None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        atomic_write(out, text)


def cmd_verify(args: argparse.Namespace) -> int:
    C = read_code(args.code)
    if args.w < 0:
        raise UsageError("--w must be non-negative")
    w = min(args.w, C.n)
    if args.uniform:
        words = C.masks
        for W in windows(C.n, w):
            if len({x & W for x in words}) == len(words):
                print(f"OK uniform window {CoordSet(C.n, W)}")
                return 0
        print(f"FAIL no window of size {w} separates all {len(C)} words")
        return 1
    ok, choice = has_w_witness_property(C, w)
    if not ok:
        bad = first_failure(C, w)
        print(f"FAIL {bad} has no witness of size <= {args.w}")
        return 1
    print(f"OK {len(C)} words have witnesses of size <= {args.w}")
    for c in sorted(choice):
        print(f"{c} {choice[c]}")
    return 0


def cmd_min_witness(args: argparse.Namespace) -> int:
    C = read_code(args.code)
    mode = "greedy" if args.greedy else "exact"
    words = sorted(C)
    if args.word is not None:
        if not 1 <= args.word <= len(words):
            raise UsageError(f"--word must be in [1, {len(words)}]")
        c = words[args.word - 1]
        W = min_witness(C, c, mode)
        print(f"{c} {W} {len(W)}")
        return 0
    size = 0
    for c in words:
        W = min_witness(C, c, mode)
        size = max(size, len(W))
        print(f"{c} {W} {len(W)}")
    print(f"parameter {size}")
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    C = read_code(args.code)
    if not 0 <= args.w <= C.n:
        raise UsageError(f"--w must be in [0, {C.n}]")
    sys.stdout.write(dumps(mean_stats_json(mean_stats(C, args.w))))
    return 0


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"construct {args.kind} needs {' '.join(missing)}")


def cmd_construct(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind == "sphere":
        _need(args, "n", "k")
        text = format_code(sphere(args.n, args.k))
    elif kind == "cube":
        _need(args, "n", "window")
        members = [int(t) for t in args.window.replace(",", " ").split()]
        text = format_code(cube_on_window(args.n, CoordSet.of(args.n, members)))
    elif kind == "family":
        _need(args, "blocks")
        text = format_code(from_family(read_family(args.blocks)))
    elif kind in ("steiner348", "steiner5612"):
        F = steiner_3_4_8() if kind == "steiner348" else steiner_5_6_12()
        text = format_code(from_family(F)) if args.as_code else format_family(F)
    elif kind == "twopart":
        _need(args, "n", "w", "t")
        text = format_code(two_part_sphere(args.n, args.w, args.t))
    elif kind == "cwsearch":
        _need(args, "n", "d", "w")
        F = cw_code_search(args.n, args.d, args.w, effort=args.effort, seed=args.seed)
        text = format_code(from_family(F)) if args.as_code else format_family(F)
    else:  # argparse restricts choices
        raise UsageError(f"unknown construction {kind}")
    _emit(text, args.out)
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    if not 0 <= args.w <= args.n <= 64:
        raise UsageError("need 0 <= w <= n <= 64")
    cache = load_cache(_cache_path(args.cache))
    sys.stdout.write(dumps(bound_report_json(bounds_report(args.n, args.w, cache))))
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    path = _cache_path(args.cache)
    cache = load_cache(path)
    limits = Limits(time_limit=args.time_limit)
    if args.k is None:
        r = f_exact(args.n, args.w, limits, cache=cache, workers=args.workers)
    else:
        r = f_cw_exact(args.n, args.w, args.k, limits, workers=args.workers)
    sys.stdout.write(dumps(solver_result_json(r)))
    if path is not None:
        record_result(cache, r)
        save_cache(path, cache)
    return 0


def cmd_probe(args: argparse.Namespace) -> int:
    limits = Limits(time_limit=args.time_limit) if args.time_limit is not None else None
    p = open_problem_probe(args.w, limits)
    doc = {
        "kind": "probe",
        "w": p.w,
        "sphere": str(p.sphere),
        "equals_sphere": p.equals_sphere,
        "result": solver_result_json(p.result),
        "implied": {str(n): [str(lo), str(hi)] for n, (lo, hi) in p.implied.items()},
    }
    sys.stdout.write(dumps(doc))
    return 0


def cmd_audit(args: argparse.Namespace) -> int:
    cache = load_cache(_cache_path(args.cache))
    try:
        report = monotonicity_audit(cache)
    except MonotonicityViolation as exc:
        print(f"FAIL {exc}")
        return 1
    for desc, _ in report.checks:
        print(f"ok {desc}")
    print(f"OK {len(report.checks)} checks")
    return 0


def cmd_cache(args: argparse.Namespace) -> int:
    sys.stdout.write(dumps(cache_json(load_cache(_cache_path(args.cache)))))
    return 0


def cmd_reproduce(args: argparse.Namespace) -> int:
    results = run_all()
    for r in results:
        print(r.line())
    passed = sum(r.ok for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return 0 if passed == len(results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="witnesscodes", description="Witness sets in binary codes.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="check the w-witness property of a code file")
    s.add_argument("--code", required=True)
    s.add_argument("--w", type=int, required=True)
    s.add_argument("--uniform", action="store_true", help="look for one window separating every word")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("min-witness", help="smallest witness of each word")
    s.add_argument("--code", required=True)
    s.add_argument("--word", type=int, help="1-based index in lexicographic order")
    s.add_argument("--greedy", action="store_true")
    s.set_defaults(func=cmd_min_witness)

    s = sub.add_parser("stats", help="witness and window counts as JSON")
    s.add_argument("--code", required=True)
    s.add_argument("--w", type=int, required=True)
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("construct", help="write a code or block family")
    s.add_argument("kind", choices=["sphere", "cube", "family", "steiner348", "steiner5612", "twopart", "cwsearch"])
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--w", type=int)
    s.add_argument("--t", type=int)
    s.add_argument("--d", type=int)
    s.add_argument("--window", help="coordinates, e.g. '1,2,3'")
    s.add_argument("--blocks", help="BlockFile for 'family'")
    s.add_argument("--as-code", action="store_true", help="emit the block-family code instead of the blocks")
    s.add_argument("--effort", type=int, default=50)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("bounds", help="lower and upper bounds on f(n, w) as JSON")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--w", type=int, required=True)
    s.add_argument("--cache")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("solve", help="exact f(n, w) or f(n, w, k) for small n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--w", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--time-limit", type=float)
    s.add_argument("--cache")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("probe", help="compare f(2w, w) with the middle sphere")
    s.add_argument("--w", type=int, required=True)
    s.add_argument("--time-limit", type=float)
    s.set_defaults(func=cmd_probe)

    s = sub.add_parser("audit", help="monotonicity checks on cached exact values")
    s.add_argument("--cache")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("cache", help="print the merged cache as JSON")
    s.add_argument("--cache")
    s.set_defaults(func=cmd_cache)

    s = sub.add_parser("reproduce", help="run every acceptance check")
    s.set_defaults(func=cmd_reproduce)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
