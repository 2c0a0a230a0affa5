"""Command line surface.

Subcommands emit machine-readable artifacts (JSON, CSV, SVG) on stdout or to
--out; human-oriented matplotlib figures go to --plot files.  Every artifact
embeds the run configuration so results can be reproduced from the output
alone.  Exit codes: 0 success, 2 invalid input or configuration, 3 ambiguous
base-3 expansion, 4 depth/leaf budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import cantor as cantor_mod
from .dimension import estimate_dimension
from .errors import AmbiguousExpansionError, DepthOverflowError, StatFracError
from .ifs import Schedule, iterate, leaf_count, system_from_json
from .intervals import IntervalSet
from .svg import levels_svg
from .trees import IndexTree, min_level_sum, tree_sum, validate_tree


def _round_floats(obj):
    # all emitted floats carry 9 significant digits; rationals stay exact strings
    if isinstance(obj, float):
        return float(f"{obj:.9g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _emit_json(payload: dict, out: str | None) -> None:
    _write_text(json.dumps(_round_floats(payload), indent=2) + "\n", out)


def _load_system(source: str):
    if source == "cantor":
        return cantor_mod.CANTOR_SYSTEM, Schedule.full(2)
    with open(source) as fh:
        return system_from_json(json.load(fh))


def _load_interval_file(path: str) -> IntervalSet:
    with open(path) as fh:
        return IntervalSet.from_json(json.load(fh))


def _parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def _stream_from_args(args) -> cantor_mod.DigitStream:
    if args.a is not None:
        value = _parse_fraction(args.a)
        return cantor_mod.DigitStream.from_rational(value.numerator, value.denominator)
    digits = [int(c) for c in args.digits.replace(",", "").replace(" ", "")]
    return cantor_mod.DigitStream.from_digits(digits)


# -- subcommand handlers ----------------------------------------------------


def cmd_construct(args) -> None:
    system, schedule = _load_system(args.system)
    seed_set = _load_interval_file(args.seed_set) if args.seed_set else IntervalSet([(0, 1)])
    config = {
        "command": "construct",
        "system": args.system,
        "depth": args.depth,
        "out": args.out,
    }
    fmt, out_path = _resolve_out(args.out)
    if fmt == "svg" or args.plot:
        levels = [iterate(system, schedule, k, seed_set) for k in range(args.depth + 1)]
    if fmt == "svg":
        _write_text(levels_svg(levels, comment="config: " + json.dumps(config)), out_path)
    else:
        result = iterate(system, schedule, args.depth, seed_set)
        payload = {
            "config": config,
            "depth": args.depth,
            "leaf_count": leaf_count(schedule, args.depth),
            **result.to_json(),
        }
        _emit_json(payload, out_path)
    if args.plot:
        from . import plots

        plots.save_levels_figure(levels, args.plot)


def _resolve_out(out: str | None) -> tuple[str, str | None]:
    """--out accepts a bare format name (stdout) or a path whose suffix
    selects the format; default is JSON on stdout."""
    if out is None or out == "json":
        return "json", None
    if out == "svg":
        return "svg", None
    return ("svg" if out.endswith(".svg") else "json"), out


def cmd_dimension(args) -> None:
    system, schedule = _load_system(args.system)
    estimate = estimate_dimension(system, schedule, args.max_depth, args.window, args.tol)
    config = {
        "command": "dimension",
        "system": args.system,
        "max_depth": args.max_depth,
        "window": args.window,
        "tol": args.tol,
    }
    _emit_json({"config": config, **estimate.to_json()}, args.out)
    if args.plot:
        from . import plots

        plots.save_dimension_figure(system, schedule, estimate, args.plot)


def cmd_cantor_intersect(args) -> None:
    stream = _stream_from_args(args)
    k = args.depth
    oracle = cantor_mod.intersection_oracle(stream, k, args.precision)
    check = cantor_mod.sandwich_check(stream, k, args.precision)
    config = {
        "command": "cantor intersect",
        "a": args.a,
        "digits": args.digits,
        "depth": k,
        "precision": args.precision,
    }
    offset = stream.exact_value()
    if offset is None:
        offset = stream.truncated_value(max(k, args.precision or k))
    payload = {
        "config": config,
        "a": str(offset),
        "digits": [int(d) for d in stream.digits(k)] if k else [],
        "schedule_prefix": [sorted(s) for s in cantor_mod.selection_sets(stream, k)] if k else [],
        "intersection": oracle.to_json(),
        "f": cantor_mod.f_count(stream, k) if k else 0,
        "s_hat": cantor_mod.sample_dimension(stream, k)[2] if k else 0.0,
        "sandwich_ok": check.holds,
    }
    _emit_json(payload, args.out)


def cmd_cantor_montecarlo(args) -> None:
    result = cantor_mod.monte_carlo_dimension(args.samples, args.depth, args.seed)
    config = {
        "command": "cantor montecarlo",
        "samples": args.samples,
        "depth": args.depth,
        "seed": args.seed,
        "csv": args.csv,
    }
    with open(args.csv, "w") as fh:
        fh.write("# config: " + json.dumps(config) + "\n")
        result.write_csv(fh)
    _emit_json({"config": config, **result.summary()}, args.out)
    if args.plot:
        from . import plots

        plots.save_montecarlo_figure(result, args.plot)


def cmd_hausdorff(args) -> None:
    a = _load_interval_file(args.a)
    b = _load_interval_file(args.b)
    sys.stdout.write(str(a.hausdorff_distance(b)) + "\n")


def cmd_tree_check(args) -> None:
    system, schedule = _load_system(args.system)
    with open(args.file) as fh:
        tree = IndexTree.from_json(json.load(fh))
    valid = validate_tree(tree.branches, schedule)
    config = {
        "command": "tree check",
        "file": args.file,
        "system": args.system,
        "weights": args.weights,
    }
    payload: dict = {"config": config, "valid": valid}
    if tree.branches:
        p, q = tree.branch_bounds()
        payload["p"], payload["q"] = p, q
        if args.weights:
            weights = [Fraction(w) for w in args.weights.split(",")]
            total = tree_sum(tree, weights)
            floor = min_level_sum(schedule, p, q, weights)
            payload["tree_sum"] = str(total)
            payload["level_min"] = str(floor)
            payload["inequality_ok"] = bool(valid and total >= floor)
    _emit_json(payload, args.out)


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statfrac",
        description="Statistically self-similar sets: construction, dimension, Cantor intersections.",
    )
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("construct", help="iterate a system and emit the level set")
    p.add_argument("--system", required=True, help="system JSON path or builtin alias 'cantor'")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--out", default=None, help="'json', 'svg', or an output path (suffix picks format)")
    p.add_argument("--seed-set", default=None, help="interval JSON to start from (default [0,1])")
    p.add_argument("--plot", default=None, help="write a matplotlib figure of all levels here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("dimension", help="estimate the dimension threshold")
    p.add_argument("--system", required=True)
    p.add_argument("--max-depth", type=int, default=200)
    p.add_argument("--window", type=float, default=0.5)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", default=None)
    p.add_argument("--plot", default=None)
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("cantor", help="Cantor intersection commands")
    csub = p.add_subparsers(dest="cantor_command")

    ci = csub.add_parser("intersect", help="exact level-k intersection for one offset")
    group = ci.add_mutually_exclusive_group(required=True)
    group.add_argument("--a", default=None, help="offset as an exact fraction, e.g. 1/4")
    group.add_argument("--digits", default=None, help="explicit base-3 digits, e.g. 0202 or 0,2,0,2")
    ci.add_argument("--depth", type=int, required=True)
    ci.add_argument("--precision", type=int, default=None)
    ci.add_argument("--out", default=None)
    ci.set_defaults(func=cmd_cantor_intersect)

    cm = csub.add_parser("montecarlo", help="random-offset dimension experiment")
    cm.add_argument("--samples", type=int, required=True)
    cm.add_argument("--depth", type=int, required=True)
    cm.add_argument("--seed", type=int, required=True)
    cm.add_argument("--csv", required=True, help="per-sample CSV output path")
    cm.add_argument("--out", default=None)
    cm.add_argument("--plot", default=None)
    cm.set_defaults(func=cmd_cantor_montecarlo)

    p = sub.add_parser("hausdorff", help="exact Hausdorff distance between two interval files")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_hausdorff)

    p = sub.add_parser("tree", help="index tree commands")
    tsub = p.add_subparsers(dest="tree_command")
    tc = tsub.add_parser("check", help="validate a tree and test the branch-sum inequality")
    tc.add_argument("--file", required=True)
    tc.add_argument("--system", required=True)
    tc.add_argument("--weights", default=None, help="comma-separated rational weights, e.g. 1/3,1/3")
    tc.add_argument("--out", default=None)
    tc.set_defaults(func=cmd_tree_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func = getattr(args, "func", None)
    if func is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        func(args)
    except AmbiguousExpansionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DepthOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (StatFracError, ValueError, TypeError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
