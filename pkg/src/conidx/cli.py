"""Command-line front end.

Subcommands mirror the library layout: `zeta` evaluates the special-function
kernels, `eval` computes a single operator value, `index` runs one configured
experiment, `verify` runs the built-in verification suites, and `cache`
manages the sequence cache.  Exit codes: 0 all verdicts pass, 1 any verdict
failed, 2 usage or config error -- nothing else.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time

from . import __version__
from .harness import run_index_experiment
from .points import PointSpec
from .profiles import hurwitz_zeta, lagrange_jump_profile, lerch_j1, shepard_jump_profile
from .reports import (
    ConfigError,
    SequenceCache,
    build_run_report,
    emit_csv,
    emit_report,
    parse_config,
)
from .shepard import ShepardParams, shepard_eval_1d, shepard_eval_2d
from .stepfn import StepFn1D, StepFn2D
from .suites import SUITES, run_suites

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    pass


def _point_from_flags(args, rational_flag: str, irrational_flag: str,
                      what: str) -> PointSpec:
    rational = getattr(args, rational_flag, None)
    irrational = getattr(args, irrational_flag, None)
    if (rational is None) == (irrational is None):
        raise UsageError(f"give exactly one of --{rational_flag.replace('_', '-')} "
                         f"or --{irrational_flag.replace('_', '-')} for {what}")
    try:
        if rational is not None:
            p, _, q = rational.partition("/")
            return PointSpec.rational(int(p), int(q))
        return PointSpec.irrational(irrational)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"{what}: {exc}") from exc


def _grid_point(text: str, what: str) -> PointSpec:
    try:
        return PointSpec.parse(text)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"{what}: {exc}") from exc


def cmd_zeta(args) -> int:
    try:
        if args.evaluator == "lerch-j1":
            value = lerch_j1(args.a)
        elif args.evaluator == "hurwitz":
            value = hurwitz_zeta(args.s, args.a)
        elif args.evaluator == "profile":
            value = lagrange_jump_profile(args.x)
        else:  # profile-s
            value = shepard_jump_profile(args.s, args.x)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(f"{value:.17g}")
    return EXIT_PASS


def cmd_eval(args) -> int:
    op = args.operator
    if op == "lagrange1d":
        from .lagrange import eval_jump_decomposed, jump_value_direct

        spec = _point_from_flags(args, "theta_rational", "theta_irrational", "the jump angle")
        value = jump_value_direct(spec, args.d, args.n)
        print(f"{value:.17g}")
        if args.cross_check:
            oracle = eval_jump_decomposed(spec, args.d, args.n)
            if abs(oracle - value) > 1e-8:
                print(f"cross-check FAILED: decomposition gives {oracle:.17g}",
                      file=sys.stderr)
                return EXIT_FAIL
            print(f"cross-check ok: decomposition gives {oracle:.17g}", file=sys.stderr)
        return EXIT_PASS
    if op == "lagrange2d":
        from .lagrange import lagrange_eval_2d

        spec_x = _point_from_flags(args, "theta_rational", "theta_irrational", "the x angle")
        spec_y = _point_from_flags(args, "gamma_rational", "gamma_irrational", "the y angle")
        x0, y0 = math.cos(math.pi * spec_x.value), math.cos(math.pi * spec_y.value)
        h = StepFn2D.upper_right(x0, y0)
        value = lagrange_eval_2d(h, args.n, args.m or args.n, x0, y0,
                                 cross_check=args.cross_check)
        print(f"{value:.17g}")
        return EXIT_PASS
    if op == "shepard1d":
        spec = _grid_point(args.x0, "--x0")
        step = StepFn1D.indicator_upto(spec.value)
        value = shepard_eval_1d(step, ShepardParams(args.s, args.n), spec.value, spec=spec)
        print(f"{value:.17g}")
        return EXIT_PASS
    # shepard2d
    spec_x = _grid_point(args.x0, "--x0")
    spec_y = _grid_point(args.y0, "--y0")
    h = StepFn2D.lower_left(spec_x.value, spec_y.value)
    value = shepard_eval_2d(h, ShepardParams(args.s, args.n),
                            ShepardParams(args.s, args.m or args.n),
                            spec_x.value, spec_y.value, cross_check=args.cross_check)
    print(f"{value:.17g}")
    return EXIT_PASS


def cmd_index(args) -> int:
    try:
        with open(args.config) as fh:
            config = parse_config(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    if args.epsilon is not None:
        config.epsilon = args.epsilon
    if args.checkpoints is not None:
        config.checkpoints = args.checkpoints
    if args.tol is not None:
        config.tol = args.tol
    if args.cross_check:
        config.cross_check = True
    if args.out:
        config.out_report = args.out
    if args.csv:
        config.out_csv = args.csv
    if args.cache_dir:
        config.cache_dir = args.cache_dir
    spec = config.to_experiment_spec()
    cache = SequenceCache(config.cache_dir) if config.cache_dir else None
    t0 = time.perf_counter()
    window = cache.load(spec) if cache else None
    cached = window is not None
    result = run_index_experiment(spec, window=window)
    runtime_ms = (time.perf_counter() - t0) * 1000.0
    if cache and not cached:
        cache.store(spec, result.window)
    report = build_run_report(config, result, runtime_ms)
    for entry in report.targets:
        tgt = entry["target"]
        label = entry.get("label") or json.dumps(tgt)
        bound = ">=" if entry.get("predicted_is_lower_bound") else "vs"
        print(f"[{entry['verdict']}] {label}: estimate {entry['estimate']['lower']:.4f} "
              f"{bound} predicted {entry['predicted']:.4f}")
    if result.residual_mass is not None:
        print(f"residual mass: {result.residual_mass:.4f}")
    if cached:
        print("window loaded from cache")
    if config.out_report:
        emit_report(report, config.out_report)
        print(f"report written to {config.out_report}")
    if config.out_csv:
        emit_csv(result.window, config.out_csv)
        print(f"window written to {config.out_csv}")
    return EXIT_PASS if report.all_pass else EXIT_FAIL


def cmd_verify(args) -> int:
    names = args.suite or list(SUITES)
    try:
        results = run_suites(names)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for res in results:
        print(res.line)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if args.out:
        doc = [
            {"name": r.name, "passed": r.passed, "detail": r.detail,
             "runtime_s": round(r.runtime_s, 3)}
            for r in results
        ]
        with open(args.out, "w") as fh:
            json.dump({"version": __version__, "checks": doc}, fh, indent=2)
            fh.write("\n")
        print(f"report written to {args.out}")
    return EXIT_PASS if not failed else EXIT_FAIL


def cmd_cache(args) -> int:
    cache = SequenceCache(args.cache_dir)
    if args.action == "list":
        entries = cache.entries()
        for path in entries:
            print(path.name)
        print(f"{len(entries)} cached windows in {cache.dir}")
        return EXIT_PASS
    removed = cache.clear()
    print(f"removed {removed} cached windows from {cache.dir}")
    return EXIT_PASS


def _add_point_flags(parser, angles: bool, grid: bool) -> None:
    if angles:
        parser.add_argument("--theta-rational", metavar="p/q",
                            help="jump angle as a rational multiple of pi")
        parser.add_argument("--theta-irrational", metavar="NAME",
                            help="jump angle as a named irrational multiple of pi")
        parser.add_argument("--gamma-rational", metavar="p/q",
                            help="second jump angle (bivariate)")
        parser.add_argument("--gamma-irrational", metavar="NAME",
                            help="second jump angle (bivariate)")
    if grid:
        parser.add_argument("--x0", metavar="p/q|NAME", help="jump abscissa")
        parser.add_argument("--y0", metavar="p/q|NAME", help="jump ordinate (bivariate)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conidx",
        description="Index-of-convergence experiments for interpolation at jumps")
    parser.add_argument("--version", action="version", version=f"conidx {__version__}")
    parser.add_argument("--seed", type=int, default=None,
                        help="reserved; all computation is deterministic")
    sub = parser.add_subparsers(dest="command", required=True)

    p_zeta = sub.add_parser("zeta", help="evaluate the special-function kernels")
    zeta_sub = p_zeta.add_subparsers(dest="evaluator", required=True)
    pz = zeta_sub.add_parser("profile", help="Lagrange jump profile on [0,1)")
    pz.add_argument("x", type=float)
    pzs = zeta_sub.add_parser("profile-s", help="Shepard jump profile on [0,1)")
    pzs.add_argument("--s", type=float, required=True)
    pzs.add_argument("x", type=float)
    pj = zeta_sub.add_parser("lerch-j1", help="alternating Lerch series at s=1")
    pj.add_argument("a", type=float)
    ph = zeta_sub.add_parser("hurwitz", help="Hurwitz zeta, s > 1")
    ph.add_argument("--s", type=float, required=True)
    ph.add_argument("a", type=float)
    p_zeta.set_defaults(func=cmd_zeta)

    p_eval = sub.add_parser("eval", help="single operator value at the jump")
    p_eval.add_argument("operator",
                        choices=["lagrange1d", "lagrange2d", "shepard1d", "shepard2d"])
    _add_point_flags(p_eval, angles=True, grid=True)
    p_eval.add_argument("--n", type=int, required=True, help="node parameter")
    p_eval.add_argument("--m", type=int, help="second node parameter (bivariate)")
    p_eval.add_argument("--d", type=float, default=1.0, help="step value at the jump")
    p_eval.add_argument("--s", type=float, default=2.0, help="Shepard exponent")
    p_eval.add_argument("--cross-check", action="store_true",
                        help="verify against the independent evaluation route")
    p_eval.set_defaults(func=cmd_eval)

    p_index = sub.add_parser("index", help="run one experiment config")
    p_index.add_argument("--config", required=True, metavar="PATH")
    p_index.add_argument("--out", metavar="PATH", help="write the JSON run report here")
    p_index.add_argument("--csv", metavar="PATH", help="write the window values here")
    p_index.add_argument("--epsilon", type=float, help="dilation half-width override")
    p_index.add_argument("--checkpoints", type=int, help="checkpoint count override")
    p_index.add_argument("--tol", type=float, help="verdict tolerance override")
    p_index.add_argument("--cross-check", action="store_true")
    p_index.add_argument("--cache-dir", metavar="PATH")
    p_index.set_defaults(func=cmd_index)

    p_verify = sub.add_parser("verify", help="run the built-in verification suites")
    p_verify.add_argument("suite", nargs="*",
                          help=f"suites to run (default all): {', '.join(SUITES)}")
    p_verify.add_argument("--out", metavar="PATH", help="write a JSON summary here")
    p_verify.set_defaults(func=cmd_verify)

    p_cache = sub.add_parser("cache", help="manage the sequence cache")
    p_cache.add_argument("action", choices=["list", "clear"])
    p_cache.add_argument("--cache-dir", required=True, metavar="PATH")
    p_cache.set_defaults(func=cmd_cache)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print("config errors:", file=sys.stderr)
        for err in exc.errors:
            print(f"  - {err}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
