"""Command-line interface: ``hgman example | analyze | prove-kahlerlike | identities``.

Exit codes: 0 when every executed check passes, 1 when a check fails
(the report is still written), 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path

from hgman.analysis import analyze, compute, identity_checks
from hgman.config import ConfigError, load_config
from hgman.example import verify_golden_tables
from hgman.exact_tensor import scalar
from hgman.natural_connection import kahlerlike_nullspace
from hgman.report import AnalysisReport

DEFAULT_SEED = 20240611

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_lambda(text: str) -> tuple[Fraction, ...]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise UsageError(f"--lambda needs four comma-separated values, got {text!r}")
    try:
        return tuple(scalar(p) for p in parts)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--lambda: {exc}") from None


def random_lambda(seed: int) -> tuple[Fraction, ...]:
    """Four rationals ``k/d`` with ``k`` in -9..9 and ``d`` in 1..5, reproducible from ``seed``."""
    rng = random.Random(seed)
    return tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4))


def _emit(report: AnalysisReport, path: str | None, out) -> None:
    if path:
        Path(path).write_text(report.dumps())
    c = report.classification
    print(f"classification: K={c.in_K} W(J)={list(c.in_W_J)} W={c.in_W} "
          f"isotropic={c.isotropic_hk} integrable={list(c.integrable)}", file=out)
    print(f"tau = {report.scalars['tau']}, theta(Omega) = {report.scalars['theta_Omega']}, "
          f"norms = {report.scalars['norms']}", file=out)
    _print_checks("identity", report.identity_suite, out)
    _print_checks("conditional", report.conditional_checks, out)
    for name, chk in sorted(report.display_crosschecks.items()):
        if "skipped" in chk:
            state = f"skipped ({chk['skipped']})"
        elif chk["passed"]:
            state = "agrees"
        else:
            state = f"differs at {chk.get('witness')} by {chk.get('residual')}"
        print(f"  published form {name}: {state}", file=out)
    if report.golden_diffs is not None:
        for name, d in sorted(report.golden_diffs.items()):
            print(f"  golden {name}: {'zero diff' if d['ok'] else 'MISMATCH'}", file=out)
    failures = report.failures
    print("all checks passed" if not failures else f"FAILED: {', '.join(failures)}", file=out)


def _print_checks(kind: str, checks: dict, out) -> None:
    passed = sum(1 for c in checks.values() if c["passed"] and "skipped" not in c)
    skipped = sum(1 for c in checks.values() if "skipped" in c)
    failed = [k for k, c in checks.items() if not c["passed"]]
    print(f"{kind} checks: {passed} passed, {skipped} skipped, {len(failed)} failed", file=out)
    for k in failed:
        c = checks[k]
        print(f"  FAIL {k} at {c.get('witness')} residual {c.get('residual')}", file=out)


def cmd_example(args, out) -> int:
    if args.lam is not None:
        lam = parse_lambda(args.lam)
    else:
        lam = random_lambda(args.seed)
        print(f"lambda sampled with seed {args.seed}", file=out)
    print(f"lambda = ({', '.join(map(str, lam))})", file=out)
    report = verify_golden_tables(lam)
    _emit(report, args.report, out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_analyze(args, out) -> int:
    cfg = load_config(args.config)
    if cfg.lambdas is not None:
        report = verify_golden_tables(cfg.lambdas)
    else:
        report = analyze(cfg.build())
    _emit(report, args.report, out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_identities(args, out) -> int:
    M = load_config(args.config).build()
    checks, _ = identity_checks(compute(M))
    for chk in checks:
        state = "skip" if chk.skipped else ("pass" if chk.passed else "FAIL")
        detail = f" ({chk.skipped})" if chk.skipped else (
            "" if chk.passed else f" at {list(chk.witness)} residual {chk.residual}")
        print(f"{state} {chk.name}{detail}", file=out)
    return EXIT_OK if checks.ok else EXIT_FAIL


def cmd_prove(args, out) -> int:
    if args.n not in (1, 2):
        raise UsageError("--n must be 1 or 2")
    res = kahlerlike_nullspace(args.n, kahler=not args.curvature_only)
    what = "curvature-like" if args.curvature_only else "curvature-like and Kähler-like for J1, J2, J3"
    print(f"dimension {4 * args.n}: {what}", file=out)
    print(f"unknowns {res.unknowns}", file=out)
    print(f"rank {res.rank}", file=out)
    print(f"nullity {res.nullity}", file=out)
    if args.curvature_only:
        return EXIT_OK
    return EXIT_OK if res.nullity == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hgman", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("example", help="verify the four-parameter 4-dimensional example")
    ex.add_argument("--lambda", dest="lam", metavar="A,B,C,D",
                    help="rational parameters, e.g. 1,2,3,4 or 1/2,-3,0,2 (default: random)")
    ex.add_argument("--seed", type=int, default=DEFAULT_SEED,
                    help=f"seed for the random lambda (default {DEFAULT_SEED})")
    ex.add_argument("--report", metavar="FILE", help="write the JSON report here")
    ex.set_defaults(func=cmd_example)

    an = sub.add_parser("analyze", help="run the full pipeline on a manifold config")
    an.add_argument("--config", required=True, metavar="FILE")
    an.add_argument("--report", metavar="FILE")
    an.set_defaults(func=cmd_analyze)

    pk = sub.add_parser("prove-kahlerlike", help="nullspace of the Kähler-like tensor constraints")
    pk.add_argument("--n", type=int, required=True, help="quaternionic dimension (1 or 2)")
    pk.add_argument("--curvature-only", action="store_true",
                    help="drop the Kähler-like constraints (algebraic curvature tensors)")
    pk.set_defaults(func=cmd_prove)

    ids = sub.add_parser("identities", help="run only the identity suite on a config")
    ids.add_argument("--config", required=True, metavar="FILE")
    ids.set_defaults(func=cmd_identities)
    return p


def run_cli(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, ConfigError, OSError) as exc:
        print(f"hgman: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
