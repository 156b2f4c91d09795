"""Command-line front end: ``adelic-roth census`` and ``adelic-roth check``.

``census --config cfg.toml [--workers k] [--out dir]`` runs the full
pipeline (validation, exhaustive enumeration, ratio-gap sweep, interval
cover, counting bound) and writes ``report.json`` and ``solutions.csv``.
Exit codes: 0 all verdicts pass, 1 validation failure, 2 enumeration
capacity exceeded, 3 an invariant the theory guarantees was violated
(a library bug by definition).

``check <subcommand> ...`` evaluates a single quantity and exits 0 on
pass/computed, 1 on fail, 2 on uncertain.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import List, Optional

from .config import load_config, load_matrix
from .curves import curve_by_name
from .errors import AdelicError, CapacityExceededError, ConfigError
from .gaps import (
    column_bounding_check,
    dyson_bound,
    gap2_params,
    h_gap_check,
    ratio_gap_capacity,
)
from .logvalue import Verdict, set_default_precision
from .report import build_report, render_csv, render_json
from .system import enumerate_solutions, validate_spec

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_UNCERTAIN = 2
EXIT_VALIDATION = 1
EXIT_CAPACITY = 2
EXIT_INVARIANT = 3


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CapacityExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except AdelicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adelic-roth",
        description="censuses and checkers for a Roth-type system of inequalities over proper adelic curves",
    )
    sub = parser.add_subparsers(required=True)

    census = sub.add_parser("census", help="run a full census with all checks")
    census.add_argument("--config", required=True, help="TOML config path")
    census.add_argument("--workers", type=int, default=None, help="parallel enumeration workers")
    census.add_argument("--out", default=None, help="directory for report.json and solutions.csv")
    census.set_defaults(func=cmd_census)

    check = sub.add_parser("check", help="evaluate one quantity")
    checksub = check.add_subparsers(required=True)

    pf = checksub.add_parser("product-formula", help="defect of an element")
    pf.add_argument("curve", choices=["Q", "Q(t)"])
    pf.add_argument("element")
    pf.set_defaults(func=cmd_check_product_formula)

    ht = checksub.add_parser("height", help="logarithmic height of an element")
    ht.add_argument("curve", choices=["Q", "Q(t)"])
    ht.add_argument("element")
    ht.set_defaults(func=cmd_check_height)

    liou = checksub.add_parser("liouville", help="partial log-distance lower bound")
    liou.add_argument("curve", choices=["Q", "Q(t)"])
    liou.add_argument("alpha")
    liou.add_argument("beta")
    liou.add_argument("places", help="comma-separated place ids (may be empty with '')")
    liou.set_defaults(func=cmd_check_liouville)

    hg = checksub.add_parser("hgap", help="h-gap property of a matrix file")
    hg.add_argument("--matrix", required=True)
    hg.set_defaults(func=cmd_check_hgap)

    cb = checksub.add_parser("column-bounding", help="column bounding of a matrix file")
    cb.add_argument("--matrix", required=True)
    cb.set_defaults(func=cmd_check_column_bounding)

    pr = checksub.add_parser("params", help="N, log Gamma and the counting bound")
    pr.add_argument("n", type=int)
    pr.add_argument("epsilon", type=float)
    pr.set_defaults(func=cmd_check_params)

    bd = checksub.add_parser("bound", help="counting bound only")
    bd.add_argument("n", type=int)
    bd.add_argument("epsilon", type=float)
    bd.set_defaults(func=cmd_check_bound)

    return parser


# -- census ----------------------------------------------------------------


def cmd_census(args) -> int:
    config = load_config(args.config)
    if args.workers is not None:
        config.workers = max(1, args.workers)
    set_default_precision(config.precision_bits)
    curve, spec = config.build_spec()
    validation = validate_spec(spec)
    if not validation.ok:
        body = build_report(config.echo(), validation, None)
        _emit(body, args.out)
        for violation in validation.violations:
            print(f"violation: {violation}", file=sys.stderr)
        return EXIT_VALIDATION

    census = enumerate_solutions(
        spec,
        config.height_bound,
        coefficient_cap=config.coefficient_cap,
        max_candidates=config.max_candidates,
        workers=config.workers,
    )
    body = build_report(config.echo(), validation, census)
    _emit(body, args.out)
    verdicts = body["verdicts"]
    if verdicts["overall"] == "pass":
        return EXIT_PASS
    # validation passed, so a failing verdict here contradicts a theorem
    return EXIT_INVARIANT


def _emit(body, out_dir: Optional[str]) -> None:
    text = render_json(body)
    sys.stdout.write(text)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "report.json"), "w") as fh:
            fh.write(text)
        with open(os.path.join(out_dir, "solutions.csv"), "w") as fh:
            fh.write(render_csv(body))


# -- single checks ------------------------------------------------------------


def _verdict_exit(verdict: Verdict) -> int:
    if verdict == Verdict.PASS:
        return EXIT_PASS
    if verdict == Verdict.FAIL:
        return EXIT_FAIL
    return EXIT_UNCERTAIN


def cmd_check_product_formula(args) -> int:
    curve = curve_by_name(args.curve)
    a = curve.element(args.element)
    defect = curve.product_formula_defect(a)
    exact = " (exactly zero)" if defect.is_exact_zero else ""
    ok = Verdict.PASS if defect.sign(1e-9) in (0, None) else Verdict.FAIL
    print(f"defect {float(defect):.6g}{exact}: {ok.value}")
    return _verdict_exit(ok)


def cmd_check_height(args) -> int:
    curve = curve_by_name(args.curve)
    h = curve.height(curve.element(args.element))
    print(f"h = {float(h):.12g}")
    return EXIT_PASS


def cmd_check_liouville(args) -> int:
    curve = curve_by_name(args.curve)
    alpha = curve.element(args.alpha)
    beta = curve.element(args.beta)
    ids = [p for p in args.places.split(",") if p.strip()]
    places = [curve.place(pid) for pid in ids]
    lhs, rhs, verdict = curve.liouville_check(alpha, beta, places)
    print(f"lhs {float(lhs):.12g} >= rhs {float(rhs):.12g}: {verdict.value}")
    return _verdict_exit(verdict)


def cmd_check_hgap(args) -> int:
    mc = load_matrix(args.matrix)
    _, matrix = mc.build_matrix()
    result = h_gap_check(matrix, mc.tolerance)
    print(f"threshold 1/{result.threshold.denominator}")
    for j, (ratio, verdict) in enumerate(zip(result.ratios, result.column_verdicts), start=1):
        print(f"column {j}->{j + 1}: ratio {ratio:.6g}: {verdict.value}")
    print(f"h-gap: {result.verdict.value}")
    return _verdict_exit(result.verdict)


def cmd_check_column_bounding(args) -> int:
    mc = load_matrix(args.matrix)
    _, matrix = mc.build_matrix()
    result = column_bounding_check(matrix, mc.theta, mc.partition, mc.tolerance)
    print(f"checked {result.checks} inequalities; local values <= 1: {result.unit_bound_ok}")
    print(f"column bounding: {result.verdict.value}")
    return _verdict_exit(result.verdict)


def cmd_check_params(args) -> int:
    params = gap2_params(args.n, Fraction(args.epsilon))
    capacity = ratio_gap_capacity(params.log_Gamma, params.epsilon)
    bound = (params.N - 1) * capacity
    print(
        f"N={params.N}, logGamma={float(params.log_Gamma):.6g}, "
        f"dyson={dyson_bound(args.n, params.N):.6g}, bound={bound:.6g}"
    )
    return EXIT_PASS


def cmd_check_bound(args) -> int:
    params = gap2_params(args.n, Fraction(args.epsilon))
    bound = (params.N - 1) * ratio_gap_capacity(params.log_Gamma, params.epsilon)
    print(f"bound={bound:.6g} (N={params.N})")
    return EXIT_PASS


if __name__ == "__main__":
    raise SystemExit(main())
