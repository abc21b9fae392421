"""Command-line interface: enumeration, determinants, verification, benchmarks.

Commands are non-interactive and deterministic; all file output is UTF-8.
Exit codes: 0 success, 1 verification failures, 2 invalid arguments, 3 guard
violations (an engine was asked to exceed its deliberate size limit), 4
internal invariant violations (never expected on a valid build), 5 I/O
errors.  The environment variable COMPDET_THREADS caps harness parallelism
for verify/identities cells.
"""

import argparse
import csv
import json
import sys
import time

from .compositions import enumerate_proper, enumerate_weak
from .engines import (
    BlockNotZero,
    DimensionTooLarge,
    ResidualDenominator,
    det_bareiss,
    det_block_recursive,
    det_cofactor,
)
from .formulas import (
    delta_int_flat,
    delta_multivariate,
    delta_proper,
    delta_proper_int,
    delta_univariate,
)
from .matrices import (
    PolyMatrix,
    build_general,
    build_integer,
    build_proper,
    build_univariate,
    specialize,
)
from .poly import (
    FactoredForm,
    NotDivisible,
    factored_to_json,
    format_canonical,
    poly_to_json,
)
from .verify import SUITES, VerifyReport, grid_symbolic, identity_suite, random_point_check

ENGINES = ("cofactor", "bareiss", "blocktri", "formula")
VARS = ("general", "univariate", "zero")


def _parse_point(text, p):
    try:
        point = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ValueError(f"--at expects comma-separated integers, got {text!r}")
    if len(point) != p:
        raise ValueError(f"--at needs {p} coordinates, got {len(point)}")
    return point


def _build_matrix(n, p, vars_mode, proper):
    if proper:
        if vars_mode == "univariate":
            base = build_proper(n, p)
            rows = [[e.identify_vars() for e in row] for row in base.entries]
            return PolyMatrix(1, rows, base.labels)
        if vars_mode == "zero":
            return specialize(build_proper(n, p), (0,) * p)
        return build_proper(n, p)
    if vars_mode == "univariate":
        return build_univariate(n, p)
    if vars_mode == "zero":
        return build_integer(n, p)
    return build_general(n, p)


def _formula_value(n, p, vars_mode, proper):
    if proper:
        form = delta_proper_int(n, p) if vars_mode == "zero" else delta_proper(n, p)
        if vars_mode == "univariate":
            form = form.identify_vars()
        return form
    if vars_mode == "zero":
        return delta_int_flat(n, p) if n >= 1 else delta_multivariate(n, p)
    if vars_mode == "univariate":
        return delta_univariate(n, p) if n >= 1 else delta_multivariate(n, p).identify_vars()
    return delta_multivariate(n, p)


def cmd_compositions(args):
    if args.proper:
        items = enumerate_proper(args.n, args.p)
    else:
        items = enumerate_weak(args.n, args.p)
    if args.format == "json":
        print(json.dumps(items.to_json()))
    else:
        for alpha in items:
            print(" ".join(str(a) for a in alpha))
    return 0


def cmd_det(args):
    n, p = args.n, args.p
    engine = args.engine
    vars_mode = args.vars
    if args.at and vars_mode == "zero":
        raise ValueError("--at conflicts with --vars zero (the point is fixed at 0)")
    at = _parse_point(args.at, 1 if vars_mode == "univariate" else p) if args.at else None
    if engine is None:
        engine = "bareiss" if (vars_mode == "zero" or at) else "formula"
    if engine == "blocktri" and args.proper:
        raise ValueError("the blocktri engine covers weak compositions only")
    varnames = ["x"] if vars_mode == "univariate" else None

    if engine in ("formula", "blocktri"):
        if engine == "blocktri":
            form = det_block_recursive(n, p)
            if vars_mode == "univariate":
                form = form.identify_vars()
            elif vars_mode == "zero":
                form = FactoredForm(0, 1, [(b.eval((0,) * b.nvars), e) for b, e in form.factors])
        else:
            form = _formula_value(n, p, vars_mode, args.proper)
        if at is not None:
            return _emit_int(args, form.eval(at))
        if vars_mode == "zero":
            return _emit_int(args, form.to_int())
        return _emit_factored(args, form, varnames)

    matrix = _build_matrix(n, p, vars_mode, args.proper)
    if at is not None:
        matrix = specialize(matrix, at)
    det = det_cofactor(matrix) if engine == "cofactor" else det_bareiss(matrix)
    if isinstance(det, int):
        return _emit_int(args, det)
    return _emit_poly(args, det, varnames)


def _emit_int(args, value):
    if args.format == "json":
        print(json.dumps({"kind": "int", "value": str(value)}))
    else:
        print(value)
    return 0


def _emit_poly(args, f, varnames=None):
    if args.format == "json":
        print(json.dumps({"kind": "poly", "value": poly_to_json(f)}))
    else:
        print(format_canonical(f, varnames))
    return 0


def _emit_factored(args, form, varnames=None):
    if args.format == "json":
        print(json.dumps({"kind": "factored", "value": factored_to_json(form)}))
    else:
        print(format_canonical(form, varnames))
    return 0


def _point_seed(seed, n, p):
    # stable per-cell derivation so one --seed reproduces every cell
    return seed * 1_000_003 + n * 1_009 + p


def cmd_matrix(args):
    matrix = _build_matrix(args.n, args.p, args.vars, args.proper)
    print(json.dumps(matrix.to_json()))
    return 0


def cmd_verify(args):
    reports = [grid_symbolic(args.nmax, args.pmax, proper=args.proper, skip_oversize=True)]
    if args.points:
        lo = 1 if args.proper else 0
        for n in range(lo, args.nmax + 1):
            for p in range(1, args.pmax + 1):
                reports.append(
                    random_point_check(
                        n, p, args.points, _point_seed(args.seed, n, p), args.proper
                    )
                )
    report = VerifyReport.merged(reports)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json_text())
            fh.write("\n")
    print(report.summary())
    return 0 if report.ok else 1


def cmd_identities(args):
    suites = SUITES if args.suite == "all" else (args.suite,)
    report = identity_suite(suites)
    print(report.summary())
    return 0 if report.ok else 1


def cmd_bench(args):
    engines = tuple(e for e in args.engines.split(",") if e)
    if not engines:
        raise ValueError("--engines must name at least one engine")
    for e in engines:
        if e not in ENGINES:
            raise ValueError(f"unknown engine {e!r}")
    rows = []
    for n in range(1, args.nmax + 1):
        for p in range(1, args.pmax + 1):
            reference = delta_multivariate(n, p)
            expanded = reference.expand()
            matrix = None
            for engine in engines:
                stats = {}
                t0 = time.perf_counter()
                if engine == "formula":
                    value = delta_multivariate(n, p)
                    peak = len(value.factors)
                    ok = value == reference
                elif engine == "blocktri":
                    value = det_block_recursive(n, p)
                    peak = len(value.factors)
                    ok = value == reference
                else:
                    if matrix is None:
                        matrix = build_general(n, p)
                    if engine == "cofactor":
                        value = det_cofactor(matrix)
                        peak = len(value.terms)
                    else:
                        value = det_bareiss(matrix, stats=stats)
                        peak = stats.get("peak_terms", len(value.terms))
                    ok = value == expanded
                ms = (time.perf_counter() - t0) * 1000.0
                if not ok:
                    raise ArithmeticError(
                        f"engine {engine} disagrees with the closed form at ({n},{p})"
                    )
                rows.append(
                    {
                        "n": n,
                        "p": p,
                        "dim": len(enumerate_weak(n, p)),
                        "engine": engine,
                        "milliseconds": f"{ms:.3f}",
                        "peak-term-count": peak,
                    }
                )
    fieldnames = ["n", "p", "dim", "engine", "milliseconds", "peak-term-count"]
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="compdet",
        description="Exact determinants of power-composition matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("compositions", help="list compositions in display order")
    pc.add_argument("n", type=int)
    pc.add_argument("p", type=int)
    pc.add_argument("--proper", action="store_true")
    pc.add_argument("--format", choices=("text", "json"), default="text")
    pc.set_defaults(func=cmd_compositions)

    pd = sub.add_parser("det", help="compute one determinant")
    pd.add_argument("n", type=int)
    pd.add_argument("p", type=int)
    pd.add_argument("--engine", choices=ENGINES)
    pd.add_argument("--proper", action="store_true")
    pd.add_argument("--vars", choices=VARS, default="general")
    pd.add_argument("--at", help="comma-separated integer point (implies integer output)")
    pd.add_argument("--format", choices=("text", "json"), default="text")
    pd.set_defaults(func=cmd_det)

    pm = sub.add_parser("matrix", help="dump one matrix as JSON with its labels")
    pm.add_argument("n", type=int)
    pm.add_argument("p", type=int)
    pm.add_argument("--proper", action="store_true")
    pm.add_argument("--vars", choices=VARS, default="general")
    pm.set_defaults(func=cmd_matrix)

    pv = sub.add_parser("verify", help="run a verification grid, write a JSON report")
    pv.add_argument("--nmax", type=int, default=4)
    pv.add_argument("--pmax", type=int, default=3)
    pv.add_argument("--proper", action="store_true")
    pv.add_argument("--points", type=int, default=0)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--out")
    pv.set_defaults(func=cmd_verify)

    pi = sub.add_parser("identities", help="run the fixed identity suites")
    pi.add_argument("--suite", choices=SUITES + ("all",), default="all")
    pi.set_defaults(func=cmd_identities)

    pb = sub.add_parser("bench", help="time engines over a grid, emit CSV")
    pb.add_argument("--nmax", type=int, default=4)
    pb.add_argument("--pmax", type=int, default=3)
    pb.add_argument("--engines", default="bareiss,formula")
    pb.add_argument("--out")
    pb.set_defaults(func=cmd_bench)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DimensionTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NotDivisible, ResidualDenominator, BlockNotZero, ArithmeticError) as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 5
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
