"""Command-line interface: one entry point over all library capabilities.

Subcommands: count, sample, central {check,solve,equiv}, classify, diagram,
gb {classify,estimate,harmonic,critical,contributing}, conjecture2, validate.

Exit codes: 0 success, 1 a requested check failed (validate / gb harmonic /
central check / central equiv reporting false), 2 usage error, 3 resource
guard abort.  Reports are deterministic for a fixed argv: exact rationals
serialize as strings like "14/3", floats are rounded to 15 significant
digits, JSON keys are sorted, and rows use a canonical order.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .central import (NotCentralError, SingularModelError, are_equivalent,
                      central_check, solve_central)
from .classify import AmbiguousClassError, ClassifyError, classify, drift_diagram
from .conjecture import conjecture2_nullspace, minimal_refutation_length
from .counting import DEFAULT_GUARD, ResourceGuardError, count_walks, sample_walk
from .gb import (GBParams, check_harmonicity, gb_classify, gb_contributing,
                 gb_critical_points, gb_estimate, gb_kappa_V)
from .stepset import (StepSet, StepSetError, as_fraction, builtin_model, drift,
                      stepset_from_json)
from .validate import validate_excursions, validate_totals

USAGE_ERROR, CHECK_FAILED, GUARD_ABORT = 2, 1, 3


class _CliError(Exception):
    def __init__(self, message: str, code: int = USAGE_ERROR):
        super().__init__(message)
        self.code = code


def _jsonify(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return float(f"{value:.15g}")
    if isinstance(value, dict):
        return {str(k): _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    return value


def _emit(payload, fmt: str, csv_rows=None, csv_header=None) -> None:
    if fmt == "json":
        print(json.dumps(_jsonify(payload), sort_keys=True))
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if csv_header:
        writer.writerow(csv_header)
    for row in csv_rows if csv_rows is not None else []:
        writer.writerow([_csv_cell(x) for x in row])
    sys.stdout.write(buf.getvalue())


def _csv_cell(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return f"{x:.15g}"
    return x


def _add_model_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", help="built-in model name (gb, tandem, gessel, simple)")
    parser.add_argument("--a", default="1", help="weight parameter a as p/q")
    parser.add_argument("--b", default="1", help="weight parameter b as p/q")
    parser.add_argument("--json", dest="json_spec",
                        help="path to a step-set JSON file (or inline JSON)")


def _resolve_model(args) -> StepSet:
    if args.json_spec:
        if args.model:
            raise _CliError("pass exactly one of --model and --json")
        text = args.json_spec
        if not text.lstrip().startswith("{"):
            with open(text, "r", encoding="utf-8") as handle:
                text = handle.read()
        return stepset_from_json(text)
    if not args.model:
        raise _CliError("a model is required: --model NAME or --json PATH")
    return builtin_model(args.model, as_fraction(args.a), as_fraction(args.b))


def _parse_point(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise _CliError(f"bad point {text!r}; expected comma-separated integers") from exc


def _parse_range(text: str) -> list[Fraction]:
    try:
        lo_s, hi_s, step_s = text.split(":")
        lo, hi, step = as_fraction(lo_s), as_fraction(hi_s), as_fraction(step_s)
    except (ValueError, StepSetError) as exc:
        raise _CliError(f"bad range {text!r}; expected lo:hi:step") from exc
    if step <= 0 or hi < lo:
        raise _CliError(f"bad range {text!r}")
    out, v = [], lo
    while v <= hi:
        out.append(v)
        v += step
    return out


def _cmd_count(args) -> int:
    model = _resolve_model(args)
    start = _parse_point(args.start)
    origin = (0,) * model.dimension
    table = count_walks(model, start, args.n, mode=args.mode,
                        track=[origin], guard=args.guard)
    totals = [table.total(n) for n in range(args.n + 1)]
    excursions = [table.endpoint(origin, n) for n in range(args.n + 1)]
    if args.mode == "scaled":
        totals = [float(t) for t in totals]
        excursions = [float(e) for e in excursions]
    payload = {"mode": args.mode, "n_max": args.n, "start": list(start),
               "totals": totals, "origin_counts": excursions}
    rows = [(n, totals[n], excursions[n]) for n in range(args.n + 1)]
    _emit(payload, args.emit, rows, ("n", "total", "origin_count"))
    return 0


def _cmd_sample(args) -> int:
    model = _resolve_model(args)
    start = _parse_point(args.start)
    mode = args.mode or ("exact" if args.n <= 120 else "scaled")
    table = count_walks(model, start, args.n, mode=mode,
                        keep_layers=(mode == "scaled"), guard=args.guard)
    walk = sample_walk(table, args.n, args.seed)
    points = walk.points()
    payload = {"seed": args.seed, "start": list(start), "mode": mode,
               "steps": [list(s) for s in walk.steps],
               "end": list(walk.end)}
    rows = [(k, *step, *points[k + 1]) for k, step in enumerate(walk.steps)]
    coords = tuple(f"x{k+1}" for k in range(model.dimension))
    _emit(payload, args.emit, rows,
          ("index", *(f"d{c}" for c in coords), *coords))
    return 0


def _cmd_central(args) -> int:
    model = _resolve_model(args)
    if args.action == "check":
        report = central_check(model)
        _emit(report, args.emit,
              [(report["central"],)], ("central",))
        return 0 if report["central"] else CHECK_FAILED
    if args.action == "solve":
        dec = solve_central(model)
        payload = {
            "alpha": [{str(k): q for k, q in enumerate(m.exponents) if q}
                      for m in dec.alpha],
            "beta": {str(k): q for k, q in enumerate(dec.beta.exponents) if q},
            "alpha_values": list(dec.alpha_values()),
            "beta_value": dec.beta_value(),
            "alpha_exact": [x if x is not None else None for x in dec.alpha_exact()],
            "beta_exact": dec.beta_exact(),
        }
        _emit(payload, args.emit,
              [("alpha%d" % (k + 1), v) for k, v in enumerate(dec.alpha_values())]
              + [("beta", dec.beta_value())],
              ("constant", "value"))
        return 0
    # equiv
    if args.json2:
        text = args.json2
        if not text.lstrip().startswith("{"):
            with open(text, "r", encoding="utf-8") as handle:
                text = handle.read()
        other = stepset_from_json(text)
    else:
        other = builtin_model(args.model, as_fraction(args.a2), as_fraction(args.b2))
    equivalent = are_equivalent(model, other)
    _emit({"equivalent": equivalent}, args.emit, [(equivalent,)], ("equivalent",))
    return 0 if equivalent else CHECK_FAILED


def _cmd_classify(args) -> int:
    model = _resolve_model(args)
    result = classify(model, on_ambiguity="report")
    dx, dy = result.drift
    payload = {
        "class": result.family,
        "rho": result.rho_exact if result.rho_exact is not None else result.rho,
        "alpha": result.alpha_exact if result.alpha_exact is not None else result.alpha,
        "critical_point": list(result.critical_point),
        "minimizer": list(result.minimizer),
        "boundary_minimizers": list(result.boundary),
        "covariance": result.covariance,
        "p1": result.p1,
        "drift": [dx, dy],
        "ambiguities": list(result.ambiguities),
    }
    _emit(payload, args.emit, [(result.family, payload["rho"], payload["alpha"])],
          ("class", "rho", "alpha"))
    return 0


def _cmd_diagram(args) -> int:
    if not args.model:
        raise _CliError("diagram requires --model NAME")
    a_values = _parse_range(args.a_range)
    b_values = _parse_range(args.b_range)
    if len(a_values) * len(b_values) > args.guard:
        raise ResourceGuardError("diagram grid exceeds the resource guard")
    rows = drift_diagram(lambda a, b: builtin_model(args.model, a, b),
                         a_values, b_values)
    payload = {"model": args.model, "cells": rows}
    _emit(payload, args.emit,
          [(r["a"], r["b"], r["dx"], r["dy"], r["class"]) for r in rows],
          ("a", "b", "dx", "dy", "class"))
    return 0


def _cmd_gb(args) -> int:
    a, b = as_fraction(args.a), as_fraction(args.b)
    if args.action == "classify":
        cls = gb_classify(a, b)
        payload = {"class": cls.family, "label": cls.label,
                   "rho": cls.rho, "alpha": cls.alpha}
        _emit(payload, args.emit, [(cls.family, cls.label, cls.rho, cls.alpha)],
              ("class", "label", "rho", "alpha"))
        return 0
    if args.action == "estimate":
        params = GBParams(a, b, args.i, args.j)
        est = gb_estimate(params, args.n)
        kappa, v_even, v_odd = gb_kappa_V(params)
        payload = {"n": args.n, "log2": est.log2() if not est.is_zero() else None,
                   "mantissa": est.man, "exponent2": est.exp,
                   "kappa": kappa, "V_even": v_even, "V_odd": v_odd}
        _emit(payload, args.emit, [(args.n, est.man, est.exp)],
              ("n", "mantissa", "exponent2"))
        return 0
    if args.action == "harmonic":
        ok = check_harmonicity(GBParams(a, b), args.grid)
        _emit({"harmonic": ok, "grid": args.grid}, args.emit,
              [(ok, args.grid)], ("harmonic", "grid"))
        return 0 if ok else CHECK_FAILED
    if args.action == "critical":
        points = gb_critical_points(a, b)
        payload = {"points": [
            {"label": p.label, "stratum": p.stratum, "x": p.xy[0], "y": p.xy[1],
             "t": p.t, "growth": p.growth} for p in points]}
        _emit(payload, args.emit,
              [(p.label, p.stratum, p.xy[0], p.xy[1], p.t, p.growth) for p in points],
              ("label", "stratum", "x", "y", "t", "growth"))
        return 0
    # contributing
    labels = sorted(gb_contributing(a, b))
    _emit({"contributing": labels}, args.emit, [(lbl,) for lbl in labels],
          ("label",))
    return 0


def _cmd_conjecture2(args) -> int:
    model = _resolve_model(args)
    report = conjecture2_nullspace(model, args.cap, guard=args.guard)
    n_s = minimal_refutation_length(model, args.cap, guard=args.guard)
    payload = {
        "cap": args.cap,
        "verified": report.verified,
        "nullity": report.nullity,
        "basis": [[q for q in vec] for vec in report.basis],
        "N_S": n_s,
    }
    _emit(payload, args.emit,
          [(args.cap, report.verified, report.nullity, n_s)],
          ("cap", "verified", "nullity", "N_S"))
    return 0


def _cmd_validate(args) -> int:
    params = GBParams(as_fraction(args.a), as_fraction(args.b), args.i, args.j)
    runner = validate_totals if args.what == "totals" else validate_excursions
    report = runner(params, args.n_max, args.tolerance, guard=args.guard)
    payload = report.summary()
    _emit(payload, args.emit,
          [(report.what, report.final_ratio, report.error_slope, report.passed)],
          ("what", "final_ratio", "error_slope", "passed"))
    return 0 if report.passed else CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orthantwalks",
        description="Weighted lattice walks in orthants: counting, central "
                    "weightings, and universality classes.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--emit", choices=("json", "csv"), default="json")
        p.add_argument("--guard", type=int, default=DEFAULT_GUARD,
                       help="maximum number of retained table entries")
        p.add_argument("--threads", type=int, default=1,
                       help="reserved; all operations are single-threaded and pure")

    p = sub.add_parser("count", help="count confined walks by length")
    _add_model_options(p)
    p.add_argument("--start", default="0,0")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "scaled"), default="exact")
    common(p)
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("sample", help="draw a random confined walk")
    _add_model_options(p)
    p.add_argument("--start", default="0,0")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("exact", "scaled"))
    common(p)
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("central", help="centrality checks and the alpha/beta solve")
    p.add_argument("action", choices=("check", "solve", "equiv"))
    _add_model_options(p)
    p.add_argument("--a2", default="1", help="second weighting parameter a (equiv)")
    p.add_argument("--b2", default="1", help="second weighting parameter b (equiv)")
    p.add_argument("--json2", help="second step-set JSON (equiv)")
    common(p)
    p.set_defaults(handler=_cmd_central)

    p = sub.add_parser("classify", help="universality class by convex minimization")
    _add_model_options(p)
    common(p)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("diagram", help="class of every cell of an (a, b) grid")
    p.add_argument("--model", required=True)
    p.add_argument("--a-range", required=True, help="lo:hi:step with exact rationals")
    p.add_argument("--b-range", required=True, help="lo:hi:step with exact rationals")
    common(p)
    p.set_defaults(handler=_cmd_diagram)

    p = sub.add_parser("gb", help="closed-form GB asymptotics")
    p.add_argument("action", choices=("classify", "estimate", "harmonic",
                                      "critical", "contributing"))
    p.add_argument("--a", default="1")
    p.add_argument("--b", default="1")
    p.add_argument("--i", type=int, default=0)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--grid", type=int, default=20)
    common(p)
    p.set_defaults(handler=_cmd_gb)

    p = sub.add_parser("conjecture2", help="null space of the walk-count system")
    _add_model_options(p)
    p.add_argument("--cap", type=int, default=4)
    common(p)
    p.set_defaults(handler=_cmd_conjecture2)

    p = sub.add_parser("validate", help="counts vs closed-form asymptotics")
    p.add_argument("--model", default="gb", choices=("gb",),
                   help="closed forms exist for the GB model only")
    p.add_argument("--a", default="1")
    p.add_argument("--b", default="1")
    p.add_argument("--i", type=int, default=0)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--what", choices=("totals", "excursions"), default="totals")
    p.add_argument("--tolerance", type=float, default=0.05)
    common(p)
    p.set_defaults(handler=_cmd_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors and 0 on --help
        return int(exc.code) if exc.code else 0
    try:
        return args.handler(args)
    except ResourceGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return GUARD_ABORT
    except (_CliError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (StepSetError, NotCentralError, SingularModelError, ClassifyError,
            AmbiguousClassError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
