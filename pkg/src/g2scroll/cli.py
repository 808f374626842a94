"""Command-line interface.

Exit codes: 0 when everything checked passes, 1 on a theorem or
classification mismatch, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict

from .curve import make_curve
from .errors import G2Error, InputError, NoAdmissibleD, PreconditionViolated
from .instance import DEFAULT_P, InstanceSpec, build_instance, default_f, format_divisor, load_spec
from .picard import check_type_bounds
from .scroll import cone_instance, scroll_type, scroll_type_from_fibers
from .verify import (
    classify_s,
    classify_v,
    rows_to_csv,
    rows_to_json,
    run_suite,
    suite_ok,
    trisecant_scan,
    verify_ideal_sum,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(InputError):
    pass


def parse_int_list(text: str) -> list[int]:
    """``"6..10"`` (inclusive range) or ``"6,8,10"``."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..")
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot read integer list {text!r}") from exc
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def parse_coeffs(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--f wants comma-separated integers c0,...,c5, got {text!r}") from exc


def _spec_from_args(args) -> InstanceSpec:
    if getattr(args, "instance", None):
        return load_spec(args.instance)
    f = parse_coeffs(args.f) if args.f else None
    return InstanceSpec(p=args.p, f=f, d=args.d, H=args.hc, D=args.dd, seed=args.seed)


def _write(path: str, text: str) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _emit(args, payload: dict | list, csv_rows: list[dict] | None = None) -> None:
    if args.format == "csv" and csv_rows is not None:
        text = rows_to_csv(csv_rows)
    else:
        text = json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n"
    if getattr(args, "out", None):
        _write(args.out, text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_scroll_type(args) -> int:
    inst = build_instance(_spec_from_args(args), require_admissible=False)
    out = {
        "spec": asdict(inst.spec),
        "stype_S": str(scroll_type(inst.emb, inst.K)),
        "stype_V": str(scroll_type(inst.emb, inst.D)),
    }
    ok = True
    if args.geometric:
        out["geometric_S"] = str(scroll_type_from_fibers(inst.emb, inst.K, inst.rng("geo-S")))
        out["geometric_V"] = str(scroll_type_from_fibers(inst.emb, inst.D, inst.rng("geo-V")))
        ok = out["geometric_S"] == out["stype_S"] and out["geometric_V"] == out["stype_V"]
    _emit(args, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(args) -> int:
    inst = build_instance(_spec_from_args(args), require_admissible=False)
    out = {"spec": asdict(inst.spec), "S": classify_s(inst, args.geometric), "V": classify_v(inst, args.geometric)}
    _emit(args, out)
    return EXIT_OK if out["S"]["match"] and out["V"]["match"] else EXIT_FAIL


def cmd_verify(args) -> int:
    inst = build_instance(_spec_from_args(args), require_admissible=True)
    rep = verify_ideal_sum(inst, qc_method=args.qc_method)
    row = {"p": inst.curve.p, "d": inst.d, "seed": inst.seed, **rep.dims,
           "stype_S": rep.stype_S, "stype_V": rep.stype_V, "holds": rep.theorem_holds,
           "ms": rep.timings.get("total_ms", 0)}
    _emit(args, rep.to_dict(), [row])
    return EXIT_OK if rep.theorem_holds else EXIT_FAIL


def cmd_trisecant(args) -> int:
    inst = build_instance(_spec_from_args(args), require_admissible=False)
    bad = trisecant_scan(inst, args.trials)
    _emit(args, {"spec": asdict(inst.spec), "trials": args.trials, "collinear_triples": bad})
    return EXIT_OK if bad == 0 else EXIT_FAIL


def cmd_suite(args) -> int:
    ds = parse_int_list(args.d_range)
    seeds = parse_int_list(args.seeds)
    primes = parse_int_list(args.primes)
    rows = run_suite(
        ds, seeds, primes, jobs=args.jobs, trisecant_trials=args.trials,
        sv_points=args.sv_points, timings=not args.no_timings,
    )
    text = rows_to_csv(rows) if args.format == "csv" else rows_to_json(rows) + "\n"
    if args.out:
        _write(args.out, text)
        figdir = args.figures or os.path.dirname(os.path.abspath(args.out))
        stem = os.path.splitext(os.path.basename(args.out))[0]
    else:
        sys.stdout.write(text)
        figdir, stem = args.figures, "suite"
    if figdir and not args.no_figures:
        from .plotting import write_suite_figures

        for path in write_suite_figures(rows, figdir, stem):
            print(f"wrote {path}", file=sys.stderr)
    failed = [r for r in rows if not (r.get("holds") and r.get("classification_match"))]
    for r in failed:
        print(f"FAIL p={r['p']} d={r['d']} seed={r['seed']}: {r.get('error') or 'mismatch'}", file=sys.stderr)
    return EXIT_OK if suite_ok(rows) else EXIT_FAIL


def cmd_cone(args) -> int:
    f = parse_coeffs(args.f) if args.f else list(default_f(args.p, args.seed))
    C = make_curve(args.p, f)
    inst = cone_instance(args.e1, args.e2, C, seed=args.seed)
    t = scroll_type(inst.emb, inst.D)
    geo = scroll_type_from_fibers(inst.emb, inst.D, inst.rng("geo-V"))
    out = {
        "p": C.p, "f": list(C.f), "d": inst.d, "H": format_divisor(inst.emb.H.div),
        "D": format_divisor(inst.D.div), "seed": args.seed, "stype_V": str(t), "geometric_V": str(geo),
        "bounds_ok": check_type_bounds(t, singular_through_C=True),
    }
    _emit(args, out)
    return EXIT_OK if t == geo and out["bounds_ok"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=DEFAULT_P, help="prime field size (default %(default)s)")
    common.add_argument("--f", help="coefficients c0,...,c5 of f (default x^5 - x)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), help="default: csv for a .csv --out, else json")
    common.add_argument("--out", help="write the report to this file instead of stdout")

    inst = argparse.ArgumentParser(add_help=False)
    inst.add_argument("--d", type=int, help="degree of H")
    inst.add_argument("--hc", help="divisor expression for H (default rand(d))")
    inst.add_argument("--dd", default="random", help="divisor expression for D, or 'random'")
    inst.add_argument("--instance", help="JSON instance file {p, f, d, H, D, seed}")

    parser = argparse.ArgumentParser(prog="g2scroll", description="Scrolls on embedded genus-2 curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scroll-type", parents=[common, inst], help="scroll types of S and V")
    p.add_argument("--geometric", action="store_true", help="also read the types off the fibers")
    p.set_defaults(func=cmd_scroll_type)

    p = sub.add_parser("classify", parents=[common, inst], help="table prediction versus computed type")
    p.add_argument("--geometric", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", parents=[common, inst], help="check Q_S + Q_V = Q_C")
    p.add_argument("--qc-method", choices=("auto", "points", "multiplication"), default="auto")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("trisecant", parents=[common, inst], help="count collinear triples of curve points")
    p.add_argument("--trials", type=int, default=500)
    p.set_defaults(func=cmd_trisecant)

    p = sub.add_parser("suite", parents=[common], help="verify a grid of instances")
    p.add_argument("--d-range", default="6..10", help="degrees, '6..10' or '6,8'")
    p.add_argument("--seeds", default="0..4")
    p.add_argument("--primes", default="10007,7919")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--trials", type=int, default=0, help="trisecant triples per cell")
    p.add_argument("--sv-points", type=int, default=0, help="S-off-C points tested against Q_V per cell")
    p.add_argument("--no-timings", action="store_true", help="write ms = 0 for byte-identical reruns")
    p.add_argument("--figures", help="directory for PNG figures (default: next to --out)")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("cone", parents=[common], help="instance whose g13-scroll is the cone of type (e1,e2,0)")
    p.add_argument("--e1", type=int, required=True)
    p.add_argument("--e2", type=int, required=True)
    p.set_defaults(func=cmd_cone)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.format is None:
        args.format = "csv" if (args.out or "").endswith(".csv") else "json"
    try:
        return args.func(args)
    except (InputError, NoAdmissibleD, PreconditionViolated, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except G2Error as exc:
        print(f"failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
