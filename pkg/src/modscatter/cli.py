"""Command line front end.

Subcommands cover the whole library: root counts of x^2 == -1 (mod q),
scattering-fraction listings, counting functions against their growth laws,
density histograms, geodesic traces, and equivalence witnesses.  Output is
CSV (default) or JSON, to stdout or --out.

Exit codes: 0 success, 2 invalid arguments, 3 precondition violation
(e.g. --t0 at most 1), 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import arith, counting, hyperbolic, lfunction, scatterset

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_RESOURCE = 4


class ResourceCapExceeded(Exception):
    pass


def _fraction_arg(text: str) -> Fraction:
    num, _, den = text.partition("/")
    try:
        w = Fraction(int(num), int(den) if den else 1)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a fraction p/q, got {text!r}")
    if not 0 <= w < 1:
        raise argparse.ArgumentTypeError(f"fraction must lie in [0, 1), got {text!r}")
    return w


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return n


def _cell(v):
    if isinstance(v, float):
        return format(v, ".10g")
    if isinstance(v, (list, tuple)):
        return ";".join(str(x) for x in v)
    return v


def _emit(columns: list[str], rows: list[dict], args) -> None:
    if args.format == "json":
        text = json.dumps([{c: r[c] for c in columns} for r in rows], indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_cell(r[c]) for c in columns])
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_cap(n: int, args, what: str) -> None:
    if n > args.limit:
        raise ResourceCapExceeded(f"{what} {n} exceeds --limit {args.limit}")


def _cmd_sq(args) -> None:
    last = args.to if args.to is not None else args.q
    if last < args.q:
        raise ValueError("--to must not be below q")
    _check_cap(last - args.q + 1, args, "row count")
    rows = []
    for q in range(args.q, last + 1):
        if args.brute:
            sols = arith.sqrt_minus_one_brute(q)
            s = 1 if q == 1 else len(sols)
        else:
            s = arith.count_sqrt_minus_one(q)
            sols = arith.sqrt_minus_one_crt(q) if (s and q > 1) else []
        rows.append({"q": q, "s": s, "solutions": sols})
    _emit(["q", "s", "solutions"], rows, args)


def _fraction_rows(ws, t0: float) -> list[dict]:
    rows = []
    for w in ws:
        rec = scatterset.fraction_record(w, t0)
        rows.append(
            {
                "q": rec["q"],
                "p": rec["p"],
                "class": rec["class"],
                "sojourn": rec["sojourn"],
            }
        )
    return rows


def _cmd_gq(args) -> None:
    _check_cap(args.q, args, "denominator")
    _require_t0(args.t0)
    members = scatterset.scatter_set(args.q).members
    _emit(["q", "p", "class", "sojourn"], _fraction_rows(members, args.t0), args)


def _cmd_g(args) -> None:
    _check_cap(args.first, args, "element count")
    _require_t0(args.t0)
    ws = scatterset.iter_fractions(args.first)
    _emit(["q", "p", "class", "sojourn"], _fraction_rows(ws, args.t0), args)


def _require_t0(t0: float) -> None:
    if t0 <= 1:
        raise ValueError(f"--t0 must exceed 1, got {t0}")


def _log_spaced(hi: float, points: int, lo: float = 10.0) -> list[int]:
    if points <= 1 or hi <= lo:
        return [int(math.floor(hi))]
    xs = np.geomspace(lo, hi, points)
    out = sorted({int(math.floor(v)) for v in xs})
    if out[-1] != int(math.floor(hi)):
        out.append(int(math.floor(hi)))
    return out


def _cmd_count(args) -> None:
    kind = args.kind
    if kind == "pi":
        if args.Y is None:
            raise ValueError("kind 'pi' needs --Y")
        _require_t0(args.t0)
        if args.points <= 1:
            ys = [args.Y]
        else:
            lo = min(4.0 * args.t0 * args.t0, args.Y)
            ys = [float(v) for v in np.geomspace(lo, args.Y, args.points)]
        thresholds = {y: counting.sojourn_threshold(y, args.t0) for y in ys}
        for k in thresholds.values():
            _check_cap(k, args, "sieve index")
        sums = counting.checkpoint_sums(thresholds.values())
        rows = [
            _report_row(kind, y, sums[thresholds[y]][2], args.t0) for y in ys
        ]
    else:
        if args.x is None:
            raise ValueError(f"kind {kind!r} needs --x")
        xs = _log_spaced(args.x, args.points)
        for x in xs:
            _check_cap(x, args, "sieve index")
        sums = counting.checkpoint_sums(xs)
        rows = []
        for x in xs:
            total, odd, members = sums[x]
            exact = {"S": total, "tau": odd, "psi": members}[kind]
            rows.append(_report_row(kind, float(x), exact, args.t0))
    _emit(["x", "exact", "predicted", "ratio", "abs_error"], rows, args)


def _report_row(kind: str, x: float, exact: int, t0: float) -> dict:
    predicted = counting.main_term(kind, x, t0)
    return {
        "x": x,
        "exact": exact,
        "predicted": predicted,
        "ratio": exact / predicted,
        "abs_error": abs(exact - predicted),
    }


def _cmd_histogram(args) -> None:
    _check_cap(args.first, args, "element count")
    if args.bins < 1:
        raise ValueError("--bins must be positive")
    values = np.fromiter(
        (float(w) for w in scatterset.iter_fractions(args.first)),
        dtype=np.float64,
        count=args.first,
    )
    edges = np.linspace(0.0, 1.0, args.bins + 1)
    counts, _ = np.histogram(values, bins=edges)
    rows = []
    for i in range(args.bins):
        rows.append(
            {
                "bin_left": float(edges[i]),
                "bin_right": float(edges[i + 1]),
                "count": int(counts[i]),
                "density": counts[i] * args.bins / args.first,
            }
        )
    _emit(["bin_left", "bin_right", "count", "density"], rows, args)


def _cmd_trace(args) -> None:
    _require_t0(args.t0)
    trace = hyperbolic.trace_sojourn(
        args.w, args.t0, step=args.step, tail_factor=args.tail_factor
    )
    measured = trace.measured_sojourn
    predicted = trace.predicted_sojourn
    if args.dump_samples:
        with open(args.dump_samples, "w") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(
                ["t", "x_lift", "y_lift", "x_reduced", "y_reduced", "in_core"]
            )
            x_lift = format(float(args.w), ".10g")
            for k in range(len(trace.t)):
                writer.writerow(
                    [
                        format(float(trace.t[k]), ".10g"),
                        x_lift,
                        format(float(trace.lift_y[k]), ".10g"),
                        format(float(trace.reduced[k].real), ".10g"),
                        format(float(trace.reduced[k].imag), ".10g"),
                        int(trace.in_core[k]),
                    ]
                )
    row = {
        "w": str(args.w),
        "q": args.w.denominator,
        "t0": args.t0,
        "step": args.step,
        "measured": measured,
        "predicted": predicted,
        "abs_gap": abs(measured - predicted),
    }
    _emit(["w", "q", "t0", "step", "measured", "predicted", "abs_gap"], [row], args)


def _cmd_series(args) -> None:
    _check_cap(args.terms, args, "truncation")
    rows = []
    table = counting.sieve_tables(args.terms)
    for s in args.s:
        direct = lfunction.series_by_sum(s, args.terms, table=table)
        euler = lfunction.series_by_euler_product(s, args.terms)
        closed = lfunction.series_by_zeta_identity(s)
        gap = max(
            abs(direct.value - euler.value),
            abs(euler.value - closed.value),
            abs(direct.value - closed.value),
        )
        rows.append(
            {
                "s": s,
                "F_direct": direct.value,
                "F_euler": euler.value,
                "F_closed": closed.value,
                "max_pairwise_gap": gap,
            }
        )
    _emit(["s", "F_direct", "F_euler", "F_closed", "max_pairwise_gap"], rows, args)


def _cmd_equiv(args) -> None:
    witness = scatterset.equivalence_witness(args.w1, args.w2)
    if witness is None:
        row = {"w1": str(args.w1), "w2": str(args.w2), "result": "distinct",
               "a": "", "b": "", "c": "", "d": ""}
    else:
        a, b, c, d = witness.astuple()
        row = {"w1": str(args.w1), "w2": str(args.w2), "result": "equivalent",
               "a": a, "b": b, "c": c, "d": d}
    _emit(["w1", "w2", "result", "a", "b", "c", "d"], [row], args)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--t0", type=float, default=2.0,
        help="horocycle height cutting off the cusp region (must exceed 1; default 2)",
    )
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="write output to this file")
    common.add_argument(
        "--threads", type=int, default=os.cpu_count() or 1,
        help="accepted for compatibility; computation is vectorised in-process",
    )
    common.add_argument(
        "--limit", type=int, default=200_000_000,
        help="largest sieve index / element count a command may request",
    )

    parser = argparse.ArgumentParser(
        prog="modscatter",
        description="Scattering geodesics of the modular surface: congruence "
        "data, counting laws, and sojourn-time numerics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sq", parents=[common],
                       help="solutions of p^2 == -1 (mod q); columns q,s,solutions")
    p.add_argument("q", type=_positive_int)
    p.add_argument("--to", type=_positive_int, default=None,
                   help="emit one row per modulus from q up to this value")
    p.add_argument("--brute", action="store_true",
                   help="use the exhaustive-scan oracle instead of the factorization route")
    p.set_defaults(func=_cmd_sq)

    p = sub.add_parser("gq", parents=[common],
                       help="scattering fractions of one denominator; columns q,p,class,sojourn")
    p.add_argument("q", type=_positive_int)
    p.set_defaults(func=_cmd_gq)

    p = sub.add_parser("G", parents=[common],
                       help="first N scattering fractions in family order")
    p.add_argument("--first", type=_positive_int, required=True)
    p.set_defaults(func=_cmd_g)

    p = sub.add_parser("count", parents=[common],
                       help="counting function vs. its first-order law; "
                            "columns x,exact,predicted,ratio,abs_error")
    p.add_argument("kind", choices=("S", "tau", "psi", "pi"),
                   help="S: roots over all moduli; tau: odd moduli only; "
                        "psi: scattering fractions by denominator; "
                        "pi: geodesics by sojourn bound (uses --Y and --t0)")
    p.add_argument("--x", type=float, default=None, help="evaluation point for S/tau/psi")
    p.add_argument("--Y", type=float, default=None, help="sojourn bound exp scale for pi")
    p.add_argument("--points", type=int, default=1,
                   help="emit this many log-spaced checkpoints up to the target")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("histogram", parents=[common],
                       help="equal-width histogram of the first N fractions; "
                            "columns bin_left,bin_right,count,density")
    p.add_argument("--first", type=_positive_int, required=True)
    p.add_argument("--bins", type=_positive_int, required=True)
    p.set_defaults(func=_cmd_histogram)

    p = sub.add_parser("trace", parents=[common],
                       help="numerically trace one geodesic and compare the measured "
                            "sojourn with 2*log(q*t0)")
    p.add_argument("w", type=_fraction_arg)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--tail-factor", type=float, default=10.0, dest="tail_factor")
    p.add_argument("--dump-samples", default=None,
                   help="write per-sample CSV (t,x_lift,y_lift,x_reduced,y_reduced,in_core)")
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("series", parents=[common],
                       help="compare the three evaluation routes of the root-count "
                            "Dirichlet series; columns s,F_direct,F_euler,F_closed,"
                            "max_pairwise_gap")
    p.add_argument("s", type=float, nargs="+", help="evaluation points (each > 1.5)")
    p.add_argument("--terms", type=_positive_int, default=10**6,
                   help="truncation for the direct sum and the Euler product")
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("equiv", parents=[common],
                       help="equivalence witness for two fractions, or 'distinct'")
    p.add_argument("w1", type=_fraction_arg)
    p.add_argument("w2", type=_fraction_arg)
    p.set_defaults(func=_cmd_equiv)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (counting.MemoryBudgetExceeded, ResourceCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    return EXIT_OK


def main_entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    main_entry()
