"""Command-line front end.

Every subcommand writes one table (CSV with a single header row, or JSON) to
stdout or ``--out``.  Exit status: 0 success, 1 a numerical check failed,
2 bad usage or a violated precondition.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Sequence

import numpy as np

from . import chu, distribution, selection, theory
from .numtheory import euler_phi, factorize

CLI_MAX_N = 10**7
EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def fmt_float(x: float) -> str:
    s = f"{x:.12f}"
    return "0.000000000000" if s == "-0.000000000000" else s


def fmt_number(x: float) -> str:
    """Integers print bare, other reals in shortest round-trip form."""
    if float(x).is_integer():
        return str(int(x))
    return repr(float(x))


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    if v is None:
        return ""
    return str(v)


def emit(rows: list[dict[str, Any]], header: Sequence[str], fmt: str, out: str | None) -> None:
    if fmt == "json":
        text = json.dumps([{k: r[k] for k in header} for r in rows], indent=2, ensure_ascii=False) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_cell(r[k]) for k in header])
        text = buf.getvalue()
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _length(value: str) -> int:
    n = int(value)
    if not 2 <= n <= CLI_MAX_N:
        raise argparse.ArgumentTypeError(f"N must lie in [2, {CLI_MAX_N}], got {n}")
    return n


def _int_list(value: str) -> list[int]:
    try:
        return [int(v) for v in value.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {value!r}") from exc


def _range_list(value: str) -> list[int]:
    """``LO:HI`` (inclusive), several joined by commas."""
    out: list[int] = []
    for part in value.split(","):
        lo, sep, hi = part.partition(":")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected LO:HI, got {part!r}")
        out.extend(range(int(lo), int(hi) + 1))
    return out


def _float_list(value: str) -> list[float]:
    return [float(v) for v in value.split(",") if v.strip()]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    seq = chu.generate(args.n, args.r)
    rows = [{"k": k, "re": re, "im": im} for k, re, im in chu.sequence_rows(seq)]
    emit(rows, ["k", "re", "im"], args.format, args.out)
    return EXIT_OK


def _lags(args, n: int) -> list[int]:
    if args.lag is None:
        return list(range(n))
    if not -n <= args.lag < n:
        raise UsageError(f"lag out of range for N={n}: {args.lag}")
    return [args.lag % n]


def _corr_rows(n: int, r: int, s: int, lags: list[int], method: str) -> tuple[list[dict], float]:
    seq_r, seq_s = chu.generate(n, r), chu.generate(n, s)
    values = chu.cross_correlation_all_lags(seq_r, seq_s, method=method).values
    profile = theory.pair_profile(n, r, s)
    rows, worst = [], 0.0
    for tau in lags:
        v = complex(values[tau])
        mag = abs(v)
        closed = theory.magnitude_closed_form(profile, tau)
        worst = max(worst, abs(mag - closed))
        rows.append({"tau": tau, "re": v.real, "im": v.imag, "mag": mag, "closed_form_mag": closed})
    return rows, worst


CORR_HEADER = ["tau", "re", "im", "mag", "closed_form_mag"]


def cmd_acorr(args) -> int:
    rows, worst = _corr_rows(args.n, args.r, args.r, _lags(args, args.n), args.method)
    emit(rows, CORR_HEADER, args.format, args.out)
    if args.check and worst > 1e-6 * args.n:
        print(f"check failed: max deviation {worst:.3e} > {1e-6 * args.n:.3e}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def cmd_xcorr(args) -> int:
    rows, worst = _corr_rows(args.n, args.r, args.s, _lags(args, args.n), args.method)
    emit(rows, CORR_HEADER, args.format, args.out)
    if args.check and worst > 1e-6 * args.n:
        print(f"check failed: max deviation {worst:.3e} > {1e-6 * args.n:.3e}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def cmd_dist(args) -> int:
    n = args.n
    mode = args.mode or "both"
    closed = distribution.distribution_closed(n) if mode in ("closed", "both") else None
    brute = None
    if mode in ("brute", "both"):
        s = args.s if args.s is not None else 1
        brute = distribution.distribution_bruteforce(n, s)

    if args.export:
        dist = closed if closed is not None else brute
        ok = distribution.totient_check(dist)
        rows = [{"N": n, "x": x, "count": c, "phi_sum_check": ok} for x, c in sorted(dist.counts.items())]
        emit(rows, ["N", "x", "count", "phi_sum_check"], args.format, args.out)
        return EXIT_OK if ok else EXIT_CHECK

    keys = sorted(set((closed or brute).counts) | set((brute or closed).counts))
    rows, mismatch = [], False
    for x in keys:
        cc = closed.count(x) if closed is not None else None
        cb = brute.count(x) if brute is not None else None
        match = cc == cb if (closed is not None and brute is not None) else None
        mismatch |= match is False
        rows.append({"x": x, "count_closed": cc, "count_brute": cb, "match": match})
    emit(rows, ["x", "count_closed", "count_brute", "match"], args.format, args.out)
    if mode == "both" and mismatch:
        print("check failed: closed form and brute force disagree", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


SELECT_HEADER = ["N", "theta_sq", "x_min", "x_phi_min", "lower", "upper", "achieved", "set"]


def cmd_select(args) -> int:
    n, q = args.n, args.theta_sq
    if args.exhaustive:
        p = selection.plan(n, q)
        chosen = selection.max_set_exhaustive(n, q)
        status = selection.STATUS_SEARCH_COMPLETE
    else:
        p = selection.construct_set(n, q, budget=args.budget)
        chosen, status = p.selected, p.status
    ok = selection.verify_set(n, chosen, q).ok
    row = {
        "N": n,
        "theta_sq": fmt_number(q),
        "x_min": p.x_min,
        "x_phi_min": p.x_phi_min,
        "lower": p.lower_bound,
        "upper": p.upper_bound,
        "achieved": len(chosen),
        "set": ";".join(str(a) for a in chosen),
    }
    emit([row], SELECT_HEADER, args.format, args.out)
    if status == selection.STATUS_BUDGET_EXHAUSTED:
        print(f"note: search budget exhausted after {p.visits} visits", file=sys.stderr)
    if not ok:
        print("check failed: selected set violates the budget", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


SWEEP_HEADER = ["N", "theta_norm_sq", "theta_sq", "lower", "upper", "achieved", "status", "prime_factors"]


def sweep_budget(n: int, theta_norm_sq: float) -> int:
    return min(max(round(theta_norm_sq * n * n), n), n * n)


def sweep_row(n: int, theta_norm_sq: float, budget: int = selection.DEFAULT_VISIT_BUDGET) -> dict[str, Any]:
    q = sweep_budget(n, theta_norm_sq)
    p = selection.construct_set(n, q, budget=budget)
    return {
        "N": n,
        "theta_norm_sq": fmt_number(theta_norm_sq),
        "theta_sq": q,
        "lower": p.lower_bound,
        "upper": p.upper_bound,
        "achieved": p.achieved,
        "status": p.status,
        "prime_factors": factorize(n).format(),
        "consistent": p.consistent,
    }


def _sweep_cell(task):
    return sweep_row(*task)


def sweep_rows(ns: Sequence[int], thetas: Sequence[float], jobs: int = 1,
               budget: int = selection.DEFAULT_VISIT_BUDGET) -> list[dict[str, Any]]:
    tasks = [(n, t, budget) for n in sorted(set(ns)) for t in sorted(set(thetas))]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_cell, tasks, chunksize=4))
    return [_sweep_cell(t) for t in tasks]


def cmd_sweep(args) -> int:
    ns = args.n_list if args.n_list is not None else args.n_range
    for n in ns:
        _length(str(n))
    rows = sweep_rows(ns, args.theta_norm_sq, jobs=args.jobs, budget=args.budget)
    emit(rows, SWEEP_HEADER, args.format, args.out)
    bad = [r for r in rows if not r["consistent"]]
    if bad:
        print(f"check failed: {len(bad)} rows break lower <= achieved <= upper", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def cmd_factor_table(args) -> int:
    rows = []
    for n in args.n_list:
        if n < 1:
            raise UsageError(f"N must be positive, got {n}")
        rows.append({"N": n, "prime_factors": factorize(n).format(), "phi": euler_phi(n)})
    emit(rows, ["N", "prime_factors", "phi"], args.format, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="FILE", help="write to FILE instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(prog="chuxcorr", description="Chu sequence correlation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a Chu sequence")
    p.add_argument("--n", type=_length, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_gen)

    for name, func, pair in (("acorr", cmd_acorr, False), ("xcorr", cmd_xcorr, True)):
        p = sub.add_parser(name, parents=[common], help=f"periodic {'cross' if pair else 'auto'}-correlation")
        p.add_argument("--n", type=_length, required=True)
        p.add_argument("--r", type=int, required=True)
        if pair:
            p.add_argument("--s", type=int, required=True)
        g = p.add_mutually_exclusive_group()
        g.add_argument("--lag", type=int)
        g.add_argument("--all", action="store_true", help="every lag (default)")
        p.add_argument("--check", action="store_true", help="fail if brute force and closed form differ")
        p.add_argument("--method", choices=("direct", "fft"), default="direct")
        p.set_defaults(func=func)

    p = sub.add_parser("dist", parents=[common], help="maximum cross-correlation distribution")
    p.add_argument("--n", type=_length, required=True)
    p.add_argument("--s", type=int, help="reference root for the brute-force scan (default 1)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--brute", dest="mode", action="store_const", const="brute")
    g.add_argument("--closed", dest="mode", action="store_const", const="closed")
    g.add_argument("--both", dest="mode", action="store_const", const="both")
    p.add_argument("--export", action="store_true", help="emit N,x,count,phi_sum_check rows")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("select", parents=[common], help="choose roots under a cross-correlation budget")
    p.add_argument("--n", type=_length, required=True)
    p.add_argument("--theta-sq", type=float, required=True, help="squared magnitude budget in [N, N^2]")
    p.add_argument("--exhaustive", action="store_true", help="exact maximum set (N <= 200)")
    p.add_argument("--budget", type=int, default=selection.DEFAULT_VISIT_BUDGET, help="search visit budget")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("sweep", parents=[common], help="set sizes over lengths and normalized budgets")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n-list", type=_int_list)
    g.add_argument("--n-range", type=_range_list, help="LO:HI inclusive, comma-separated for several")
    p.add_argument("--theta-norm-sq", type=_float_list, required=True, help="comma-separated budgets / N^2")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=selection.DEFAULT_VISIT_BUDGET)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("factor-table", parents=[common], help="prime factorizations")
    p.add_argument("--n-list", type=_int_list, required=True)
    p.set_defaults(func=cmd_factor_table)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
