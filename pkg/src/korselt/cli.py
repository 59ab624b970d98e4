"""``korselt`` command line.

Exit codes: 0 success or check=true, 1 usage/input error, 2 verify or
``qset --method both`` mismatch, 3 check=false.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

from . import __version__
from .arith import BudgetError, RangeError, divides, format_rational, parse_rational, prime_divisors
from .closed_form import closed_form_q_ks, closed_form_z_ks, regime
from .core import FactorizationError, PairError, SemiprimePair, check_base, oracle_q_ks, oracle_z_ks
from .report import RunManifest, kset_json, rational_json, run_tabulate, run_verify
from .search import SearchFilter, b_korselt_set

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MISMATCH = 2
EXIT_FALSE = 3

TABULATE_COLUMNS = ["p", "q", "n", "regime", "q_weight", "z_weight"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _dump_json(obj, out):
    json.dump(obj, out, indent=2)
    out.write("\n")


def _families_text(entry) -> str:
    return ",".join(sorted(entry.families)) or "-"


def _witness_text(entry) -> str:
    return " ".join(f"{fam}({w.d_p},{w.d_q},{w.eps:+d})" for fam, w in entry.sources) or "-"


def _render_kset_table(kset, tag, out, header: str):
    pair = kset.pair
    out.write(f"{header} p={pair.p} q={pair.q} n={pair.n} regime={tag.label}\n")
    out.write(f"{'alpha':>14}  {'families':<10} witnesses (dp,dq,eps)\n")
    for e in kset.elements:
        out.write(f"{format_rational(e.alpha):>14}  {_families_text(e):<10} {_witness_text(e)}\n")
    out.write(f"weight: {len(kset)}\n")


def _render_kset_csv(kset, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["num", "den", "display", "families", "witnesses"])
    for e in kset.elements:
        w.writerow(
            [
                e.alpha.numerator,
                e.alpha.denominator,
                format_rational(e.alpha),
                _families_text(e),
                _witness_text(e),
            ]
        )


def _pair(p: int, q: int) -> SemiprimePair:
    return SemiprimePair(p, q)


def cmd_qset(args, out) -> int:
    pair = _pair(args.p, args.q)
    tag = regime(pair)
    method = args.method
    closed = closed_form_q_ks(pair) if method in ("closed", "both") else None
    oracle = oracle_q_ks(pair) if method in ("oracle", "both") else None
    shown = closed if closed is not None else oracle
    missing = extra = []
    if method == "both":
        o, c = set(oracle.values()), set(closed.values())
        missing, extra = sorted(o - c), sorted(c - o)
    mismatch = bool(missing or extra)

    if args.format == "json":
        doc = kset_json(shown, tag)
        doc["method"] = method
        if method == "both":
            doc["diff"] = {
                "missing_from_closed": [rational_json(a) for a in missing],
                "extra_in_closed": [rational_json(a) for a in extra],
            }
        _dump_json(doc, out)
    elif args.format == "csv":
        _render_kset_csv(shown, out)
    else:
        _render_kset_table(shown, tag, out, f"Q-Korselt set ({'oracle' if method == 'oracle' else 'closed form'})")
        if method == "both":
            if mismatch:
                out.write("MISMATCH vs oracle\n")
                out.write(f"  missing from closed: {' '.join(map(format_rational, missing)) or '-'}\n")
                out.write(f"  extra in closed:     {' '.join(map(format_rational, extra)) or '-'}\n")
            else:
                out.write(f"oracle agrees: {len(oracle)} elements identical\n")
    return EXIT_MISMATCH if mismatch else EXIT_OK


def cmd_zset(args, out) -> int:
    pair = _pair(args.p, args.q)
    if pair.q < 2 * pair.p:
        values, source = closed_form_z_ks(pair), "theorem"
        notice = None
    else:
        values, source = oracle_z_ks(pair), "oracle"
        notice = "closed form covers only q<2p; computed by the divisor-grid oracle"
    if args.format == "json":
        doc = {"p": pair.p, "q": pair.q, "n": pair.n, "regime": regime(pair).label, "source": source}
        if notice:
            doc["notice"] = notice
        doc["elements"] = values
        doc["weight"] = len(values)
        _dump_json(doc, out)
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["alpha", "source"])
        for a in values:
            w.writerow([a, source])
    else:
        out.write(f"Z-Korselt set p={pair.p} q={pair.q} n={pair.n} source={source}\n")
        if notice:
            out.write(f"notice: {notice}\n")
        out.write("{" + ", ".join(map(str, values)) + "}\n")
        out.write(f"weight: {len(values)}\n")
    return EXIT_OK


def cmd_check(args, out) -> int:
    n = args.n
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    alpha = parse_rational(args.alpha)
    primes = prime_divisors(n)
    verdict = check_base(n, primes, alpha)
    a1, a2 = alpha.numerator, alpha.denominator
    target = a2 * n - a1
    ledger = []
    for r in primes:
        d = a2 * r - a1
        ledger.append({"prime": r, "divisor": d, "dividend": target, "divides": divides(d, target)})
    reason = None
    if alpha == 0:
        reason = "alpha = 0 is excluded"
    elif alpha == n:
        reason = "alpha = n is excluded"
    if args.format == "json":
        doc = {"n": n, "alpha": rational_json(alpha), "prime_divisors": primes, "ledger": ledger, "verdict": verdict}
        if reason:
            doc["reason"] = reason
        _dump_json(doc, out)
    else:
        out.write("true\n" if verdict else "false\n")
        if reason:
            out.write(f"  {reason}\n")
        for row in ledger:
            mark = "yes" if row["divides"] else "no"
            out.write(f"  r={row['prime']}: {row['divisor']} | {row['dividend']}: {mark}\n")
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_verify(args, out) -> int:
    if args.pmax < 3:
        raise ValueError(f"--pmax {args.pmax} yields no prime pairs (need >= 3)")
    start = time.perf_counter()
    manifest = RunManifest(command=["korselt", *args.argv], version=__version__, pmax=args.pmax)
    sink = open(args.out, "w", encoding="utf-8", newline="\n") if args.out else None
    failures = []
    try:
        for rep in run_verify(args.pmax, args.jobs):
            manifest.pairs_checked += 1
            if not rep.ok:
                manifest.mismatches += 1
                failures.append(rep)
            if sink:
                sink.write(json.dumps(rep.as_dict(timing=args.timing)) + "\n")
        manifest.wall_time = time.perf_counter() - start
        if sink:
            sink.write(json.dumps(manifest.as_dict(timing=args.timing)) + "\n")
    finally:
        if sink:
            sink.close()
    for rep in failures:
        missing = " ".join(map(format_rational, rep.missing_from_closed)) or "-"
        extra = " ".join(map(format_rational, rep.extra_in_closed)) or "-"
        out.write(f"MISMATCH {rep.pair}: missing {missing}; extra {extra}\n")
    out.write(
        f"verified {manifest.pairs_checked} prime pairs p<q<={args.pmax}: "
        f"{manifest.mismatches} mismatches\n"
    )
    return EXIT_MISMATCH if manifest.mismatches else EXIT_OK


def cmd_tabulate(args, out) -> int:
    if args.pmax < 3:
        raise ValueError(f"--pmax {args.pmax} yields no prime pairs (need >= 3)")
    rows = list(run_tabulate(args.pmax, args.method, args.jobs))
    sink = open(args.out, "w", encoding="utf-8", newline="\n") if args.out else None
    target = sink or out
    try:
        if args.format == "json":
            _dump_json(rows, target)
        elif args.format == "csv":
            w = csv.DictWriter(target, fieldnames=TABULATE_COLUMNS, lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        else:
            target.write(f"{'p':>5} {'q':>5} {'n':>8} {'regime':<8} {'Q-weight':>8} {'Z-weight':>8}\n")
            for r in rows:
                target.write(
                    f"{r['p']:>5} {r['q']:>5} {r['n']:>8} {r['regime']:<8} {r['q_weight']:>8} {r['z_weight']:>8}\n"
                )
    finally:
        if sink:
            sink.close()
    if sink:
        out.write(f"wrote {len(rows)} rows to {args.out}\n")
    return EXIT_OK


def cmd_search_base(args, out) -> int:
    alpha = parse_rational(args.alpha)
    filt = SearchFilter.parse(args.filter)
    members = b_korselt_set(alpha, args.limit, filt)
    if args.format == "json":
        doc = {
            "alpha": rational_json(alpha),
            "limit": args.limit,
            "filter": filt.name.lower(),
            "members": members,
            "weight": len(members),
        }
        _dump_json(doc, out)
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["m"])
        w.writerows([m] for m in members)
    else:
        out.write(
            f"B-Korselt set of alpha={format_rational(alpha)} over [2,{args.limit}] "
            f"filter={filt.name.lower()}\n"
        )
        out.write(" ".join(map(str, members)) + "\n")
        out.write(f"weight: {len(members)}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="korselt", description="Rational and integer Korselt sets of semiprimes pq.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    formats = ["table", "json", "csv"]

    p = sub.add_parser("qset", help="rational Korselt set of pq")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--method", choices=["closed", "oracle", "both"], default="closed")
    p.add_argument("--format", choices=formats, default="table")
    p.set_defaults(func=cmd_qset)

    p = sub.add_parser("zset", help="integer Korselt set of pq")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--format", choices=formats, default="table")
    p.set_defaults(func=cmd_zset)

    p = sub.add_parser("check", help="is alpha a Korselt base of n?")
    p.add_argument("n", type=int)
    p.add_argument("alpha", help="integer or a/b")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="cross-validate closed form against the oracle")
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    p.add_argument("--out", help="write JSON Lines reports and a final manifest here")
    p.add_argument("--no-timing", dest="timing", action="store_false", help="omit timings from --out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tabulate", help="Korselt weights for every prime pair up to pmax")
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--format", choices=formats, default="csv")
    p.add_argument("--method", choices=["closed", "oracle"], default="closed")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_tabulate)

    p = sub.add_parser("search-base", help="all M up to a limit admitting alpha as a base")
    p.add_argument("alpha", help="integer or a/b")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--filter", default="composite", choices=["all", "composite", "squarefree", "semiprime"])
    p.add_argument("--format", choices=formats, default="table")
    p.set_defaults(func=cmd_search_base)
    return parser


def main(argv=None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        args.argv = argv
        if getattr(args, "jobs", None) is not None and args.jobs < 1:
            raise ValueError("--jobs must be >= 1")
        return args.func(args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except (PairError, FactorizationError, RangeError, BudgetError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"korselt: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
