"""Command-line interface.

Exit codes: 0 success / true, 1 a well-formed false answer (non-member,
failed verification), 2 bad input or an exceeded limit.
"""
from __future__ import annotations

import argparse
import json
import sys

from .dset import EnumerationLimitError, check_membership, derangement_set, non_min_elements
from .frequency import (
    ExactRate,
    ThetaOrder,
    compare_theta,
    frequency,
    max_rate_derangement,
    min_rate_derangement,
    rate,
    theta,
)
from .graph import GraphFormatError, load_graph, parse_graph
from .oracle import OracleLimitError, sample_rate, verify
from .perm import (
    CycleFormatError,
    Derangement,
    FixedPointError,
    as_derangement,
    parse_cycle_form,
    standard_cycle_form,
    tokenize_cycles,
)

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def rate_values(r: ExactRate) -> dict:
    return {"fraction": r.fraction_str(), "decimal": r.decimal_str()}


def fmt_set(s) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


def infer_n(text: str) -> int:
    cycles = tokenize_cycles(text)
    if not cycles:
        raise InputError("cannot infer n from an empty cycle string; pass -n")
    values = []
    for tokens in cycles:
        if len(tokens) == 1 and len(tokens[0][0]) > 1:
            values += [int(d) for d in tokens[0][0]]
        else:
            values += [int(tok) for tok, _ in tokens]
    return max(values)


def read_derangement(text: str, n: int | None) -> Derangement:
    if n is None:
        n = infer_n(text)
    w = parse_cycle_form(text, n)
    fixed = w.fixed_points()
    if fixed:
        raise InputError(
            f"{text!r} is not a derangement of 1..{n}: fixes {','.join(map(str, fixed))}")
    return as_derangement(w)


def read_graph(path: str):
    if path == "-":
        return parse_graph(sys.stdin.read())
    try:
        return load_graph(path)
    except OSError as e:
        raise InputError(f"cannot read graph file: {e}") from None


def emit(args, record: dict, lines: list[str]):
    if args.json:
        print(json.dumps(record, indent=2, sort_keys=False))
    else:
        print("\n".join(lines))


def freq_payload(w: Derangement) -> dict:
    th = theta(w)
    return {
        "perm": standard_cycle_form(w),
        "n": w.n,
        "frequency": str(frequency(w)),
        "rate": rate_values(rate(w)),
        "theta": list(th.sizes),
        "k": th.k,
        "non_min_count": len(non_min_elements(w)),
    }


def cmd_member(args) -> int:
    g = read_graph(args.graph)
    w = parse_cycle_form(args.cycles, g.n)
    fixed = w.fixed_points()
    if fixed:
        raise InputError(
            f"size mismatch: w must permute 1..{g.n} without fixed points; "
            f"{args.cycles} fixes {','.join(map(str, fixed))} (not a derangement)")
    report = check_membership(g, w)
    failures = [{"t": f.t, "lambda": f.lam, "rho": sorted(f.rho)} for f in report.failures]
    record = {
        "command": "member",
        "inputs": {"graph": args.graph, "n": g.n, "perm": standard_cycle_form(w)},
        "results": {"member": report.member, "failures": failures},
        "exact_values": {},
    }
    name = standard_cycle_form(w)
    if report.member:
        lines = [f"{name} is in D(G)"]
    else:
        lines = [f"{name} is not in D(G)"]
        for f in report.failures:
            lines.append(f"  t={f.t}: lambda={f.lam} is not adjacent to any of rho={fmt_set(f.rho)}")
    emit(args, record, lines)
    return EXIT_OK if report.member else EXIT_FALSE


def cmd_dset(args) -> int:
    g = read_graph(args.graph)
    members = derangement_set(g, force=args.force)
    names = [standard_cycle_form(w) for w in members]
    record = {
        "command": "dset",
        "inputs": {"graph": args.graph, "n": g.n},
        "results": {"size": len(names), "members": names},
        "exact_values": {"size": str(len(names))},
    }
    emit(args, record, [f"|D(G)| = {len(names)}"] + names)
    return EXIT_OK


def _single_perm_cmd(args, command: str, keys: list[str]) -> int:
    w = read_derangement(args.cycles, args.n)
    p = freq_payload(w)
    exact = {}
    if "frequency" in keys:
        exact["frequency"] = p["frequency"]
    if "rate" in keys:
        exact["rate"] = p["rate"]
    record = {
        "command": command,
        "inputs": {"perm": p["perm"], "n": w.n},
        "results": {k: p[k] for k in keys},
        "exact_values": exact,
    }
    labels = {
        "frequency": lambda: f"f = {p['frequency']}",
        "rate": lambda: f"r = {p['rate']['fraction']} = {p['rate']['decimal']}",
        "theta": lambda: "theta = (" + ",".join(map(str, p["theta"])) + ")",
        "k": lambda: f"k = {p['k']}",
        "non_min_count": lambda: f"|U(w)| = {p['non_min_count']}",
    }
    emit(args, record, [f"w = {p['perm']}  (n={w.n})"] + [labels[k]() for k in keys])
    return EXIT_OK


def cmd_freq(args) -> int:
    return _single_perm_cmd(args, "freq", ["frequency", "rate", "theta", "k", "non_min_count"])


def cmd_rate(args) -> int:
    return _single_perm_cmd(args, "rate", ["rate"])


def cmd_theta(args) -> int:
    return _single_perm_cmd(args, "theta", ["theta", "k"])


def cmd_compare(args) -> int:
    n = args.n if args.n is not None else max(infer_n(args.cycles1), infer_n(args.cycles2))
    w1 = read_derangement(args.cycles1, n)
    w2 = read_derangement(args.cycles2, n)
    t1, t2 = theta(w1), theta(w2)
    if t1.k != t2.k:
        raise InputError(
            f"cycle counts differ (k={t1.k} vs k={t2.k}); theta profiles are only "
            f"compared within one D^k(V), the derangements with a fixed number k of cycles")
    verdict = compare_theta(t1, t2)
    f1, f2 = frequency(w1), frequency(w2)
    r1, r2 = rate(w1), rate(w2)
    violation = (
        (verdict in (ThetaOrder.LESS_OR_EQUAL, ThetaOrder.EQUAL) and not (f1 <= f2 and r1 <= r2))
        or (verdict in (ThetaOrder.GREATER_OR_EQUAL, ThetaOrder.EQUAL) and not (f1 >= f2 and r1 >= r2)))
    record = {
        "command": "compare",
        "inputs": {"perm1": standard_cycle_form(w1), "perm2": standard_cycle_form(w2), "n": n},
        "results": {"theta1": list(t1.sizes), "theta2": list(t2.sizes), "k": t1.k,
                    "order": verdict.value, "monotonicity_violation": violation},
        "exact_values": {"frequency1": str(f1), "frequency2": str(f2),
                         "rate1": rate_values(r1), "rate2": rate_values(r2)},
    }
    sym = {ThetaOrder.EQUAL: "=", ThetaOrder.LESS_OR_EQUAL: "<=",
           ThetaOrder.GREATER_OR_EQUAL: ">=", ThetaOrder.INCOMPARABLE: "incomparable"}[verdict]
    fsym = "<=" if f1 <= f2 else ">"
    lines = [
        f"theta({standard_cycle_form(w1)}) = {t1}",
        f"theta({standard_cycle_form(w2)}) = {t2}",
        f"order: {verdict.value} ({t1} {sym} {t2})",
        f"f: {f1} {fsym} {f2}",
        f"r: {r1.decimal_str()} vs {r2.decimal_str()}",
    ]
    emit(args, record, lines)
    if violation:
        print("internal error: frequency ordering contradicts theta ordering", file=sys.stderr)
        return EXIT_FALSE
    return EXIT_OK


def cmd_extremal(args) -> int:
    n = args.n
    if n < 2:
        raise InputError("extremal derangements need n >= 2")
    rows = {}
    lines = []
    for label, w in (("min", min_rate_derangement(n)), ("max", max_rate_derangement(n))):
        f, r = frequency(w), rate(w)
        rows[label] = {"perm": standard_cycle_form(w), "frequency": str(f), "rate": rate_values(r)}
        lines.append(f"{label}: {standard_cycle_form(w)}  f = {f}  "
                     f"r = {r.fraction_str()} = {r.decimal_str()}")
    record = {"command": "extremal", "inputs": {"n": n}, "results": rows,
              "exact_values": {k: {"frequency": v["frequency"], "rate": v["rate"]}
                               for k, v in rows.items()}}
    emit(args, record, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify(args.n, full=not args.spot, jobs=args.jobs, force=args.force)
    rows = [{"perm": standard_cycle_form(r.perm), "formula": str(r.formula),
             "enumerated": str(r.enumerated), "constructive": str(r.constructive), "ok": r.ok}
            for r in report.rows]
    passed = sum(r.ok for r in report.rows)
    results = {"mode": report.mode, "passed": passed, "total": len(rows), "rows": rows,
               "ok": report.ok}
    lines = [f"{'pass' if r.ok else 'FAIL'} {standard_cycle_form(r.perm)}: formula={r.formula} "
             f"enumerated={r.enumerated} constructive={r.constructive}" for r in report.rows]
    lines.append(f"{passed}/{len(rows)} pass")
    if report.double_count is not None:
        lhs, rhs = report.double_count
        results["double_count"] = {"sum_frequency": str(lhs), "sum_dset_sizes": str(rhs),
                                   "ok": lhs == rhs}
        lines.append(f"{'pass' if lhs == rhs else 'FAIL'} double counting: "
                     f"sum f(w) = {lhs}, sum |D(G)| = {rhs}")
    record = {"command": "verify", "inputs": {"n": args.n, "mode": report.mode},
              "results": results, "exact_values": {}}
    emit(args, record, lines)
    return EXIT_OK if report.ok else EXIT_FALSE


def cmd_sample(args) -> int:
    if args.seed is None:
        raise InputError("sample requires --seed")
    w = read_derangement(args.cycles, args.n)
    est = sample_rate(w, args.trials, args.seed, jobs=args.jobs)
    exact = rate(w)
    diff = est.estimate - exact.as_fraction()
    record = {
        "command": "sample",
        "inputs": {"perm": standard_cycle_form(w), "n": w.n, "trials": args.trials,
                   "seed": args.seed},
        "results": {"hits": est.hits, "estimate": f"{est.hits}/{est.trials}",
                    "estimate_float": float(est.estimate), "error_float": float(diff)},
        "exact_values": {"rate": rate_values(exact)},
    }
    lines = [f"w = {standard_cycle_form(w)}  trials = {est.trials}  seed = {est.seed}",
             f"hits = {est.hits}  estimate = {float(est.estimate):.8f}",
             f"exact r = {exact.fraction_str()} = {exact.decimal_str()}",
             f"error = {float(diff):+.8f}"]
    emit(args, record, lines)
    return EXIT_OK


def _nonneg_int(s):
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _pos_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    def add_globals(p, suppress):
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        p.add_argument("--json", action="store_true", default=d(False), help="JSON output")
        p.add_argument("--force", action="store_true", default=d(False),
                       help="allow runs above the default size limits")
        p.add_argument("--jobs", type=_pos_int, default=d(1), help="worker processes")
        p.add_argument("--seed", type=_nonneg_int, default=d(None),
                       help="64-bit seed for sampling")

    parser = argparse.ArgumentParser(
        prog="derangefreq",
        description="Derangement sets of ordered graphs and derangement frequencies.")
    add_globals(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    add_globals(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("member", parents=[common], help="test w in D(G)")
    p.add_argument("graph", help="graph file ('-' for stdin)")
    p.add_argument("cycles", help="permutation in cycle notation, e.g. '(1234)(567)'")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("dset", parents=[common], help="list D(G)")
    p.add_argument("graph")
    p.set_defaults(func=cmd_dset)

    for name, func, help_ in (("freq", cmd_freq, "frequency, rate and theta of w"),
                              ("rate", cmd_rate, "rate of w"),
                              ("theta", cmd_theta, "theta profile of w")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("cycles")
        p.add_argument("-n", type=_pos_int, default=None, help="ground set size")
        p.set_defaults(func=func)

    p = sub.add_parser("compare", parents=[common], help="compare theta profiles")
    p.add_argument("cycles1")
    p.add_argument("cycles2")
    p.add_argument("-n", type=_pos_int, default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("extremal", parents=[common], help="rarest and most frequent derangements")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("verify", parents=[common], help="formula vs brute-force oracles")
    p.add_argument("n", type=_pos_int)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--full", action="store_true", help="every derangement of 1..n (default)")
    mode.add_argument("--spot", action="store_true", help="designated spot-check list")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", parents=[common], help="Monte-Carlo rate estimate")
    p.add_argument("cycles")
    p.add_argument("-n", type=_pos_int, default=None)
    p.add_argument("--trials", type=_pos_int, default=10**6)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, CycleFormatError, GraphFormatError, FixedPointError,
            EnumerationLimitError, OracleLimitError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
