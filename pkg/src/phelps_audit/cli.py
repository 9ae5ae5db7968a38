"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 failed internal self-check.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .discrimination import find_discrimination_witness, shifted_payoffs, wage_shift
from .errors import InputError, InvariantViolation
from .fair_valuation import dominating_lp, fair_valuation
from .geometry import Outside
from .instance import load_instance, parse_vector
from .model import expected_payoff, induced_skill
from .persuasion import blackwell_more_informative, concavify, is_affine_persuasion_value
from .report import affinity_dict, named_weights, mix_text, q, qv, run_audit, tv


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(data, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def cmd_audit(args) -> None:
    report = run_audit(load_instance(args.instance), seed=args.seed)
    sys.stdout.write(report.to_json() if args.json else report.to_text())


def cmd_witness(args) -> None:
    inst = load_instance(args.instance)
    T = inst.signals
    w = find_discrimination_witness(T)
    if w is None:
        _emit(args, {"identified": True, "witness": None},
              "signal set is identified: no discrimination witness exists\n")
        return
    data = {
        "identified": False,
        "witness": {
            "pi": named_weights(T, w.pi),
            "pi_prime": named_weights(T, w.pi_prime),
            "actions": [qv(a) for a in w.action_set],
            "induced_skill": qv(induced_skill(T, w.pi)),
            "payoff": q(w.payoff),
            "payoff_prime": q(w.payoff_prime),
        },
    }
    text = (f"pi  = {mix_text(T, w.pi)}\n"
            f"pi' = {mix_text(T, w.pi_prime)}\n"
            f"menu = {{{', '.join(tv(a) for a in w.action_set)}}}\n"
            f"induced skill {tv(induced_skill(T, w.pi))}; payoffs {w.payoff} vs {w.payoff_prime}\n")
    _emit(args, data, text)


def cmd_fairval(args) -> None:
    inst = load_instance(args.instance)
    names = [inst.action_set(args.actions)[0]] if args.actions else list(inst.action_sets)
    data, lines = {}, []
    for name in names:
        A = inst.action_sets[name]
        fv = fair_valuation(inst.signals, A)
        data[name] = {
            "fair_valuation": None if fv is None else qv(fv.alpha),
            "affinity": affinity_dict(inst.signals, is_affine_persuasion_value(inst.signals, A)),
        }
        lines.append(f"{name}: " + ("no fair valuation" if fv is None else f"alpha = {tv(fv.alpha)}"))
    _emit(args, data, "\n".join(lines) + "\n")


def _segment_csv(inst, A, start, end, steps: int) -> str:
    T = inst.signals
    for label, pt in (("--from", start), ("--to", end)):
        if isinstance(concavify(T, A, pt), Outside):
            raise InputError(f"{label} point {tv(pt)} lies outside the convex hull of the signals")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "W"])
    for k in range(steps + 1):
        t = Fraction(k, steps)
        pt = tuple((1 - t) * a + t * b for a, b in zip(start, end))
        w.writerow([str(t), str(concavify(T, A, pt).value)])
    return buf.getvalue()


def cmd_concavify(args) -> None:
    inst = load_instance(args.instance)
    T = inst.signals
    name, A = inst.action_set(args.actions)
    n = len(inst.states)
    if args.envelope_csv:
        if not (args.from_ and args.to):
            raise InputError("--envelope-csv needs --from and --to")
        if args.steps < 1:
            raise InputError("--steps must be positive")
        text = _segment_csv(inst, A, parse_vector(args.from_, n, "--from"),
                            parse_vector(args.to, n, "--to"), args.steps)
        if args.envelope_csv == "-":
            sys.stdout.write(text)
            return
        with open(args.envelope_csv, "w", newline="") as fh:
            fh.write(text)
    queries = [parse_vector(s, n, "--query") for s in args.query] if args.query else list(inst.queries)
    if not queries:
        raise InputError("no query points: pass --query or add \"queries\" to the instance")
    rows, lines = [], []
    for query in queries:
        env = concavify(T, A, query)
        if isinstance(env, Outside):
            rows.append({"query": qv(query), "envelope": "outside"})
            lines.append(f"W{tv(query)}: outside the hull")
            continue
        dom = dominating_lp(T, A, query)
        rows.append({
            "query": qv(query),
            "envelope": q(env.value),
            "optimal_pi": named_weights(T, env.optimal_pi),
            "dominating_value": q(dom.value),
            "duality_holds": dom.value == env.value,
        })
        lines.append(f"W{tv(query)} = {env.value} via {mix_text(T, env.optimal_pi)}; "
                     f"dominating LP {dom.value}")
    _emit(args, {"action_set": name, "queries": rows}, "\n".join(lines) + "\n")


def cmd_wage_shift(args) -> None:
    inst = load_instance(args.instance)
    T = inst.signals
    name, A = inst.action_set(args.actions)
    pi, pp = inst.info(args.pi), inst.info(args.pi_prime)
    k = wage_shift(T, A, pi, pp)
    before = expected_payoff(T, A, pi), expected_payoff(T, A, pp)
    after = shifted_payoffs(T, A, k, pi, pp)
    data = {"action_set": name, "k": qv(k),
            "payoff": q(before[0]), "payoff_prime": q(before[1]),
            "shifted_payoff": q(after[0]), "shifted_payoff_prime": q(after[1])}
    text = (f"k = {tv(k)}\n"
            f"payoffs {before[0]} vs {before[1]} -> shifted {after[0]} vs {after[1]}\n")
    _emit(args, data, text)


def cmd_compare_info(args) -> None:
    inst = load_instance(args.instance)
    T = inst.signals
    pi, pp = inst.info(args.pi), inst.info(args.pi_prime)
    fwd = blackwell_more_informative(T, pi, pp)
    bwd = blackwell_more_informative(T, pp, pi)
    data = {"pi": args.pi, "pi_prime": args.pi_prime,
            "pi_more_informative": fwd, "pi_prime_more_informative": bwd}
    text = (f"{args.pi} more informative than {args.pi_prime}: {'yes' if fwd else 'no'}\n"
            f"{args.pi_prime} more informative than {args.pi}: {'yes' if bwd else 'no'}\n")
    _emit(args, data, text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("instance", help="instance JSON path, or bundled:<name> (phelps, identity)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")

    p = argparse.ArgumentParser(prog="phelps-audit",
                                description="Audit finite signal structures for statistical discrimination.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("audit", parents=[common], help="full report")
    s.add_argument("--seed", type=int, default=0, help="seed for the sampled corroborating menus")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("witness", parents=[common], help="explicit discrimination witness")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("fairval", parents=[common], help="fair valuations and envelope linearity")
    s.add_argument("--actions", help="action set name (default: all)")
    s.set_defaults(func=cmd_fairval)

    s = sub.add_parser("concavify", parents=[common], help="persuasion envelope at query points")
    s.add_argument("--actions", help="action set name")
    s.add_argument("--query", action="append", help="comma-separated point, e.g. 1/3,1/3,1/3")
    s.add_argument("--envelope-csv", metavar="PATH", help="write W along a segment as CSV ('-' for stdout)")
    s.add_argument("--from", dest="from_", metavar="VEC", help="segment start")
    s.add_argument("--to", metavar="VEC", help="segment end")
    s.add_argument("--steps", type=int, default=10, help="segment subdivisions (default 10)")
    s.set_defaults(func=cmd_concavify)

    s = sub.add_parser("wage-shift", parents=[common], help="payoff shift separating two populations")
    s.add_argument("--pi", required=True)
    s.add_argument("--pi-prime", required=True)
    s.add_argument("--actions")
    s.set_defaults(func=cmd_wage_shift)

    s = sub.add_parser("compare-info", parents=[common], help="Blackwell comparison of two structures")
    s.add_argument("--pi", required=True)
    s.add_argument("--pi-prime", required=True)
    s.set_defaults(func=cmd_compare_info)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
