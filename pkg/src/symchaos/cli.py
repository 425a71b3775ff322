"""Command-line surface: exact evaluation, orbits, fibers, and verification.

All data output is exact rationals (a float column is appended for
plotting).  Exit codes: 0 success/pass, 1 failed verification, 2 usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import graphs, interval, verifier
from .words import Word, bits_of, c_map, max_bits_bound, prefix_int, r_map, shift_map

EVAL_SYSTEMS = {
    "tent": interval.tent,
    "baker": interval.baker,
    "induced-tent": interval.induced_tent,
    "induced-baker": interval.induced_baker,
}

VERIFY_PROPERTIES = ("periodic-density", "dense-orbit", "transitivity",
                     "sensitivity", "lemma6")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symchaos",
        description="Exact symbolic dynamics: tent/baker/graph maps and chaos checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a map at a rational point")
    p_eval.add_argument("--system", required=True, choices=sorted(EVAL_SYSTEMS))
    p_eval.add_argument("--x", required=True, type=_fraction)

    p_orbit = sub.add_parser("orbit", help="exact orbit on [0,1]")
    p_orbit.add_argument("--system", required=True, choices=sorted(EVAL_SYSTEMS))
    p_orbit.add_argument("--x", required=True, type=_fraction)
    p_orbit.add_argument("--steps", required=True, type=int)
    p_orbit.add_argument("--format", default="csv", choices=("csv", "json"))

    p_gorbit = sub.add_parser("graph-orbit", help="exact orbit on a graph")
    p_gorbit.add_argument("--file", required=True)
    p_gorbit.add_argument("--start", required=True,
                          help="ARC:p/q (arc id or 1-based index) or node:ID")
    p_gorbit.add_argument("--steps", required=True, type=int)
    p_gorbit.add_argument("--format", default="csv", choices=("csv", "json"))

    p_verify = sub.add_parser("verify", help="run a chaos property check")
    p_verify.add_argument("--system", required=True, choices=("tent", "baker", "graph"))
    p_verify.add_argument("--file", help="graph DSL file (for --system graph)")
    p_verify.add_argument("--property", required=True, choices=VERIFY_PROPERTIES)
    p_verify.add_argument("--max-period", type=int, default=12)
    p_verify.add_argument("--resolution", type=int, default=7)
    p_verify.add_argument("--steps", type=int, default=25000)
    p_verify.add_argument("--horizon", type=int, default=40)
    p_verify.add_argument("--eta", type=_fraction, default=None)
    p_verify.add_argument("--delta", type=_fraction, default=Fraction(1, 4096))
    p_verify.add_argument("--grid", type=int, default=256)

    p_conj = sub.add_parser("conjugacy",
                            help="check shift∘R = R∘C on all prefixes of a length")
    p_conj.add_argument("--length", required=True, type=int)

    p_fiber = sub.add_parser("fiber", help="print the fiber words of a point")
    p_fiber.add_argument("--x", required=True, type=_fraction)
    p_fiber.add_argument("--file", help="graph DSL file")
    p_fiber.add_argument("--arc", help="arc id or 1-based index (with --file)")

    return parser


def _approx(x: Fraction) -> str:
    return repr(float(x))


def _load_graph(path: str) -> graphs.GraphSystem:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise graphs.GraphError(f"cannot read {path}: {exc}") from exc
    return graphs.graph_system(graphs.parse_graph(text))


def _resolve_arc(sys: graphs.GraphSystem, token: str) -> int:
    if token.isdigit():
        i = int(token)
        if not 1 <= i <= sys.spec.r:
            raise graphs.GraphError(f"arc index {i} out of range 1..{sys.spec.r}")
        return i
    return sys.arc_index(token)


def _parse_start(sys: graphs.GraphSystem, text: str) -> graphs.GraphPoint:
    kind, _, rest = text.partition(":")
    if kind == "node":
        if rest not in sys.spec.nodes:
            raise graphs.GraphError(f"unknown node {rest!r}")
        return graphs.Node(rest)
    if not rest:
        raise graphs.GraphError(f"malformed start {text!r}; expected ARC:p/q or node:ID")
    i = _resolve_arc(sys, kind)
    t = Fraction(rest)
    if t == 0:
        return graphs.Node(sys.spec.arc(i).tail)
    if t == 1:
        return graphs.Node(sys.spec.arc(i).head)
    return graphs.Interior(i, t)


def _cmd_eval(args) -> int:
    print(EVAL_SYSTEMS[args.system](args.x))
    return 0


def _cmd_orbit(args) -> int:
    fmap = EVAL_SYSTEMS[args.system]
    x = args.x
    rows = []
    for step in range(args.steps + 1):
        rows.append((step, x))
        if step < args.steps:
            x = fmap(x)
    if args.format == "csv":
        print("step,num,den,approx")
        for step, v in rows:
            print(f"{step},{v.numerator},{v.denominator},{_approx(v)}")
    else:
        print(json.dumps([{"step": s, "num": v.numerator, "den": v.denominator,
                           "approx": float(v)} for s, v in rows], indent=2))
    return 0


def _cmd_graph_orbit(args) -> int:
    sys_ = _load_graph(args.file)
    start = _parse_start(sys_, args.start)
    orbit = graphs.graph_orbit(sys_, start, args.steps)
    if args.format == "csv":
        print("step,arc_or_node,t_num,t_den,approx")
        for step, pt in enumerate(orbit):
            if isinstance(pt, graphs.Interior):
                arc_id = sys_.spec.arc(pt.arc).id
                print(f"{step},{arc_id},{pt.t.numerator},{pt.t.denominator},{_approx(pt.t)}")
            else:
                print(f"{step},{pt.id},,,")
    else:
        rows = []
        for step, pt in enumerate(orbit):
            if isinstance(pt, graphs.Interior):
                rows.append({"step": step, "arc_or_node": sys_.spec.arc(pt.arc).id,
                             "t_num": pt.t.numerator, "t_den": pt.t.denominator,
                             "approx": float(pt.t)})
            else:
                rows.append({"step": step, "arc_or_node": pt.id,
                             "t_num": None, "t_den": None, "approx": None})
        print(json.dumps(rows, indent=2))
    return 0


def _cmd_verify(args) -> int:
    if args.system == "graph":
        if not args.file:
            raise graphs.GraphError("--system graph requires --file")
        target = verifier.graph_target(_load_graph(args.file))
        default_eta = Fraction(1, 8)
    else:
        target = verifier.tent_target() if args.system == "tent" else verifier.baker_target()
        default_eta = Fraction(1, 4)
    eta = args.eta if args.eta is not None else default_eta
    prop = args.property
    if prop == "periodic-density":
        report = verifier.periodic_density(target, args.max_period, args.resolution)
    elif prop == "dense-orbit":
        report = verifier.dense_orbit_coverage(target, args.steps, args.resolution)
    elif prop == "transitivity":
        report = verifier.transitivity_witness(target, args.resolution, args.horizon)
    elif prop == "sensitivity":
        report = verifier.sensitivity_probe(target, eta, args.delta, args.grid,
                                            args.horizon)
    else:
        report = verifier.lemma6_commute_check(target, args.max_period, args.steps)
    print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    return 0 if report.passed() else 1


def _cmd_conjugacy(args) -> int:
    length = args.length
    if length < 2:
        raise ValueError("--length must be at least 2")
    bound = max_bits_bound()
    if length > bound:
        raise ValueError(f"--length {length} exceeds SYMCHAOS_MAX_BITS bound {bound}")
    compare_bits = length - 1
    mismatches = 0
    for seed in range(1 << length):
        w = Word._from_packed(length, seed, 1, 0)
        lhs = shift_map(r_map(w))
        rhs = r_map(c_map(w))
        if lhs != rhs or prefix_int(lhs, compare_bits) != prefix_int(rhs, compare_bits):
            mismatches += 1
    print(f"length {length}: {1 << length} prefixes checked, "
          f"{(1 << length) - mismatches} agree on {compare_bits} bits, "
          f"{mismatches} mismatches")
    return 0 if mismatches == 0 else 1


def _cmd_fiber(args) -> int:
    if args.file:
        sys_ = _load_graph(args.file)
        if not args.arc:
            raise graphs.GraphError("--file requires --arc")
        i = _resolve_arc(sys_, args.arc)
        t = args.x
        if t == 0:
            point: graphs.GraphPoint = graphs.Node(sys_.spec.arc(i).tail)
        elif t == 1:
            point = graphs.Node(sys_.spec.arc(i).head)
        else:
            point = graphs.Interior(i, t)
        for w in graphs.encode_point(sys_, point):
            print(w)
    else:
        for w in bits_of(args.x):
            print(w)
    return 0


_COMMANDS = {
    "eval": _cmd_eval,
    "orbit": _cmd_orbit,
    "graph-orbit": _cmd_graph_orbit,
    "verify": _cmd_verify,
    "conjugacy": _cmd_conjugacy,
    "fiber": _cmd_fiber,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, graphs.GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
