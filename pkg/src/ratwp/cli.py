"""Command-line front end: ``python -m ratwp <command> ...``.

Exit status is 0 on success, 1 on a negative verdict (pair not equal,
pair rejected, witness not verified) and 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import algebra
from .afsa import WordPair, accepts, enumerate_accepted, parse_afsa, serialize_afsa, to_dot
from .algebra import PartialInjection
from .errors import CapExceeded, InputError
from .refuter import random_afsa, refute_fi_recognizer, universal_afsa, verify_witness
from .wordproblem import (
    cayley_afsa,
    enumerate_wp,
    free_monoid_afsa,
    inline_model,
    injection_model,
    kernel_equal_up_to,
    parse_model,
    project,
    wp_contains,
)

BUILTIN_AFSAS = {
    "universal": universal_afsa,
    "diagonal": lambda: free_monoid_afsa("xX"),
}


def load_model(spec: str):
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            return parse_model(fh.read())
    return inline_model(spec)


def load_afsa(spec: str):
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            return parse_afsa(fh.read())
    if spec in BUILTIN_AFSAS:
        return BUILTIN_AFSAS[spec]()
    raise InputError(f"no automaton file {spec!r} (built-ins: {', '.join(sorted(BUILTIN_AFSAS))})")


def _pairs(pairs):
    return [[p.first, p.second] for p in pairs]


def classify(u: PartialInjection, cap: int = 10_000, depth: int = 6) -> dict:
    """Index/period, closure size and a bounded kernel comparison with the canonical model."""
    r, s = algebra.index_period(u)
    report = {"injection": str(u), "index": r, "period": s}
    try:
        report["closure_size"] = len(algebra.inverse_closure(u, cap))
        report["closure_partial"] = False
    except CapExceeded as exc:
        report["closure_size"] = len(exc.partial)
        report["closure_partial"] = True
    # index_period reports index >= 1; a bare permutation is the group type (0, s)
    type_r = 0 if r == 1 and u.domain == frozenset(range(1, u.ground + 1)) else r
    canonical = algebra.make_type((type_r, s))
    report["type"] = [type_r, s]
    witness = None
    certified = 0
    for bound in range(1, depth + 1):
        witness = kernel_equal_up_to(injection_model(u), injection_model(canonical), bound)
        if witness is not None:
            break
        certified = bound
    report["certificate_depth"] = certified
    report["certificate_witness"] = None if witness is None else [witness.first, witness.second]
    return report


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_eval(args):
    gs = load_model(args.model)
    value = project(gs, args.word)
    _emit(args, {"word": args.word, "value": gs.model.format(value)}, gs.model.format(value))
    return 0


def cmd_wp_check(args):
    gs = load_model(args.model)
    equal = wp_contains(gs, args.u, args.v)
    lhs, rhs = project(gs, args.u), project(gs, args.v)
    _emit(
        args,
        {"u": args.u, "v": args.v, "lhs": gs.model.format(lhs), "rhs": gs.model.format(rhs), "equal": equal},
        "equal" if equal else "not equal",
    )
    return 0 if equal else 1


def cmd_wp_enum(args):
    gs = load_model(args.model)
    pairs = enumerate_wp(gs, args.max_len)
    _emit(args, {"max_len": args.max_len, "pairs": _pairs(pairs)}, "\n".join(f"{u} {v}" for u, v in pairs))
    return 0


def cmd_afsa_accept(args):
    afsa = load_afsa(args.afsa)
    ok = accepts(afsa, WordPair(args.u, args.v))
    _emit(args, {"u": args.u, "v": args.v, "accepted": ok}, "accepted" if ok else "rejected")
    return 0 if ok else 1


def cmd_afsa_enum(args):
    afsa = load_afsa(args.afsa)
    pairs = enumerate_accepted(afsa, args.max_len)
    text = "\n".join(f"{u or '-'} {v or '-'}" for u, v in pairs)
    _emit(args, {"max_len": args.max_len, "pairs": _pairs(pairs)}, text)
    return 0


def cmd_cayley_afsa(args):
    afsa = cayley_afsa(load_model(args.model))
    text = serialize_afsa(afsa)
    _emit(args, {"states": len(afsa.states), "transitions": len(afsa.transitions), "afsa": text}, text.rstrip("\n"))
    return 0


def cmd_refute_fi(args):
    if args.afsa is not None:
        afsa = load_afsa(args.afsa)
    else:
        afsa = random_afsa(random.Random(args.seed), max_states=args.random_states)
    witness = refute_fi_recognizer(afsa)
    ok = verify_witness(afsa, witness)
    payload = dict(witness.to_dict(), verified=ok, states=len(afsa.states))
    _emit(args, payload, witness.dumps() + f"verified: {str(ok).lower()}")
    return 0 if ok else 1


def cmd_classify(args):
    u = PartialInjection.parse(args.injection)
    report = classify(u, cap=args.cap, depth=args.depth)
    lines = [
        f"index: {report['index']}",
        f"period: {report['period']}",
        f"type: ({report['type'][0]},{report['type'][1]})",
        f"closure size: {report['closure_size']}" + (" (partial, cap exceeded)" if report["closure_partial"] else ""),
        f"kernel agrees with canonical model up to length {report['certificate_depth']}",
    ]
    if report["certificate_witness"]:
        lines.append("witness: " + " ".join(report["certificate_witness"]))
    _emit(args, report, "\n".join(lines))
    return 0


def cmd_export_dot(args):
    afsa = load_afsa(args.afsa)
    text = to_dot(afsa)
    _emit(args, {"dot": text}, text.rstrip("\n"))
    return 0


def _positive(value):
    k = int(value)
    if k < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return k


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")

    parser = argparse.ArgumentParser(prog="ratwp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a word in a model")
    p.add_argument("--model", required=True, help="model file or inline name (freeinverse, bicyclic, c2, ...)")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("wp-check", parents=[common], help="do two words represent the same element?")
    p.add_argument("--model", required=True)
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_wp_check)

    p = sub.add_parser("wp-enum", parents=[common], help="list word-problem pairs up to a length")
    p.add_argument("--model", required=True)
    p.add_argument("--max-len", type=_positive, default=3)
    p.set_defaults(func=cmd_wp_enum)

    p = sub.add_parser("afsa-accept", parents=[common], help="run an automaton on a pair of words")
    p.add_argument("--afsa", required=True)
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_afsa_accept)

    p = sub.add_parser("afsa-enum", parents=[common], help="list accepted pairs up to a length")
    p.add_argument("--afsa", required=True)
    p.add_argument("--max-len", type=_positive, default=3)
    p.set_defaults(func=cmd_afsa_enum)

    p = sub.add_parser("cayley-afsa", parents=[common], help="build the Cayley automaton of a finite model")
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_cayley_afsa)

    p = sub.add_parser("refute-fi", parents=[common], help="refute a candidate recogniser for the free inverse word problem")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--afsa", help="automaton file, or 'universal' / 'diagonal'")
    src.add_argument("--random-states", type=_positive, help="refute a random candidate with at most this many states")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_refute_fi)

    p = sub.add_parser("classify", parents=[common], help="classify the inverse semigroup generated by a partial injection")
    p.add_argument("injection", help="e.g. '5; 1->2, 3->4, 4->5, 5->3'")
    p.add_argument("--cap", type=_positive, default=10_000)
    p.add_argument("--depth", type=_positive, default=6)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("export-dot", parents=[common], help="print an automaton in Graphviz DOT")
    p.add_argument("--afsa", required=True)
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
