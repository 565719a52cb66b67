"""Command-line front end.

Every algebra operation is exposed as a subcommand; ``--json`` switches
the output (and structured errors on stderr) to JSON.  Exit codes:
0 success, 1 domain errors (including absent optional results), 2 usage
errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import coeffs
from .core import (
    LieAlgebra,
    element_from_json,
    element_to_json,
    normal_form,
    proportional,
)
from .errors import ExprSyntaxError, FreeLieError
from .expr import parse_expr
from .finite import (
    FiniteBilinearInstance,
    brute_force_psw,
    psw_space,
    sym_space,
    truncated_free_lie_instance,
)
from .interpret import (
    bounded_eval,
    in_Rz,
    nat_certify,
    parse_formula,
    rx_combine,
    tag_bound_complete,
    transport,
    width_check,
)
from .shifted import decompose_L2, divide_shifted, main_lemma_witness, shifted_chain
from .suite import run_all
from .words import BasisElement, lyndon_words, witt_dimension


class AbsentResult(FreeLieError):
    """An optional operation produced no value."""


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alphabet", default="a,b", help="comma or character list of generators")
    common.add_argument("--ring", default="Z", choices=("Z", "Q"), help="coefficient ring")
    common.add_argument("--max-degree", type=int, default=3, dest="max_degree")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=42, help="seed for randomized commands")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="freelie", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("hall", parents=[common], help="list basis elements up to a degree")
    sub.add_parser("dims", parents=[common], help="per-degree basis dimensions")

    p = sub.add_parser("nf", parents=[common], help="normal form of an expression")
    p.add_argument("expression")

    p = sub.add_parser("mul", parents=[common], help="bracket of two expressions")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("shift", parents=[common], help="shifted chain u(v+a1)...(v+an)")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--alphas", required=True, help="comma list of scalars")

    p = sub.add_parser("divide", parents=[common], help="exact division by a shifted factor")
    p.add_argument("--target", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--alpha", required=True)

    p = sub.add_parser("lemma-main", parents=[common], help="witness for a divisibility system")
    p.add_argument("--v", required=True)
    p.add_argument(
        "--pair",
        action="append",
        required=True,
        metavar="ALPHA:EXPR",
        help="repeatable; shift scalar and the dividing element",
    )

    p = sub.add_parser("decompose-l2", parents=[common], help="bracket decomposition over generators")
    p.add_argument("--p", required=True, dest="element")
    p.add_argument("--gen", action="append", required=True, dest="gens")

    p = sub.add_parser("centralizer", parents=[common], help="proportionality certificate")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)

    p = sub.add_parser("in-line", parents=[common], help="scalar-line membership")
    p.add_argument("--x", required=True)
    p.add_argument("--z", required=True)

    p = sub.add_parser("transport", parents=[common], help="move a line point to another line")
    p.add_argument("--x", required=True)
    p.add_argument("--xp", required=True)
    p.add_argument("--y", required=True)

    p = sub.add_parser("rx", parents=[common], help="induced ring operations on a line")
    p.add_argument("--x", required=True)
    p.add_argument("--p", required=True, dest="left")
    p.add_argument("--q", required=True, dest="right")
    p.add_argument("--op", required=True, choices=("plus", "times"))

    p = sub.add_parser("nat-certify", parents=[common], help="chain divisibility certificate")
    p.add_argument("--b", required=True)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--window", help="lo..hi or comma list (default -3..m+3)")
    p.add_argument("--degree-bound", type=int, dest="degree_bound")

    p = sub.add_parser("width-check", parents=[common], help="bracket width check")
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--gen", action="append", required=True, dest="gens")

    p = sub.add_parser("eval", parents=[common], help="bounded three-valued evaluation")
    p.add_argument("--formula", required=True)
    p.add_argument("--env", default="{}", help="JSON object: name -> expression or scalar")
    p.add_argument(
        "--assume-complete",
        action="store_true",
        help="treat every quantifier bound as exhaustive",
    )

    for name, help_text in (
        ("scalars-sym", "basis of the symmetric pair space"),
        ("scalars-psw", "scalar ring by linear algebra"),
        ("scalars-brute", "scalar ring by exhaustive enumeration"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--instance", required=True, help="path to instance JSON, or - for stdin")

    p = sub.add_parser("scalars-lie-instance", parents=[common], help="truncated algebra instance")
    p.add_argument("--gens", required=True, type=int)
    p.add_argument("--p", required=True, type=int, dest="prime")
    p.add_argument("--degree", required=True, type=int)

    p = sub.add_parser("suite", parents=[common], help="run the acceptance property suite")
    p.add_argument("--criteria", help="comma list of criterion numbers (default: all)")

    return parser


def _algebra(args) -> LieAlgebra:
    return LieAlgebra(args.alphabet, args.ring)


def _element(args, text: str):
    return normal_form(parse_expr(text), _algebra(args))


def _scalar(args, text: str):
    return coeffs.parse(args.ring, text)


def _element_out(args, element):
    return element_to_json(element) if args.json else str(element)


def _emit(args, payload):
    if args.json:
        print(json.dumps(payload))
    else:
        if isinstance(payload, (list, tuple)):
            for line in payload:
                print(line)
        else:
            print(payload)


def _parse_window(args):
    if args.window is None:
        return None
    text = args.window.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    return [_scalar(args, part) for part in text.split(",") if part.strip()]


def _load_instance(path: str) -> FiniteBilinearInstance:
    raw = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    return FiniteBilinearInstance.from_json(json.loads(raw))


def _cmd_hall(args):
    groups = lyndon_words(_algebra(args).alphabet, args.max_degree)
    entries = [
        (d, str(w), str(BasisElement(w))) for d in groups for w in groups[d]
    ]
    if args.json:
        _emit(
            args,
            [
                {"degree": d, "word": word, "bracketing": tree}
                for d, word, tree in entries
            ],
        )
    else:
        _emit(args, ["%d  %-10s %s" % entry for entry in entries])
    return 0


def _cmd_dims(args):
    algebra = _algebra(args)
    k = len(algebra.alphabet)
    rows = [
        {
            "degree": d,
            "dimension": witt_dimension(k, d),
            "count": len(algebra.basis_words(d)),
        }
        for d in range(1, args.max_degree + 1)
    ]
    if args.json:
        _emit(args, rows)
    else:
        _emit(args, ["%(degree)d  %(dimension)d" % row for row in rows])
    return 0


def _cmd_nf(args):
    _emit(args, _element_out(args, _element(args, args.expression)))
    return 0


def _cmd_mul(args):
    result = _element(args, args.left).bracket(_element(args, args.right))
    _emit(args, _element_out(args, result))
    return 0


def _cmd_shift(args):
    u = _element(args, args.u)
    v = _element(args, args.v)
    alphas = [_scalar(args, part) for part in args.alphas.split(",") if part.strip()]
    _emit(args, _element_out(args, shifted_chain(u, v, alphas)))
    return 0


def _cmd_divide(args):
    result = divide_shifted(
        _element(args, args.target), _element(args, args.v), _scalar(args, args.alpha)
    )
    if result is None:
        raise AbsentResult("no exact quotient exists")
    _emit(args, _element_out(args, result))
    return 0


def _cmd_lemma_main(args):
    v = _element(args, args.v)
    pairs = []
    for item in args.pair:
        alpha_text, _, expr_text = item.partition(":")
        if not expr_text:
            raise ExprSyntaxError("--pair expects ALPHA:EXPR, got %r" % (item,))
        pairs.append((_scalar(args, alpha_text), _element(args, expr_text)))
    witness = main_lemma_witness(v, pairs)
    if args.json:
        _emit(args, {"gamma": coeffs.to_str(witness.gamma), "w": element_to_json(witness.w)})
    else:
        _emit(args, "gamma = %s\nw = %s" % (coeffs.to_str(witness.gamma), witness.w))
    return 0


def _cmd_decompose_l2(args):
    element = _element(args, args.element)
    gens = [_element(args, g) for g in args.gens]
    pairs = decompose_L2(element, gens)
    if args.json:
        _emit(
            args,
            [
                {"z": element_to_json(z), "x": element_to_json(x)}
                for z, x in pairs
            ],
        )
    else:
        _emit(args, ["[%s, %s]" % (z, x) for z, x in pairs] or ["0"])
    return 0


def _cmd_centralizer(args):
    pair = proportional(_element(args, args.u), _element(args, args.v))
    if pair is None:
        raise AbsentResult("elements are not proportional")
    alpha, beta = pair
    if args.json:
        _emit(args, {"alpha": coeffs.to_str(alpha), "beta": coeffs.to_str(beta)})
    else:
        _emit(args, "alpha = %s, beta = %s" % (coeffs.to_str(alpha), coeffs.to_str(beta)))
    return 0


def _cmd_in_line(args):
    r = in_Rz(_element(args, args.x), _element(args, args.z))
    if r is None:
        raise AbsentResult("element is off the line")
    _emit(args, {"r": coeffs.to_str(r)} if args.json else "r = %s" % coeffs.to_str(r))
    return 0


def _cmd_transport(args):
    result = transport(
        _element(args, args.x), _element(args, args.xp), _element(args, args.y)
    )
    if result is None:
        raise AbsentResult("point is off the source line")
    _emit(args, _element_out(args, result))
    return 0


def _cmd_rx(args):
    result = rx_combine(
        _element(args, args.x),
        _element(args, args.left),
        _element(args, args.right),
        args.op,
    )
    _emit(args, _element_out(args, result))
    return 0


def _cmd_nat_certify(args):
    certificate = nat_certify(
        _element(args, args.b),
        args.m,
        window=_parse_window(args),
        degree_bound=args.degree_bound,
    )
    payload = {
        "b": element_to_json(certificate.b),
        "m": certificate.m,
        "aux": element_to_json(certificate.aux),
        "v": element_to_json(certificate.v),
        "window": [coeffs.to_str(k) for k in certificate.window],
        "divisible": [coeffs.to_str(k) for k in certificate.divisible],
        "expected": [coeffs.to_str(k) for k in certificate.expected],
        "counterexamples": [coeffs.to_str(k) for k in certificate.counterexamples],
        "ok": certificate.ok,
        "table": {
            coeffs.to_str(k): (None if u is None else element_to_json(u))
            for k, u in sorted(certificate.table.items())
        },
    }
    if args.json:
        _emit(args, payload)
    else:
        _emit(
            args,
            [
                "v = %s" % certificate.v,
                "divisible at: %s" % ", ".join(payload["divisible"]),
                "expected:     %s" % ", ".join(payload["expected"]),
                "ok: %s" % certificate.ok,
            ],
        )
    return 0 if certificate.ok else 1


def _cmd_width_check(args):
    gens = [_element(args, g) for g in args.gens]
    witness = width_check(args.m, gens, args.max_degree)
    if args.json:
        _emit(
            args,
            {"pass": witness is None, "witness": None if witness is None else str(witness.lyndon)},
        )
    else:
        _emit(args, "pass" if witness is None else "fail at (%s)" % witness.lyndon)
    return 0


def _cmd_eval(args):
    algebra = _algebra(args)
    formula = parse_formula(args.formula)
    if args.assume_complete:
        formula = tag_bound_complete(formula)
    env = {}
    for name, value in json.loads(args.env).items():
        if isinstance(value, str):
            try:
                env[name] = coeffs.parse(args.ring, value)
            except FreeLieError:
                env[name] = _element(args, value)
        elif isinstance(value, (int, float)):
            env[name] = coeffs.parse(args.ring, str(value))
        else:
            env[name] = element_from_json(value)
    result = bounded_eval(formula, env, algebra)
    witness = None
    if result.witness:
        witness = {
            name: (
                element_to_json(value) if args.json else str(value)
            )
            if hasattr(value, "algebra")
            else coeffs.to_str(value)
            for name, value in result.witness.items()
        }
    if args.json:
        _emit(args, {"status": result.status, "witness": witness})
    else:
        _emit(args, "%s%s" % (result.status, "" if not witness else "  %s" % witness))
    return 0


def _cmd_scalars_sym(args):
    instance = _load_instance(args.instance)
    basis = sym_space(instance)
    if args.json:
        _emit(
            args,
            [{"A": [list(r) for r in a], "B": [list(r) for r in b]} for a, b in basis],
        )
    else:
        _emit(args, ["dimension %d" % len(basis)] + ["A=%s B=%s" % (a, b) for a, b in basis])
    return 0


def _cmd_scalars_ring(args, compute):
    table = compute(_load_instance(args.instance))
    if args.json:
        _emit(args, table.to_json())
    else:
        _emit(
            args,
            [
                "size %d" % table.size,
                "prime field: %s" % table.is_prime_field(),
            ],
        )
    return 0


def _cmd_scalars_lie_instance(args):
    instance = truncated_free_lie_instance(args.gens, args.prime, args.degree)
    _emit(args, instance.to_json() if args.json else
          ["p=%d d1=%d d2=%d dN=%d" % (instance.p, instance.d1, instance.d2, instance.dN),
           "tensor=%s" % (instance.to_json()["tensor"],)])
    return 0


def _cmd_suite(args):
    numbers = None
    if args.criteria:
        numbers = [int(part) for part in args.criteria.split(",") if part.strip()]
    results = run_all(args.seed, numbers)
    if args.json:
        _emit(
            args,
            [
                {
                    "criterion": r.number,
                    "name": r.name,
                    "passed": r.passed,
                    "summary": r.summary,
                }
                for r in results
            ],
        )
    else:
        _emit(args, [r.line() for r in results])
    return 0 if all(r.passed for r in results) else 1


_HANDLERS = {
    "hall": _cmd_hall,
    "dims": _cmd_dims,
    "nf": _cmd_nf,
    "mul": _cmd_mul,
    "shift": _cmd_shift,
    "divide": _cmd_divide,
    "lemma-main": _cmd_lemma_main,
    "decompose-l2": _cmd_decompose_l2,
    "centralizer": _cmd_centralizer,
    "in-line": _cmd_in_line,
    "transport": _cmd_transport,
    "rx": _cmd_rx,
    "nat-certify": _cmd_nat_certify,
    "width-check": _cmd_width_check,
    "eval": _cmd_eval,
    "scalars-sym": _cmd_scalars_sym,
    "scalars-psw": lambda args: _cmd_scalars_ring(args, psw_space),
    "scalars-brute": lambda args: _cmd_scalars_ring(args, brute_force_psw),
    "scalars-lie-instance": _cmd_scalars_lie_instance,
    "suite": _cmd_suite,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = _HANDLERS[args.command]
    try:
        return handler(args)
    except FreeLieError as error:
        message = {"error": {"type": type(error).__name__, "message": str(error)}}
        if getattr(args, "json", False):
            print(json.dumps(message), file=sys.stderr)
        else:
            print("error: %s" % (error,), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
