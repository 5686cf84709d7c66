"""Command-line front end: surveys, classification, code analysis, claim checks.

Exit codes: 0 success, 1 usage or budget error, 2 a checked claim failed.
Reports go to standard output in the line-oriented format of
:func:`nonstd.classify.dumps_report`, or as one JSON document with ``--document``.
"""

from __future__ import annotations

import argparse
import re
import sys
import time

from . import claims
from .classify import (
    classify_degree2,
    dumps_report,
    extend,
    lift,
    report_header,
    survey,
)
from .codes import (
    CODEWORD_BUDGET,
    NODE_BUDGET,
    build_code,
    find_extra_automorphism,
    golay_binary,
    golay_ternary,
    is_perm_automorphism,
    min_distance,
    parse_code_line,
    perm_to_qpoly,
    sphere_size,
    standard_group,
)
from .field import BudgetError, FieldError, degree_and_qorder, make_field, prime_power
from .linearized import search_nonstandard, witness_from_qpoly

EXIT_OK, EXIT_USAGE, EXIT_CLAIM = 0, 1, 2

DEFAULT_RANGES = {"nod3": 64, "d4": 81, "d5": 64, "trp": 9, "tqord": 9, "cqpol": 8}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; this tool reserves 2 for failed claims."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def parse_range(text: str) -> int:
    """'q<=64', 'n<=8' or a bare integer bound."""
    mt = re.fullmatch(r"\s*(?:[a-z]\s*<=\s*)?(\d+)\s*", text)
    if not mt:
        raise argparse.ArgumentTypeError(f"range must look like q<=N, got {text!r}")
    return int(mt.group(1))


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("run control")
    g.add_argument("--budget", type=int, default=None,
                   help="search budget (candidate tuples); default 1e8 or NONSTD_BUDGET")
    g.add_argument("--workers", type=int, default=1, help="worker processes (output is independent of this)")
    g.add_argument("--seed", type=int, default=0, help="seed for randomized jobs, echoed in the header")
    g.add_argument("--timing", action="store_true", help="add wall-clock seconds to the header")
    g.add_argument("--document", action="store_true", help="emit one JSON document instead of JSON lines")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nonstd", description="Nonstandard finite field elements: exact desk-scale experiments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("survey", help="nonstandard orders of degree m over GF(q), classified")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    _common(p)

    p = sub.add_parser("classify", help="classify an element of given order and degree 2")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, default=2, choices=[2])
    p.add_argument("--order", type=int, required=True)
    _common(p)

    p = sub.add_parser("golay", help="verify a Golay code and its extra automorphism")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--binary", action="store_true")
    which.add_argument("--ternary", action="store_true")
    p.add_argument("--node-budget", type=int, default=NODE_BUDGET)
    _common(p)

    p = sub.add_parser("code", help="analyse cyclic codes given by defining zeros")
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--zeros", type=_int_list, default=[1], help="comma-separated zero exponents (default 1)")
    p.add_argument("--file", help="read one 'n q zeros=a,b [perm=[...]]' description per line")
    p.add_argument("--find-extra", action="store_true", help="search for an automorphism outside the standard group")
    p.add_argument("--node-budget", type=int, default=NODE_BUDGET)
    p.add_argument("--codeword-budget", type=int, default=CODEWORD_BUDGET)
    _common(p)

    p = sub.add_parser("verify", help="check a structural claim exhaustively")
    p.add_argument("--claim", required=True, choices=sorted(claims.CLAIMS))
    p.add_argument("--range", type=parse_range, default=None, help="upper bound, e.g. q<=64 (n<=8 for cqpol)")
    _common(p)

    p = sub.add_parser("lift", help="lift a witness over GF(q0) to GF(q0^t)")
    p.add_argument("--q0", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--order", type=int, default=None, help="order of the base element (default primitive)")
    _common(p)

    p = sub.add_parser("extend", help="extend a witness for phi = xi^(N/n) to xi of order N")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--order", type=int, required=True, help="order n of phi")
    p.add_argument("--target-order", type=int, required=True, help="order N of xi")
    _common(p)

    p = sub.add_parser("transport", help="randomized lift/extend round trips")
    p.add_argument("--count", type=int, default=200)
    _common(p)
    return parser


# ---------------------------------------------------------------------------
# subcommands; each returns (records, exit code)


def _element(q: int, m: int, order: int):
    p, s = prime_power(q)
    E = make_field(p, s * m)
    xi = E.element_of_order(order)
    qo = degree_and_qorder(xi, q)
    if qo.m != m:
        raise UsageError(f"elements of order {order} have degree {qo.m} over GF({q}), not {m}")
    return xi


def cmd_survey(a):
    rows = survey(a.q, a.m, a.budget, a.workers)
    failed = [r.label.evidence.get("failed_step") for r in rows if r.label.kind == "unclassified"]
    if "search budget" in failed:
        code = EXIT_USAGE
    elif failed and a.m == 2:
        code = EXIT_CLAIM
    else:
        code = EXIT_OK
    return [r.to_record() for r in rows], code


def cmd_classify(a):
    xi = _element(a.q, 2, a.order)
    label = classify_degree2(xi, a.q, a.budget)
    rec = {"q": a.q, "m": 2, "order": a.order, "label": str(label), **label.to_record(),
           "evidence": label.evidence}
    return [rec], EXIT_CLAIM if label.kind == "unclassified" else EXIT_OK


def cmd_golay(a):
    C = golay_binary() if a.binary else golay_ternary()
    dmin = min_distance(C)
    t = (dmin - 1) // 2
    ball = sphere_size(C.n, C.q, t)
    perfect = ball * C.q**C.dim == C.q**C.n
    perm = find_extra_automorphism(C, a.node_budget)
    rec = {"code": C.describe(), "n": C.n, "q": C.q, "m": C.m, "dim": C.dim,
           "min_distance": dmin, "radius": t, "sphere_size": ball, "perfect": perfect,
           "standard_group_order": len(standard_group(C.n, C.q, C.m)),
           "extra_automorphism": list(perm) if perm else None}
    ok = perfect and perm is not None
    if perm is not None:
        w = witness_from_qpoly(C.xi, C.q, perm_to_qpoly(C, perm))
        w.verify()
        rec["witness"] = w.to_record()
    return [rec], EXIT_OK if ok else EXIT_CLAIM


def _code_record(a, n, q, zeros, perm):
    C = build_code(n, q, zeros)
    rec = {"code": C.describe(), "n": n, "q": q, "m": C.m, "dim": C.dim,
           "genpoly": list(C.genpoly.coeffs)}
    ok = True
    try:
        rec["min_distance"] = min_distance(C, a.codeword_budget) if C.dim else None
    except BudgetError as exc:
        rec["min_distance"] = None
        rec["min_distance_error"] = str(exc)
    if perm is not None:
        rec["perm"] = list(perm)
        rec["perm_is_automorphism"] = is_perm_automorphism(C, perm)
        ok = rec["perm_is_automorphism"]
    if a.find_extra:
        extra = find_extra_automorphism(C, a.node_budget)
        rec["extra_automorphism"] = list(extra) if extra else None
    return rec, ok


def cmd_code(a):
    specs = []
    if a.file:
        with open(a.file) as fh:
            for line in fh:
                if line.strip() and not line.lstrip().startswith("#"):
                    specs.append(parse_code_line(line))
    else:
        if a.n is None or a.q is None:
            raise UsageError("code needs --n and --q, or --file")
        specs.append((a.n, a.q, a.zeros, None))
    records, code = [], EXIT_OK
    for n, q, zeros, perm in specs:
        rec, ok = _code_record(a, n, q, zeros, perm)
        records.append(rec)
        if not ok:
            code = EXIT_CLAIM
    return records, code


def cmd_verify(a):
    bound = DEFAULT_RANGES[a.claim] if a.range is None else a.range
    fn = claims.CLAIMS[a.claim]
    if a.claim == "cqpol":
        res = fn(nmax=bound)
    elif a.claim == "trp":
        res = fn(qs=tuple(claims.prime_powers(bound)))
    else:
        res = fn(bound)
    rec = {**res.to_record(), "range": bound}
    return [rec], EXIT_OK if res.ok else EXIT_CLAIM


def cmd_lift(a):
    p, s = prime_power(a.q0)
    E = make_field(p, s * a.m)
    xi = E.gen if a.order is None else _element(a.q0, a.m, a.order)
    ws = search_nonstandard(xi, a.q0, a.budget)
    if not ws:
        raise UsageError(f"the element of order {xi.order} is standard over GF({a.q0})")
    out = lift(ws[0], a.t)
    return [{"base": ws[0].to_record(), "lifted": out.to_record()}], EXIT_OK


def cmd_extend(a):
    if a.target_order % a.order:
        raise UsageError("order must divide target order")
    xi = _element(a.q, a.m, a.target_order)
    phi = xi ** (a.target_order // a.order)
    ws = search_nonstandard(phi, a.q, a.budget)
    if not ws:
        raise UsageError(f"phi of order {a.order} is standard over GF({a.q})")
    out = extend(ws[0], xi)
    return [{"base": ws[0].to_record(), "extended": out.to_record()}], EXIT_OK


def cmd_transport(a):
    res = claims.transport_roundtrips(a.count, a.seed)
    return [res.to_record()], EXIT_OK if res.ok else EXIT_CLAIM


COMMANDS = {
    "survey": cmd_survey,
    "classify": cmd_classify,
    "golay": cmd_golay,
    "code": cmd_code,
    "verify": cmd_verify,
    "lift": cmd_lift,
    "extend": cmd_extend,
    "transport": cmd_transport,
}

_RUN_CONTROL = ("budget", "workers", "seed", "timing", "document", "command")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    params = {k: v for k, v in sorted(vars(args).items()) if k not in _RUN_CONTROL}
    params["budget"] = args.budget
    header = report_header(args.command, params, args.seed)
    start = time.perf_counter()
    try:
        records, code = COMMANDS[args.command](args)
    except (UsageError, BudgetError, FieldError, ValueError, OSError) as exc:
        print(f"nonstd {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing:
        header["seconds"] = round(time.perf_counter() - start, 3)
    sys.stdout.write(dumps_report(header, records, document=args.document))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
