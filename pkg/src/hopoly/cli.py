"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 domain error,
3 incomparable limit.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import arctic as ac
from .arctic import Incomparable, arc2_lim, arc_eq, arc_lim, minimal_threshold
from .bounds import bound_concat_a, bound_concat_b
from .dagnf import label_text, nf_distinguish, nf_merge, to_dot, to_json
from .errors import DomainError, HopolyError, ParseError
from .monotone import AffineSlope, Hold, MonotoneFn, PolyTail
from .poly2 import p2_circ, p2_deg, p2_depth, p2_eval, p2_star
from .poly3 import (
    NotFound,
    Operator2,
    p3_DEG,
    p3_depthF,
    p3_distinguish_random,
    p3_double_degree,
    p3_eval,
    p3_opcirc,
)
from .syntax import parse, parse_expr, parse_poly1, to_text

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_INCOMPARABLE = 0, 1, 2, 3

BOUND_CAVEAT = "(bounds hold up to constant factors)"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_fnspec(spec: str) -> MonotoneFn:
    """``poly:<expr in m>`` or ``table:x1:y1,x2:y2;tail:hold|slope:k|poly:<expr>``."""
    kind, _, body = spec.partition(":")
    if kind == "poly":
        return MonotoneFn.from_poly(parse_poly1(body))
    if kind != "table":
        raise UsageError(f"unknown function spec {spec!r}")
    table, _, tail = body.partition(";")
    points = []
    for item in table.split(","):
        x, _, y = item.partition(":")
        try:
            points.append((int(x), int(y)))
        except ValueError:
            raise UsageError(f"bad table entry {item!r}") from None
    tail_kind = tail.removeprefix("tail:") if tail else "hold"
    if tail_kind == "hold":
        rule = Hold()
    elif tail_kind.startswith("slope:"):
        rule = AffineSlope(int(tail_kind[len("slope:"):]))
    elif tail_kind.startswith("poly:"):
        rule = PolyTail(parse_poly1(tail_kind[len("poly:"):]))
    else:
        raise UsageError(f"unknown tail {tail_kind!r}")
    return MonotoneFn(points, rule)


def _poly1_d(p) -> str:
    return p.to_text(lambda v: "D")


def cmd_eval(args, out):
    src = parse(args.expr)
    ell = parse_fnspec(args.ell) if args.ell else MonotoneFn.identity()
    if src.order == "arctic":
        print(ac.arc2_eval(src.ast, args.n, ell), file=out)
    elif src.order == "p2":
        print(p2_eval(src.ast, args.n, ell), file=out)
    else:
        if not args.phi:
            raise UsageError("third-order expressions need --phi")
        phi = Operator2(template=parse_expr(args.phi, "p2"))
        print(p3_eval(src.ast, args.n, ell, phi), file=out)
    return EXIT_OK


def _degree(src):
    if src.order == "p2":
        return p2_deg(src.ast)
    if src.order == "p3":
        return p3_DEG(src.ast)
    return src.ast


def cmd_deg(args, out):
    src = parse(args.expr)
    print(to_text(ac.simplify(_degree(src))), file=out)
    return EXIT_OK


def cmd_limdeg(args, out):
    src = parse(args.expr)
    term = _degree(src)
    if ac.has_delta(term):
        res = arc2_lim(term)
        if isinstance(res, Incomparable):
            print(res.describe(), file=out)
            return EXIT_INCOMPARABLE
        print(f"limit: {to_text(res.poly, style='arctic')}", file=out)
        print(f"certified threshold d0: {res.threshold_d0}", file=out)
        print(f"delta floor: {res.delta_floor.describe()}", file=out)
        return EXIT_OK
    lim = arc_lim(term)
    print(f"limit: {_poly1_d(lim.poly)}", file=out)
    print(f"minimal threshold: {minimal_threshold(term, lim)}", file=out)
    print(f"certified threshold: {lim.threshold_d0}", file=out)
    return EXIT_OK


def cmd_depth(args, out):
    src = parse(args.expr)
    if src.order == "arctic":
        raise UsageError("depth is defined for polynomials, not arctic terms")
    print(p2_depth(src.ast) if src.order == "p2" else p3_depthF(src.ast), file=out)
    return EXIT_OK


def cmd_normalize(args, out):
    P = parse_expr(args.expr, "p2")
    dag, roots = nf_merge([P])
    if args.dot:
        print(to_dot(dag, roots), file=out)
    elif args.json:
        print(to_json(dag, roots), file=out)
    else:
        for node in dag.nodes[2:]:
            print(f"{dag.names(node.id)} = L({label_text(dag, node.label)})  [height {node.height}]", file=out)
        print(f"root = {label_text(dag, roots[0].label)}", file=out)
    return EXIT_OK


def _print_assignment(a, out):
    print(f"n = {a.n}", file=out)
    print(f"ell = {a.ell.describe()}", file=out)


def cmd_eq(args, out):
    a, b = parse(args.left), parse(args.right)
    order = "p3" if "p3" in (a.order, b.order) else a.order
    if "arctic" in (a.order, b.order):
        if a.order != b.order:
            raise UsageError("cannot compare an arctic term with a polynomial")
        if ac.has_delta(a.ast) or ac.has_delta(b.ast):
            raise UsageError("equality of order-two arctic terms is not decidable here")
        print("equivalent" if arc_eq(a.ast, b.ast) else "not equivalent", file=out)
        return EXIT_OK
    if order == "p2":
        dag, (ra, rb) = nf_merge([a.ast, b.ast])
        if ra.label == rb.label:
            print("equivalent", file=out)
            return EXIT_OK
        asg = nf_distinguish(dag, [ra, rb])
        print("not equivalent", file=out)
        _print_assignment(asg, out)
        print(f"values: {p2_eval(a.ast, asg.n, asg.ell)} vs {p2_eval(b.ast, asg.n, asg.ell)}", file=out)
        return EXIT_OK
    if a.ast == b.ast:
        print("equivalent", file=out)
        return EXIT_OK
    found = p3_distinguish_random([a.ast, b.ast])
    if isinstance(found, NotFound):
        print(f"inconclusive: {found.describe()}", file=out)
    else:
        print("not equivalent", file=out)
        _print_assignment(found, out)
        print(f"phi = template {to_text(found.phi.template)}", file=out)
        print(f"values: {found.values[0]} vs {found.values[1]}", file=out)
    return EXIT_OK


def cmd_distinguish(args, out):
    srcs = [parse(t) for t in args.exprs]
    if any(s.order == "arctic" for s in srcs):
        raise UsageError("distinguish takes polynomials")
    if all(s.order == "p2" for s in srcs):
        dag, roots = nf_merge([s.ast for s in srcs])
        asg = nf_distinguish(dag, roots)
        _print_assignment(asg, out)
        for node in dag.nodes:
            name = dag.names(node.id)
            text = name if node.label is None else f"{name} = L({label_text(dag, node.label)})"
            print(f"{text}: {asg.values[node.id]}", file=out)
        for s, r in zip(srcs, roots):
            print(f"{s.text}: {r.label.evaluate(asg.values)}", file=out)
        return EXIT_OK
    found = p3_distinguish_random([s.ast for s in srcs])
    if isinstance(found, NotFound):
        print(f"inconclusive: {found.describe()}", file=out)
        return EXIT_OK
    _print_assignment(found, out)
    print(f"phi = template {to_text(found.phi.template)}", file=out)
    for s, v in zip(srcs, found.values):
        print(f"{s.text}: {v}", file=out)
    return EXIT_OK


def cmd_compose(args, out):
    a, b = parse(args.left), parse(args.right)
    if "arctic" in (a.order, b.order):
        raise UsageError("compose takes polynomials")
    if args.kind == "opcirc":
        result = p3_opcirc(a.ast, b.ast)
    elif args.kind == "star":
        result = p2_star(a.ast, b.ast)
    else:
        result = p2_circ(a.ast, b.ast)
    print(to_text(result), file=out)
    return EXIT_OK


def cmd_bounds(args, out):
    P, Q = parse_expr(args.P, "p2"), parse_expr(args.Q, "p2")
    rep = bound_concat_a(P, Q) if args.kind == "a" else bound_concat_b(P, Q)
    print(f"bound: {to_text(rep.bound)}", file=out)
    print(f"degree: {to_text(ac.simplify(rep.degree))}", file=out)
    print(f"asymptotic degree: {_poly1_d(rep.asymptotic.poly)}", file=out)
    print(BOUND_CAVEAT, file=out)
    return EXIT_OK


def cmd_doubledeg(args, out):
    P = parse_expr(args.expr, "p3")
    res = p3_double_degree(P)
    if isinstance(res, Incomparable):
        print(res.describe(), file=out)
        return EXIT_INCOMPARABLE
    print(f"double degree limit: {_poly1_d(res.poly)}", file=out)
    print(f"certified threshold: {res.threshold_d0}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopoly", description="second- and third-order polynomials")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    s = sub.add_parser("eval", help="evaluate at n, ell and phi")
    s.add_argument("expr")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--ell", help="poly:<expr in m> or table:x:y,...;tail:hold|slope:k|poly:<expr>")
    s.add_argument("--phi", help="second-order template for F")
    s.set_defaults(fn=cmd_eval)

    for name, fn, help_ in (
        ("deg", cmd_deg, "arctic degree"),
        ("limdeg", cmd_limdeg, "asymptotic degree with thresholds"),
        ("depth", cmd_depth, "nesting depth of L (or F for third order)"),
        ("doubledeg", cmd_doubledeg, "double degree of a third-order polynomial"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("expr")
        s.set_defaults(fn=fn)

    s = sub.add_parser("normalize", help="DAG normal form")
    s.add_argument("expr")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_normalize)

    s = sub.add_parser("eq", help="decide equivalence")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(fn=cmd_eq)

    s = sub.add_parser("distinguish", help="assignment separating all inputs")
    s.add_argument("exprs", nargs="+")
    s.set_defaults(fn=cmd_distinguish)

    s = sub.add_parser("compose", help="star, circ or opcirc composition")
    s.add_argument("--kind", choices=("star", "circ", "opcirc"), required=True)
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(fn=cmd_compose)

    s = sub.add_parser("bounds", help="running-time bound of a machine pipeline")
    s.add_argument("--kind", choices=("a", "b"), required=True)
    s.add_argument("P")
    s.add_argument("Q")
    s.set_defaults(fn=cmd_bounds)
    return p


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args, out)
    except (UsageError, ParseError) as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    except DomainError as e:
        print(f"domain error: {e}", file=err)
        return EXIT_DOMAIN
    except HopolyError as e:
        print(f"error: {e}", file=err)
        return EXIT_DOMAIN


def main():
    sys.exit(run())
