"""Command line interface: expression parsing, dispatch, report emission.

Grammar (no implicit multiplication):

    expr  := sum
    sum   := prod (("+"|"-") prod)*
    prod  := unary (("*"|"/") unary)*
    unary := "-" unary | atom ("^" nat)?
    atom  := nat | "y" | "x" | "v" | "t" | "(" expr ")"

Class expressions for gw-equal are sums of "h", "<a>" and integer multiples
like "2h"; "0" denotes the zero class.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import bilinear, degrees, hurwitz, polyring
from .bilinear import GWClass, gw_equal, zero_class
from .field_tower import A1HurwitzError, Field, RationalFunctionField, make_field
from .polyring import Poly, RationalFunc, poly, valuation

__all__ = [
    "ParseError",
    "UnknownSymbol",
    "ZeroDenominator",
    "parse_expression",
    "parse_gw_class",
    "render_gw",
    "gw_to_json",
    "main",
]


class ParseError(A1HurwitzError):
    """Syntax error with a position into the input text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownSymbol(A1HurwitzError):
    pass


class ZeroDenominator(A1HurwitzError):
    pass


# ---------------------------------------------------------------------------
# tokenizer and recursive-descent parser


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([yxvt])|([-+*/^()])|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        nat, sym, op, bad = m.groups()
        at = m.start(1) if nat else m.start(2) if sym else m.start(3) if op else m.start(4)
        if bad:
            raise ParseError(f"unexpected character {bad!r}", at)
        if nat:
            tokens.append(("nat", int(nat), at))
        elif sym:
            tokens.append(("sym", sym, at))
        else:
            tokens.append(("op", op, at))
        pos = m.end()
    tokens.append(("eof", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, ch):
        kind, val, at = self.next()
        if kind != "op" or val != ch:
            raise ParseError(f"expected {ch!r}", at)

    def parse_expr(self):
        node = self.parse_prod()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                node = (val, node, self.parse_prod())
            else:
                return node

    def parse_prod(self):
        node = self.parse_unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                node = (val, node, self.parse_unary())
            else:
                return node

    def parse_unary(self):
        kind, val, at = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return ("neg", self.parse_unary())
        node = self.parse_atom()
        kind, val, at = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, exp, at = self.next()
            if kind != "nat":
                raise ParseError("exponent must be a natural number", at)
            return ("pow", node, exp)
        return node

    def parse_atom(self):
        kind, val, at = self.next()
        if kind == "nat":
            return ("nat", val)
        if kind == "sym":
            return ("sym", val)
        if kind == "op" and val == "(":
            node = self.parse_expr()
            self.expect_op(")")
            return node
        raise ParseError("expected a number, symbol or parenthesis", at)


def _collect_symbols(node, out: set):
    if node[0] == "sym":
        out.add(node[1])
    elif node[0] in ("neg",):
        _collect_symbols(node[1], out)
    elif node[0] == "pow":
        _collect_symbols(node[1], out)
    elif node[0] in ("+", "-", "*", "/"):
        _collect_symbols(node[1], out)
        _collect_symbols(node[2], out)


def _eval(node, k: Field, var: str) -> RationalFunc:
    op = node[0]
    if op == "nat":
        return RationalFunc.from_poly(poly(k, [k.from_int(node[1])], var))
    if op == "sym":
        if node[1] == "t":
            return RationalFunc.from_poly(poly(k, [k.gen], var))
        return RationalFunc.from_poly(poly(k, [0, 1], var))
    if op == "neg":
        return -_eval(node[1], k, var)
    if op == "pow":
        return _eval(node[1], k, var) ** node[2]
    a = _eval(node[1], k, var)
    b = _eval(node[2], k, var)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if b.is_zero():
        raise ZeroDenominator("division by zero in the input expression")
    return a / b


def parse_expression(text: str, k: Field) -> RationalFunc:
    """Parse an expression into a reduced rational function over k."""
    parser = _Parser(_tokenize(text))
    ast = parser.parse_expr()
    kind, _, at = parser.peek()
    if kind != "eof":
        raise ParseError("trailing input", at)
    symbols: set = set()
    _collect_symbols(ast, symbols)
    if "t" in symbols and not isinstance(k, RationalFunctionField):
        raise UnknownSymbol(f"'t' is not a constant of {k}")
    variables = symbols - {"t"}
    if len(variables) > 1:
        raise UnknownSymbol(f"mixed variables {sorted(variables)} in one expression")
    var = variables.pop() if variables else "y"
    return _eval(ast, k, var)


def parse_polynomial(text: str, k: Field) -> Poly:
    """Parse an expression that must reduce to a polynomial."""
    f = parse_expression(text, k)
    if f.den.degree != 0:
        raise ParseError("expected a polynomial, got a proper fraction", 0)
    return f.num


# ---------------------------------------------------------------------------
# GW class syntax:  "2h + <1> + <-1>", "0"


def parse_gw_class(text: str, k: Field) -> GWClass:
    s = text.strip()
    if s == "0":
        return zero_class(k)
    total = zero_class(k)
    pos = 0
    first = True
    while pos < len(s):
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if not first:
            if pos >= len(s) or s[pos] != "+":
                raise ParseError("expected '+' between class terms", pos)
            pos += 1
            while pos < len(s) and s[pos].isspace():
                pos += 1
        first = False
        m = re.match(r"(\d+)?", s[pos:])
        mult = int(m.group(1)) if m.group(1) else 1
        pos += m.end()
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos < len(s) and s[pos] == "h":
            pos += 1
            total = total + bilinear.hyperbolic(k, mult)
        elif pos < len(s) and s[pos] == "<":
            close = s.find(">", pos)
            if close < 0:
                raise ParseError("unterminated '<'", pos)
            inner = parse_expression(s[pos + 1 : close], k)
            if not inner.is_constant():
                raise ParseError("class entries must be constants", pos + 1)
            value = inner.num.coeff(0)
            if value.is_zero():
                raise ParseError("class entries must be nonzero", pos + 1)
            term = bilinear.rank_one(value)
            for _ in range(mult):
                total = total + term
            pos = close + 1
        else:
            raise ParseError("expected 'h' or '<'", pos)
    return total


def render_gw(A: GWClass) -> str:
    return str(A)


def gw_to_json(A: GWClass) -> dict:
    return {"hyperbolic": A.hyperbolic, "residual": [str(r) for r in A.residual]}


# ---------------------------------------------------------------------------
# report rendering


def _report_to_json(report: hurwitz.RHReport) -> dict:
    clusters = []
    for cl in report.clusters:
        clusters.append(
            {
                "chart": str(cl.chart),
                "pi": "infinity" if cl.at_infinity else str(cl.pi),
                "multiplicity": cl.multiplicity,
                "residue_degree": cl.residue_degree,
                "index": gw_to_json(cl.local_index),
            }
        )
    sig = None
    if report.signature_check is not None:
        got, want, ok = report.signature_check
        sig = {"got": got, "want": want, "pass": ok}
    got, want, ok = report.rank_check
    return {
        "field": repr(report.field),
        "map": str(report.map),
        "degree": report.degree,
        "separable": report.separable,
        "clusters": clusters,
        "total": gw_to_json(report.total),
        "expected": gw_to_json(report.expected),
        "verdict": report.verdict,
        "rank_check": {"got": got, "want": want, "pass": ok},
        "signature_check": sig,
    }


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _report_text(report: hurwitz.RHReport) -> str:
    lines = [
        f"field: {report.field!r}",
        f"map: {report.map}",
        f"degree: {report.degree}",
        f"separable: {str(report.separable).lower()}",
    ]
    for cl in report.clusters:
        where = "infinity" if cl.at_infinity else str(cl.pi)
        lines.append(
            f"cluster {cl.chart} pi={where} mult={cl.multiplicity}"
            f" deg={cl.residue_degree} index={cl.local_index}"
        )
    got, want, ok = report.rank_check
    lines.append(f"total: {report.total}")
    lines.append(f"expected: {report.expected}")
    lines.append(f"rank: {got}/{want} {'ok' if ok else 'FAIL'}")
    if report.signature_check is not None:
        got, want, ok = report.signature_check
        lines.append(f"signature: {got}/{want} {'ok' if ok else 'FAIL'}")
    lines.append(f"verdict: {str(report.verdict).lower()}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_rh(args, seed: int) -> int:
    k = make_field(args.field)
    f = parse_expression(args.map, k)
    report = hurwitz.rh_verify(f)
    if args.json:
        _print_json(_report_to_json(report))
    else:
        print(_report_text(report))
    return 0 if report.verdict else 1


def _cmd_degree(args, seed: int) -> int:
    k = make_field(args.field)
    f = parse_expression(args.expr, k)
    cls = degrees.global_degree(f)
    if args.json:
        _print_json(
            {"field": repr(k), "map": str(f), "rank": cls.rank, "class": gw_to_json(cls)}
        )
    else:
        print(render_gw(cls))
    return 0


def _cmd_local_degree(args, seed: int) -> int:
    k = make_field(args.field)
    f = parse_expression(args.expr, k)
    pi = parse_polynomial(args.at, k).with_variable(f.variable)
    if not pi.is_monic():
        raise hurwitz.NonMonic("the cluster polynomial must be monic")
    mult = args.mult if args.mult is not None else valuation(f.num, pi)
    cls = degrees.local_degree(f, pi, mult)
    if args.json:
        _print_json(
            {
                "field": repr(k),
                "germ": str(f),
                "pi": str(pi),
                "multiplicity": mult,
                "class": gw_to_json(cls),
            }
        )
    else:
        print(render_gw(cls))
    return 0


def _cmd_bezout(args, seed: int) -> int:
    k = make_field(args.field)
    f1 = parse_polynomial(args.f1, k)
    f2 = parse_polynomial(args.f2, k).with_variable(f1.variable)
    G = degrees.bezoutian(f1, f2)
    rows = G.render_rows()
    if args.json:
        _print_json({"field": repr(k), "f1": str(f1), "f2": str(f2), "matrix": rows})
    else:
        for row in rows:
            print("[" + ", ".join(row) + "]")
    return 0


def _cmd_gw_equal(args, seed: int) -> int:
    k = make_field(args.field)
    A = parse_gw_class(args.a, k)
    B = parse_gw_class(args.b, k)
    equal = gw_equal(A, B, seed=seed)
    if args.json:
        _print_json({"field": repr(k), "a": render_gw(A), "b": render_gw(B),
                     "equal": equal})
    else:
        print("equal" if equal else "not equal")
    return 0 if equal else 1


def _cmd_real_check(args, seed: int) -> int:
    k = make_field("Q")
    f = parse_polynomial(args.poly, k)
    report = hurwitz.real_critical_report(f)
    if args.json:
        _print_json(
            {
                "poly": str(f),
                "signature_finite": report.signature_finite,
                "parity_expected": report.parity_expected,
                "pass": report.passed,
            }
        )
    else:
        print(
            f"signature {report.signature_finite}, expected"
            f" {report.parity_expected}: {'pass' if report.passed else 'FAIL'}"
        )
    return 0 if report.passed else 1


def _snake(name: str) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "_", name).lower()


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="a1hurwitz",
        description="Quadratic-form valued local indices of df for rational "
        "self-maps of the projective line, with a ramification-sum verifier.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, field=True):
        if field:
            p.add_argument("--field", required=True,
                           help='base field: "Q", "Fp:<p>" or "Fpt:<p>"')
        p.add_argument("--json", action="store_true", help="emit JSON on stdout")
        p.add_argument("--seed", type=int, default=None,
                       help="factorization seed (overrides A1H_SEED)")

    p = sub.add_parser("rh", help="verify the ramification sum for a map")
    p.add_argument("map")
    common(p)
    p.set_defaults(func=_cmd_rh)

    p = sub.add_parser("degree", help="global degree class of a map")
    p.add_argument("expr")
    common(p)
    p.set_defaults(func=_cmd_degree)

    p = sub.add_parser("local-degree", help="local degree at a cluster")
    p.add_argument("expr")
    p.add_argument("--at", required=True, help="monic cluster polynomial")
    p.add_argument("--mult", type=int, default=None)
    common(p)
    p.set_defaults(func=_cmd_local_degree)

    p = sub.add_parser("bezout", help="Bezoutian matrix of a pair")
    p.add_argument("f1")
    p.add_argument("f2")
    common(p)
    p.set_defaults(func=_cmd_bezout)

    p = sub.add_parser("gw-equal", help="decide equality of two classes")
    p.add_argument("a")
    p.add_argument("b")
    common(p)
    p.set_defaults(func=_cmd_gw_equal)

    p = sub.add_parser("real-check", help="real critical count over Q")
    p.add_argument("poly")
    common(p, field=False)
    p.set_defaults(func=_cmd_real_check)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    seed = args.seed
    if seed is None:
        env = os.environ.get("A1H_SEED")
        seed = int(env) if env else polyring.DEFAULT_SEED
    try:
        return args.func(args, seed)
    except A1HurwitzError as exc:
        print(f"error[{_snake(type(exc).__name__)}]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
