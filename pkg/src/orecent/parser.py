"""Expression parser for Ore elements and coefficient polynomials.

Grammar::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := primary ('^' nat)*
    primary := rational | name | 'x' | 'y' | '[' rational (',' rational)* ']'
             | '(' expr ')'

Products are evaluated left to right with the Ore product and the user's
parentheses are kept, since grouping matters in a non-associative ring.
``u^n`` means u (u^(n-1)).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional

from .algebra import AlgebraError, AlgebraSpec
from .coeff import CoeffPoly, poly_mul
from .exact import mpq
from .ore import OreContext, OreElem, ore_mul


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\s*/\s*\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^(),\[\]])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> List[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            out.append(Token(kind, text, line, pos - line_start + 1))
        for i, ch in enumerate(text):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    out.append(Token("end", "", line, pos - line_start + 1))
    return out


# AST: tuples tagged by their first entry
Node = tuple


class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def take(self, text: Optional[str] = None, kind: Optional[str] = None) -> Token:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(t.text) if t.kind != "end" else "end of input"
            self.error(f"expected {want}, got {got}")
        self.i += 1
        return t

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Node:
        neg = False
        if self.tok.text in "+-" and self.tok.kind == "op":
            neg = self.take().text == "-"
        node = self.term()
        if neg:
            node = ("neg", node)
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            op = self.take().text
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text == "*":
            self.take()
            node = ("mul", node, self.factor())
        return node

    def factor(self) -> Node:
        node = self.primary()
        while self.tok.kind == "op" and self.tok.text == "^":
            self.take()
            t = self.tok
            if t.kind != "num" or "/" in t.text:
                self.error("exponent must be a natural number")
            self.take()
            node = ("pow", node, int(t.text))
        return node

    def rational(self) -> mpq:
        sign = 1
        if self.tok.kind == "op" and self.tok.text in "+-":
            sign = -1 if self.take().text == "-" else 1
        t = self.take(kind="num")
        try:
            return sign * mpq(t.text.replace(" ", ""))
        except ZeroDivisionError:
            self.error("zero denominator", t)

    def primary(self) -> Node:
        t = self.tok
        if t.kind == "num":
            return ("num", self.rational(), t)
        if t.kind == "name":
            self.take()
            return ("var", t.text, t) if t.text in ("x", "y") else ("name", t.text, t)
        if t.text == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if t.text == "[":
            self.take()
            coords = [self.rational()]
            while self.tok.text == ",":
                self.take()
                coords.append(self.rational())
            self.take("]")
            return ("coords", tuple(coords), t)
        if t.kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {t.text!r}")


def parse_ast(src: str) -> Node:
    return _Parser(src).parse()


def _alg_const(spec: AlgebraSpec, node: Node):
    kind, val, tok = node
    if kind == "num":
        return spec.scalar(val)
    if kind == "name":
        try:
            return spec.basis(spec.index_of(val))
        except AlgebraError as exc:
            raise ParseError(str(exc), tok.line, tok.col) from None
    if len(val) != spec.dim:
        raise ParseError(f"bracketed element has {len(val)} coordinates, algebra has dim {spec.dim}",
                         tok.line, tok.col)
    return spec.element(val)


def _eval_elem(ctx: OreContext, node: Node) -> OreElem:
    kind = node[0]
    if kind in ("num", "name", "coords"):
        return ctx.const(_alg_const(ctx.spec, node))
    if kind == "var":
        return ctx.x if node[1] == "x" else ctx.y
    if kind == "neg":
        return -_eval_elem(ctx, node[1])
    if kind == "add":
        return _eval_elem(ctx, node[1]) + _eval_elem(ctx, node[2])
    if kind == "sub":
        return _eval_elem(ctx, node[1]) - _eval_elem(ctx, node[2])
    if kind == "mul":
        return ore_mul(_eval_elem(ctx, node[1]), _eval_elem(ctx, node[2]))
    if kind == "pow":
        base = _eval_elem(ctx, node[1])
        out = ctx.one
        for _ in range(node[2]):
            out = ore_mul(base, out)
        return out
    raise AssertionError(kind)


def parse_element(src: str, ctx: OreContext) -> OreElem:
    """Parse ``src`` into an element of the Ore extension ``ctx``."""
    return _eval_elem(ctx, parse_ast(src))


def _eval_poly(spec: AlgebraSpec, node: Node) -> CoeffPoly:
    kind = node[0]
    if kind in ("num", "name", "coords"):
        return CoeffPoly.constant(_alg_const(spec, node))
    if kind == "var":
        if node[1] == "x":
            tok = node[2]
            raise ParseError("x is not allowed in a coefficient polynomial", tok.line, tok.col)
        return CoeffPoly.y(spec)
    if kind == "neg":
        return -_eval_poly(spec, node[1])
    if kind == "add":
        return _eval_poly(spec, node[1]) + _eval_poly(spec, node[2])
    if kind == "sub":
        return _eval_poly(spec, node[1]) - _eval_poly(spec, node[2])
    if kind == "mul":
        return poly_mul(_eval_poly(spec, node[1]), _eval_poly(spec, node[2]))
    if kind == "pow":
        base = _eval_poly(spec, node[1])
        out = CoeffPoly.constant(spec.one)
        for _ in range(node[2]):
            out = poly_mul(base, out)
        return out
    raise AssertionError(kind)


def parse_coeff_poly(src: str, spec: AlgebraSpec) -> CoeffPoly:
    """Parse a polynomial in y with coefficients in ``spec`` (no x allowed)."""
    return _eval_poly(spec, parse_ast(src))
