"""Expression trees for Lie elements, with a parser and a printer.

Grammar (round-trippable with :func:`print_expr`):

    expr     := term (('+'|'-') term)*
    term     := coeff '*' factor | factor
    factor   := generator
              | '[' expr ',' expr ']'
              | '(' expr ')' chainfac*
    chainfac := '(' expr '+' coeff ')'
    coeff    := ['-'] integer ['/' positive-integer]

A parenthesized expression with no chain factors is transparent (no AST
node); a chain factor ``(v + a)`` denotes the shifted product
``u*v + a*u`` applied on the right.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ExprSyntaxError


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Scaled:
    coeff: Fraction
    factor: object


@dataclass(frozen=True)
class Bracket:
    left: object
    right: object


@dataclass(frozen=True)
class Chain:
    base: object
    factors: tuple  # of (expr node, Fraction shift) pairs


@dataclass(frozen=True)
class Sum:
    items: tuple  # of (sign, node) pairs with sign in {+1, -1}


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[\[\](),+\-*/]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ExprSyntaxError(
                "unexpected character %r" % (stripped[0],), len(text) - len(stripped)
            )
        if m.lastgroup == "int":
            tokens.append(("int", m.group("int"), m.start("int")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("sym", m.group("sym"), m.start("sym")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self, offset=0):
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of input", len(self.text))
        self.pos += 1
        return tok

    def expect(self, value):
        tok = self.next()
        if tok[1] != value:
            raise ExprSyntaxError("expected %r, found %r" % (value, tok[1]), tok[2])
        return tok

    def at(self, value, offset=0):
        tok = self.peek(offset)
        return tok is not None and tok[1] == value

    def parse_coeff(self) -> Fraction:
        sign = 1
        if self.at("-"):
            self.next()
            sign = -1
        tok = self.next()
        if tok[0] != "int":
            raise ExprSyntaxError("expected an integer, found %r" % (tok[1],), tok[2])
        num = int(tok[1])
        if self.at("/"):
            self.next()
            dtok = self.next()
            if dtok[0] != "int" or int(dtok[1]) == 0:
                raise ExprSyntaxError("expected a positive denominator", dtok[2])
            return Fraction(sign * num, int(dtok[1]))
        return Fraction(sign * num)

    def _coeff_lookahead(self, offset) -> int | None:
        """Length of a ``coeff ')'`` match starting at ``offset``, else None."""
        i = offset
        tok = self.peek(i)
        if tok is not None and tok[1] == "-":
            i += 1
            tok = self.peek(i)
        if tok is None or tok[0] != "int":
            return None
        i += 1
        tok = self.peek(i)
        if tok is not None and tok[1] == "/":
            tok2 = self.peek(i + 1)
            if tok2 is None or tok2[0] != "int":
                return None
            i += 2
            tok = self.peek(i)
        if tok is not None and tok[1] == ")":
            return i - offset
        return None

    def parse_expr(self, stop_before_shift=False) -> Sum:
        items = []
        sign = 1
        if self.at("-"):
            self.next()
            sign = -1
        elif self.at("+"):
            self.next()
        items.append((sign, self.parse_term()))
        while self.at("+") or self.at("-"):
            if stop_before_shift and self.at("+") and self._coeff_lookahead(1) is not None:
                break
            op = self.next()[1]
            items.append((1 if op == "+" else -1, self.parse_term()))
        return Sum(tuple(items))

    def parse_term(self):
        tok = self.peek()
        if tok is not None and tok[0] == "int":
            coeff = self.parse_coeff()
            self.expect("*")
            return Scaled(coeff, self.parse_factor())
        return self.parse_factor()

    def parse_factor(self):
        tok = self.next()
        if tok[0] == "name":
            return Gen(tok[1])
        if tok[1] == "[":
            left = self.parse_expr()
            self.expect(",")
            right = self.parse_expr()
            self.expect("]")
            return Bracket(left, right)
        if tok[1] == "(":
            inner = self.parse_expr()
            self.expect(")")
            factors = []
            while self.at("("):
                self.next()
                v = self.parse_expr(stop_before_shift=True)
                self.expect("+")
                alpha = self.parse_coeff()
                self.expect(")")
                factors.append((v, alpha))
            if factors:
                return Chain(inner, tuple(factors))
            return inner
        raise ExprSyntaxError("unexpected token %r" % (tok[1],), tok[2])


def parse_expr(text: str) -> Sum:
    """Parse an expression string into its AST."""
    if not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    parser = _Parser(text)
    ast = parser.parse_expr()
    tok = parser.peek()
    if tok is not None:
        raise ExprSyntaxError("trailing input %r" % (tok[1],), tok[2])
    return ast


def _coeff_str(c: Fraction) -> str:
    return str(c)


def _factor_str(node) -> str:
    if isinstance(node, Gen):
        return node.name
    if isinstance(node, Bracket):
        return "[%s,%s]" % (print_expr(node.left), print_expr(node.right))
    if isinstance(node, Chain):
        out = "(%s)" % print_expr(node.base)
        for v, alpha in node.factors:
            out += "(%s+%s)" % (print_expr(v), _coeff_str(alpha))
        return out
    if isinstance(node, Sum):
        return "(%s)" % print_expr(node)
    raise TypeError("not a factor node: %r" % (node,))


def _term_str(node) -> str:
    if isinstance(node, Scaled):
        return "%s*%s" % (_coeff_str(node.coeff), _factor_str(node.factor))
    return _factor_str(node)


def print_expr(node) -> str:
    """Render an AST back to grammar text; ``parse_expr`` inverts it."""
    if not isinstance(node, Sum):
        return _term_str(node)
    out = ""
    for i, (sign, item) in enumerate(node.items):
        text = _term_str(item)
        if i == 0:
            out = text if sign > 0 else "-" + text
        else:
            out += " + " + text if sign > 0 else " - " + text
    return out
