"""Recursive-descent parser for operator expressions and lowering to NCPoly.

Grammar::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary | "/" unary)*
    unary   := "-" unary | power
    power   := atom ("^" "-"? UINT)?
    atom    := "x" | "p" | "i" | "hbar" | IDENT | NUMBER | "(" expr ")" | "[" expr "," expr "]"
    NUMBER  := UINT ("/" UINT)?

Multiplication is always explicit, so ``xp`` is a parameter name and not a
product. Negative exponents are accepted syntactically because rendered
coefficients contain them (``m^-1``); lowering rejects them on x and p.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import algebra
from .algebra import NCPoly
from .coeff import HBAR, I, Coefficient
from .errors import (
    DivisionByZero,
    NcpsError,
    NegativeOperatorPower,
    NotMonomialDivisor,
    ParseError,
    ReservedName,
)

KEYWORDS = {"x": "GenX", "p": "GenP", "i": "ImagUnit", "hbar": "Param"}
_RESERVED_FOLDED = {"x", "p", "i", "t", "hbar"}

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<uint>[0-9]+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()\[\],])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "uint", "ident", "op", "eof"
    text: str
    start: int

    @property
    def end(self):
        return self.start + len(self.text)


@dataclass(frozen=True)
class Node:
    """AST node.

    ``kind`` is one of Sum, Product, Power, Neg, Commutator, GenX, GenP,
    ImagUnit, Param, RationalLit, Paren. ``value`` holds the operator
    ("+", "-", "*", "/") for Sum/Product, the integer exponent for Power,
    the name for Param and a ``(numerator, denominator)`` pair for
    RationalLit. ``span`` is the half-open source range.
    """

    kind: str
    children: tuple["Node", ...] = ()
    value: object = None
    span: tuple[int, int] = field(default=(0, 0), compare=False)


def _scan(src: str) -> list[Token]:
    # a stray character becomes a "bad" token so the parser can report what it expected there
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            tokens.append(Token("bad", src[pos], pos))
            return tokens
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(src)))
    return tokens


def tokenize(src: str) -> list[Token]:
    tokens = _scan(src)
    last = tokens[-1]
    if last.kind == "bad":
        raise ParseError(f"unexpected character {last.text!r}", source=src, offset=last.start)
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _scan(src)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k=1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def error(self, expected, what=None):
        t = self.tok
        if t.kind == "eof":
            found = "end of input"
        elif t.kind == "bad":
            found = f"character {t.text!r}"
        else:
            found = repr(t.text)
        raise ParseError(what or f"unexpected {found}", source=self.src, offset=t.start, expected=expected)

    def expect(self, text):
        if self.tok.kind == "op" and self.tok.text == text:
            return self.advance()
        self.error([repr(text)])

    def at(self, text):
        return self.tok.kind == "op" and self.tok.text == text

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "eof":
            self.error(["'+'", "'-'", "'*'", "'/'", "end of input"])
        return node

    def expr(self) -> Node:
        left = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            right = self.term()
            left = Node("Sum", (left, right), op, (left.span[0], right.span[1]))
        return left

    def term(self) -> Node:
        left = self.unary()
        while self.at("*") or self.at("/"):
            op = self.advance().text
            right = self.unary()
            left = Node("Product", (left, right), op, (left.span[0], right.span[1]))
        return left

    def unary(self) -> Node:
        if self.at("-"):
            start = self.advance().start
            inner = self.unary()
            return Node("Neg", (inner,), None, (start, inner.span[1]))
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if not self.at("^"):
            return base
        self.advance()
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        if self.tok.kind != "uint":
            self.error(["integer exponent"])
        t = self.advance()
        return Node("Power", (base,), sign * int(t.text), (base.span[0], t.end))

    _ATOM_START = ["'x'", "'p'", "'i'", "'hbar'", "identifier", "number", "'('", "'['"]

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "uint":
            self.advance()
            # NUMBER := UINT ("/" UINT)?
            if self.at("/") and self.peek().kind == "uint":
                self.advance()
                d = self.advance()
                return Node("RationalLit", (), (int(t.text), int(d.text)), (t.start, d.end))
            return Node("RationalLit", (), (int(t.text), 1), (t.start, t.end))
        if t.kind == "ident":
            self.advance()
            kind = KEYWORDS.get(t.text)
            if kind == "Param":
                return Node("Param", (), HBAR, (t.start, t.end))
            if kind:
                return Node(kind, (), None, (t.start, t.end))
            if t.text.lower() in _RESERVED_FOLDED:
                raise ReservedName(
                    f"{t.text!r} is reserved and cannot be used as a parameter name",
                    source=self.src,
                    offset=t.start,
                )
            return Node("Param", (), t.text, (t.start, t.end))
        if self.at("("):
            start = self.advance().start
            inner = self.expr()
            end = self.expect(")").end
            return Node("Paren", (inner,), None, (start, end))
        if self.at("["):
            start = self.advance().start
            left = self.expr()
            self.expect(",")
            right = self.expr()
            end = self.expect("]").end
            return Node("Commutator", (left, right), None, (start, end))
        self.error(self._ATOM_START)


def parse(src: str) -> Node:
    """Parse ``src`` into an AST; raises :class:`ParseError` with line/column."""
    return _Parser(src).parse()


def _with_span(exc: NcpsError, span):
    if exc.span is None:
        exc.span = span
    return exc


def scalar_divisor(node: Node, value: NCPoly) -> Coefficient:
    if not value.is_scalar():
        raise NotMonomialDivisor("denominator must be a scalar, not an operator expression", span=node.span)
    s = value.scalar()
    if not s:
        raise DivisionByZero("division by zero", span=node.span)
    if not s.is_monomial():
        raise NotMonomialDivisor("denominator must be a single-term scalar", span=node.span)
    return s


def lower(node: Node) -> NCPoly:
    """Evaluate an AST to its normal-ordered polynomial."""
    try:
        return _lower(node)
    except NcpsError as exc:
        raise _with_span(exc, node.span)


def _lower(node: Node) -> NCPoly:
    k = node.kind
    if k == "GenX":
        return algebra.X
    if k == "GenP":
        return algebra.P
    if k == "ImagUnit":
        return NCPoly.const(I)
    if k == "Param":
        return NCPoly.param(node.value)
    if k == "RationalLit":
        n, d = node.value
        if d == 0:
            raise DivisionByZero("zero denominator", span=node.span)
        return NCPoly.const(Fraction(n, d))
    if k == "Paren":
        return _lower(node.children[0])
    if k == "Neg":
        return -_lower(node.children[0])
    if k == "Sum":
        left, right = (_lower(c) for c in node.children)
        return left + right if node.value == "+" else left - right
    if k == "Product":
        left = _lower(node.children[0])
        right = _lower(node.children[1])
        if node.value == "*":
            return algebra.mul(left, right)
        return algebra.scalar_div(left, scalar_divisor(node.children[1], right))
    if k == "Power":
        base = _lower(node.children[0])
        n = node.value
        if n >= 0:
            return base**n
        if not base.is_scalar():
            raise NegativeOperatorPower("x and p have no inverses", span=node.span)
        return NCPoly.const(scalar_divisor(node.children[0], base) ** n)
    if k == "Commutator":
        left, right = (_lower(c) for c in node.children)
        return algebra.commutator(left, right)
    raise ValueError(f"unknown node kind {k!r}")


def parse_poly(src: str) -> NCPoly:
    """``lower(parse(src))``."""
    return lower(parse(src))


def syntactic_degree(node: Node) -> int:
    """Upper bound on the operator degree of any intermediate product."""
    k = node.kind
    if k in ("GenX", "GenP"):
        return 1
    if k in ("ImagUnit", "Param", "RationalLit"):
        return 0
    if k in ("Paren", "Neg"):
        return syntactic_degree(node.children[0])
    if k == "Sum":
        return max(syntactic_degree(c) for c in node.children)
    if k == "Product":
        if node.value == "/":
            return syntactic_degree(node.children[0])
        return sum(syntactic_degree(c) for c in node.children)
    if k == "Commutator":
        return sum(syntactic_degree(c) for c in node.children)
    if k == "Power":
        return syntactic_degree(node.children[0]) * max(node.value, 0)
    raise ValueError(f"unknown node kind {k!r}")
