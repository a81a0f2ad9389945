"""The offset-function language: a small recursive-descent parser for f(l).

Grammar (``^`` is right-associative and binds tighter than unary minus)::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | power
    power := atom ('^' unary)?
    atom  := number | 'l' | 'pi' | 'e' | fn '(' expr ')' | '(' expr ')'
    fn    := sin | cos | tan | ln | log | exp | sqrt | abs

``log`` is the natural logarithm, same as ``ln``. ``pi`` and ``e`` are folded
to constants while parsing. Evaluation follows IEEE semantics, so ``ln(0)``
gives ``-inf`` and ``1/0`` gives ``inf`` instead of raising.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ExprSyntaxError, UnknownIdentifier

FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "ln": np.log,
    "log": np.log,
    "exp": np.exp,
    "sqrt": np.sqrt,
    "abs": np.abs,
}
CONSTANTS = {"pi": math.pi, "e": math.e}
VARIABLE = "l"

# Guards that keep hostile input from exhausting the Python stack.
MAX_DEPTH = 64
MAX_HEIGHT = 256


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


@dataclass(frozen=True)
class Const:
    value: float

    def __post_init__(self):
        value = float(self.value)
        if not math.isfinite(value):
            raise ValueError(f"constant must be finite, got {value}")
        object.__setattr__(self, "value", value)


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Unary:
    child: "OffsetExpr"
    op: str = "neg"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "OffsetExpr"
    right: "OffsetExpr"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "OffsetExpr"


OffsetExpr = Union[Const, Var, Unary, Binary, Call]

_PUNCT = {"+": "plus", "-": "minus", "*": "star", "/": "slash", "^": "caret", "(": "lparen", ")": "rparen"}
_NUMBER = re.compile(r"(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, i))
            i += 1
            continue
        m = _NUMBER.match(text, i)
        if m:
            if not math.isfinite(float(m.group())):
                raise ExprSyntaxError(f"number {m.group()!r} is out of range", i)
            tokens.append(Token("number", m.group(), i))
            i = m.end()
            continue
        m = _IDENT.match(text, i)
        if m:
            tokens.append(Token("ident", m.group(), i))
            i = m.end()
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    return tokens


class _Parser:
    def __init__(self, text: str, allow_var: bool):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.depth = 0
        self.allow_var = allow_var

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def here(self) -> int:
        tok = self.peek()
        return tok.position if tok else len(self.text)

    def advance(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of input", len(self.text))
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            found = "end of input" if tok is None else repr(tok.text)
            raise ExprSyntaxError(f"expected {what}, found {found}", self.here())
        return self.advance()

    def enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ExprSyntaxError("expression nested too deeply", self.here())

    def expr(self) -> OffsetExpr:
        self.enter()
        node = self.term()
        while (tok := self.peek()) is not None and tok.kind in ("plus", "minus"):
            self.advance()
            node = Binary(tok.text, node, self.term())
        self.depth -= 1
        return node

    def term(self) -> OffsetExpr:
        node = self.unary()
        while (tok := self.peek()) is not None and tok.kind in ("star", "slash"):
            self.advance()
            node = Binary(tok.text, node, self.unary())
        return node

    def unary(self) -> OffsetExpr:
        tok = self.peek()
        if tok is not None and tok.kind == "minus":
            self.advance()
            self.enter()
            node = Unary(self.unary())
            self.depth -= 1
            return node
        return self.power()

    def power(self) -> OffsetExpr:
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok.kind == "caret":
            self.advance()
            self.enter()
            exponent = self.unary()
            self.depth -= 1
            return Binary("^", base, exponent)
        return base

    def atom(self) -> OffsetExpr:
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of input", len(self.text))
        if tok.kind == "number":
            self.advance()
            return Const(float(tok.text))
        if tok.kind == "lparen":
            self.advance()
            node = self.expr()
            self.expect("rparen", "')'")
            return node
        if tok.kind == "ident":
            name = tok.text
            if name == VARIABLE and self.allow_var:
                self.advance()
                return Var()
            if name in CONSTANTS:
                self.advance()
                return Const(CONSTANTS[name])
            if name in FUNCTIONS:
                self.advance()
                self.expect("lparen", f"'(' after {name}")
                arg = self.expr()
                self.expect("rparen", "')'")
                return Call(name, arg)
            raise UnknownIdentifier(name, tok.position)
        raise ExprSyntaxError(f"unexpected {tok.text!r}", tok.position)


def parse(text: str, allow_var: bool = True) -> OffsetExpr:
    """Parse ``text`` into an expression tree.

    With ``allow_var=False`` the variable ``l`` is rejected, which turns the
    language into a constant-expression evaluator (used for numeric CLI flags).
    """
    parser = _Parser(text, allow_var)
    if not parser.tokens:
        raise ExprSyntaxError("empty expression", 0)
    node = parser.expr()
    if parser.peek() is not None:
        tok = parser.peek()
        raise ExprSyntaxError(f"unexpected {tok.text!r}", tok.position)
    if _height(node) > MAX_HEIGHT:
        raise ExprSyntaxError("expression tree too deep", 0)
    return node


def _children(node: OffsetExpr) -> tuple:
    if isinstance(node, Unary):
        return (node.child,)
    if isinstance(node, Binary):
        return (node.left, node.right)
    if isinstance(node, Call):
        return (node.arg,)
    return ()


def _height(node: OffsetExpr) -> int:
    best = 0
    stack = [(node, 1)]
    while stack:
        n, h = stack.pop()
        best = max(best, h)
        stack.extend((c, h + 1) for c in _children(n))
    return best


def _eval(node: OffsetExpr, l: np.float64) -> np.float64:
    if isinstance(node, Const):
        return np.float64(node.value)
    if isinstance(node, Var):
        return l
    if isinstance(node, Unary):
        return -_eval(node.child, l)
    if isinstance(node, Binary):
        a = _eval(node.left, l)
        b = _eval(node.right, l)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            return np.divide(a, b)
        return np.power(a, b)
    if isinstance(node, Call):
        return FUNCTIONS[node.fn](_eval(node.arg, l))
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(expr: OffsetExpr, l: float) -> float:
    """Value of ``expr`` at ``l``; NaN and infinities are returned, never raised."""
    with np.errstate(all="ignore"):
        return float(_eval(expr, np.float64(l)))


def constant(text: str) -> float:
    """Evaluate a variable-free expression such as ``9/8*pi``."""
    return evaluate(parse(text, allow_var=False), 0.0)


def _render_number(v: float) -> str:
    if v < 0 or (v == 0 and math.copysign(1.0, v) < 0):
        return f"(-{_render_number(-v)})"
    if v.is_integer() and v < 1e16:
        return str(int(v))
    return repr(v)


def render(expr: OffsetExpr) -> str:
    """Fully parenthesized canonical text that parses back to the same values."""
    if isinstance(expr, Const):
        return _render_number(expr.value)
    if isinstance(expr, Var):
        return VARIABLE
    if isinstance(expr, Unary):
        return f"(-{render(expr.child)})"
    if isinstance(expr, Binary):
        return f"({render(expr.left)} {expr.op} {render(expr.right)})"
    if isinstance(expr, Call):
        return f"{expr.fn}({render(expr.arg)})"
    raise TypeError(f"not an expression node: {expr!r}")
