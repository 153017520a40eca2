"""A small expression language mixing classical and non-Newtonian arithmetic.

Grammar (see ``docs/grammar.md``)::

    expression := term (("+" | "-" | "~+" | "~-") term)*
    term       := unary (("*" | "/" | "~*" | "~/") unary)*
    unary      := "-" unary | power
    power      := atom ["^" unary]
    atom       := NUMBER | CONST | VAR | FUNC "(" expression ")" | "(" expression ")"

``~+ ~- ~* ~/`` are the field operations of :mod:`nnvar.arith` and share the
precedence of their classical counterparts.  ``^`` is the classical power and
is right-associative.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import arith
from .errors import ParseError, RangeError, UnknownIdentifierError

__all__ = [
    "Num",
    "Const",
    "Var",
    "Unary",
    "BinOp",
    "Call",
    "Expr",
    "parse",
    "evaluate",
    "to_function",
    "pretty",
    "variables",
    "CONSTANTS",
    "FUNCTIONS",
]


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Const, Var, Unary, BinOp, Call]

CONSTANTS = {"e": math.e, "pi": math.pi}


def _abs(z):
    # analytic continuation of |z| off the real axis, needed for complex steps
    if np.iscomplexobj(z):
        return z * np.sign(z.real)
    return np.abs(z)


FUNCTIONS = {
    "ln": np.log,
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "sqrt": np.sqrt,
    "abs": _abs,
}

ADDITIVE = ("+", "-", "~+", "~-")
MULTIPLICATIVE = ("*", "/", "~*", "~/")

_BINARY = {
    "+": np.add,
    "-": np.subtract,
    "*": np.multiply,
    "/": np.divide,
    "^": np.power,
    "~+": arith.nn_add,
    "~-": arith.nn_sub,
    "~*": arith.nn_mul,
    "~/": arith.nn_div,
}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<nnop>~[-+*/])
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(source):
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            if source[pos] == "~":
                raise ParseError("malformed non-Newtonian operator", source, pos, ("~+", "~-", "~*", "~/"))
            raise ParseError(f"unexpected character {source[pos]!r}", source, pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(_Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source, allowed):
        self.source = source
        self.allowed = frozenset(allowed)
        self.tokens = _tokenize(source)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, message, expected=()):
        raise ParseError(message, self.source, self.tok.pos, expected)

    def expect(self, text):
        if self.tok.text != text:
            what = self.tok.text or "end of input"
            self.fail(f"unexpected {what!r}", (text,))
        return self.advance()

    def parse(self):
        node = self.expression()
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.tok.text!r}", ADDITIVE + MULTIPLICATIVE + ("^", "end of input"))
        return node

    def expression(self):
        node = self.term()
        while self.tok.text in ADDITIVE:
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok.text in MULTIPLICATIVE:
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.tok.text == "-":
            self.advance()
            return Unary("-", self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.text == "^":
            self.advance()
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "name":
            self.advance()
            name = tok.text
            if name in FUNCTIONS:
                self.expect("(")
                arg = self.expression()
                self.expect(")")
                return Call(name, arg)
            if self.tok.text == "(":
                raise UnknownIdentifierError(f"unknown function {name!r}", self.source, tok.pos,
                                             tuple(FUNCTIONS))
            if name in CONSTANTS:
                return Const(name)
            if name in self.allowed:
                return Var(name)
            raise UnknownIdentifierError(f"unknown identifier {name!r}", self.source, tok.pos,
                                         tuple(self.allowed) + tuple(CONSTANTS))
        if tok.text == "(":
            self.advance()
            node = self.expression()
            self.expect(")")
            return node
        what = tok.text or "end of input"
        self.fail(f"unexpected {what!r}", ("number", "identifier", "(", "-"))


def parse(source: str, allowed_vars=("t", "x", "v")) -> Expr:
    """Parse ``source`` into an expression tree.

    Identifiers must be a constant, a function name, or one of
    ``allowed_vars``.  Raises :class:`ParseError` (with line and column) on
    malformed input.
    """
    if not source or not source.strip():
        raise ParseError("empty expression", source or "", 0, ("expression",))
    return _Parser(source, allowed_vars).parse()


def variables(e: Expr) -> set:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Unary):
        return variables(e.operand)
    if isinstance(e, Call):
        return variables(e.arg)
    if isinstance(e, BinOp):
        return variables(e.left) | variables(e.right)
    return set()


def _eval(e, env):
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Const):
        return CONSTANTS[e.name]
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Unary):
        return -_eval(e.operand, env)
    if isinstance(e, Call):
        return FUNCTIONS[e.func](_eval(e.arg, env))
    left = _eval(e.left, env)
    right = _eval(e.right, env)
    return _BINARY[e.op](left, right)


def evaluate(e: Expr, bindings):
    """Evaluate ``e`` with variables taken from ``bindings``.

    Values may be floats or numpy arrays (broadcast elementwise).  A
    non-finite result raises :class:`RangeError`.
    """
    missing = variables(e) - set(bindings)
    if missing:
        raise KeyError(f"unbound variables: {sorted(missing)}")
    with np.errstate(all="ignore"):
        r = _eval(e, bindings)
    ra = np.asarray(r)
    if not np.all(np.isfinite(ra)):
        raise RangeError(f"non-finite value from {pretty(e)!r}")
    if ra.ndim == 0 and not any(isinstance(v, np.ndarray) for v in bindings.values()):
        return complex(ra) if np.iscomplexobj(ra) else float(ra)
    return r


def to_function(e: Expr, names=("t", "x", "v")):
    """Positional callable evaluating ``e``; handy for building fields."""
    names = tuple(names)

    def fn(*args):
        return evaluate(e, dict(zip(names, args)))

    fn.__name__ = pretty(e)
    return fn


_LEVEL = {"+": 1, "-": 1, "~+": 1, "~-": 1, "*": 2, "/": 2, "~*": 2, "~/": 2, "^": 4}


def _level(e):
    if isinstance(e, BinOp):
        return _LEVEL[e.op]
    if isinstance(e, Unary):
        return 3
    return 5


def _wrap(e, needs):
    s = pretty(e)
    return f"({s})" if needs else s


def pretty(e: Expr) -> str:
    """Render ``e`` with the minimal parentheses that parse back to ``e``."""
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, (Const, Var)):
        return e.name
    if isinstance(e, Call):
        return f"{e.func}({pretty(e.arg)})"
    if isinstance(e, Unary):
        return "-" + _wrap(e.operand, _level(e.operand) < 3)
    p = _LEVEL[e.op]
    if e.op == "^":
        return f"{_wrap(e.left, _level(e.left) <= 4)} ^ {_wrap(e.right, _level(e.right) < 3)}"
    return f"{_wrap(e.left, _level(e.left) < p)} {e.op} {_wrap(e.right, _level(e.right) <= p)}"
