"""Formula syntax: AST, parser, printer and interpretation into objects.

Concrete syntax (ASCII)::

    atoms      [A-Za-z_][A-Za-z0-9_]*   (not top, bot, kappa, alpha)
    units      1  0  top  bot
    postfix    F^                        negation, binds tightest
    prefix     !F  ?F  kappa F  alpha F
    infix      &  +  *  @  *.  @.  ;  ->  one level, left-associative

Two different infix operators may not share a chain without parentheses:
``A * B @ C`` is rejected, ``(A * B) @ C`` is fine.  ``A -> B`` is read as
``A^ @ B``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from . import connectives as cx
from .connectives import CapacityConfig, DEFAULT_CAPS, UnitKind
from .core import PvObject
from .errors import MixedOperatorChain, ParseError, UnboundAtom


class Formula:
    __slots__ = ()

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True, eq=True, repr=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Unit(Formula):
    kind: UnitKind


@dataclass(frozen=True)
class Neg(Formula):
    body: Formula


@dataclass(frozen=True)
class Bang(Formula):
    body: Formula


@dataclass(frozen=True)
class Quest(Formula):
    body: Formula


@dataclass(frozen=True)
class Kappa(Formula):
    body: Formula


@dataclass(frozen=True)
class Alpha(Formula):
    body: Formula


@dataclass(frozen=True)
class Binary(Formula):
    left: Formula
    right: Formula


class With(Binary):
    pass


class Plus(Binary):
    pass


class Tensor(Binary):
    pass


class Par(Binary):
    pass


class PTensor(Binary):
    pass


class PPar(Binary):
    pass


class Seq(Binary):
    pass


class Lolli(Binary):
    pass


INFIX = {
    "&": With, "+": Plus, "*": Tensor, "@": Par,
    "*.": PTensor, "@.": PPar, ";": Seq, "->": Lolli,
}
INFIX_SYMBOL = {cls: sym for sym, cls in INFIX.items()}
PREFIX = {"!": Bang, "?": Quest, "kappa": Kappa, "alpha": Alpha}
PREFIX_SYMBOL = {cls: sym for sym, cls in PREFIX.items()}
UNITS = {"1": UnitKind.ONE, "0": UnitKind.ZERO, "top": UnitKind.TOP, "bot": UnitKind.BOT}
UNIT_SYMBOL = {k: s for s, k in UNITS.items()}
RESERVED = {"top", "bot", "kappa", "alpha"}

Env = Mapping[str, PvObject]


# -- lexer -------------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<op>\*\.|@\.|->|[&+*@;^!?(),])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<digit>[01](?![0-9A-Za-z_]))
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str      # "op", "ident", "unit", "eof"
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "ws":
            for i, ch in enumerate(value):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        elif kind == "ident" and value in UNITS:
            tokens.append(Token("unit", value, line, col))
        elif kind == "digit":
            tokens.append(Token("unit", value, line, col))
        else:
            tokens.append(Token(kind, value, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# -- parser ------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.column)

    def expect(self, text):
        tok = self.peek()
        if tok.text != text or tok.kind not in ("op",):
            self.fail(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return self.advance()

    def sequent(self) -> list[Formula]:
        items = [self.infix()]
        while self.peek().kind == "op" and self.peek().text == ",":
            self.advance()
            items.append(self.infix())
        self.end()
        return items

    def end(self):
        if self.peek().kind != "eof":
            self.fail(f"unexpected {self.peek().text!r}")

    def infix(self) -> Formula:
        left = self.unary()
        chain_op = None
        while self.peek().kind == "op" and self.peek().text in INFIX:
            tok = self.advance()
            if chain_op is not None and tok.text != chain_op:
                raise MixedOperatorChain(
                    f"operator {tok.text!r} follows {chain_op!r} without parentheses",
                    tok.line, tok.column)
            chain_op = tok.text
            right = self.unary()
            left = _normalize_lolli(INFIX[tok.text](left, right))
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if (tok.kind == "op" and tok.text in ("!", "?")) or (tok.kind == "ident" and tok.text in ("kappa", "alpha")):
            self.advance()
            return PREFIX[tok.text](self.unary())
        return self.postfix()

    def postfix(self) -> Formula:
        body = self.primary()
        while self.peek().kind == "op" and self.peek().text == "^":
            self.advance()
            body = Neg(body)
        return body

    def primary(self) -> Formula:
        tok = self.advance()
        if tok.kind == "unit":
            return Unit(UNITS[tok.text])
        if tok.kind == "ident":
            if tok.text in RESERVED:
                self.fail(f"reserved word {tok.text!r} used as an atom", tok)
            return Atom(tok.text)
        if tok.kind == "op" and tok.text == "(":
            inner = self.infix()
            self.expect(")")
            return inner
        self.fail(f"unexpected {tok.text or 'end of input'!r}", tok)


def _normalize_lolli(f: Formula) -> Formula:
    if isinstance(f, Lolli):
        return Par(Neg(f.left), f.right)
    return f


def normalize(f: Formula) -> Formula:
    """Rewrite every ``Lolli(a, b)`` into ``Par(Neg(a), b)``."""
    if isinstance(f, Lolli):
        return Par(Neg(normalize(f.left)), normalize(f.right))
    if isinstance(f, Binary):
        return type(f)(normalize(f.left), normalize(f.right))
    if isinstance(f, (Neg, Bang, Quest, Kappa, Alpha)):
        return type(f)(normalize(f.body))
    return f


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.infix()
    p.end()
    return f


def parse_sequent(text: str) -> list[Formula]:
    p = _Parser(text)
    if p.peek().kind == "eof":
        p.fail("empty sequent")
    return p.sequent()


# -- printer -----------------------------------------------------------------------

def format_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Unit):
        return UNIT_SYMBOL[f.kind]
    if isinstance(f, Neg):
        body = format_formula(f.body)
        if isinstance(f.body, (Atom, Unit, Neg)):
            return body + "^"
        return f"({body})^"
    if isinstance(f, (Bang, Quest, Kappa, Alpha)):
        sym = PREFIX_SYMBOL[type(f)]
        body = format_formula(f.body)
        if isinstance(f.body, Binary):
            body = f"({body})"
        sep = " " if sym in ("kappa", "alpha") or body[0] in "!?" else ""
        return f"{sym}{sep}{body}"
    if isinstance(f, Binary):
        sym = INFIX_SYMBOL[type(f)]
        left = format_formula(f.left)
        # left-nested chains of the same operator need no parentheses
        if isinstance(f.left, Binary) and type(f.left) is not type(f):
            left = f"({left})"
        right = format_formula(f.right)
        if isinstance(f.right, Binary):
            right = f"({right})"
        return f"{left} {sym} {right}"
    raise TypeError(f"not a formula: {f!r}")


# -- interpretation -------------------------------------------------------------------

_BINARY_OPS = {
    With: cx.with_, Plus: cx.plus_, Tensor: cx.tensor, Par: cx.par,
    PTensor: cx.ptensor, PPar: cx.ppar, Seq: cx.seqcomp, Lolli: cx.lollipop,
}


def interpret(f: Formula, env: Env, caps: CapacityConfig = DEFAULT_CAPS) -> PvObject:
    if isinstance(f, Atom):
        if f.name not in env:
            raise UnboundAtom(f"atom {f.name!r} is not bound in the environment")
        return env[f.name]
    if isinstance(f, Unit):
        return cx.unit(f.kind)
    if isinstance(f, Neg):
        return cx.neg(interpret(f.body, env, caps))
    if isinstance(f, Bang):
        return cx.bang(interpret(f.body, env, caps))
    if isinstance(f, Quest):
        return cx.quest(interpret(f.body, env, caps))
    if isinstance(f, Kappa):
        return cx.kappa(interpret(f.body, env, caps), caps)
    if isinstance(f, Alpha):
        return cx.alpha(interpret(f.body, env, caps), caps)
    if isinstance(f, Lolli):
        f = normalize(f)
    if isinstance(f, Binary):
        op = _BINARY_OPS[type(f)]
        return op(interpret(f.left, env, caps), interpret(f.right, env, caps), caps)
    raise TypeError(f"not a formula: {f!r}")
