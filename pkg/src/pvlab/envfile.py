"""Reading and writing environment files and morphism files.

::

    # comment
    object EQ2 { questions: q0 q1; answers: a0 a1; relation: q0->a0, q1->a1; }
    morphism swap : EQ2 -> EQ2 { minus: q0->q1, q1->q0; plus: a0->a1, a1->a0; }

Carrier elements are identifiers or ``*`` (the unit element).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .core import PvMorphism, PvObject, make_object, validate_morphism
from .elements import UNIT, Atom, Element, UnitElem
from .errors import DuplicateObjectName, ParseError, UnboundAtom

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[{}:;,*])
""", re.VERBOSE)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    column: int


def _lex(text: str) -> list[_Tok]:
    out = []
    pos, line, start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            out.append(_Tok(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(_Tok("eof", "", line, pos - start + 1))
    return out


class _Reader:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.column)

    def take(self, text=None, kind=None) -> _Tok:
        tok = self.tok
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            want = repr(text) if text is not None else kind
            self.fail(f"expected {want}, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok

    def at(self, text) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def element(self) -> Element:
        tok = self.tok
        if tok.kind == "ident":
            self.i += 1
            return Atom(tok.text)
        if tok.text == "*":
            self.i += 1
            return UNIT
        self.fail(f"expected an element, found {tok.text or 'end of input'!r}")

    def element_list(self, key) -> list[Element]:
        self.take(key)
        self.take(":")
        items = []
        while not self.at(";"):
            items.append(self.element())
        self.take(";")
        return items

    def arrow_list(self, key) -> list[tuple[Element, Element, _Tok]]:
        self.take(key)
        self.take(":")
        items = []
        if not self.at(";"):
            while True:
                tok = self.tok
                x = self.element()
                self.take("->")
                items.append((x, self.element(), tok))
                if not self.at(","):
                    break
                self.take(",")
        self.take(";")
        return items

    def object_block(self) -> tuple[str, PvObject]:
        self.take("object")
        name = self.take(kind="ident").text
        self.take("{")
        qs = self.element_list("questions")
        ans = self.element_list("answers")
        pairs = [(x, y) for x, y, _ in self.arrow_list("relation")]
        self.take("}")
        return name, make_object(qs, ans, pairs)

    def morphism_block(self, env: Mapping[str, PvObject]) -> tuple[str, PvMorphism]:
        self.take("morphism")
        name = self.take(kind="ident").text
        self.take(":")
        ends = []
        for sep in ("->", "{"):
            tok = self.take(kind="ident")
            if tok.text not in env:
                raise UnboundAtom(f"object {tok.text!r} is not bound in the environment")
            ends.append(env[tok.text])
            self.take(sep)
        minus = self._as_map(self.arrow_list("minus"))
        plus = self._as_map(self.arrow_list("plus"))
        self.take("}")
        return name, validate_morphism(ends[0], ends[1], minus, plus)

    def _as_map(self, items) -> dict:
        out = {}
        for x, y, tok in items:
            if x in out and out[x] != y:
                self.fail(f"{x} is mapped twice", tok)
            out[x] = y
        return out


def parse_env(text: str) -> dict[str, PvObject]:
    r = _Reader(text)
    env: dict[str, PvObject] = {}
    while r.tok.kind != "eof":
        tok = r.tok
        if tok.text != "object":
            r.fail(f"expected 'object', found {tok.text!r}")
        name, obj = r.object_block()
        if name in env:
            raise DuplicateObjectName(f"object {name!r} defined twice", tok.line, tok.column)
        env[name] = obj
    return env


def parse_morphisms(text: str, env: Mapping[str, PvObject]) -> dict[str, PvMorphism]:
    """Every morphism block in ``text``, each validated against ``env``."""
    r = _Reader(text)
    out: dict[str, PvMorphism] = {}
    while r.tok.kind != "eof":
        tok = r.tok
        name, m = r.morphism_block(env)
        if name in out:
            raise DuplicateObjectName(f"morphism {name!r} defined twice", tok.line, tok.column)
        out[name] = m
    return out


def parse_morphism(text: str, env: Mapping[str, PvObject]) -> PvMorphism:
    ms = parse_morphisms(text, env)
    if len(ms) != 1:
        raise ParseError(f"expected exactly one morphism, found {len(ms)}", 1, 1)
    return next(iter(ms.values()))


# -- writing ----------------------------------------------------------------------

def format_element(x: Element) -> str:
    if isinstance(x, UnitElem):
        return "*"
    if isinstance(x, Atom) and _IDENT.match(x.name):
        return x.name
    raise ValueError(f"element {x} has no file syntax; only names and * do")


def _words(xs) -> str:
    return " ".join(format_element(x) for x in xs)


def _arrows(pairs) -> str:
    return ", ".join(f"{format_element(x)}->{format_element(y)}" for x, y in pairs)


def serialize_object(name: str, obj: PvObject) -> str:
    return (f"object {name} {{ questions: {_words(obj.questions)}; answers: {_words(obj.answers)}; "
            f"relation: {_arrows(obj.pairs())}; }}")


def serialize_env(env: Mapping[str, PvObject]) -> str:
    """One line per object, names in sorted order."""
    return "".join(serialize_object(n, env[n]) + "\n" for n in sorted(env))


def serialize_morphism(m: PvMorphism, name: str, source: str, target: str) -> str:
    minus = [(b, m.source.questions[int(i)]) for b, i in zip(m.target.questions, m.minus)]
    plus = [(a, m.target.answers[int(j)]) for a, j in zip(m.source.answers, m.plus)]
    return (f"morphism {name} : {source} -> {target} {{ minus: {_arrows(minus)}; "
            f"plus: {_arrows(plus)}; }}\n")
