"""Formula syntax: core AST, concrete grammar, sugar expansion, substitution.

The core language has nine constructors (atoms, ~, &, |, ->, [], <>, @>, ?>).
Every defined connective (=>, #>, #=>, @=>, ?=>, <->, <=>, <#>, <#=>) is
expanded at parse time; the evaluator and the proof checker only ever see
core formulas.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Union

from .errors import FormulaSyntaxError


class LanguageTag(Enum):
    PL = "PL"
    MD = "MD"
    CN = "CN"
    MIXED = "Mixed"


@dataclass(frozen=True)
class Atom:
    index: int


@dataclass(frozen=True)
class Neg:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Box:
    body: "Formula"


@dataclass(frozen=True)
class Dia:
    body: "Formula"


@dataclass(frozen=True)
class WouldTo:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class MightTo:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Neg, And, Or, Imp, Box, Dia, WouldTo, MightTo]

_BINARY_OPS = {And: "&", Or: "|", Imp: "->", WouldTo: "@>", MightTo: "?>"}
_PREFIX_OPS = {Neg: "~", Box: "[]", Dia: "<>"}


def _cache_hash(cls):
    # Formula nodes are hashed millions of times during bounded search;
    # the generated dataclass hash re-walks the whole tree on every call.
    generated = cls.__hash__

    def cached(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = generated(self)
            object.__setattr__(self, "_hash", h)
        return h

    cls.__hash__ = cached


for _cls in (Atom, Neg, And, Or, Imp, Box, Dia, WouldTo, MightTo):
    _cache_hash(_cls)


# ---------------------------------------------------------------------------
# defined connectives (expanded cores)

def strong_imp(a: Formula, b: Formula) -> Formula:
    """a => b, i.e. (a -> b) & (~b -> ~a)."""
    return And(Imp(a, b), Imp(Neg(b), Neg(a)))


def iff(a: Formula, b: Formula) -> Formula:
    """a <-> b, i.e. (a -> b) & (b -> a)."""
    return And(Imp(a, b), Imp(b, a))


def strong_iff(a: Formula, b: Formula) -> Formula:
    """a <=> b, i.e. (a => b) & (b => a)."""
    return And(strong_imp(a, b), strong_imp(b, a))


def strict_imp(a: Formula, b: Formula) -> Formula:
    """a #> b, i.e. [](a -> b)."""
    return Box(Imp(a, b))


def strong_strict_imp(a: Formula, b: Formula) -> Formula:
    """a #=> b, i.e. [](a => b)."""
    return Box(strong_imp(a, b))


def strict_iff(a: Formula, b: Formula) -> Formula:
    """a <#> b, i.e. (a #> b) & (b #> a)."""
    return And(strict_imp(a, b), strict_imp(b, a))


def strong_strict_iff(a: Formula, b: Formula) -> Formula:
    """a <#=> b, i.e. (a #=> b) & (b #=> a)."""
    return And(strong_strict_imp(a, b), strong_strict_imp(b, a))


def strong_would(a: Formula, b: Formula) -> Formula:
    """a @=> b, i.e. (a @> b) & (~b @> ~a)."""
    return And(WouldTo(a, b), WouldTo(Neg(b), Neg(a)))


def strong_might(a: Formula, b: Formula) -> Formula:
    """a ?=> b, i.e. (a ?> b) & (~b ?> ~a)."""
    return And(MightTo(a, b), MightTo(Neg(b), Neg(a)))


SUGAR = {
    "=>": strong_imp,
    "#>": strict_imp,
    "#=>": strong_strict_imp,
    "@=>": strong_would,
    "?=>": strong_might,
    "<->": iff,
    "<=>": strong_iff,
    "<#>": strict_iff,
    "<#=>": strong_strict_iff,
}


# ---------------------------------------------------------------------------
# analysis helpers

def subformulas(f: Formula) -> Iterator[Formula]:
    """Postorder traversal including f itself."""
    if isinstance(f, (Neg, Box, Dia)):
        yield from subformulas(f.body)
    elif isinstance(f, (And, Or, Imp, WouldTo, MightTo)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    yield f


def atoms_of(f: Formula) -> frozenset[int]:
    return frozenset(g.index for g in subformulas(f) if isinstance(g, Atom))


_LANG_CACHE: dict = {}


def language_of(f: Formula) -> LanguageTag:
    cached = _LANG_CACHE.get(f)
    if cached is not None:
        return cached
    has_md = any(isinstance(g, (Box, Dia)) for g in subformulas(f))
    has_cn = any(isinstance(g, (WouldTo, MightTo)) for g in subformulas(f))
    if has_md and has_cn:
        tag = LanguageTag.MIXED
    elif has_md:
        tag = LanguageTag.MD
    elif has_cn:
        tag = LanguageTag.CN
    else:
        tag = LanguageTag.PL
    _LANG_CACHE[f] = tag
    return tag


def substitute(phi: Formula, psi: Formula, p: int) -> Formula:
    """phi with every occurrence of atom p replaced by psi."""
    match phi:
        case Atom(index):
            return psi if index == p else phi
        case Neg(body):
            return Neg(substitute(body, psi, p))
        case Box(body):
            return Box(substitute(body, psi, p))
        case Dia(body):
            return Dia(substitute(body, psi, p))
        case And(left, right):
            return And(substitute(left, psi, p), substitute(right, psi, p))
        case Or(left, right):
            return Or(substitute(left, psi, p), substitute(right, psi, p))
        case Imp(left, right):
            return Imp(substitute(left, psi, p), substitute(right, psi, p))
        case WouldTo(left, right):
            return WouldTo(substitute(left, psi, p), substitute(right, psi, p))
        case MightTo(left, right):
            return MightTo(substitute(left, psi, p), substitute(right, psi, p))
    raise TypeError(f"not a formula: {phi!r}")


def depth(f: Formula) -> int:
    match f:
        case Atom(_):
            return 0
        case Neg(b) | Box(b) | Dia(b):
            return 1 + depth(b)
        case _:
            return 1 + max(depth(f.left), depth(f.right))


# ---------------------------------------------------------------------------
# lexer

@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


# ordered for longest match
_OPERATORS = [
    "<#=>", "<#>", "<=>", "<->", "<>", "[]",
    "#=>", "#>", "@=>", "@>", "?=>", "?>", "=>", "->",
    "~", "&", "|", "(", ")",
]

_ARROWS = {"->", "=>", "#>", "#=>", "@>", "?>", "@=>", "?=>"}
_EQUIVS = {"<->", "<=>", "<#>", "<#=>"}

_ATOM_RE = re.compile(r"p(\d+)(?![\w])")
_WORD_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_\-]*")
_NUM_RE = re.compile(r"\d+")


def _lex(text: str, extended: bool = False) -> list[Token]:
    """Tokenize formula text; `extended` additionally admits bare words,
    numbers and '=' so proof-file lines can carry a trailing justification."""
    out = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in " \t":
            i += 1
            continue
        m = _ATOM_RE.match(text, i)
        if m:
            out.append(Token("atom", m.group(0), i))
            i = m.end()
            continue
        for op in _OPERATORS:
            if text.startswith(op, i):
                out.append(Token("op", op, i))
                i += len(op)
                break
        else:
            if extended:
                m = _WORD_RE.match(text, i)
                if m:
                    out.append(Token("word", m.group(0), i))
                    i = m.end()
                    continue
                m = _NUM_RE.match(text, i)
                if m:
                    out.append(Token("num", m.group(0), i))
                    i = m.end()
                    continue
                if c == "=":
                    out.append(Token("eq", "=", i))
                    i += 1
                    continue
            raise FormulaSyntaxError(f"unexpected character {c!r}", i,
                                     expected="an atom p0, p1, ... or an operator")
    return out


# ---------------------------------------------------------------------------
# parser (recursive descent; precedence: prefix > & > | > arrows > equivalences)

class _Parser:
    def __init__(self, tokens: list[Token], text_len: int):
        self.toks = tokens
        self.i = 0
        self.end = text_len

    def peek(self) -> Token | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _pos(self) -> int:
        t = self.peek()
        return t.pos if t else self.end

    def take_op(self, ops) -> str | None:
        t = self.peek()
        if t and t.kind == "op" and t.text in ops:
            self.i += 1
            return t.text
        return None

    def equiv(self) -> Formula:
        left = self.arrow()
        op = self.take_op(_EQUIVS)
        if op is None:
            return left
        right = self.arrow()
        if self.peek() and self.peek().kind == "op" and self.peek().text in _EQUIVS:
            raise FormulaSyntaxError("equivalences do not associate", self._pos(),
                                     expected="parentheses around the inner equivalence")
        return SUGAR[op](left, right)

    def arrow(self) -> Formula:
        left = self.disj()
        op = self.take_op(_ARROWS)
        if op is None:
            return left
        right = self.arrow()  # right-associative across the whole family
        if op == "->":
            return Imp(left, right)
        if op == "@>":
            return WouldTo(left, right)
        if op == "?>":
            return MightTo(left, right)
        return SUGAR[op](left, right)

    def disj(self) -> Formula:
        f = self.conj()
        while self.take_op({"|"}):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.take_op({"&"}):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        t = self.peek()
        if t is None:
            raise FormulaSyntaxError("formula ended unexpectedly", self.end,
                                     expected="an atom, '~', '[]', '<>' or '('")
        if t.kind == "atom":
            self.i += 1
            return Atom(int(t.text[1:]))
        if t.kind == "op":
            if t.text == "~":
                self.i += 1
                return Neg(self.unary())
            if t.text == "[]":
                self.i += 1
                return Box(self.unary())
            if t.text == "<>":
                self.i += 1
                return Dia(self.unary())
            if t.text == "(":
                self.i += 1
                f = self.equiv()
                if not self.take_op({")"}):
                    raise FormulaSyntaxError("unclosed parenthesis", self._pos(),
                                             expected="')'")
                return f
        raise FormulaSyntaxError(f"unexpected token {t.text!r}", t.pos,
                                 expected="an atom, '~', '[]', '<>' or '('")


def parse(text: str) -> Formula:
    """Parse formula text into a core Formula with all sugar expanded."""
    toks = _lex(text)
    p = _Parser(toks, len(text))
    f = p.equiv()
    t = p.peek()
    if t is not None:
        raise FormulaSyntaxError(f"trailing input {t.text!r}", t.pos,
                                 expected="end of formula")
    return f


def parse_prefix(tokens: list[Token], start: int, text_len: int) -> tuple[Formula, int]:
    """Parse a formula from tokens[start:], returning (formula, next index).

    Used by the proof-file reader, where a justification follows the formula
    on the same line.
    """
    p = _Parser(tokens[start:], text_len)
    f = p.equiv()
    return f, start + p.i


def render(f: Formula) -> str:
    """Fully parenthesized canonical text; parse(render(f)) == f."""
    match f:
        case Atom(index):
            return f"p{index}"
        case Neg(body):
            return f"~({render(body)})"
        case Box(body):
            return f"[]({render(body)})"
        case Dia(body):
            return f"<>({render(body)})"
        case _:
            op = _BINARY_OPS[type(f)]
            return f"({render(f.left)} {op} {render(f.right)})"
