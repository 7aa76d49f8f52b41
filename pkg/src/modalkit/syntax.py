"""Formula languages and their ASCII surface syntax.

Three languages share one AST:

* ``prop``  -- T, F, ``/\\``, ``\\/``, ``->``
* ``jlang`` -- prop plus the unary operator ``J``
* ``modal`` -- prop plus ``~`` (negation) and ``[]`` (box)

Grammar (binding from loosest to tightest; ``->`` right-associative,
``/\\`` and ``\\/`` left-associative; ``~``, ``[]``, ``J`` tightest)::

    form := imp
    imp  := or ("->" imp)?
    or   := and ("\\/" and)*
    and  := un ("/\\" un)*
    un   := ("~" | "[]" | "J")* prim
    prim := "T" | "F" | atom | "(" form ")"

Atom names match ``[a-zA-Z][a-zA-Z0-9_]*``; the words ``T``, ``F`` and
``J`` are reserved.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

LANGUAGES = ("prop", "jlang", "modal")

ATOM_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")
RESERVED = {"T", "F", "J"}


class ParseError(ValueError):
    """Syntax error; ``offset`` is the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class LanguageError(ValueError):
    """A constructor was used outside the language that admits it."""


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


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
class Neg:
    child: "Formula"


@dataclass(frozen=True)
class Box:
    child: "Formula"


@dataclass(frozen=True)
class J:
    child: "Formula"


Formula = Union[Atom, Top, Bot, And, Or, Imp, Neg, Box, J]


@dataclass(frozen=True)
class Sequent:
    """Antecedent multiset (kept in order) and a single succedent."""

    ante: tuple[Formula, ...]
    succ: Formula


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, (And, Or, Imp)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, (Neg, Box, J)):
        yield from subformulas(f.child)


def atoms(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if isinstance(g, Atom)}


def in_language(f: Formula, lang: str) -> bool:
    if lang not in LANGUAGES:
        raise ValueError(f"unknown language {lang!r}")
    for g in subformulas(f):
        if isinstance(g, J) and lang != "jlang":
            return False
        if isinstance(g, (Neg, Box)) and lang != "modal":
            return False
    return True


def language_of(f: Formula) -> str:
    """Smallest language admitting ``f`` (prop < jlang, prop < modal)."""
    has_j = any(isinstance(g, J) for g in subformulas(f))
    has_modal = any(isinstance(g, (Neg, Box)) for g in subformulas(f))
    if has_j and has_modal:
        raise LanguageError("formula mixes J with ~ or [] and fits no language")
    if has_j:
        return "jlang"
    if has_modal:
        return "modal"
    return "prop"


# --- lexer -----------------------------------------------------------------

_TOKEN_SPECS = (
    ("->", "ARROW"),
    ("/\\", "AND"),
    ("\\/", "OR"),
    ("=>", "TURNSTILE"),
    ("[]", "BOX"),
    ("~", "NEG"),
    ("(", "LPAR"),
    (")", "RPAR"),
    (",", "COMMA"),
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        for lit, kind in _TOKEN_SPECS:
            if text.startswith(lit, i):
                out.append(_Token(kind, lit, i))
                i += len(lit)
                break
        else:
            m = ATOM_RE.match(text, i)
            if m is None:
                raise ParseError(f"unexpected character {c!r}", i)
            word = m.group(0)
            if word == "T":
                out.append(_Token("TOP", word, i))
            elif word == "F":
                out.append(_Token("BOT", word, i))
            elif word == "J":
                out.append(_Token("J", word, i))
            else:
                out.append(_Token("ATOM", word, i))
            i = m.end()
    out.append(_Token("EOF", "", n))
    return out


# --- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[_Token], lang: str):
        self.tokens = tokens
        self.lang = lang
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.text or 'end of input'!r}", tok.pos)
        return self.next()

    def gate(self, kind: str, pos: int) -> None:
        allowed = {"NEG": "modal", "BOX": "modal", "J": "jlang"}[kind]
        if self.lang != allowed:
            op = {"NEG": "~", "BOX": "[]", "J": "J"}[kind]
            raise LanguageError(
                f"operator {op!r} is not part of language {self.lang!r} (at offset {pos})"
            )

    def form(self) -> Formula:
        return self.imp()

    def imp(self) -> Formula:
        left = self.or_()
        if self.peek().kind == "ARROW":
            self.next()
            return Imp(left, self.imp())
        return left

    def or_(self) -> Formula:
        f = self.and_()
        while self.peek().kind == "OR":
            self.next()
            f = Or(f, self.and_())
        return f

    def and_(self) -> Formula:
        f = self.un()
        while self.peek().kind == "AND":
            self.next()
            f = And(f, self.un())
        return f

    def un(self) -> Formula:
        tok = self.peek()
        if tok.kind in ("NEG", "BOX", "J"):
            self.next()
            self.gate(tok.kind, tok.pos)
            child = self.un()
            return {"NEG": Neg, "BOX": Box, "J": J}[tok.kind](child)
        return self.prim()

    def prim(self) -> Formula:
        tok = self.next()
        if tok.kind == "TOP":
            return Top()
        if tok.kind == "BOT":
            return Bot()
        if tok.kind == "ATOM":
            return Atom(tok.text)
        if tok.kind == "LPAR":
            f = self.form()
            self.expect("RPAR")
            return f
        raise ParseError(f"expected a formula, found {tok.text or 'end of input'!r}", tok.pos)


def parse(text: str, lang: str = "prop") -> Formula:
    """Parse ``text`` in the given language; reject foreign constructors."""
    if lang not in LANGUAGES:
        raise ValueError(f"unknown language {lang!r}")
    if not text.strip():
        raise ParseError("empty input", 0)
    p = _Parser(_tokenize(text), lang)
    f = p.form()
    p.expect("EOF")
    return f


def parse_sequent(text: str, lang: str = "prop") -> Sequent:
    """Parse ``A, B => C``; a bare formula is read as an empty antecedent."""
    if lang not in LANGUAGES:
        raise ValueError(f"unknown language {lang!r}")
    p = _Parser(_tokenize(text), lang)
    if p.peek().kind == "TURNSTILE":
        p.next()
        succ = p.form()
        p.expect("EOF")
        return Sequent((), succ)
    first = p.form()
    ante = [first]
    while p.peek().kind == "COMMA":
        p.next()
        ante.append(p.form())
    if p.peek().kind == "TURNSTILE":
        p.next()
        succ = p.form()
        p.expect("EOF")
        return Sequent(tuple(ante), succ)
    p.expect("EOF")
    if len(ante) != 1:
        raise ParseError("missing '=>' after antecedent list", len(text))
    return Sequent((), first)


# --- rendering ---------------------------------------------------------------

_LEVEL_IMP, _LEVEL_OR, _LEVEL_AND, _LEVEL_UN, _LEVEL_PRIM = range(5)


def render(f: Formula) -> str:
    """Canonical text; parenthesized only where the grammar requires it."""

    def go(g: Formula, level: int) -> str:
        if isinstance(g, Atom):
            s, lv = g.name, _LEVEL_PRIM
        elif isinstance(g, Top):
            s, lv = "T", _LEVEL_PRIM
        elif isinstance(g, Bot):
            s, lv = "F", _LEVEL_PRIM
        elif isinstance(g, Imp):
            s, lv = f"{go(g.left, _LEVEL_OR)} -> {go(g.right, _LEVEL_IMP)}", _LEVEL_IMP
        elif isinstance(g, Or):
            s, lv = f"{go(g.left, _LEVEL_OR)} \\/ {go(g.right, _LEVEL_AND)}", _LEVEL_OR
        elif isinstance(g, And):
            s, lv = f"{go(g.left, _LEVEL_AND)} /\\ {go(g.right, _LEVEL_UN)}", _LEVEL_AND
        elif isinstance(g, Neg):
            s, lv = f"~{go(g.child, _LEVEL_UN)}", _LEVEL_UN
        elif isinstance(g, Box):
            s, lv = f"[] {go(g.child, _LEVEL_UN)}", _LEVEL_UN
        elif isinstance(g, J):
            s, lv = f"J {go(g.child, _LEVEL_UN)}", _LEVEL_UN
        else:
            raise TypeError(f"not a formula: {g!r}")
        return f"({s})" if lv < level else s

    return go(f, _LEVEL_IMP)


def render_sequent(s: Sequent) -> str:
    if not s.ante:
        return f"=> {render(s.succ)}"
    return ", ".join(render(a) for a in s.ante) + f" => {render(s.succ)}"


# --- JSON --------------------------------------------------------------------

_CON_TAGS = {
    Atom: "atom",
    Top: "top",
    Bot: "bot",
    And: "and",
    Or: "or",
    Imp: "imp",
    Neg: "neg",
    Box: "box",
    J: "j",
}


def formula_to_json(f: Formula) -> dict:
    tag = _CON_TAGS[type(f)]
    if isinstance(f, Atom):
        return {"con": tag, "name": f.name}
    if isinstance(f, (Top, Bot)):
        return {"con": tag}
    if isinstance(f, (And, Or, Imp)):
        return {"con": tag, "children": [formula_to_json(f.left), formula_to_json(f.right)]}
    return {"con": tag, "children": [formula_to_json(f.child)]}


def formula_from_json(doc: dict) -> Formula:
    con = doc["con"]
    if con == "atom":
        name = doc["name"]
        if not ATOM_RE.fullmatch(name) or name in RESERVED:
            raise ValueError(f"bad atom name {name!r}")
        return Atom(name)
    if con == "top":
        return Top()
    if con == "bot":
        return Bot()
    kids = [formula_from_json(d) for d in doc.get("children", [])]
    if con in ("and", "or", "imp"):
        cls = {"and": And, "or": Or, "imp": Imp}[con]
        if len(kids) != 2:
            raise ValueError(f"{con} takes two children")
        return cls(kids[0], kids[1])
    if con in ("neg", "box", "j"):
        cls = {"neg": Neg, "box": Box, "j": J}[con]
        if len(kids) != 1:
            raise ValueError(f"{con} takes one child")
        return cls(kids[0])
    raise ValueError(f"unknown formula constructor {con!r}")
