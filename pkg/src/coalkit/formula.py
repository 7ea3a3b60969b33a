"""Formulas of coalition logic: AST, parser, printer and axiom schemata.

Concrete syntax::

    formula   := iff
    iff       := imp ("<->" imp)*
    imp       := or ("->" or)*           (right associative)
    or        := and ("|" and)*
    and       := unary ("&" unary)*
    unary     := "~" unary | "[" coalition "]" unary | atom | "T" | "F" | "(" formula ")"
    coalition := "{" (agent ("," agent)*)? "}" | "AG"

Only ``T``, atoms, ``~``, ``&`` and coalition boxes exist in the AST; ``F``,
``|``, ``->`` and ``<->`` are desugared while parsing.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, fields
from typing import Iterable, Optional, Sequence, Union

from .errors import FormulaSyntaxError, SideConditionViolated, UnknownAgent


class _Grand:
    """Symbolic grand coalition, resolved against a model's agents at evaluation."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "GRAND"

    def __reduce__(self):
        return (_Grand, ())


GRAND = _Grand()

CoalitionRef = Union[frozenset, _Grand]


def _cached_hash(self) -> int:
    # formulas are deep trees hashed over and over by the evaluators' memo tables
    h = self.__dict__.get("_hash")
    if h is None:
        h = hash((type(self).__name__,) + tuple(getattr(self, f.name) for f in fields(self)))
        object.__setattr__(self, "_hash", h)
    return h


def _state(self) -> dict:
    # string hashes differ between processes, so the cache is not pickled
    return {k: v for k, v in self.__dict__.items() if k != "_hash"}


@dataclass(frozen=True)
class Top:
    __hash__ = _cached_hash
    __getstate__ = _state


@dataclass(frozen=True)
class Atom:
    name: str

    __hash__ = _cached_hash
    __getstate__ = _state


@dataclass(frozen=True)
class Not:
    sub: "Formula"

    __hash__ = _cached_hash
    __getstate__ = _state


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    __hash__ = _cached_hash
    __getstate__ = _state


@dataclass(frozen=True)
class CoalitionBox:
    coalition: CoalitionRef
    sub: "Formula"

    __hash__ = _cached_hash
    __getstate__ = _state


Formula = Union[Top, Atom, Not, And, CoalitionBox]

TOP = Top()
BOTTOM = Not(TOP)


def coalition(*agents: str) -> frozenset:
    return frozenset(agents)


# Derived connectives, exactly as the parser desugars them.

def Or(left: Formula, right: Formula) -> Formula:
    return Not(And(Not(left), Not(right)))


def Implies(left: Formula, right: Formula) -> Formula:
    return Not(And(left, Not(right)))


def Iff(left: Formula, right: Formula) -> Formula:
    return And(Implies(left, right), Implies(right, left))


def box(agents: Union[Iterable[str], _Grand], sub: Formula) -> CoalitionBox:
    if isinstance(agents, _Grand):
        return CoalitionBox(GRAND, sub)
    return CoalitionBox(frozenset(agents), sub)


# ---------------------------------------------------------------------------
# Parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<op><->|->|[~&|()\[\]{},])|(?P<ident>[A-Za-z_][A-Za-z0-9_]*))"
)
_NAME = re.compile(r"[a-z][a-z0-9_]*\Z")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "op", "name", "kw", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start("op") if m.group("op") else m.start("ident")
        if m.group("op"):
            toks.append(_Tok("op", m.group("op"), start))
        else:
            word = m.group("ident")
            if word in ("T", "F", "AG"):
                toks.append(_Tok("kw", word, start))
            elif _NAME.match(word):
                toks.append(_Tok("name", word, start))
            else:
                raise FormulaSyntaxError(f"invalid identifier {word!r}", start)
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, agents: Optional[Sequence[str]]):
        self.toks = _tokenize(text)
        self.i = 0
        self.agents = None if agents is None else tuple(agents)

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def accept(self, text: str) -> bool:
        if self.cur.kind in ("op", "kw") and self.cur.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            found = self.cur.text or "end of input"
            raise FormulaSyntaxError(f"expected {text!r}, found {found!r}", self.cur.pos)

    def parse(self) -> Formula:
        f = self.iff()
        if self.cur.kind != "end":
            raise FormulaSyntaxError(f"unexpected {self.cur.text!r}", self.cur.pos)
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self.accept("<->"):
            f = Iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        if self.accept("->"):
            return Implies(f, self.imp())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.accept("|"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.accept("&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.cur
        if self.accept("~"):
            return Not(self.unary())
        if self.accept("["):
            c = self.coalition()
            self.expect("]")
            return CoalitionBox(c, self.unary())
        if self.accept("T"):
            return TOP
        if self.accept("F"):
            return BOTTOM
        if self.accept("("):
            f = self.iff()
            self.expect(")")
            return f
        if tok.kind == "name":
            self.i += 1
            return Atom(tok.text)
        if tok.kind == "op" and tok.text == "<":
            raise FormulaSyntaxError("diamond modality is not part of the language", tok.pos)
        found = tok.text or "end of input"
        raise FormulaSyntaxError(f"unexpected {found!r}", tok.pos)

    def coalition(self) -> CoalitionRef:
        if self.accept("AG"):
            return GRAND if self.agents is None else frozenset(self.agents)
        self.expect("{")
        members: list[str] = []
        if not self.accept("}"):
            while True:
                tok = self.cur
                if tok.kind != "name":
                    raise FormulaSyntaxError("expected agent name", tok.pos)
                if self.agents is not None and tok.text not in self.agents:
                    raise UnknownAgent(tok.text)
                members.append(tok.text)
                self.i += 1
                if self.accept("}"):
                    break
                self.expect(",")
        return frozenset(members)


def parse(text: str, agents: Optional[Sequence[str]] = None) -> Formula:
    """Parse ``text`` into a formula.

    With ``agents`` given, ``AG`` expands to that coalition and any other agent
    name raises :class:`UnknownAgent`; otherwise ``AG`` stays symbolic.
    """
    return _Parser(text, agents).parse()


# ---------------------------------------------------------------------------
# Printing and measures

def render_coalition(c: CoalitionRef) -> str:
    if isinstance(c, _Grand):
        return "AG"
    return "{" + ",".join(sorted(c)) + "}"


def render(f: Formula) -> str:
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "~" + render(f.sub)
    if isinstance(f, And):
        return f"({render(f.left)} & {render(f.right)})"
    if isinstance(f, CoalitionBox):
        return f"[{render_coalition(f.coalition)}]{render(f.sub)}"
    raise TypeError(f"not a formula: {f!r}")


def modal_depth(f: Formula) -> int:
    if isinstance(f, (Top, Atom)):
        return 0
    if isinstance(f, Not):
        return modal_depth(f.sub)
    if isinstance(f, And):
        return max(modal_depth(f.left), modal_depth(f.right))
    return 1 + modal_depth(f.sub)


def atoms(f: Formula) -> frozenset:
    if isinstance(f, Atom):
        return frozenset([f.name])
    if isinstance(f, Top):
        return frozenset()
    if isinstance(f, Not):
        return atoms(f.sub)
    if isinstance(f, And):
        return atoms(f.left) | atoms(f.right)
    return atoms(f.sub)


def agents_of(f: Formula) -> frozenset:
    """Agent names mentioned explicitly (the symbolic ``AG`` contributes none)."""
    if isinstance(f, (Top, Atom)):
        return frozenset()
    if isinstance(f, Not):
        return agents_of(f.sub)
    if isinstance(f, And):
        return agents_of(f.left) | agents_of(f.right)
    own = frozenset() if isinstance(f.coalition, _Grand) else f.coalition
    return own | agents_of(f.sub)


def resolve_coalition(c: CoalitionRef, agents: Sequence[str]) -> frozenset:
    if isinstance(c, _Grand):
        return frozenset(agents)
    unknown = c - set(agents)
    if unknown:
        raise UnknownAgent(", ".join(sorted(unknown)))
    return c


# ---------------------------------------------------------------------------
# Axiom schemata

class AxiomSchema(enum.Enum):
    """Axiom schemata with a finite instance generator (tautologies excluded)."""

    NAAA = "A-NAAA"
    MG = "A-MG"
    MC = "A-MC"
    SER = "A-Ser"
    IA = "A-IA"
    DET = "A-Det"

    @property
    def arity(self) -> tuple[int, int]:
        """(number of coalitions, number of filler formulas)."""
        return _ARITY[self]

    @classmethod
    def from_name(cls, name: str) -> "AxiomSchema":
        key = name.upper().removeprefix("A-")
        for member in cls:
            if member.name == key:
                return member
        raise ValueError(f"unknown axiom schema {name!r}")


_ARITY = {
    AxiomSchema.NAAA: (1, 0),
    AxiomSchema.MG: (1, 2),
    AxiomSchema.MC: (2, 1),
    AxiomSchema.SER: (1, 0),
    AxiomSchema.IA: (2, 2),
    AxiomSchema.DET: (1, 2),
}

# The property letter each extension axiom corresponds to.
SCHEMA_LETTER = {AxiomSchema.SER: "S", AxiomSchema.IA: "I", AxiomSchema.DET: "D"}


def instantiate_axiom(
    schema: AxiomSchema,
    coalitions: Sequence[CoalitionRef],
    fillers: Sequence[Formula],
    agents: Optional[Sequence[str]] = None,
) -> Formula:
    """Build one instance of ``schema``.

    Coalitions may be frozensets or :data:`GRAND`; when ``agents`` is given the
    grand coalition is expanded and membership is checked.
    """
    n_coal, n_fill = schema.arity
    if len(coalitions) != n_coal or len(fillers) != n_fill:
        raise ValueError(
            f"{schema.value} takes {n_coal} coalition(s) and {n_fill} filler(s)"
        )
    cs = list(coalitions)
    if agents is not None:
        cs = [resolve_coalition(c, agents) for c in cs]
    grand = GRAND if agents is None else frozenset(agents)

    if schema is AxiomSchema.NAAA:
        return Not(CoalitionBox(cs[0], BOTTOM))
    if schema is AxiomSchema.SER:
        return CoalitionBox(cs[0], TOP)
    if schema is AxiomSchema.MG:
        phi, psi = fillers
        return Implies(
            CoalitionBox(frozenset(), Implies(phi, psi)),
            Implies(CoalitionBox(cs[0], phi), CoalitionBox(cs[0], psi)),
        )
    if schema is AxiomSchema.MC:
        c, d = cs
        if not _subset(c, d):
            raise SideConditionViolated(
                f"{render_coalition(c)} is not a subset of {render_coalition(d)}"
            )
        return Implies(CoalitionBox(c, fillers[0]), CoalitionBox(d, fillers[0]))
    if schema is AxiomSchema.IA:
        c, d = cs
        if isinstance(c, _Grand) or isinstance(d, _Grand):
            if not (c == frozenset() or d == frozenset()):
                raise SideConditionViolated("coalitions must be disjoint")
            joint = GRAND
        else:
            if c & d:
                raise SideConditionViolated(
                    f"{render_coalition(c)} and {render_coalition(d)} overlap"
                )
            joint = c | d
        phi, psi = fillers
        return Implies(
            And(CoalitionBox(c, phi), CoalitionBox(d, psi)),
            CoalitionBox(joint, And(phi, psi)),
        )
    if schema is AxiomSchema.DET:
        phi, psi = fillers
        return Implies(
            CoalitionBox(cs[0], Or(phi, psi)),
            Or(CoalitionBox(cs[0], phi), CoalitionBox(grand, psi)),
        )
    raise ValueError(schema)


def _subset(c: CoalitionRef, d: CoalitionRef) -> bool:
    if isinstance(d, _Grand):
        return True
    if isinstance(c, _Grand):
        return False
    return c <= d
