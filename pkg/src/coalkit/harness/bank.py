"""The fixed formula bank: every axiom instance over a small agent set and filler set."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from ..core import all_coalitions
from ..formula import (
    GRAND,
    Atom,
    AxiomSchema,
    Formula,
    Not,
    And,
    box,
    instantiate_axiom,
    render,
)

BANK_VERSION = 1
BANK_AGENTS = ("a", "b")

P, Q = Atom("p"), Atom("q")
FILLERS: tuple[Formula, ...] = (
    P,
    Q,
    And(P, Q),
    Not(P),
    box(frozenset(), P),
    box(GRAND, P),
)


@dataclass(frozen=True)
class BankEntry:
    schema: AxiomSchema
    formula: Formula

    @property
    def text(self) -> str:
        return render(self.formula)


def _coalition_pairs(agents: Sequence[str], schema: AxiomSchema):
    cs = all_coalitions(agents)
    if schema is AxiomSchema.MC:
        return [(c, d) for c in cs for d in cs if c <= d]
    return [(c, d) for c in cs for d in cs if not (c & d)]


def formula_bank(agents: Sequence[str] = BANK_AGENTS) -> list[BankEntry]:
    """Axiom instances over ``agents`` in a fixed order.

    Coalitions range over all subsets of ``agents`` (at most two of them keep the
    bank small); fillers over :data:`FILLERS`.
    """
    agents = tuple(agents)
    cs = all_coalitions(agents)
    entries: list[BankEntry] = []
    for schema in AxiomSchema:
        if schema in (AxiomSchema.NAAA, AxiomSchema.SER):
            for c in cs:
                entries.append(BankEntry(schema, instantiate_axiom(schema, [c], [], agents)))
        elif schema in (AxiomSchema.MG, AxiomSchema.DET):
            for c in cs:
                for phi, psi in itertools.product(FILLERS, repeat=2):
                    entries.append(
                        BankEntry(schema, instantiate_axiom(schema, [c], [phi, psi], agents))
                    )
        elif schema is AxiomSchema.MC:
            for c, d in _coalition_pairs(agents, schema):
                for phi in FILLERS:
                    entries.append(BankEntry(schema, instantiate_axiom(schema, [c, d], [phi], agents)))
        elif schema is AxiomSchema.IA:
            for c, d in _coalition_pairs(agents, schema):
                for phi, psi in itertools.product(FILLERS, repeat=2):
                    entries.append(
                        BankEntry(schema, instantiate_axiom(schema, [c, d], [phi, psi], agents))
                    )
    return entries


def bank_formulas(agents: Sequence[str] = BANK_AGENTS) -> list[Formula]:
    return [e.formula for e in formula_bank(agents)]


def bank_text(agents: Sequence[str] = BANK_AGENTS) -> str:
    """The bank rendered one formula per line, prefixed by its schema."""
    lines = [f"# formula bank v{BANK_VERSION}, agents {','.join(agents)}"]
    lines += [f"{e.schema.name}\t{e.text}" for e in formula_bank(agents)]
    return "\n".join(lines) + "\n"


def bank_for_model(model) -> list[Formula]:
    """The bank restricted to the agents a model actually has (first two, in order)."""
    return bank_formulas(tuple(model.carrier.agents[:2]))
