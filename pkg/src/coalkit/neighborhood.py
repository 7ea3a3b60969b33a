"""Neighborhood semantics, superset closure and the representation relations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .action_semantics import (
    MAX_CLOSURE_STATES,
    BoxEvaluator,
    EffectivityTable,
    _mask,
    actual_effectivity,
    alpha_effectivity,
    close_family,
)
from .core import ActionModel, Coalition, NeighborhoodModel, coalition_key, fmt_family
from .errors import CarrierMismatch, TooLarge
from .formula import Formula


class NeighborhoodEvaluator(BoxEvaluator):
    """``[C]phi`` at ``s`` iff some member of ``nei_C(s)`` lies inside the truth set of ``phi``."""

    def __init__(self, model: NeighborhoodModel):
        super().__init__(model.carrier)
        self.model = model

    def _build_options(self, c: Coalition, s: int) -> list[int]:
        return [_mask(y) for y in self.model.nei(c, s)]


def eval_neighborhood(m: NeighborhoodModel, s: int | str, f: Formula) -> bool:
    return NeighborhoodEvaluator(m).holds(m.carrier.index(s), f)


def superset_closure(m: NeighborhoodModel) -> NeighborhoodModel:
    n = m.carrier.n
    if n > MAX_CLOSURE_STATES:
        raise TooLarge(f"superset closure over {n} states exceeds {MAX_CLOSURE_STATES}")
    table = {
        c: tuple(close_family(m.nei(c, s), n) for s in range(n)) for c in m.carrier.coalitions
    }
    return NeighborhoodModel(m.carrier, table)


def is_alpha_model(m: NeighborhoodModel) -> bool:
    """Every neighborhood is closed under supersets within the state space."""
    n = m.carrier.n
    for c in m.carrier.coalitions:
        for s in range(n):
            fam = m.nei(c, s)
            for y in fam:
                for t in range(n):
                    if t not in y and (y | {t}) not in fam:
                        return False
    return True


def from_effectivity(table: EffectivityTable) -> NeighborhoodModel:
    """The neighborhood model whose tables are exactly ``table``."""
    return NeighborhoodModel(table.carrier, dict(table.table))


@dataclass(frozen=True)
class Mismatch:
    coalition: Coalition
    state: int
    expected: frozenset  # from the action model
    found: frozenset  # from the neighborhood model

    def describe(self, states) -> str:
        return (
            f"coalition {{{coalition_key(self.coalition)}}} at {states[self.state]}: "
            f"action model gives {fmt_family(self.expected, states)}, "
            f"neighborhood model gives {fmt_family(self.found, states)}"
        )


def _check_carrier(nm: NeighborhoodModel, am: ActionModel) -> None:
    a, b = nm.carrier, am.carrier
    if a.states != b.states:
        raise CarrierMismatch("state lists differ")
    if a.agents != b.agents:
        raise CarrierMismatch("agent lists differ")
    if a.labeling != b.labeling:
        raise CarrierMismatch("labelings differ")


def first_mismatch(nm: NeighborhoodModel, table: EffectivityTable) -> Optional[Mismatch]:
    for c in nm.carrier.coalitions:
        for s in range(nm.carrier.n):
            expected, found = table.get(c, s), nm.nei(c, s)
            if expected != found:
                return Mismatch(c, s, expected, found)
    return None


def z_mismatch(nm: NeighborhoodModel, am: ActionModel) -> Optional[Mismatch]:
    _check_carrier(nm, am)
    return first_mismatch(nm, actual_effectivity(am))


def alpha_mismatch(nm: NeighborhoodModel, am: ActionModel) -> Optional[Mismatch]:
    _check_carrier(nm, am)
    return first_mismatch(nm, alpha_effectivity(am))


def z_represents(nm: NeighborhoodModel, am: ActionModel) -> bool:
    """AE_C = nei_C for every coalition, on the same carrier."""
    return z_mismatch(nm, am) is None


def alpha_represents(nm: NeighborhoodModel, am: ActionModel) -> bool:
    """LE_C = nei_C for every coalition, on the same carrier."""
    return alpha_mismatch(nm, am) is None
