"""Grand-coalition-first action models.

Only the action-profile outcome table is stored; every coalition's outcome and
availability functions, and the successor function, are derived from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from .core import (
    EMPTY,
    ActionModel,
    Carrier,
    Coalition,
    JointAction,
    Signature,
    StateSet,
    enumerate_joint_actions,
    make_labeling,
)
from .errors import InvalidModel, TooLarge

MAX_AGENTS = 6

OutcomeTable = dict  # JointAction -> StateSet, one per state


@dataclass(frozen=True, eq=False)
class GrandFirstActionModel:
    carrier: Carrier
    actions: tuple[str, ...]
    outcome_grand: tuple  # per state: {profile: StateSet}, missing means empty

    def __post_init__(self):
        if not self.actions:
            raise InvalidModel("a model needs at least one action")
        if len(set(self.actions)) != len(self.actions):
            raise InvalidModel("duplicate action names")
        n = self.carrier.n
        if len(self.outcome_grand) != n:
            raise InvalidModel("outcome table must have one row per state")
        ag = frozenset(self.carrier.agents)
        acts = set(self.actions)
        for row in self.outcome_grand:
            for sigma, ys in row.items():
                if sigma.coalition != ag or not set(sigma.mapping.values()) <= acts:
                    raise InvalidModel(f"{sigma} is not an action profile")
                if any(not (0 <= t < n) for t in ys):
                    raise InvalidModel("outcome mentions an unknown state")

    @classmethod
    def build(
        cls,
        states: Sequence[str],
        agents: Sequence[str],
        actions: Sequence[str],
        outcome_grand: Mapping[int, Mapping[JointAction, Iterable[int]]],
        labeling: Mapping[str, Iterable[str]] | None = None,
    ) -> "GrandFirstActionModel":
        carrier = Carrier(tuple(states), tuple(agents), make_labeling(states, labeling))
        rows = tuple(
            {sig: frozenset(ys) for sig, ys in outcome_grand.get(s, {}).items() if ys}
            for s in range(carrier.n)
        )
        return cls(carrier, tuple(actions), rows)

    # -- basic accessors ------------------------------------------------------

    @property
    def states(self) -> tuple[str, ...]:
        return self.carrier.states

    @property
    def agents(self) -> tuple[str, ...]:
        return self.carrier.agents

    @property
    def n(self) -> int:
        return self.carrier.n

    @cached_property
    def profiles(self) -> list[JointAction]:
        return enumerate_joint_actions(self.carrier.agents, self.actions, self.carrier.agents)

    def joint_actions(self, c: Iterable[str]) -> list[JointAction]:
        return enumerate_joint_actions(c, self.actions, self.carrier.agents)

    def out_grand(self, s: int, sigma: JointAction) -> StateSet:
        return self.outcome_grand[s].get(sigma, EMPTY)

    # -- derived functions ----------------------------------------------------

    def outcome_table(self, c: Iterable[str]) -> tuple:
        """Per state, ``{sigma_C: union of out_AG over profiles extending sigma_C}``."""
        c = self.carrier.check_coalition(c)
        cache = self._outcome_cache
        if c not in cache:
            rows = []
            jas = self.joint_actions(c)
            for s in range(self.n):
                row = {sigma: EMPTY for sigma in jas}
                for prof, ys in self.outcome_grand[s].items():
                    key = prof.restrict(c)
                    row[key] = row[key] | ys
                rows.append(row)
            cache[c] = tuple(rows)
        return cache[c]

    @cached_property
    def _outcome_cache(self) -> dict:
        return {}

    def out(self, c: Iterable[str], s: int, sigma: JointAction) -> StateSet:
        return self.outcome_table(c)[s].get(sigma, EMPTY)

    def availability_table(self, c: Iterable[str]) -> tuple:
        return tuple(
            frozenset(sig for sig, ys in row.items() if ys) for row in self.outcome_table(c)
        )

    def av(self, c: Iterable[str], s: int) -> frozenset:
        return self.availability_table(c)[s]

    @cached_property
    def successor(self) -> tuple:
        return tuple(frozenset().union(*row.values()) for row in self.outcome_grand)

    def suc(self, s: int) -> StateSet:
        return self.successor[s]

    @cached_property
    def action_model(self) -> ActionModel:
        if len(self.carrier.agents) > MAX_AGENTS:
            raise TooLarge(f"more than {MAX_AGENTS} agents")
        av, out = {}, {}
        for c in self.carrier.coalitions:
            out[c] = tuple({k: v for k, v in row.items() if v} for row in self.outcome_table(c))
            av[c] = self.availability_table(c)
        return ActionModel(self.carrier, self.actions, av, out)

    def with_carrier(self, carrier: Carrier) -> "GrandFirstActionModel":
        return GrandFirstActionModel(carrier, self.actions, self.outcome_grand)

    def __eq__(self, other):
        if not isinstance(other, GrandFirstActionModel):
            return NotImplemented
        return (
            self.carrier == other.carrier
            and self.actions == other.actions
            and self.outcome_grand == other.outcome_grand
        )

    def __hash__(self):
        return hash((self.carrier, self.actions))


GAM = GrandFirstActionModel


def derive_outcome(g: GrandFirstActionModel, c: Iterable[str]) -> tuple:
    return g.outcome_table(c)


def derive_availability(g: GrandFirstActionModel, c: Iterable[str]) -> tuple:
    return g.availability_table(c)


def successor(g: GrandFirstActionModel) -> tuple:
    return g.successor


def to_action_model(g: GrandFirstActionModel) -> ActionModel:
    return g.action_model


# ---------------------------------------------------------------------------
# Seriality, independence, determinism


def _check_agents(g: GrandFirstActionModel) -> None:
    if len(g.carrier.agents) > MAX_AGENTS:
        raise TooLarge(f"classification enumerates 2^|AG| coalitions; at most {MAX_AGENTS} agents")


def _scope(g, states: Optional[Iterable[int]]) -> Iterable[int]:
    return range(g.n) if states is None else states


def is_serial(g: GrandFirstActionModel, states: Optional[Iterable[int]] = None) -> bool:
    _check_agents(g)
    return all(g.av(c, s) for c in g.carrier.coalitions for s in _scope(g, states))


def disjoint_pairs(coalitions: Sequence[Coalition]) -> list[tuple[Coalition, Coalition]]:
    return [(c, d) for c in coalitions for d in coalitions if not (c & d)]


def is_independent(g: GrandFirstActionModel, states: Optional[Iterable[int]] = None) -> bool:
    _check_agents(g)
    pairs = disjoint_pairs(g.carrier.coalitions)
    for s in _scope(g, states):
        for c, d in pairs:
            joint = g.av(c | d, s)
            for sc in g.av(c, s):
                for sd in g.av(d, s):
                    if sc.union(sd) not in joint:
                        return False
    return True


def is_deterministic(g: GrandFirstActionModel, states: Optional[Iterable[int]] = None) -> bool:
    return all(
        len(ys) == 1 for s in _scope(g, states) for ys in g.outcome_grand[s].values() if ys
    )


def classify(g: GrandFirstActionModel, states: Optional[Iterable[int]] = None) -> Signature:
    states = None if states is None else list(states)
    return Signature(
        is_serial(g, states), is_independent(g, states), is_deterministic(g, states)
    )
