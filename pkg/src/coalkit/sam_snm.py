"""Single-coalition-first action and neighborhood models.

Per-agent outcomes (resp. neighborhoods) are primitive; coalition outcomes are
intersections of the members' outcomes and coalition neighborhoods are
``⊙``-products of the members' neighborhoods.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Mapping, Optional, Sequence

from .core import (
    EMPTY,
    ActionModel,
    Carrier,
    Family,
    JointAction,
    NeighborhoodModel,
    Signature,
    StateSet,
    enumerate_joint_actions,
    is_cover,
    is_general_cover,
    make_labeling,
)
from .errors import EmptySetMember, InvalidModel, UnknownAgent
from .gam import GrandFirstActionModel, classify, disjoint_pairs


def _check_successor(carrier: Carrier, successor: Sequence[StateSet]) -> None:
    if len(successor) != carrier.n:
        raise InvalidModel("successor function must have one entry per state")
    for ys in successor:
        if any(not (0 <= t < carrier.n) for t in ys):
            raise InvalidModel("successor mentions an unknown state")


# ---------------------------------------------------------------------------
# Single-coalition-first action models


@dataclass(frozen=True, eq=False)
class SingleFirstActionModel:
    carrier: Carrier
    actions: tuple[str, ...]
    successor: tuple  # per state StateSet
    outcome_agent: Mapping[str, tuple]  # agent -> per state {action: StateSet}

    def __post_init__(self):
        if not self.actions:
            raise InvalidModel("a model needs at least one action")
        if len(set(self.actions)) != len(self.actions):
            raise InvalidModel("duplicate action names")
        _check_successor(self.carrier, self.successor)
        if set(self.outcome_agent) - set(self.carrier.agents):
            raise UnknownAgent(", ".join(sorted(set(self.outcome_agent) - set(self.carrier.agents))))
        for a in self.carrier.agents:
            rows = self.outcome_agent.get(a)
            if rows is None or len(rows) != self.carrier.n:
                raise InvalidModel(f"outcome table of agent {a!r} must have one row per state")
            for s, row in enumerate(rows):
                if set(row) - set(self.actions):
                    raise InvalidModel(f"unknown action in outcome table of {a!r}")
                family = [row.get(x, EMPTY) for x in self.actions]
                if not is_general_cover(family, self.successor[s]):
                    raise InvalidModel(
                        f"outcomes of {a!r} at {self.carrier.states[s]} do not form a "
                        "general cover of its successors"
                    )

    @classmethod
    def build(
        cls,
        states: Sequence[str],
        agents: Sequence[str],
        actions: Sequence[str],
        successor: Mapping[int, Iterable[int]],
        outcome_agent: Mapping[str, Mapping[int, Mapping[str, Iterable[int]]]],
        labeling: Mapping[str, Iterable[str]] | None = None,
    ) -> "SingleFirstActionModel":
        carrier = Carrier(tuple(states), tuple(agents), make_labeling(states, labeling))
        suc = tuple(frozenset(successor.get(s, ())) for s in range(carrier.n))
        table = {
            a: tuple(
                {x: frozenset(ys) for x, ys in outcome_agent.get(a, {}).get(s, {}).items() if ys}
                for s in range(carrier.n)
            )
            for a in carrier.agents
        }
        return cls(carrier, tuple(actions), suc, table)

    @property
    def states(self) -> tuple[str, ...]:
        return self.carrier.states

    @property
    def agents(self) -> tuple[str, ...]:
        return self.carrier.agents

    @property
    def n(self) -> int:
        return self.carrier.n

    def suc(self, s: int) -> StateSet:
        return self.successor[s]

    def out_agent(self, a: str, s: int, action: str) -> StateSet:
        return self.outcome_agent[a][s].get(action, EMPTY)

    def joint_actions(self, c: Iterable[str]) -> list[JointAction]:
        return enumerate_joint_actions(c, self.actions, self.carrier.agents)

    def out(self, c: Iterable[str], s: int, sigma: JointAction) -> StateSet:
        c = frozenset(c)
        if not c:
            return self.successor[s]
        return reduce(
            frozenset.intersection, (self.out_agent(a, s, sigma[a]) for a in sorted(c))
        )

    def outcome_table(self, c: Iterable[str]) -> tuple:
        c = self.carrier.check_coalition(c)
        jas = self.joint_actions(c)
        return tuple({sigma: self.out(c, s, sigma) for sigma in jas} for s in range(self.n))

    def av(self, c: Iterable[str], s: int) -> frozenset:
        return frozenset(sigma for sigma in self.joint_actions(c) if self.out(c, s, sigma))

    @cached_property
    def action_model(self) -> ActionModel:
        av, out = {}, {}
        for c in self.carrier.coalitions:
            table = self.outcome_table(c)
            out[c] = tuple({k: v for k, v in row.items() if v} for row in table)
            av[c] = tuple(frozenset(k for k, v in row.items() if v) for row in table)
        return ActionModel(self.carrier, self.actions, av, out)

    def __eq__(self, other):
        if not isinstance(other, SingleFirstActionModel):
            return NotImplemented
        return (
            self.carrier == other.carrier
            and self.actions == other.actions
            and self.successor == other.successor
            and all(self.outcome_agent[a] == other.outcome_agent[a] for a in self.carrier.agents)
        )

    def __hash__(self):
        return hash((self.carrier, self.actions, self.successor))


SAM = SingleFirstActionModel


def sam_derive_outcome(m: SingleFirstActionModel, c: Iterable[str]) -> tuple:
    return m.outcome_table(c)


def sam_derive_availability(m: SingleFirstActionModel, c: Iterable[str]) -> tuple:
    return tuple(m.av(c, s) for s in range(m.n))


def sam_to_gam(m: SingleFirstActionModel) -> GrandFirstActionModel:
    """The profile outcome table of ``m`` read as a grand-coalition-first model."""
    ag = frozenset(m.carrier.agents)
    rows = tuple(
        {sigma: ys for sigma in m.joint_actions(ag) if (ys := m.out(ag, s, sigma))}
        for s in range(m.n)
    )
    return GrandFirstActionModel(m.carrier, m.actions, rows)


def gam_to_sam(g: GrandFirstActionModel) -> SingleFirstActionModel:
    """Read ``g`` as a single-coalition-first model; fails unless condition set 1
    holds at every state."""
    am = g.action_model
    for s in range(g.n):
        if not condition_set_1(am, s):
            raise InvalidModel(
                f"not a single-coalition-first model: composition fails at {g.states[s]}"
            )
    table = {}
    for a in g.carrier.agents:
        rows = g.outcome_table({a})
        table[a] = tuple(
            {sigma[a]: ys for sigma, ys in row.items() if ys} for row in rows
        )
    return SingleFirstActionModel(g.carrier, g.actions, g.successor, table)


def classify_sam(m: SingleFirstActionModel) -> Signature:
    return classify(sam_to_gam(m))


# ---------------------------------------------------------------------------
# The three condition sets, each coded on its own over explicit tables


def condition_set_1(m: ActionModel, s: int) -> bool:
    """Per-agent general cover of ``out_∅`` plus intersection composition."""
    agents = m.carrier.agents
    ground = m.out(frozenset(), s, JointAction(()))
    for a in agents:
        outs = [m.out({a}, s, sig) for sig in m.joint_actions({a})]
        if not is_general_cover(outs, ground):
            return False
    for c in m.carrier.coalitions:
        if not c:
            continue
        for sigma in m.joint_actions(c):
            parts = [m.out({a}, s, sigma.restrict({a})) for a in c]
            if m.out(c, s, sigma) != frozenset.intersection(*parts):
                return False
    return True


def condition_set_2(m: ActionModel, s: int) -> bool:
    """Per-agent general cover of ``out_∅`` plus disjoint-union composition."""
    empty_out = m.out(frozenset(), s, JointAction(()))
    for a in m.carrier.agents:
        union_a: set[int] = set()
        for sig in m.joint_actions({a}):
            ys = m.out({a}, s, sig)
            if not ys <= empty_out:
                return False
            union_a |= ys
        if union_a != empty_out:
            return False
    for c, d in disjoint_pairs(m.carrier.coalitions):
        cd = c | d
        for sc in m.joint_actions(c):
            oc = m.out(c, s, sc)
            for sd in m.joint_actions(d):
                if m.out(cd, s, sc.union(sd)) != oc & m.out(d, s, sd):
                    return False
    return True


def condition_set_3(m: ActionModel, s: int) -> bool:
    """Union over extending profiles plus closure under fusions."""
    ag = frozenset(m.carrier.agents)
    profiles = m.joint_actions(ag)
    for c in m.carrier.coalitions:
        jas = m.joint_actions(c)
        for sigma in jas:
            acc: frozenset = EMPTY
            for prof in profiles:
                if prof.extends(sigma):
                    acc = acc | m.out(ag, s, prof)
            if m.out(c, s, sigma) != acc:
                return False
        members = sorted(c)
        for x, y in itertools.product(jas, repeat=2):
            common = m.out(c, s, x) & m.out(c, s, y)
            if not common:
                continue
            choices = [{x[a], y[a]} for a in members]
            for picked in itertools.product(*choices):
                fused = JointAction(tuple(zip(members, picked)))
                if not common <= m.out(c, s, fused):
                    return False
    return True


_CONDITION_SETS = {1: condition_set_1, 2: condition_set_2, 3: condition_set_3}


def check_condition_set(m: ActionModel, s: int, which: int) -> bool:
    try:
        pred = _CONDITION_SETS[which]
    except KeyError:
        raise ValueError(f"condition set must be 1, 2 or 3, not {which!r}") from None
    return pred(m, s)


# ---------------------------------------------------------------------------
# The ⊙ product


def odot(d1: Iterable[StateSet], d2: Iterable[StateSet]) -> Family:
    d1, d2 = frozenset(d1), frozenset(d2)
    if EMPTY in d1 or EMPTY in d2:
        raise EmptySetMember("⊙ is defined on families of nonempty sets")
    return frozenset(y1 & y2 for y1 in d1 for y2 in d2 if y1 & y2)


def odot_all(families: Sequence[Iterable[StateSet]]) -> Family:
    families = [frozenset(f) for f in families]
    if not families:
        raise ValueError("⊙ over an empty index set is undefined")
    for f in families:
        if EMPTY in f:
            raise EmptySetMember("⊙ is defined on families of nonempty sets")
    return reduce(odot, families)


# ---------------------------------------------------------------------------
# Single-coalition-first neighborhood models


@dataclass(frozen=True, eq=False)
class SingleFirstNeighborhoodModel:
    carrier: Carrier
    successor: tuple
    neighborhood_agent: Mapping[str, tuple]  # agent -> per state Family

    def __post_init__(self):
        _check_successor(self.carrier, self.successor)
        if set(self.neighborhood_agent) - set(self.carrier.agents):
            raise UnknownAgent(
                ", ".join(sorted(set(self.neighborhood_agent) - set(self.carrier.agents)))
            )
        for a in self.carrier.agents:
            rows = self.neighborhood_agent.get(a)
            if rows is None or len(rows) != self.carrier.n:
                raise InvalidModel(f"neighborhood table of agent {a!r} must have one row per state")
            for s, fam in enumerate(rows):
                if EMPTY in fam:
                    raise InvalidModel(
                        f"neighborhood of {a!r} at {self.carrier.states[s]} contains the empty set"
                    )
                if not is_cover(fam, self.successor[s]):
                    raise InvalidModel(
                        f"neighborhood of {a!r} at {self.carrier.states[s]} is not a cover "
                        "of its successors"
                    )

    @classmethod
    def build(
        cls,
        states: Sequence[str],
        agents: Sequence[str],
        successor: Mapping[int, Iterable[int]],
        neighborhood_agent: Mapping[str, Mapping[int, Iterable[Iterable[int]]]],
        labeling: Mapping[str, Iterable[str]] | None = None,
    ) -> "SingleFirstNeighborhoodModel":
        carrier = Carrier(tuple(states), tuple(agents), make_labeling(states, labeling))
        suc = tuple(frozenset(successor.get(s, ())) for s in range(carrier.n))
        table = {
            a: tuple(
                frozenset(frozenset(y) for y in neighborhood_agent.get(a, {}).get(s, ()))
                for s in range(carrier.n)
            )
            for a in carrier.agents
        }
        return cls(carrier, suc, table)

    @property
    def states(self) -> tuple[str, ...]:
        return self.carrier.states

    @property
    def agents(self) -> tuple[str, ...]:
        return self.carrier.agents

    @property
    def n(self) -> int:
        return self.carrier.n

    def suc(self, s: int) -> StateSet:
        return self.successor[s]

    def nei_agent(self, a: str, s: int) -> Family:
        return self.neighborhood_agent[a][s]

    def nei(self, c: Iterable[str], s: int) -> Family:
        c = frozenset(c)
        if not self.successor[s]:
            return frozenset()
        if not c:
            return frozenset([self.successor[s]])
        return odot_all([self.nei_agent(a, s) for a in sorted(c)])

    @cached_property
    def neighborhood_model(self) -> NeighborhoodModel:
        table = {c: tuple(self.nei(c, s) for s in range(self.n)) for c in self.carrier.coalitions}
        return NeighborhoodModel(self.carrier, table)

    def __eq__(self, other):
        if not isinstance(other, SingleFirstNeighborhoodModel):
            return NotImplemented
        return (
            self.carrier == other.carrier
            and self.successor == other.successor
            and all(
                self.neighborhood_agent[a] == other.neighborhood_agent[a]
                for a in self.carrier.agents
            )
        )

    def __hash__(self):
        return hash((self.carrier, self.successor))


SNM = SingleFirstNeighborhoodModel


def snm_derive_neighborhood(m: SingleFirstNeighborhoodModel, c: Iterable[str]) -> tuple:
    c = m.carrier.check_coalition(c)
    return tuple(m.nei(c, s) for s in range(m.n))


def _scope(m, states: Optional[Iterable[int]]) -> Iterable[int]:
    return range(m.n) if states is None else states


def snm_is_serial(m: SingleFirstNeighborhoodModel, states: Optional[Iterable[int]] = None) -> bool:
    return all(m.nei(c, s) for s in _scope(m, states) for c in m.carrier.coalitions)


def snm_is_independent(
    m: SingleFirstNeighborhoodModel, states: Optional[Iterable[int]] = None
) -> bool:
    pairs = disjoint_pairs(m.carrier.coalitions)
    for s in _scope(m, states):
        for c, d in pairs:
            for y1 in m.nei(c, s):
                for y2 in m.nei(d, s):
                    if not (y1 & y2):
                        return False
    return True


def snm_is_deterministic(
    m: SingleFirstNeighborhoodModel, states: Optional[Iterable[int]] = None
) -> bool:
    ag = frozenset(m.carrier.agents)
    return all(len(y) == 1 for s in _scope(m, states) for y in m.nei(ag, s))


def classify_snm(m: SingleFirstNeighborhoodModel, states: Optional[Iterable[int]] = None) -> Signature:
    states = None if states is None else list(states)
    return Signature(
        snm_is_serial(m, states), snm_is_independent(m, states), snm_is_deterministic(m, states)
    )
