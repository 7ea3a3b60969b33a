"""Finite domain types shared by every model kind."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import (
    CoalitionMismatch,
    InvalidModel,
    NotASubcoalition,
    OverlappingCoalitions,
    UnknownAgent,
    UnknownState,
)

Coalition = frozenset  # frozenset[str]
StateSet = frozenset  # frozenset[int]
Family = frozenset  # frozenset[StateSet]

EMPTY: StateSet = frozenset()


@dataclass(frozen=True, order=True)
class JointAction:
    """A total assignment of actions to the members of a coalition.

    ``pairs`` is kept sorted by agent name, so structural equality is set equality.
    """

    pairs: tuple = ()

    @classmethod
    def of(cls, assignment: Mapping[str, str] | Iterable[tuple[str, str]]) -> "JointAction":
        items = assignment.items() if isinstance(assignment, Mapping) else assignment
        d: dict[str, str] = {}
        for agent, action in items:
            if agent in d and d[agent] != action:
                raise ValueError(f"agent {agent!r} assigned twice")
            d[agent] = action
        return cls(tuple(sorted(d.items())))

    @cached_property
    def coalition(self) -> Coalition:
        return frozenset(a for a, _ in self.pairs)

    @cached_property
    def mapping(self) -> dict[str, str]:
        return dict(self.pairs)

    def __getitem__(self, agent: str) -> str:
        return self.mapping[agent]

    def __len__(self) -> int:
        return len(self.pairs)

    def restrict(self, d: Iterable[str]) -> "JointAction":
        d = frozenset(d)
        if not d <= self.coalition:
            raise NotASubcoalition(
                f"{sorted(d)} is not a subset of {sorted(self.coalition)}"
            )
        return JointAction(tuple(p for p in self.pairs if p[0] in d))

    def union(self, other: "JointAction") -> "JointAction":
        overlap = self.coalition & other.coalition
        if overlap:
            raise OverlappingCoalitions(f"both assign {sorted(overlap)}")
        return JointAction(tuple(sorted(self.pairs + other.pairs)))

    def extends(self, other: "JointAction") -> bool:
        """True iff ``other`` is a restriction of this joint action."""
        return set(other.pairs) <= set(self.pairs)

    def key(self) -> str:
        return ",".join(f"{a}:{x}" for a, x in self.pairs)

    @classmethod
    def from_key(cls, key: str) -> "JointAction":
        if not key.strip():
            return cls(())
        pairs = []
        for part in split_top_level(key):
            agent, sep, action = part.partition(":")
            if not sep or not agent or not action:
                raise ValueError(f"malformed joint action key {key!r}")
            pairs.append((agent.strip(), action.strip()))
        return cls.of(pairs)

    def __str__(self) -> str:
        return "(" + self.key() + ")"


EMPTY_JA = JointAction(())


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside of braces, so action names like ``a@s@{t,u}`` survive."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def restrict(sigma: JointAction, d: Iterable[str]) -> JointAction:
    return sigma.restrict(d)


def union(sigma_c: JointAction, sigma_d: JointAction) -> JointAction:
    return sigma_c.union(sigma_d)


def is_fusion(sigma: JointAction, sigma1: JointAction, sigma2: JointAction) -> bool:
    """Whether ``sigma`` takes each member's action from ``sigma1`` or ``sigma2``."""
    if not (sigma.coalition == sigma1.coalition == sigma2.coalition):
        raise CoalitionMismatch("joint actions of different coalitions")
    m, m1, m2 = sigma.mapping, sigma1.mapping, sigma2.mapping
    return all(m[a] == m1[a] or m[a] == m2[a] for a in m)


def enumerate_joint_actions(
    c: Iterable[str], actions: Sequence[str], agent_order: Optional[Sequence[str]] = None
) -> list[JointAction]:
    """All ``|actions| ** |c|`` joint actions of ``c``.

    Ordered lexicographically by agent (``agent_order`` if given, else sorted) and
    then by position in ``actions``.
    """
    c = frozenset(c)
    if agent_order is None:
        members = sorted(c)
    else:
        members = [a for a in agent_order if a in c]
        if len(members) != len(c):
            raise UnknownAgent(", ".join(sorted(c - set(agent_order))))
    return [
        JointAction(tuple(sorted(zip(members, combo))))
        for combo in itertools.product(actions, repeat=len(members))
    ]


def all_coalitions(agents: Sequence[str]) -> list[Coalition]:
    """Every subset of ``agents``, in bitmask order over the given agent order."""
    n = len(agents)
    return [
        frozenset(agents[i] for i in range(n) if mask >> i & 1) for mask in range(1 << n)
    ]


def coalition_key(c: Iterable[str]) -> str:
    return ",".join(sorted(c))


def parse_coalition_key(key: str) -> Coalition:
    key = key.strip()
    if key in ("", "{}"):
        return frozenset()
    key = key.strip("{}")
    return frozenset(part.strip() for part in key.split(",") if part.strip())


def is_general_cover(family: Iterable[StateSet], ground: StateSet) -> bool:
    """Union of the family equals ``ground``; the empty set may be a member."""
    fam = list(family)
    if any(not y <= ground for y in fam):
        return False
    return frozenset().union(*fam) == ground


def is_cover(family: Iterable[StateSet], ground: StateSet) -> bool:
    fam = list(family)
    return EMPTY not in fam and is_general_cover(fam, ground)


def is_general_partition(family: Iterable[StateSet], ground: StateSet) -> bool:
    fam = list(set(family))
    if frozenset().union(*fam) != ground:
        return False
    return all(not (x & y) for x, y in itertools.combinations(fam, 2))


def is_partition(family: Iterable[StateSet], ground: StateSet) -> bool:
    fam = list(family)
    return EMPTY not in fam and is_general_partition(fam, ground)


# ---------------------------------------------------------------------------
# Signatures

LETTERS = ("S", "I", "D")


@dataclass(frozen=True)
class Signature:
    serial: bool = False
    independent: bool = False
    deterministic: bool = False

    @property
    def letters(self) -> str:
        return "".join(
            ch for ch, on in zip(LETTERS, (self.serial, self.independent, self.deterministic)) if on
        )

    def __str__(self) -> str:
        return self.letters or "ε"

    def has(self, letter: str) -> bool:
        return letter in self.letters

    def includes(self, other: "Signature") -> bool:
        return set(other.letters) <= set(self.letters)

    @classmethod
    def parse(cls, text: str) -> "Signature":
        t = text.strip().upper()
        if t in ("", "Ε", "EPSILON", "E"):
            return cls()
        if any(ch not in LETTERS for ch in t):
            raise ValueError(f"not a signature: {text!r}")
        return cls("S" in t, "I" in t, "D" in t)


ALL_SIGNATURES = tuple(
    Signature(s, i, d) for s in (False, True) for i in (False, True) for d in (False, True)
)


# ---------------------------------------------------------------------------
# Models


def _check_unique(names: Sequence[str], what: str) -> None:
    if len(set(names)) != len(names):
        raise InvalidModel(f"duplicate {what} names")


@dataclass(frozen=True)
class Carrier:
    """States, agents and labeling: the part shared by all model kinds."""

    states: tuple[str, ...]
    agents: tuple[str, ...]
    labeling: tuple[frozenset, ...]

    def __post_init__(self):
        if not self.states:
            raise InvalidModel("a model needs at least one state")
        if not self.agents:
            raise InvalidModel("a model needs at least one agent")
        _check_unique(self.states, "state")
        _check_unique(self.agents, "agent")
        if len(self.labeling) != len(self.states):
            raise InvalidModel("labeling must cover every state")

    @property
    def n(self) -> int:
        return len(self.states)

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.states)}

    def index(self, state: int | str) -> int:
        if isinstance(state, int) and not isinstance(state, bool):
            if 0 <= state < self.n:
                return state
            raise UnknownState(str(state))
        try:
            return self.state_index[state]
        except KeyError:
            raise UnknownState(str(state)) from None

    @cached_property
    def coalitions(self) -> list[Coalition]:
        return all_coalitions(self.agents)

    @property
    def all_states(self) -> StateSet:
        return frozenset(range(self.n))

    def check_coalition(self, c: Iterable[str]) -> Coalition:
        c = frozenset(c)
        unknown = c - set(self.agents)
        if unknown:
            raise UnknownAgent(", ".join(sorted(unknown)))
        return c


def make_labeling(states: Sequence[str], labeling: Mapping[str, Iterable[str]] | None) -> tuple:
    labeling = labeling or {}
    extra = set(labeling) - set(states)
    if extra:
        raise UnknownState(", ".join(sorted(extra)))
    return tuple(frozenset(labeling.get(s, ())) for s in states)


@dataclass(frozen=True, eq=False)
class ActionModel:
    """Fully explicit action model.

    ``availability[C][s]`` is a frozenset of joint actions of C and
    ``outcome[C][s]`` maps joint actions of C to state sets; anything missing
    reads as the empty set.
    """

    carrier: Carrier
    actions: tuple[str, ...]
    availability: Mapping[Coalition, tuple]
    outcome: Mapping[Coalition, tuple]

    def __post_init__(self):
        if not self.actions:
            raise InvalidModel("a model needs at least one action")
        _check_unique(self.actions, "action")
        n = self.carrier.n
        acts = set(self.actions)
        for table_name, table in (("availability", self.availability), ("outcome", self.outcome)):
            for c, rows in table.items():
                self.carrier.check_coalition(c)
                if len(rows) != n:
                    raise InvalidModel(f"{table_name} table for {sorted(c)} has wrong length")
                for row in rows:
                    for sigma in row:
                        if sigma.coalition != c or not set(sigma.mapping.values()) <= acts:
                            raise InvalidModel(f"joint action {sigma} does not belong to {sorted(c)}")
                    if table_name == "outcome":
                        for ys in row.values():
                            if any(not (0 <= t < n) for t in ys):
                                raise InvalidModel("outcome mentions an unknown state")

    @property
    def states(self) -> tuple[str, ...]:
        return self.carrier.states

    @property
    def agents(self) -> tuple[str, ...]:
        return self.carrier.agents

    @property
    def labeling(self) -> tuple[frozenset, ...]:
        return self.carrier.labeling

    def joint_actions(self, c: Iterable[str]) -> list[JointAction]:
        return enumerate_joint_actions(c, self.actions, self.agents)

    def av(self, c: Iterable[str], s: int) -> frozenset:
        rows = self.availability.get(frozenset(c))
        return frozenset() if rows is None else rows[s]

    def out(self, c: Iterable[str], s: int, sigma: JointAction) -> StateSet:
        rows = self.outcome.get(frozenset(c))
        return EMPTY if rows is None else rows[s].get(sigma, EMPTY)

    @classmethod
    def build(
        cls,
        states: Sequence[str],
        agents: Sequence[str],
        actions: Sequence[str],
        availability: Mapping[Coalition, Mapping[int, Iterable[JointAction]]],
        outcome: Mapping[Coalition, Mapping[int, Mapping[JointAction, Iterable[int]]]],
        labeling: Mapping[str, Iterable[str]] | None = None,
    ) -> "ActionModel":
        carrier = Carrier(tuple(states), tuple(agents), make_labeling(states, labeling))
        n = carrier.n
        av = {
            frozenset(c): tuple(frozenset(rows.get(s, ())) for s in range(n))
            for c, rows in availability.items()
        }
        out = {
            frozenset(c): tuple(
                {sig: frozenset(ys) for sig, ys in rows.get(s, {}).items() if ys}
                for s in range(n)
            )
            for c, rows in outcome.items()
        }
        return cls(carrier, tuple(actions), av, out)

    def __hash__(self):
        return hash((self.carrier, self.actions))

    def __eq__(self, other):
        if not isinstance(other, ActionModel):
            return NotImplemented
        if self.carrier != other.carrier or self.actions != other.actions:
            return False
        for c in self.carrier.coalitions:
            for s in range(self.carrier.n):
                if self.av(c, s) != other.av(c, s):
                    return False
                for sigma in self.joint_actions(c):
                    if self.out(c, s, sigma) != other.out(c, s, sigma):
                        return False
        return True


@dataclass(frozen=True, eq=False)
class NeighborhoodModel:
    """Fully explicit neighborhood model: ``neighborhood[C][s]`` is a family of state sets."""

    carrier: Carrier
    neighborhood: Mapping[Coalition, tuple]

    def __post_init__(self):
        n = self.carrier.n
        for c, rows in self.neighborhood.items():
            self.carrier.check_coalition(c)
            if len(rows) != n:
                raise InvalidModel(f"neighborhood table for {sorted(c)} has wrong length")
            for fam in rows:
                for y in fam:
                    if any(not (0 <= t < n) for t in y):
                        raise InvalidModel("neighborhood mentions an unknown state")

    @property
    def states(self) -> tuple[str, ...]:
        return self.carrier.states

    @property
    def agents(self) -> tuple[str, ...]:
        return self.carrier.agents

    @property
    def labeling(self) -> tuple[frozenset, ...]:
        return self.carrier.labeling

    def nei(self, c: Iterable[str], s: int) -> Family:
        rows = self.neighborhood.get(frozenset(c))
        return frozenset() if rows is None else rows[s]

    @classmethod
    def build(
        cls,
        states: Sequence[str],
        agents: Sequence[str],
        neighborhood: Mapping[Coalition, Mapping[int, Iterable[Iterable[int]]]],
        labeling: Mapping[str, Iterable[str]] | None = None,
    ) -> "NeighborhoodModel":
        carrier = Carrier(tuple(states), tuple(agents), make_labeling(states, labeling))
        table = {
            frozenset(c): tuple(
                frozenset(frozenset(y) for y in rows.get(s, ())) for s in range(carrier.n)
            )
            for c, rows in neighborhood.items()
        }
        return cls(carrier, table)

    def table(self) -> dict[Coalition, tuple]:
        return {c: tuple(self.nei(c, s) for s in range(self.carrier.n)) for c in self.carrier.coalitions}

    def __eq__(self, other):
        if not isinstance(other, NeighborhoodModel):
            return NotImplemented
        return self.carrier == other.carrier and self.table() == other.table()

    def __hash__(self):
        return hash(self.carrier)


def fmt_set(ys: Iterable[int], states: Sequence[str]) -> str:
    return "{" + ",".join(states[t] for t in sorted(ys)) + "}"


def fmt_family(fam: Iterable[Iterable[int]], states: Sequence[str]) -> str:
    parts = sorted(fmt_set(y, states) for y in fam)
    return "{" + ", ".join(parts) + "}"


def iter_states(n: int) -> Iterator[int]:
    return iter(range(n))
