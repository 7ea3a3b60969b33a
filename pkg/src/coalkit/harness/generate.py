"""Model generators: exhaustive enumeration up to small bounds, and seeded sampling."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from ..core import (
    ActionModel,
    Carrier,
    NeighborhoodModel,
    Signature,
    enumerate_joint_actions,
)
from ..errors import BoundsExceeded
from ..gam import GrandFirstActionModel, classify
from ..sam_snm import (
    SingleFirstActionModel,
    SingleFirstNeighborhoodModel,
    classify_snm,
    sam_to_gam,
)

MAX_STATES = 4
MAX_AGENTS = 2
MAX_ACTIONS = 2
EXHAUSTIVE_CAP = 500_000
MAX_COUNT = 100_000

KINDS = ("gam", "sam", "snm", "action", "neighborhood")
AGENT_NAMES = ("a", "b")
ATOMS = ("p", "q")

Model = Union[
    GrandFirstActionModel,
    SingleFirstActionModel,
    SingleFirstNeighborhoodModel,
    ActionModel,
    NeighborhoodModel,
]


@dataclass(frozen=True)
class GenSpec:
    """What to generate. Sizes are upper bounds: every size from 1 up is produced."""

    kind: str = "gam"
    n_states: int = 3
    n_agents: int = 2
    n_actions: int = 2
    signature_filter: Optional[Signature] = None
    mode: str = "random"
    seed: int = 0
    count: int = 100
    min_states: int = 1
    min_agents: int = 1
    min_actions: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.mode not in ("random", "exhaustive"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not (1 <= self.n_states <= MAX_STATES):
            raise BoundsExceeded(f"n_states must be between 1 and {MAX_STATES}")
        if not (1 <= self.n_agents <= MAX_AGENTS):
            raise BoundsExceeded(f"n_agents must be between 1 and {MAX_AGENTS}")
        if not (1 <= self.n_actions <= MAX_ACTIONS):
            raise BoundsExceeded(f"n_actions must be between 1 and {MAX_ACTIONS}")
        if not (0 <= self.count <= MAX_COUNT):
            raise BoundsExceeded(f"count must be between 0 and {MAX_COUNT}")

    def sizes(self) -> list[tuple[int, int, int]]:
        return [
            (n, k, m)
            for n in range(self.min_states, self.n_states + 1)
            for k in range(self.min_agents, self.n_agents + 1)
            for m in range(self.min_actions, self.n_actions + 1)
        ]


def signature_of(model: Model) -> Signature:
    if isinstance(model, GrandFirstActionModel):
        return classify(model)
    if isinstance(model, SingleFirstActionModel):
        return classify(sam_to_gam(model))
    if isinstance(model, SingleFirstNeighborhoodModel):
        return classify_snm(model)
    raise TypeError(f"no signature for {type(model).__name__}")


def _matches(model: Model, wanted: Optional[Signature]) -> bool:
    return wanted is None or signature_of(model).includes(wanted)


def _carrier(n: int, k: int, labels=None) -> Carrier:
    states = tuple(f"s{i}" for i in range(n))
    labeling = tuple(labels) if labels is not None else tuple(frozenset() for _ in range(n))
    return Carrier(states, AGENT_NAMES[:k], labeling)


def _actions(m: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(m))


def _subsets(ground: frozenset) -> list[frozenset]:
    items = sorted(ground)
    return [
        frozenset(x for i, x in enumerate(items) if mask >> i & 1) for mask in range(1 << len(items))
    ]


# ---------------------------------------------------------------------------
# Exhaustive enumeration


def exhaustive_count(kind: str, n: int, k: int, m: int) -> int:
    """Number of models of one size that exhaustive mode would produce."""
    if kind == "gam":
        return (2**n) ** (n * m**k)
    if kind == "sam":
        per_state = sum(
            _binom(n, j) * ((2**m - 1) ** j) ** k for j in range(n + 1)
        )
        return per_state**n
    if kind == "snm":
        per_state = sum(_binom(n, j) * _n_covers(j) ** k for j in range(n + 1))
        return per_state**n
    if kind == "action":
        cells = (1 + m) ** k
        return (2 * 2**n) ** (cells * n)
    if kind == "neighborhood":
        return (2 ** (2**n)) ** (2**k * n)
    raise ValueError(kind)


def _binom(n: int, r: int) -> int:
    from math import comb

    return comb(n, r)


def _n_covers(j: int) -> int:
    """Families of nonempty subsets of a j-element set whose union is the set."""
    ground = frozenset(range(j))
    nonempty = [y for y in _subsets(ground) if y]
    total = 0
    for mask in range(1 << len(nonempty)):
        fam = [nonempty[i] for i in range(len(nonempty)) if mask >> i & 1]
        if frozenset().union(*fam) == ground:
            total += 1
    return total


def _covers(ground: frozenset) -> list[frozenset]:
    nonempty = [y for y in _subsets(ground) if y]
    out = []
    for mask in range(1 << len(nonempty)):
        fam = frozenset(nonempty[i] for i in range(len(nonempty)) if mask >> i & 1)
        if frozenset().union(*fam) == ground:
            out.append(fam)
    return out


def _general_cover_rows(ground: frozenset, actions: tuple[str, ...]) -> list[dict]:
    """Action-indexed outcome rows whose union is ``ground``."""
    subs = _subsets(ground)
    rows = []
    for combo in itertools.product(subs, repeat=len(actions)):
        if frozenset().union(*combo) == ground:
            rows.append({x: ys for x, ys in zip(actions, combo) if ys})
    return rows


def _exhaustive_size(kind: str, n: int, k: int, m: int) -> Iterator[Model]:
    carrier = _carrier(n, k)
    actions = _actions(m)
    all_states = frozenset(range(n))
    subs = _subsets(all_states)
    if kind == "gam":
        profiles = enumerate_joint_actions(carrier.agents, actions, carrier.agents)
        row_choices = list(itertools.product(subs, repeat=len(profiles)))
        rows = [{p: ys for p, ys in zip(profiles, combo) if ys} for combo in row_choices]
        for table in itertools.product(rows, repeat=n):
            yield GrandFirstActionModel(carrier, actions, tuple(table))
    elif kind == "sam":
        per_state = []
        for suc in subs:
            per_agent = _general_cover_rows(suc, actions)
            for combo in itertools.product(per_agent, repeat=k):
                per_state.append((suc, combo))
        for choice in itertools.product(per_state, repeat=n):
            successor = tuple(c[0] for c in choice)
            table = {a: tuple(c[1][i] for c in choice) for i, a in enumerate(carrier.agents)}
            yield SingleFirstActionModel(carrier, actions, successor, table)
    elif kind == "snm":
        per_state = []
        for suc in subs:
            covers = _covers(suc)
            for combo in itertools.product(covers, repeat=k):
                per_state.append((suc, combo))
        for choice in itertools.product(per_state, repeat=n):
            successor = tuple(c[0] for c in choice)
            table = {a: tuple(c[1][i] for c in choice) for i, a in enumerate(carrier.agents)}
            yield SingleFirstNeighborhoodModel(carrier, successor, table)
    elif kind == "action":
        cells = [
            (c, sigma)
            for c in carrier.coalitions
            for sigma in enumerate_joint_actions(c, actions, carrier.agents)
        ]
        per_cell = list(itertools.product((False, True), subs))
        for choice in itertools.product(per_cell, repeat=len(cells) * n):
            av = {c: [set() for _ in range(n)] for c in carrier.coalitions}
            out = {c: [dict() for _ in range(n)] for c in carrier.coalitions}
            it = iter(choice)
            for s in range(n):
                for c, sigma in cells:
                    on, ys = next(it)
                    if on:
                        av[c][s].add(sigma)
                    if ys:
                        out[c][s][sigma] = ys
            yield ActionModel(
                carrier,
                actions,
                {c: tuple(frozenset(r) for r in rows) for c, rows in av.items()},
                {c: tuple(rows) for c, rows in out.items()},
            )
    elif kind == "neighborhood":
        fams = [frozenset(f) for f in _powerset(subs)]
        coalitions = carrier.coalitions
        for choice in itertools.product(fams, repeat=len(coalitions) * n):
            table = {
                c: tuple(choice[i * n + s] for s in range(n)) for i, c in enumerate(coalitions)
            }
            yield NeighborhoodModel(carrier, table)


def _powerset(items: list) -> list[tuple]:
    return [
        tuple(x for i, x in enumerate(items) if mask >> i & 1) for mask in range(1 << len(items))
    ]


# ---------------------------------------------------------------------------
# Random sampling


def _random_labels(rng: random.Random, n: int) -> list[frozenset]:
    return [frozenset(p for p in ATOMS if rng.random() < 0.5) for _ in range(n)]


def _random_subset(rng: random.Random, ground, p: float) -> frozenset:
    return frozenset(t for t in sorted(ground) if rng.random() < p)


def _random_partition(rng: random.Random, ground, blocks: int) -> list[frozenset]:
    """Split ``ground`` into at most ``blocks`` labelled pieces (some may be empty)."""
    parts = [set() for _ in range(blocks)]
    for t in sorted(ground):
        parts[rng.randrange(blocks)].add(t)
    return [frozenset(x) for x in parts]


def _random_tree_children(rng: random.Random, n: int) -> list[frozenset]:
    kids = [set() for _ in range(n)]
    for t in range(1, n):
        kids[rng.randrange(t)].add(t)
    return [frozenset(k) for k in kids]


def _random_gam(rng: random.Random, n: int, k: int, m: int) -> GrandFirstActionModel:
    carrier = _carrier(n, k, _random_labels(rng, n))
    actions = _actions(m)
    profiles = enumerate_joint_actions(carrier.agents, actions, carrier.agents)
    style = rng.choices(["plain", "det", "clear", "tree", "serial"], [3, 2, 2, 1, 2])[0]
    rows = []
    if style == "tree":
        kids = _random_tree_children(rng, n)
        # tree-shaped models are rooted at s0
        for s in range(n):
            parts = _random_partition(rng, kids[s], len(profiles))
            rows.append({p: ys for p, ys in zip(profiles, parts) if ys})
        return GrandFirstActionModel(carrier, actions, tuple(rows))
    all_states = range(n)
    for s in range(n):
        row = {}
        if style == "clear":
            parts = _random_partition(rng, _random_subset(rng, all_states, 0.7), len(profiles))
            row = {p: ys for p, ys in zip(profiles, parts) if ys}
        else:
            for p in profiles:
                if style == "det":
                    ys = frozenset([rng.randrange(n)]) if rng.random() < 0.7 else frozenset()
                elif style == "serial":
                    ys = _random_subset(rng, all_states, 0.45) or frozenset([rng.randrange(n)])
                else:
                    ys = _random_subset(rng, all_states, 0.35)
                if ys:
                    row[p] = ys
        rows.append(row)
    return GrandFirstActionModel(carrier, actions, tuple(rows))


def _cover_row(rng: random.Random, suc: frozenset, actions, partition: bool) -> dict:
    if partition:
        parts = _random_partition(rng, suc, len(actions))
        return {x: ys for x, ys in zip(actions, parts) if ys}
    row = {x: set(_random_subset(rng, suc, 0.5)) for x in actions}
    for t in suc:
        if not any(t in ys for ys in row.values()):
            row[rng.choice(actions)].add(t)
    return {x: frozenset(ys) for x, ys in row.items() if ys}


def _random_sam(rng: random.Random, n: int, k: int, m: int) -> SingleFirstActionModel:
    carrier = _carrier(n, k, _random_labels(rng, n))
    actions = _actions(m)
    style = rng.choices(["plain", "clear", "tree", "serial"], [4, 2, 1, 2])[0]
    if style == "tree":
        suc = _random_tree_children(rng, n)
    elif style == "serial":
        suc = [_random_subset(rng, range(n), 0.5) or frozenset([rng.randrange(n)]) for _ in range(n)]
    else:
        suc = [_random_subset(rng, range(n), 0.5) for _ in range(n)]
    partition = style in ("clear", "tree")
    table = {
        a: tuple(_cover_row(rng, suc[s], actions, partition) for s in range(n))
        for a in carrier.agents
    }
    return SingleFirstActionModel(carrier, actions, tuple(suc), table)


def _cover_family(rng: random.Random, suc: frozenset, partition: bool, max_members: int = 3) -> frozenset:
    if not suc:
        return frozenset()
    if partition:
        parts = _random_partition(rng, suc, rng.randint(1, len(suc)))
        return frozenset(y for y in parts if y)
    fam = set()
    for _ in range(rng.randint(1, max_members)):
        y = _random_subset(rng, suc, 0.5)
        if y:
            fam.add(y)
    covered = frozenset().union(*fam) if fam else frozenset()
    for t in sorted(suc - covered):
        if fam and rng.random() < 0.5:
            y = rng.choice(sorted(fam, key=sorted))
            fam.discard(y)
            fam.add(y | {t})
        else:
            fam.add(frozenset([t]))
    return frozenset(fam)


def _random_snm(rng: random.Random, n: int, k: int, m: int) -> SingleFirstNeighborhoodModel:
    carrier = _carrier(n, k, _random_labels(rng, n))
    style = rng.choices(["plain", "clear", "tree", "serial"], [4, 2, 1, 2])[0]
    if style == "tree":
        suc = _random_tree_children(rng, n)
    elif style == "serial":
        suc = [_random_subset(rng, range(n), 0.5) or frozenset([rng.randrange(n)]) for _ in range(n)]
    else:
        suc = [_random_subset(rng, range(n), 0.5) for _ in range(n)]
    partition = style in ("clear", "tree")
    table = {
        a: tuple(_cover_family(rng, suc[s], partition) for s in range(n)) for a in carrier.agents
    }
    return SingleFirstNeighborhoodModel(carrier, tuple(suc), table)


def _random_action(rng: random.Random, n: int, k: int, m: int) -> ActionModel:
    carrier = _carrier(n, k, _random_labels(rng, n))
    actions = _actions(m)
    av, out = {}, {}
    for c in carrier.coalitions:
        jas = enumerate_joint_actions(c, actions, carrier.agents)
        av[c] = tuple(frozenset(j for j in jas if rng.random() < 0.6) for _ in range(n))
        rows = []
        for _ in range(n):
            row = {}
            for j in jas:
                ys = _random_subset(rng, range(n), 0.4)
                if ys:
                    row[j] = ys
            rows.append(row)
        out[c] = tuple(rows)
    return ActionModel(carrier, actions, av, out)


def _random_neighborhood(rng: random.Random, n: int, k: int, m: int) -> NeighborhoodModel:
    carrier = _carrier(n, k, _random_labels(rng, n))
    table = {}
    for c in carrier.coalitions:
        table[c] = tuple(
            frozenset(_random_subset(rng, range(n), 0.5) for _ in range(rng.randint(0, 3)))
            for _ in range(n)
        )
    return NeighborhoodModel(carrier, table)


_RANDOM = {
    "gam": _random_gam,
    "sam": _random_sam,
    "snm": _random_snm,
    "action": _random_action,
    "neighborhood": _random_neighborhood,
}


def generate(spec: GenSpec) -> Iterator[Model]:
    """Stream of models per ``spec``.

    Exhaustive mode walks every model of every size within the bounds (labels
    empty) in a fixed order, refusing streams larger than ``EXHAUSTIVE_CAP``.
    Random mode is a pure function of the seed.
    """
    if spec.mode == "exhaustive":
        total = sum(exhaustive_count(spec.kind, n, k, m) for n, k, m in spec.sizes())
        if total > EXHAUSTIVE_CAP:
            raise BoundsExceeded(
                f"exhaustive {spec.kind} stream would have {total} models (cap {EXHAUSTIVE_CAP})"
            )
        for n, k, m in spec.sizes():
            for model in _exhaustive_size(spec.kind, n, k, m):
                if _matches(model, spec.signature_filter):
                    yield model
        return
    rng = random.Random(spec.seed)
    make = _RANDOM[spec.kind]
    sizes = spec.sizes()
    produced, attempts = 0, 0
    limit = max(1000, 200 * spec.count)
    while produced < spec.count and attempts < limit:
        attempts += 1
        n, k, m = rng.choice(sizes)
        model = make(rng, n, k, m)
        if _matches(model, spec.signature_filter):
            produced += 1
            yield model


def stream_size(spec: GenSpec) -> int:
    return sum(exhaustive_count(spec.kind, n, k, m) for n, k, m in spec.sizes())
