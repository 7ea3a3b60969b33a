"""Exhaustive sweep of per-state outcome rows for the three condition sets.

Each condition set, checked at a state s, reads only the outcome sets at s. An
outcome row assigns a subset of ST to every (coalition, joint action) cell, so
enumerating every row for every size covers every explicit action model at
every state. Rows are packed into integers: cell ``i`` occupies bits
``[i*n, (i+1)*n)``.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from ..core import ActionModel, Carrier, JointAction, all_coalitions, enumerate_joint_actions
from ..gam import disjoint_pairs

CHUNK = 1 << 22


@dataclass(frozen=True)
class Layout:
    n_states: int
    agents: tuple[str, ...]
    actions: tuple[str, ...]
    cells: tuple[tuple[frozenset, JointAction], ...]

    @classmethod
    def of(cls, n: int, k: int, m: int) -> "Layout":
        agents = tuple("ab"[:k])
        actions = tuple(f"x{i + 1}" for i in range(m))
        cells = tuple(
            (c, sigma)
            for c in all_coalitions(agents)
            for sigma in enumerate_joint_actions(c, actions, agents)
        )
        return cls(n, agents, actions, cells)

    @property
    def n_rows(self) -> int:
        return 1 << (self.n_states * len(self.cells))

    def index(self, c: frozenset, sigma: JointAction) -> int:
        return self.cells.index((frozenset(c), sigma))

    def jas(self, c: frozenset) -> list[JointAction]:
        return enumerate_joint_actions(c, self.actions, self.agents)

    def decode(self, row: int) -> dict:
        full = (1 << self.n_states) - 1
        return {
            cell: frozenset(t for t in range(self.n_states) if (row >> (i * self.n_states) & full) >> t & 1)
            for i, cell in enumerate(self.cells)
        }

    def action_model(self, row: int) -> ActionModel:
        """An explicit model whose state 0 carries ``row``; other states are empty."""
        n = self.n_states
        carrier = Carrier(tuple(f"s{i}" for i in range(n)), self.agents, tuple(frozenset() for _ in range(n)))
        values = self.decode(row)
        coalitions = all_coalitions(self.agents)
        av = {c: tuple(frozenset(self.jas(c)) for _ in range(n)) for c in coalitions}
        out = {c: tuple({} for _ in range(n)) for c in coalitions}
        for (c, sigma), ys in values.items():
            if ys:
                out[c][0][sigma] = ys
        return ActionModel(carrier, self.actions, av, out)


def _cells(layout: Layout, rows: np.ndarray) -> list[np.ndarray]:
    n = layout.n_states
    full = np.uint64((1 << n) - 1)
    return [((rows >> np.uint64(i * n)) & full).astype(np.uint8) for i in range(len(layout.cells))]


def vec_condition_1(layout: Layout, v: list[np.ndarray]) -> np.ndarray:
    """Per-agent general cover of out_∅, and every coalition's outcome is the
    intersection of its members' outcomes."""
    ok = np.ones(v[0].shape, dtype=bool)
    e = v[layout.index(frozenset(), JointAction(()))]
    for a in layout.agents:
        acc = np.zeros_like(e)
        for sig in layout.jas(frozenset([a])):
            acc |= v[layout.index(frozenset([a]), sig)]
        ok &= acc == e
    for i, (c, sigma) in enumerate(layout.cells):
        if len(c) < 2:
            continue
        meet = np.full_like(e, 0xFF)
        for a in c:
            meet &= v[layout.index(frozenset([a]), sigma.restrict({a}))]
        ok &= v[i] == meet
    return ok


def vec_condition_2(layout: Layout, v: list[np.ndarray]) -> np.ndarray:
    """Per-agent outcomes inside and covering out_∅, and disjoint coalitions compose by intersection."""
    ok = np.ones(v[0].shape, dtype=bool)
    e = v[0]  # the empty coalition comes first in the layout
    not_e = ~e
    for a in layout.agents:
        union = np.zeros_like(e)
        for sig in layout.jas(frozenset([a])):
            cell = v[layout.index(frozenset([a]), sig)]
            ok &= (cell & not_e) == 0
            union |= cell
        ok &= union == e
    for c, d in disjoint_pairs(all_coalitions(layout.agents)):
        for sc in layout.jas(c):
            for sd in layout.jas(d):
                joint = v[layout.index(c | d, sc.union(sd))]
                ok &= joint == (v[layout.index(c, sc)] & v[layout.index(d, sd)])
    return ok


def vec_condition_3(layout: Layout, v: list[np.ndarray]) -> np.ndarray:
    """Outcomes are unions over extending profiles, and closed under fusions."""
    ok = np.ones(v[0].shape, dtype=bool)
    ag = frozenset(layout.agents)
    profiles = layout.jas(ag)
    for i, (c, sigma) in enumerate(layout.cells):
        acc = np.zeros_like(v[0])
        for prof in profiles:
            if prof.extends(sigma):
                acc |= v[layout.index(ag, prof)]
        ok &= v[i] == acc
    for c in all_coalitions(layout.agents):
        members = sorted(c)
        jas = layout.jas(c)
        for x, y in itertools.product(jas, repeat=2):
            common = v[layout.index(c, x)] & v[layout.index(c, y)]
            for picked in itertools.product(*[sorted({x[a], y[a]}) for a in members]):
                z = JointAction(tuple(zip(members, picked)))
                ok &= (common & ~v[layout.index(c, z)]) == 0
    return ok


def expected_condition_1_count(n: int, k: int, m: int) -> int:
    """Rows satisfying condition set 1, counted bit by bit.

    A target state outside out_∅ is in no cell. A target inside it picks, for
    every agent, a nonempty set of that agent's actions whose outcome contains it;
    all other cells are then forced.
    """
    return (1 + (2**m - 1) ** k) ** n


@dataclass
class SweepResult:
    n_states: int
    n_agents: int
    n_actions: int
    rows: int
    satisfying: int
    disagreements: int
    first_disagreement: int | None
    seconds: float


@dataclass
class SweepReport:
    sizes: list[SweepResult] = field(default_factory=list)

    @property
    def rows(self) -> int:
        return sum(r.rows for r in self.sizes)

    @property
    def agree(self) -> bool:
        return all(r.disagreements == 0 for r in self.sizes)

    @property
    def counts_match(self) -> bool:
        return all(
            r.satisfying == expected_condition_1_count(r.n_states, r.n_agents, r.n_actions)
            for r in self.sizes
        )


def sweep_size(n: int, k: int, m: int, chunk: int = CHUNK) -> SweepResult:
    layout = Layout.of(n, k, m)
    start = time.perf_counter()
    satisfying = disagreements = 0
    first = None
    for lo in range(0, layout.n_rows, chunk):
        rows = np.arange(lo, min(lo + chunk, layout.n_rows), dtype=np.uint64)
        v = _cells(layout, rows)
        c1 = vec_condition_1(layout, v)
        c2 = vec_condition_2(layout, v)
        c3 = vec_condition_3(layout, v)
        bad = (c1 != c2) | (c1 != c3)
        nbad = int(bad.sum())
        if nbad and first is None:
            first = int(rows[np.argmax(bad)])
        disagreements += nbad
        satisfying += int(c1.sum())
    return SweepResult(n, k, m, layout.n_rows, satisfying, disagreements, first,
                       time.perf_counter() - start)


def sweep(max_states: int = 3, max_agents: int = 2, max_actions: int = 2) -> SweepReport:
    """Every outcome row for every size up to the bounds."""
    report = SweepReport()
    for n in range(1, max_states + 1):
        for k in range(1, max_agents + 1):
            for m in range(1, max_actions + 1):
                report.sizes.append(sweep_size(n, k, m))
    return report
