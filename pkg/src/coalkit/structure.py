"""Clearness, histories and tree-likeness, with their alternative characterizations."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Optional, Sequence, Union

from .core import Coalition, is_general_partition, is_partition
from .gam import GrandFirstActionModel
from .sam_snm import SingleFirstNeighborhoodModel

# ---------------------------------------------------------------------------
# Clearness of action models


def _disjoint_outcomes(g, c: Coalition) -> bool:
    for s in range(g.n):
        outs = list(g.outcome_table(c)[s].values())
        for x, y in itertools.combinations(outs, 2):
            if x & y:
                return False
    return True


def is_clear_gam(g: GrandFirstActionModel) -> bool:
    """Distinct action profiles never share an outcome state."""
    for s in range(g.n):
        profiles = g.profiles
        for i, p in enumerate(profiles):
            x = g.out_grand(s, p)
            if not x:
                continue
            for q in profiles[i + 1 :]:
                if x & g.out_grand(s, q):
                    return False
    return True


def clear_condition(g: GrandFirstActionModel, which: int) -> bool:
    """(1) per agent, (2) per coalition, (3) grand coalition only."""
    if which == 1:
        return all(_disjoint_outcomes(g, frozenset([a])) for a in g.carrier.agents)
    if which == 2:
        return all(_disjoint_outcomes(g, c) for c in g.carrier.coalitions)
    if which == 3:
        return _disjoint_outcomes(g, frozenset(g.carrier.agents))
    raise ValueError(f"clear condition must be 1, 2 or 3, not {which!r}")


def outcomes_are_general_partitions(g: GrandFirstActionModel) -> bool:
    """For every C and s, the C-outcomes form a general partition of suc(s)."""
    return all(
        is_general_partition(g.outcome_table(c)[s].values(), g.suc(s))
        for c in g.carrier.coalitions
        for s in range(g.n)
    )


# ---------------------------------------------------------------------------
# Clearness of neighborhood models


def is_clear_snm(m: SingleFirstNeighborhoodModel) -> bool:
    return all(
        is_partition(m.nei_agent(a, s), m.suc(s)) for a in m.carrier.agents for s in range(m.n)
    )


def clear_snm_condition(m: SingleFirstNeighborhoodModel, which: int) -> bool:
    """(1) every agent's neighborhood, (2) every coalition's derived neighborhood,
    is a partition of the successors."""
    if which == 1:
        return is_clear_snm(m)
    if which == 2:
        return all(
            is_partition(m.nei(c, s), m.suc(s)) for c in m.carrier.coalitions for s in range(m.n)
        )
    raise ValueError(f"clear condition must be 1 or 2, not {which!r}")


def grand_only_clear_snm(m: SingleFirstNeighborhoodModel) -> bool:
    """The grand-coalition-only analogue, which is strictly weaker."""
    ag = frozenset(m.carrier.agents)
    return all(is_partition(m.nei(ag, s), m.suc(s)) for s in range(m.n))


# ---------------------------------------------------------------------------
# Histories

Model = Union[GrandFirstActionModel, SingleFirstNeighborhoodModel]


@dataclass(frozen=True)
class History:
    """``states[0], labels[0], states[1], ...``; labels are joint actions or state sets."""

    coalition: Coalition
    states: tuple[int, ...]
    labels: tuple[Hashable, ...] = ()

    def __post_init__(self):
        if len(self.states) != len(self.labels) + 1:
            raise ValueError("a history alternates states and labels, starting and ending with a state")

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def start(self) -> int:
        return self.states[0]

    @property
    def end(self) -> int:
        return self.states[-1]


def labeled_edges(model, c: Iterable[str], s: int) -> list[tuple[Hashable, int]]:
    """Steps a C-history may take from ``s``."""
    c = frozenset(c)
    if hasattr(model, "nei"):
        return [(y, t) for y in model.nei(c, s) for t in sorted(y)]
    return [(sigma, t) for sigma in sorted(model.av(c, s)) for t in sorted(model.out(c, s, sigma))]


def enumerate_histories(
    model, c: Iterable[str], start: int, end: int, max_len: int
) -> list[History]:
    """All C-histories from ``start`` to ``end`` with at most ``max_len`` steps."""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    c = frozenset(c)
    found: list[History] = []
    stack = [((start,), ())]
    while stack:
        states, labels = stack.pop()
        if states[-1] == end:
            found.append(History(c, states, labels))
        if len(labels) < max_len:
            for lab, t in reversed(labeled_edges(model, c, states[-1])):
                stack.append((states + (t,), labels + (lab,)))
    found.sort(key=len)
    return found


def count_histories(model, c: Iterable[str], start: int, max_len: int, cap: int = 2) -> list[int]:
    """Per target state, the number of C-histories from ``start`` of length at most
    ``max_len``, saturated at ``cap``."""
    n = model.n
    c = frozenset(c)
    edges = [labeled_edges(model, c, s) for s in range(n)]
    layer = [0] * n
    layer[start] = 1
    total = layer[:]
    for _ in range(max_len):
        nxt = [0] * n
        for s in range(n):
            if layer[s]:
                for _, t in edges[s]:
                    nxt[t] = min(cap, nxt[t] + layer[s])
        if not any(nxt):
            break
        layer = nxt
        total = [min(cap, x + y) for x, y in zip(total, layer)]
    return total


def arborescence_root(model, c: Iterable[str]) -> Optional[int]:
    """The root r if every state has exactly one C-history from r, else None.

    Decided structurally: r has no incoming labeled edge, every other state has
    exactly one, and every state is reachable from r.
    """
    n = model.n
    c = frozenset(c)
    indeg = [0] * n
    succ: list[list[int]] = [[] for _ in range(n)]
    for s in range(n):
        for _, t in labeled_edges(model, c, s):
            indeg[t] += 1
            succ[s].append(t)
    roots = [s for s in range(n) if indeg[s] == 0]
    if len(roots) != 1:
        return None
    r = roots[0]
    if any(indeg[s] != 1 for s in range(n) if s != r):
        return None
    seen = {r}
    queue = deque([r])
    while queue:
        s = queue.popleft()
        for t in succ[s]:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return r if len(seen) == n else None


def root_by_histories(model, c: Iterable[str]) -> Optional[int]:
    """Root search by counting histories of length at most |ST| from every candidate.

    A longer history revisits some state, and the two prefixes ending at the
    repeated state are already distinct histories within the bound.
    """
    for r in range(model.n):
        if all(k == 1 for k in count_histories(model, c, r, model.n)):
            return r
    return None


def _shared_root(model, coalitions: Sequence[Coalition], finder) -> Optional[int]:
    roots = {finder(model, c) for c in coalitions}
    if len(roots) != 1:
        return None
    return roots.pop()


def tree_condition_gam(g: GrandFirstActionModel, which: int, by_histories: bool = False) -> Optional[int]:
    """Root shared by (1) every agent, (2) every coalition, (3) the grand coalition;
    None when the condition fails."""
    finder = root_by_histories if by_histories else arborescence_root
    if which == 1:
        cs = [frozenset([a]) for a in g.carrier.agents]
    elif which == 2:
        cs = list(g.carrier.coalitions)
    elif which == 3:
        cs = [frozenset(g.carrier.agents)]
    else:
        raise ValueError(f"tree condition must be 1, 2 or 3, not {which!r}")
    return _shared_root(g, cs, finder)


def is_treelike_gam(g: GrandFirstActionModel) -> tuple[bool, Optional[int]]:
    r = tree_condition_gam(g, 3)
    return r is not None, r


def tree_condition_snm(
    m: SingleFirstNeighborhoodModel, which: int, by_histories: bool = False
) -> Optional[int]:
    """Root shared by (1) every agent, (2) every coalition; None when the condition fails."""
    finder = root_by_histories if by_histories else arborescence_root
    if which == 1:
        cs = [frozenset([a]) for a in m.carrier.agents]
    elif which == 2:
        cs = list(m.carrier.coalitions)
    else:
        raise ValueError(f"tree condition must be 1 or 2, not {which!r}")
    return _shared_root(m, cs, finder)


def grand_only_tree_snm(m: SingleFirstNeighborhoodModel) -> Optional[int]:
    """The grand-coalition-only analogue, which is strictly weaker."""
    return arborescence_root(m, frozenset(m.carrier.agents))


def is_treelike_snm(m: SingleFirstNeighborhoodModel) -> tuple[bool, Optional[int]]:
    r = tree_condition_snm(m, 1)
    return r is not None, r
