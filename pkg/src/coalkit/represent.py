"""Representation constructions between model kinds, and bounded unraveling."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .core import Carrier
from .errors import EmptyActionUniverse
from .gam import GrandFirstActionModel
from .neighborhood import z_represents
from .sam_snm import (
    SingleFirstActionModel,
    SingleFirstNeighborhoodModel,
    gam_to_sam,
    sam_to_gam,
)
from .structure import is_clear_gam, is_clear_snm, is_treelike_gam, is_treelike_snm

FRESH_ACTION = "idle"


def sam_to_snm(m: SingleFirstActionModel) -> SingleFirstNeighborhoodModel:
    """Each agent's neighborhood is the family of its nonempty action outcomes."""
    table = {
        a: tuple(
            frozenset(m.out_agent(a, s, x) for x in m.actions if m.out_agent(a, s, x))
            for s in range(m.n)
        )
        for a in m.carrier.agents
    }
    return SingleFirstNeighborhoodModel(m.carrier, m.successor, table)


def action_name(agent: str, state: str, ys, states) -> str:
    return f"{agent}@{state}@{{{','.join(states[t] for t in sorted(ys))}}}"


def snm_to_sam(m: SingleFirstNeighborhoodModel, allow_fresh: bool = True) -> SingleFirstActionModel:
    """One action per (agent, state, neighborhood member); it yields its member
    for that agent at that state and nothing anywhere else."""
    names = m.carrier.states
    triples = []
    for a in m.carrier.agents:
        for s in range(m.n):
            for ys in sorted(m.nei_agent(a, s), key=lambda y: sorted(y)):
                triples.append((a, s, ys, action_name(a, names[s], ys, names)))
    if not triples:
        if not allow_fresh:
            raise EmptyActionUniverse("no neighborhood members to name actions after")
        actions = (FRESH_ACTION,)
    else:
        actions = tuple(t[3] for t in triples)
    table = {a: tuple({} for _ in range(m.n)) for a in m.carrier.agents}
    for a, s, ys, name in triples:
        table[a][s][name] = ys
    return SingleFirstActionModel(m.carrier, actions, m.successor, table)


# ---------------------------------------------------------------------------
# Unraveling


@dataclass(frozen=True)
class Unraveling:
    model: GrandFirstActionModel
    paths: tuple  # per unraveled state: (s0, sigma1, s1, ...)
    depth: int

    def last(self, i: int) -> int:
        return self.paths[i][-1]

    def length(self, i: int) -> int:
        return (len(self.paths[i]) - 1) // 2

    @property
    def interior(self) -> list[int]:
        return [i for i in range(len(self.paths)) if self.length(i) < self.depth]

    root = 0


def path_name(path, states) -> str:
    parts = [states[path[0]]]
    for k in range(1, len(path), 2):
        parts.append(str(path[k]))
        parts.append(states[path[k + 1]])
    return "/".join(parts)


def unravel_paths(g: GrandFirstActionModel, s: int | str, depth: int) -> Unraveling:
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    s = g.carrier.index(s)
    paths = [(s,)]
    index = {(s,): 0}
    rows: list[dict] = [{}]
    frontier = [0]
    for _ in range(depth):
        nxt = []
        for i in frontier:
            path = paths[i]
            row = {}
            for sigma, ys in g.outcome_grand[path[-1]].items():
                kids = []
                for u in sorted(ys):
                    child = path + (sigma, u)
                    index[child] = len(paths)
                    paths.append(child)
                    rows.append({})
                    kids.append(index[child])
                    nxt.append(index[child])
                row[sigma] = frozenset(kids)
            rows[i] = row
        frontier = nxt
    names = tuple(path_name(p, g.states) for p in paths)
    labeling = tuple(g.carrier.labeling[p[-1]] for p in paths)
    carrier = Carrier(names, g.carrier.agents, labeling)
    model = GrandFirstActionModel(carrier, g.actions, tuple(rows))
    return Unraveling(model, tuple(paths), depth)


def unravel(g: GrandFirstActionModel, s: int | str, depth: int) -> GrandFirstActionModel:
    """Path-state unraveling from ``s`` cut off after ``depth`` steps; the root is state 0."""
    return unravel_paths(g, s, depth).model


def lifting_claims_hold(g: GrandFirstActionModel, u: Unraveling) -> bool:
    """Outcomes of interior path-states project onto, and lift from, the original outcomes."""
    h = u.model
    for i in u.interior:
        for c in g.carrier.coalitions:
            for sigma in g.joint_actions(c):
                projected = frozenset(u.last(j) for j in h.out(c, i, sigma))
                if projected != g.out(c, u.last(i), sigma):
                    return False
    return True


# ---------------------------------------------------------------------------
# Preservation of clearness and tree-likeness

AnyModel = Union[GrandFirstActionModel, SingleFirstActionModel, SingleFirstNeighborhoodModel]


def _as_gam(model) -> GrandFirstActionModel:
    return sam_to_gam(model) if isinstance(model, SingleFirstActionModel) else model


def preserves_clear(model: AnyModel) -> Optional[bool]:
    """For a clear action model: its neighborhood representation is clear and
    represents it. For a clear SNM: the constructed action model is clear and is
    represented by it. None when the input is not clear."""
    if isinstance(model, SingleFirstNeighborhoodModel):
        if not is_clear_snm(model):
            return None
        sam = snm_to_sam(model)
        return is_clear_gam(sam_to_gam(sam)) and z_represents(model.neighborhood_model, sam.action_model)
    g = _as_gam(model)
    if not is_clear_gam(g):
        return None
    sam = gam_to_sam(g)
    snm = sam_to_snm(sam)
    return is_clear_snm(snm) and z_represents(snm.neighborhood_model, g.action_model)


def preserves_tree(model: AnyModel) -> Optional[bool]:
    """As :func:`preserves_clear`, for tree-likeness (with the same root)."""
    if isinstance(model, SingleFirstNeighborhoodModel):
        ok, root = is_treelike_snm(model)
        if not ok:
            return None
        sam = snm_to_sam(model)
        ok2, root2 = is_treelike_gam(sam_to_gam(sam))
        return ok2 and root2 == root and z_represents(model.neighborhood_model, sam.action_model)
    g = _as_gam(model)
    ok, root = is_treelike_gam(g)
    if not ok:
        return None
    snm = sam_to_snm(gam_to_sam(g))
    ok2, root2 = is_treelike_snm(snm)
    return ok2 and root2 == root and z_represents(snm.neighborhood_model, g.action_model)
