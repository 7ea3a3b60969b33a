"""Brute-force reference implementations, written from the definitions.

Nothing here reuses the package's evaluators, derived tables or predicates;
only the raw model data (outcome_grand, outcome_agent, neighborhood_agent,
explicit av/out tables) is read.
"""

from __future__ import annotations

import itertools
from math import comb

from coalkit.core import JointAction
from coalkit.formula import And, Atom, Not, Top, _Grand


def subsets(items):
    items = sorted(items)
    for r in range(len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield frozenset(combo)


def all_coalitions(agents):
    return list(subsets(agents))


def joint_actions(c, actions):
    members = sorted(c)
    return [JointAction(tuple(zip(members, pick))) for pick in itertools.product(actions, repeat=len(members))]


# ---------------------------------------------------------------------------
# Evaluation straight from the truth clauses


def _resolve(c, agents):
    return frozenset(agents) if isinstance(c, _Grand) else frozenset(c)


def holds_action(am, s, f) -> bool:
    """[C]phi: some available joint action all of whose outcomes satisfy phi."""
    if isinstance(f, Top):
        return True
    if isinstance(f, Atom):
        return f.name in am.carrier.labeling[s]
    if isinstance(f, Not):
        return not holds_action(am, s, f.sub)
    if isinstance(f, And):
        return holds_action(am, s, f.left) and holds_action(am, s, f.right)
    c = _resolve(f.coalition, am.carrier.agents)
    return any(
        all(holds_action(am, t, f.sub) for t in am.out(c, s, sigma)) for sigma in am.av(c, s)
    )


def holds_neighborhood(nm, s, f) -> bool:
    if isinstance(f, Top):
        return True
    if isinstance(f, Atom):
        return f.name in nm.carrier.labeling[s]
    if isinstance(f, Not):
        return not holds_neighborhood(nm, s, f.sub)
    if isinstance(f, And):
        return holds_neighborhood(nm, s, f.left) and holds_neighborhood(nm, s, f.right)
    c = _resolve(f.coalition, nm.carrier.agents)
    return any(all(holds_neighborhood(nm, t, f.sub) for t in y) for y in nm.nei(c, s))


# ---------------------------------------------------------------------------
# Grand-coalition-first models from the raw profile table


def gam_out(g, c, s, sigma) -> frozenset:
    acc = set()
    for prof, ys in g.outcome_grand[s].items():
        if all(prof[a] == sigma[a] for a in c):
            acc |= ys
    return frozenset(acc)


def gam_suc(g, s) -> frozenset:
    return frozenset().union(*g.outcome_grand[s].values()) if g.outcome_grand[s] else frozenset()


def gam_av(g, c, s) -> set:
    return {sig for sig in joint_actions(c, g.actions) if gam_out(g, c, s, sig)}


def gam_serial(g) -> bool:
    return all(gam_av(g, c, s) for c in all_coalitions(g.carrier.agents) for s in range(g.n))


def gam_independent(g) -> bool:
    cs = all_coalitions(g.carrier.agents)
    for s in range(g.n):
        for c in cs:
            for d in cs:
                if c & d:
                    continue
                for sc in gam_av(g, c, s):
                    for sd in gam_av(g, d, s):
                        if not gam_out(g, c | d, s, sc.union(sd)):
                            return False
    return True


def gam_deterministic(g) -> bool:
    return all(len(ys) <= 1 for row in g.outcome_grand for ys in row.values())


def gam_letters(g) -> str:
    return "".join(
        letter
        for letter, ok in (("S", gam_serial(g)), ("I", gam_independent(g)), ("D", gam_deterministic(g)))
        if ok
    )


def gam_clear(g) -> bool:
    for row in g.outcome_grand:
        outs = [ys for ys in row.values() if ys]
        for x, y in itertools.combinations(outs, 2):
            if x & y:
                return False
    return True


# ---------------------------------------------------------------------------
# Single-coalition-first models from per-agent data


def sam_out(m, c, s, sigma) -> frozenset:
    if not c:
        return m.successor[s]
    parts = [m.outcome_agent[a][s].get(sigma[a], frozenset()) for a in c]
    return frozenset.intersection(*parts)


def snm_nei(m, c, s) -> frozenset:
    suc = m.successor[s]
    if not suc:
        return frozenset()
    if not c:
        return frozenset([suc])
    fams = [sorted(m.neighborhood_agent[a][s], key=sorted) for a in sorted(c)]
    found = set()
    for pick in itertools.product(*fams):
        meet = frozenset.intersection(*pick)
        if meet:
            found.add(meet)
    return frozenset(found)


def snm_clear(m) -> bool:
    for a in m.carrier.agents:
        for s in range(m.n):
            if not is_partition(m.neighborhood_agent[a][s], m.successor[s]):
                return False
    return True


# ---------------------------------------------------------------------------
# Families


def effectivity(am, c, s) -> frozenset:
    return frozenset(am.out(c, s, sig) for sig in am.av(c, s))


def superset_closure(family, n) -> frozenset:
    return frozenset(y for y in subsets(range(n)) if any(x <= y for x in family))


def is_partition(family, ground) -> bool:
    family = set(family)
    if any(not y for y in family):
        return False
    return is_general_partition(family, ground)


def is_general_partition(family, ground) -> bool:
    family = set(family)
    if (frozenset().union(*family) if family else frozenset()) != ground:
        return False
    return all(not (x & y) for x, y in itertools.combinations(family, 2))


# ---------------------------------------------------------------------------
# Histories by explicit enumeration


def histories_from(edges, start, max_len):
    """All histories (as tuples) of at most ``max_len`` steps; ``edges(s)`` yields (label, t)."""
    out = [((start,), ())]
    frontier = [((start,), ())]
    for _ in range(max_len):
        nxt = []
        for states, labels in frontier:
            for lab, t in edges(states[-1]):
                nxt.append((states + (t,), labels + (lab,)))
        out += nxt
        frontier = nxt
    return out


def tree_root(n, edges):
    """The unique state from which every state has exactly one history, if any.

    Lengths up to n + 1 suffice: a second history to some state forces either a
    revisit (giving two histories within n + 1 steps) or two distinct short ones.
    """
    for r in range(n):
        ends = [h[0][-1] for h in histories_from(edges, r, n + 1)]
        if all(ends.count(t) == 1 for t in range(n)):
            return r
    return None


def gam_edges(g, c):
    def edges(s):
        return [(sig, t) for sig in sorted(gam_av(g, c, s)) for t in sorted(gam_out(g, c, s, sig))]

    return edges


def snm_edges(m, c):
    def edges(s):
        return [(y, t) for y in snm_nei(m, c, s) for t in sorted(y)]

    return edges


# ---------------------------------------------------------------------------
# Closed-form counts


# Families of nonempty subsets of a j-set covering it: 1, 1, 5, 109, 32297.
COVERS = (1, 1, 5, 109, 32297)


def count_gams(n, k, m) -> int:
    return (2**n) ** (n * m**k)


def count_sams(n, k, m) -> int:
    return sum(comb(n, j) * (2**m - 1) ** (j * k) for j in range(n + 1)) ** n


def count_snms(n, k) -> int:
    return sum(comb(n, j) * COVERS[j] ** k for j in range(n + 1)) ** n


def count_condition_rows(n, k, m) -> int:
    """Outcome rows meeting condition set 1: independent per target state."""
    return (1 + (2**m - 1) ** k) ** n
