"""Truth of formulas over action models, and the two effectivity functions."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import ActionModel, Carrier, Coalition, Family, fmt_family
from .errors import TooLarge, UnknownAgent
from .formula import And, Atom, CoalitionBox, Formula, Not, Top, _Grand

MAX_CLOSURE_STATES = 12


def _mask(ys: Iterable[int]) -> int:
    m = 0
    for t in ys:
        m |= 1 << t
    return m


class BoxEvaluator:
    """Memoizing evaluator shared by both semantics.

    Subclasses supply, for a coalition and a state, the list of candidate sets
    (as bitmasks): ``[C]phi`` holds iff one candidate lies inside the truth set
    of ``phi``.
    """

    def __init__(self, carrier: Carrier):
        self.carrier = carrier
        self.n = carrier.n
        self.full = (1 << self.n) - 1
        self._truth: dict[Formula, int] = {}
        self._point: dict[tuple[int, Formula], bool] = {}
        self._options: dict[Coalition, list[list[int]]] = {}
        self._lazy_options: dict[tuple[Coalition, int], list[int]] = {}

    def options(self, c: Coalition) -> list[list[int]]:
        opts = self._options.get(c)
        if opts is None:
            opts = self._options[c] = [self._build_options(c, s) for s in range(self.n)]
        return opts

    def _build_options(self, c: Coalition, s: int) -> list[int]:  # pragma: no cover
        raise NotImplementedError

    def _coalition(self, f: CoalitionBox) -> Coalition:
        c = f.coalition
        if isinstance(c, _Grand):
            return frozenset(self.carrier.agents)
        unknown = c - set(self.carrier.agents)
        if unknown:
            raise UnknownAgent(", ".join(sorted(unknown)))
        return c

    def truth(self, f: Formula) -> int:
        """Bitmask of the states where ``f`` holds."""
        m = self._truth.get(f)
        if m is not None:
            return m
        if isinstance(f, Top):
            m = self.full
        elif isinstance(f, Atom):
            m = _mask(s for s, lab in enumerate(self.carrier.labeling) if f.name in lab)
        elif isinstance(f, Not):
            m = self.full & ~self.truth(f.sub)
        elif isinstance(f, And):
            m = self.truth(f.left) & self.truth(f.right)
        elif isinstance(f, CoalitionBox):
            sub = self.truth(f.sub)
            bad = ~sub
            m = 0
            for s, cands in enumerate(self.options(self._coalition(f))):
                if any(not (y & bad) for y in cands):
                    m |= 1 << s
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._truth[f] = m
        return m

    def holds(self, s: int, f: Formula) -> bool:
        """Pointwise evaluation; only touches states reachable as needed."""
        if f in self._truth:
            return bool(self._truth[f] >> s & 1)
        key = (s, f)
        v = self._point.get(key)
        if v is not None:
            return v
        if isinstance(f, Top):
            v = True
        elif isinstance(f, Atom):
            v = f.name in self.carrier.labeling[s]
        elif isinstance(f, Not):
            v = not self.holds(s, f.sub)
        elif isinstance(f, And):
            v = self.holds(s, f.left) and self.holds(s, f.right)
        elif isinstance(f, CoalitionBox):
            cands = self._build_options_cached(self._coalition(f), s)
            sub = f.sub
            v = any(
                all(self.holds(t, sub) for t in _bits(y)) for y in cands
            )
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._point[key] = v
        return v

    def _build_options_cached(self, c: Coalition, s: int) -> list[int]:
        opts = self._options.get(c)
        if opts is not None:
            return opts[s]
        key = (c, s)
        if key not in self._lazy_options:
            self._lazy_options[key] = self._build_options(c, s)
        return self._lazy_options[key]

    def valid(self, f: Formula) -> bool:
        return self.truth(f) == self.full

    def states_where(self, f: Formula) -> list[int]:
        m = self.truth(f)
        return [s for s in range(self.n) if m >> s & 1]


def _bits(m: int):
    t = 0
    while m:
        if m & 1:
            yield t
        m >>= 1
        t += 1


class ActionEvaluator(BoxEvaluator):
    """Action semantics: ``[C]phi`` at ``s`` iff some available joint action of C
    has all of its outcome states satisfying ``phi``."""

    def __init__(self, model: ActionModel):
        super().__init__(model.carrier)
        self.model = model

    def _build_options(self, c: Coalition, s: int) -> list[int]:
        m = self.model
        avail = m.av(c, s)
        return [_mask(m.out(c, s, sigma)) for sigma in avail]


def eval_action(m: ActionModel, s: int | str, f: Formula) -> bool:
    return ActionEvaluator(m).holds(m.carrier.index(s), f)


# ---------------------------------------------------------------------------
# Effectivity


class Flavor(enum.Enum):
    ACTUAL = "actual"
    ALPHA = "alpha"


@dataclass(frozen=True, eq=False)
class EffectivityTable:
    carrier: Carrier
    flavor: Flavor
    table: Mapping[Coalition, tuple]

    def get(self, c: Iterable[str], s: int) -> Family:
        rows = self.table.get(frozenset(c))
        return frozenset() if rows is None else rows[s]

    def __eq__(self, other):
        if not isinstance(other, EffectivityTable):
            return NotImplemented
        return (
            self.carrier == other.carrier
            and self.flavor == other.flavor
            and all(
                self.get(c, s) == other.get(c, s)
                for c in self.carrier.coalitions
                for s in range(self.carrier.n)
            )
        )

    __hash__ = None

    def describe(self, c: Iterable[str], s: int) -> str:
        return fmt_family(self.get(c, s), self.carrier.states)


def actual_effectivity(m: ActionModel) -> EffectivityTable:
    """AE_C(s): the distinct outcome sets of C's available joint actions."""
    table = {
        c: tuple(
            frozenset(m.out(c, s, sigma) for sigma in m.av(c, s)) for s in range(m.carrier.n)
        )
        for c in m.carrier.coalitions
    }
    return EffectivityTable(m.carrier, Flavor.ACTUAL, table)


def close_family(family: Iterable[frozenset], n: int) -> frozenset:
    """All subsets of ``range(n)`` including some member of ``family``."""
    if n > MAX_CLOSURE_STATES:
        raise TooLarge(f"superset closure over {n} states exceeds {MAX_CLOSURE_STATES}")
    full = (1 << n) - 1
    out: set[int] = set()
    for y in family:
        base = _mask(y)
        free = full & ~base
        sub = free
        while True:
            out.add(base | sub)
            if sub == 0:
                break
            sub = (sub - 1) & free
    return frozenset(frozenset(_bits(m)) for m in out)


def alpha_effectivity(m: ActionModel) -> EffectivityTable:
    """LE_C(s): every Y containing the outcome of some available joint action of C."""
    n = m.carrier.n
    if n > MAX_CLOSURE_STATES:
        raise TooLarge(f"alpha effectivity over {n} states exceeds {MAX_CLOSURE_STATES}")
    everything = [frozenset(_bits(y)) for y in range(1 << n)]
    table = {}
    for c in m.carrier.coalitions:
        rows = []
        for s in range(n):
            outs = [m.out(c, s, sigma) for sigma in m.av(c, s)]
            rows.append(frozenset(y for y in everything if any(o <= y for o in outs)))
        table[c] = tuple(rows)
    return EffectivityTable(m.carrier, Flavor.ALPHA, table)


def box_via_table(table: EffectivityTable, truth_mask: int, c: Iterable[str], s: int) -> bool:
    """``[C]phi`` read off an effectivity table, given the truth set of ``phi``."""
    return any(_mask(y) & ~truth_mask == 0 for y in table.get(c, s))

