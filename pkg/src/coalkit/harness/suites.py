"""Named invariant suites run over generated model streams, and countermodel search."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Iterator, Optional

from ..action_semantics import ActionEvaluator, actual_effectivity
from ..core import (
    ActionModel,
    JointAction,
    NeighborhoodModel,
    is_cover,
    is_general_cover,
)
from ..errors import UnknownSuite
from ..formula import AxiomSchema, Formula, agents_of, modal_depth, parse, render
from ..gam import (
    GrandFirstActionModel,
    classify,
    disjoint_pairs,
    is_deterministic,
    is_independent,
    is_serial,
)
from ..modelfile import load_fixture, to_dict
from ..neighborhood import (
    NeighborhoodEvaluator,
    alpha_represents,
    from_effectivity,
    superset_closure,
    z_represents,
)
from ..represent import (
    lifting_claims_hold,
    preserves_clear,
    preserves_tree,
    sam_to_snm,
    snm_to_sam,
    unravel_paths,
)
from ..sam_snm import (
    SingleFirstActionModel,
    SingleFirstNeighborhoodModel,
    check_condition_set,
    classify_sam,
    classify_snm,
    gam_to_sam,
    sam_to_gam,
)
from ..structure import (
    clear_condition,
    clear_snm_condition,
    grand_only_clear_snm,
    grand_only_tree_snm,
    is_clear_gam,
    is_clear_snm,
    is_treelike_gam,
    is_treelike_snm,
    outcomes_are_general_partitions,
    tree_condition_gam,
    tree_condition_snm,
)
from .bank import formula_bank
from .generate import GenSpec, Model, generate

# ---------------------------------------------------------------------------
# Reports


@dataclass
class CheckResult:
    checked: int = 0
    failed: int = 0
    countermodel: Optional[dict] = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def merge(self, other: "CheckResult") -> "CheckResult":
        return CheckResult(
            self.checked + other.checked,
            self.failed + other.failed,
            self.countermodel if self.countermodel is not None else other.countermodel,
            self.seconds + other.seconds,
        )


@dataclass
class SuiteReport:
    suite: str
    checks: dict[str, CheckResult] = field(default_factory=dict)
    models: int = 0
    seconds: float = 0.0
    notes: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failures(self) -> list[str]:
        return [name for name, c in self.checks.items() if not c.passed]

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "models": self.models,
            "seconds": round(self.seconds, 3),
            "checks": {
                name: {
                    "passed": c.passed,
                    "checked": c.checked,
                    "failed": c.failed,
                    "seconds": round(c.seconds, 3),
                    **({"countermodel": c.countermodel} if c.countermodel is not None else {}),
                }
                for name, c in sorted(self.checks.items())
            },
            **({"notes": self.notes} if self.notes else {}),
        }

    def dump_countermodels(self, folder: str | Path) -> list[Path]:
        """Write every failing check's countermodel as a replayable model file."""
        folder = Path(folder)
        folder.mkdir(parents=True, exist_ok=True)
        written = []
        for name, c in sorted(self.checks.items()):
            if c.countermodel is not None:
                path = folder / f"{self.suite}-{name}.json"
                path.write_text(json.dumps(c.countermodel, indent=2, ensure_ascii=False) + "\n")
                written.append(path)
        return written


def countermodel_doc(model, state: Optional[int] = None, formula: Optional[Formula] = None) -> dict:
    doc = to_dict(model)
    doc["focus_state"] = model.carrier.states[state] if state is not None else None
    doc["formula"] = render(formula) if formula is not None else None
    return doc


class _Collector:
    """Per-model check outcomes; merged associatively into a report."""

    def __init__(self):
        self.results: dict[str, CheckResult] = {}
        self.notes: dict[str, int] = {}

    def check(self, name: str, ok: bool, model=None, state=None, formula=None) -> bool:
        r = self.results.setdefault(name, CheckResult())
        r.checked += 1
        if not ok:
            r.failed += 1
            if r.countermodel is None and model is not None:
                r.countermodel = countermodel_doc(model, state, formula)
        return ok

    def note(self, name: str, amount: int = 1) -> None:
        self.notes[name] = self.notes.get(name, 0) + amount

    def merge(self, other: "_Collector") -> None:
        for name, r in other.results.items():
            self.results[name] = self.results.get(name, CheckResult()).merge(r)
        for name, v in other.notes.items():
            self.note(name, v)


# ---------------------------------------------------------------------------
# Shared helpers


@lru_cache(maxsize=None)
def _bank(agents: tuple) -> tuple:
    return tuple(formula_bank(agents[:2]))


def bank_of(model) -> tuple:
    return _bank(tuple(model.carrier.agents))


def action_model_of(model) -> ActionModel:
    if isinstance(model, (GrandFirstActionModel, SingleFirstActionModel)):
        return model.action_model
    if isinstance(model, ActionModel):
        return model
    raise TypeError(f"{type(model).__name__} is not an action model")


def evaluator_for(model):
    if isinstance(model, SingleFirstNeighborhoodModel):
        return NeighborhoodEvaluator(model.neighborhood_model)
    if isinstance(model, NeighborhoodModel):
        return NeighborhoodEvaluator(model)
    return ActionEvaluator(action_model_of(model))


def signature_any(model):
    if isinstance(model, GrandFirstActionModel):
        return classify(model)
    if isinstance(model, SingleFirstActionModel):
        return classify_sam(model)
    return classify_snm(model)


def _truth_agree(col: _Collector, name: str, ev1, ev2, formulas, model) -> None:
    for e in formulas:
        t1, t2 = ev1.truth(e.formula), ev2.truth(e.formula)
        if t1 != t2:
            bad = (t1 ^ t2).bit_length() - 1
            col.check(name, False, model, bad, e.formula)
            return
    col.check(name, True)


# ---------------------------------------------------------------------------
# Per-model checks, one function per suite


def _semantics_equivalence(model, col: _Collector) -> None:
    bank = bank_of(model)
    if isinstance(model, SingleFirstNeighborhoodModel):
        sam = snm_to_sam(model)
        am = sam.action_model
        col.check("snm-represents-constructed", z_represents(model.neighborhood_model, am), model)
        _truth_agree(col, "snm-truth-agrees", ActionEvaluator(am), evaluator_for(model), bank, model)
        return
    am = action_model_of(model)
    nm = from_effectivity(actual_effectivity(am))
    col.check("z-representation", z_represents(nm, am), model)
    _truth_agree(col, "z-truth-agrees", ActionEvaluator(am), NeighborhoodEvaluator(nm), bank, model)
    alpha = superset_closure(nm)
    col.check("alpha-representation", alpha_represents(alpha, am), model)
    _truth_agree(
        col, "alpha-truth-agrees", NeighborhoodEvaluator(nm), NeighborhoodEvaluator(alpha), bank, model
    )


def gam_fact_violation(g: GrandFirstActionModel) -> Optional[tuple[str, int]]:
    """First violated covering or inclusion fact, as (fact, state)."""
    coalitions = g.carrier.coalitions
    for s in range(g.n):
        for c in coalitions:
            outs = [g.out(c, s, sig) for sig in g.joint_actions(c)]
            if not is_general_cover(outs, g.suc(s)):
                return "cover", s
        for c, d in disjoint_pairs(coalitions):
            for sc in g.joint_actions(c):
                for sd in g.joint_actions(d):
                    if not g.out(c | d, s, sc.union(sd)) <= g.out(c, s, sc) & g.out(d, s, sd):
                        return "disjoint-inclusion", s
        for c in coalitions:
            if len(c) < 2:
                continue
            for sig in g.joint_actions(c):
                meet = frozenset.intersection(*(g.out({a}, s, sig.restrict({a})) for a in c))
                if not g.out(c, s, sig) <= meet:
                    return "member-inclusion", s
    return None


def _gam_facts(model, col: _Collector) -> None:
    v = gam_fact_violation(model)
    for fact in ("cover", "disjoint-inclusion", "member-inclusion"):
        bad = v is not None and v[0] == fact
        col.check(fact, not bad, model, v[1] if bad else None)


def _sam_equivalence(model, col: _Collector) -> None:
    am = action_model_of(model)
    for s in range(am.carrier.n):
        verdicts = [check_condition_set(am, s, k) for k in (1, 2, 3)]
        col.check("conditions-agree", len(set(verdicts)) == 1, model, s)
        if verdicts[0]:
            col.note("states-satisfying")
    if isinstance(model, SingleFirstActionModel):
        col.check(
            "sam-satisfies-conditions",
            all(check_condition_set(am, s, 1) for s in range(am.carrier.n)),
            model,
        )
        g = sam_to_gam(model)
        col.check("embeds-as-gam", g.action_model == am, model)
    if isinstance(model, GrandFirstActionModel):
        ok = all(check_condition_set(am, s, 1) for s in range(model.n))
        if ok:
            col.check("gam-roundtrip", sam_to_gam(gam_to_sam(model)) == model, model)
        else:
            col.note("gam-not-sam")


def _snm_cover(model, col: _Collector) -> None:
    if isinstance(model, SingleFirstActionModel):
        for s in range(model.n):
            for a in model.carrier.agents:
                outs = [model.out_agent(a, s, x) for x in model.actions]
                col.check("sam-agent-general-cover", is_general_cover(outs, model.suc(s)), model, s)
        return
    for s in range(model.n):
        ok = all(is_cover(model.nei(c, s), model.suc(s)) for c in model.carrier.coalitions)
        col.check("derived-cover", ok, model, s)


def _representation_roundtrip(model, col: _Collector) -> None:
    if isinstance(model, GrandFirstActionModel):
        if not all(check_condition_set(model.action_model, s, 1) for s in range(model.n)):
            return
        model = gam_to_sam(model)
    if isinstance(model, SingleFirstActionModel):
        snm = sam_to_snm(model)
        col.check("sam-to-snm-represents", z_represents(snm.neighborhood_model, model.action_model), model)
        col.check("sam-to-snm-signature", classify_snm(snm) == classify_sam(model), model)
        back = snm_to_sam(snm)
        col.check("back-again-represents", z_represents(snm.neighborhood_model, back.action_model), model)
    else:
        sam = snm_to_sam(model)
        col.check("snm-to-sam-represents", z_represents(model.neighborhood_model, sam.action_model), model)
        col.check("snm-to-sam-signature", classify_sam(sam) == classify_snm(model), model)
        col.check("snm-roundtrip", sam_to_snm(sam) == model, model)


def _x_iff_x(model, col: _Collector) -> None:
    if isinstance(model, SingleFirstActionModel):
        g = sam_to_gam(model)
        sig = classify(g)
        snm = sam_to_snm(model)
        col.check("sam-vs-snm", classify_snm(snm) == sig, model)
        for letter, pred in (("S", is_serial), ("I", is_independent), ("D", is_deterministic)):
            col.check(f"letter-{letter}", sig.has(letter) == pred(g), model)
    elif isinstance(model, SingleFirstNeighborhoodModel):
        col.check("snm-vs-sam", classify_sam(snm_to_sam(model)) == classify_snm(model), model)
    else:
        sig = classify(model)
        if all(check_condition_set(model.action_model, s, 1) for s in range(model.n)):
            snm = sam_to_snm(gam_to_sam(model))
            col.check("gam-vs-snm", classify_snm(snm) == sig, model)


def _clear_equivalences(model, col: _Collector) -> None:
    if isinstance(model, GrandFirstActionModel):
        verdicts = [clear_condition(model, k) for k in (1, 2, 3)]
        col.check("gam-conditions-agree", len(set(verdicts)) == 1, model)
        col.check("gam-definition-agrees", verdicts[0] == is_clear_gam(model), model)
        if verdicts[0]:
            col.note("clear-gams")
            col.check("clear-gives-general-partitions", outcomes_are_general_partitions(model), model)
    else:
        if isinstance(model, SingleFirstActionModel):
            model = sam_to_snm(model)
        v1, v2 = clear_snm_condition(model, 1), clear_snm_condition(model, 2)
        col.check("snm-conditions-agree", v1 == v2, model)
        if v1:
            col.note("clear-snms")
            col.check("snm-grand-only-implied", grand_only_clear_snm(model), model)
        elif grand_only_clear_snm(model):
            col.note("grand-only-strictly-weaker")


def _clear_representation(model, col: _Collector) -> None:
    verdict = preserves_clear(model)
    if verdict is None:
        return
    col.note("clear-inputs")
    col.check("clear-preserved", verdict, model)
    if isinstance(model, GrandFirstActionModel):
        ok = all(check_condition_set(model.action_model, s, 1) for s in range(model.n))
        col.check("clear-gam-is-sam", ok, model)


def _tree_equivalences(model, col: _Collector) -> None:
    if isinstance(model, GrandFirstActionModel):
        roots = [tree_condition_gam(model, k) for k in (1, 2, 3)]
        col.check("gam-conditions-agree", len(set(roots)) == 1, model)
        by_hist = [tree_condition_gam(model, k, by_histories=True) for k in (1, 2, 3)]
        col.check("gam-history-count-agrees", by_hist == roots, model)
        if roots[0] is not None:
            col.note("tree-gams")
    else:
        if isinstance(model, SingleFirstActionModel):
            model = sam_to_snm(model)
        roots = [tree_condition_snm(model, k) for k in (1, 2)]
        col.check("snm-conditions-agree", roots[0] == roots[1], model)
        by_hist = [tree_condition_snm(model, k, by_histories=True) for k in (1, 2)]
        col.check("snm-history-count-agrees", by_hist == roots, model)
        if roots[0] is not None:
            col.note("tree-snms")
            col.check("snm-grand-only-implied", grand_only_tree_snm(model) == roots[0], model)
        elif grand_only_tree_snm(model) is not None:
            col.note("grand-only-strictly-weaker")


def _tree_implies_clear(model, col: _Collector) -> None:
    if isinstance(model, SingleFirstActionModel):
        model = sam_to_gam(model)
    if isinstance(model, GrandFirstActionModel):
        tree, _ = is_treelike_gam(model)
        if tree:
            col.note("tree-inputs")
            col.check("tree-gam-is-clear", is_clear_gam(model), model)
        elif is_clear_gam(model):
            col.note("clear-not-tree")
    else:
        tree, _ = is_treelike_snm(model)
        if tree:
            col.note("tree-inputs")
            col.check("tree-snm-is-clear", is_clear_snm(model), model)
        elif is_clear_snm(model):
            col.note("clear-not-tree")


def _by_depth(bank) -> dict[int, list]:
    groups: dict[int, list] = {}
    for e in bank:
        groups.setdefault(modal_depth(e.formula), []).append(e.formula)
    return groups


def check_unraveling(g: GrandFirstActionModel, s: int, depth: int, formulas, col: _Collector) -> None:
    """Root of the depth-``depth`` unraveling agrees with ``s`` on ``formulas``."""
    u = unravel_paths(g, s, depth)
    h = u.model
    col.check("tree-like", is_treelike_gam(h) == (True, 0), g, s)
    col.check("lifting", lifting_claims_hold(g, u), g, s)
    sig = classify(g)
    interior = classify(h, u.interior)
    col.check("interior-signature", interior.includes(sig), g, s)
    ev_g, ev_h = ActionEvaluator(g.action_model), ActionEvaluator(h.action_model)
    for f in formulas:
        if ev_g.holds(s, f) != ev_h.holds(0, f):
            col.check("root-truth", False, g, s, f)
            return
    col.check("root-truth", True)


def _unravel_equivalence(model, col: _Collector) -> None:
    if isinstance(model, SingleFirstActionModel):
        model = sam_to_gam(model)
    if not isinstance(model, GrandFirstActionModel):
        return
    groups = _by_depth(bank_of(model))
    for s in range(model.n):
        for depth, formulas in sorted(groups.items()):
            check_unraveling(model, s, depth, formulas, col)


def axiom_validity(g: GrandFirstActionModel) -> dict[AxiomSchema, bool]:
    """Per schema, whether every bank instance of it is valid on ``g``."""
    ev = ActionEvaluator(g.action_model)
    out = {schema: True for schema in AxiomSchema}
    for e in bank_of(g):
        if out[e.schema] and not ev.valid(e.formula):
            out[e.schema] = False
    return out


_LETTER_SCHEMA = {"S": AxiomSchema.SER, "I": AxiomSchema.IA, "D": AxiomSchema.DET}


def _axiom_validity(model, col: _Collector) -> None:
    if isinstance(model, SingleFirstActionModel):
        model = sam_to_gam(model)
    if not isinstance(model, GrandFirstActionModel):
        return
    valid = axiom_validity(model)
    sig = classify(model)
    for schema in (AxiomSchema.NAAA, AxiomSchema.MG, AxiomSchema.MC):
        col.check(f"{schema.name.lower()}-valid", valid[schema], model)
    for letter, schema in _LETTER_SCHEMA.items():
        if sig.has(letter):
            col.check(f"{schema.name.lower()}-sound", valid[schema], model)
        elif valid[schema]:
            # the bank failed to refute the axiom on a model lacking the letter
            col.note(f"{schema.name.lower()}-unrefuted")
        else:
            col.note(f"{schema.name.lower()}-refuted")
    col.check("ser-exact", valid[AxiomSchema.SER] == sig.has("S"), model)


def pointed_chain(g: GrandFirstActionModel, s: int, depth: int = 2) -> dict[str, tuple]:
    """The seven corresponding pointed models for ``(g, s)``.

    The depth-bounded unraveling is tree-like and clear; its single-coalition-first
    and neighborhood versions come from the constructive maps.
    """
    u = unravel_paths(g, s, depth)
    h = u.model
    sam = gam_to_sam(h)
    snm = sam_to_snm(sam)
    chain = {"gam": (g, s), "tree-gam": (h, 0), "clear-gam": (h, 0), "sam": (sam, 0),
             "snm": (snm, 0), "clear-snm": (snm, 0), "tree-snm": (snm, 0)}
    if is_clear_gam(g):
        chain["clear-gam"] = (g, s)
        if all(check_condition_set(g.action_model, t, 1) for t in range(g.n)):
            direct = gam_to_sam(g)
            chain["sam"] = (direct, s)
            chain["clear-snm"] = (sam_to_snm(direct), s)
    return chain


def _final_determination(model, col: _Collector) -> None:
    if isinstance(model, SingleFirstNeighborhoodModel):
        sam = snm_to_sam(model)
        g = sam_to_gam(sam)
        col.check("snm-signature-transfers", classify(g) == classify_snm(model), model)
        ev_n, ev_a = evaluator_for(model), ActionEvaluator(g.action_model)
        ok = all(ev_n.truth(e.formula) == ev_a.truth(e.formula) for e in bank_of(model))
        col.check("snm-gam-truth", ok, model)
        model = g
    if isinstance(model, SingleFirstActionModel):
        model = sam_to_gam(model)
    g = model
    sig = classify(g)
    bank = bank_of(g)
    for s in range(g.n):
        chain = pointed_chain(g, s)
        tree_model = chain["tree-gam"][0]
        interior = unravel_paths(g, s, 2).interior
        col.check("tree-is-tree", is_treelike_gam(tree_model)[0], g, s)
        col.check("tree-is-clear", is_clear_gam(tree_model), g, s)
        snm = chain["tree-snm"][0]
        col.check("snm-tree", is_treelike_snm(snm) == (True, 0), g, s)
        col.check("snm-interior-signature", classify_snm(snm, interior).includes(sig), g, s)
        evs = {k: (evaluator_for(m), p) for k, (m, p) in chain.items()}
        agree = True
        for e in bank:
            truths = {ev.holds(p, e.formula) for ev, p in evs.values()}
            if len(truths) != 1:
                col.check("seven-way-truth", False, g, s, e.formula)
                agree = False
                break
        if agree:
            col.check("seven-way-truth", True)


# ---------------------------------------------------------------------------
# Suite registry


@dataclass(frozen=True)
class Suite:
    name: str
    check: Callable[[object, _Collector], None]
    kinds: tuple[str, ...]
    random_defaults: tuple[GenSpec, ...]
    exhaustive_defaults: tuple[GenSpec, ...]
    global_checks: Optional[Callable[[_Collector], None]] = None


def _rand(kind: str, count: int, n: int = 4, k: int = 2, m: int = 2) -> GenSpec:
    return GenSpec(kind=kind, n_states=n, n_agents=k, n_actions=m, count=count)


def _exh(kind: str, n: int, k: int, m: int, min_states: int = 1) -> GenSpec:
    return GenSpec(kind=kind, n_states=n, n_agents=k, n_actions=m, mode="exhaustive",
                   min_states=min_states)


# Exhaustive coverage: every GAM up to (2 states, 2 agents, 2 actions) plus
# every 3-state single-agent single-action GAM; every SAM and SNM up to
# (2, 2, 2). Larger spaces are sampled.
_EXH_GAM = (_exh("gam", 2, 2, 2), _exh("gam", 3, 1, 1, min_states=3))
_EXH_SAM = (_exh("sam", 2, 2, 2),)
_EXH_SNM = (_exh("snm", 2, 2, 2),)


def _fixtures(*names):
    return [load_fixture(n) for n in names]


def _gam_fact_globals(col: _Collector) -> None:
    m1 = load_fixture("m1")
    a1 = JointAction.of({"a": "a1"})
    b1 = JointAction.of({"b": "b1"})
    ab = JointAction.of({"a": "a1", "b": "b1"})
    s0 = 0
    meet = m1.out({"a"}, s0, a1) & m1.out({"b"}, s0, b1)
    whole = m1.out({"a", "b"}, s0, ab)
    col.check("m1-converse-fails", whole < meet and not whole >= meet, m1, s0)
    col.check("m1-not-sam", not check_condition_set(m1.action_model, s0, 1), m1, s0)
    g1, g2 = load_fixture("m1"), load_fixture("gam2")
    same_single = all(
        g1.outcome_table({a}) == g2.outcome_table({a}) for a in g1.carrier.agents
    )
    grand = frozenset(g1.carrier.agents)
    col.check(
        "single-agent-tables-do-not-determine-grand",
        same_single and g1.outcome_table(grand) != g2.outcome_table(grand),
        g2,
    )
    for name in ("m1", "gam2", "lock", "proc", "u1", "tree_gam"):
        g = load_fixture(name)
        col.check("fixture-facts", gam_fact_violation(g) is None, g)


def _clear_globals(col: _Collector) -> None:
    n1 = load_fixture("n1")
    col.check("n1-grand-partition-only", grand_only_clear_snm(n1) and not is_clear_snm(n1), n1)
    col.check("n1-conditions", not clear_snm_condition(n1, 1) and not clear_snm_condition(n1, 2), n1)
    u1 = load_fixture("u1")
    col.check("u1-partitions-not-clear", outcomes_are_general_partitions(u1) and not is_clear_gam(u1), u1)


def _tree_globals(col: _Collector) -> None:
    n1 = load_fixture("n1")
    col.check(
        "n1-grand-tree-only",
        grand_only_tree_snm(n1) is not None and tree_condition_snm(n1, 1) is None,
        n1,
    )
    for name in ("tree_gam", "tree_snm"):
        m = load_fixture(name)
        ok = is_treelike_gam(m)[0] if isinstance(m, GrandFirstActionModel) else is_treelike_snm(m)[0]
        col.check("tree-fixtures", ok, m)


def _tree_clear_globals(col: _Collector) -> None:
    for name in ("tree_gam", "tree_snm"):
        m = load_fixture(name)
        clear = is_clear_gam(m) if isinstance(m, GrandFirstActionModel) else is_clear_snm(m)
        col.check("tree-fixture-clear", clear, m)
    for name in ("lock", "lock_snm"):
        m = load_fixture(name)
        if isinstance(m, GrandFirstActionModel):
            ok = is_clear_gam(m) and not is_treelike_gam(m)[0]
        else:
            ok = is_clear_snm(m) and not is_treelike_snm(m)[0]
        col.check("clear-not-tree-witness", ok, m)


def _representation_globals(col: _Collector) -> None:
    for name in ("lock", "proc", "tree_gam", "lock_snm", "tree_snm", "n1"):
        m = load_fixture(name)
        col.check("fixture-clear-preserved", preserves_clear(m) in (True, None), m)
        col.check("fixture-tree-preserved", preserves_tree(m) in (True, None), m)


_SUITES: dict[str, Suite] = {}


def _register(suite: Suite) -> None:
    _SUITES[suite.name] = suite


_register(Suite(
    "semantics-equivalence", _semantics_equivalence, ("gam", "sam", "snm", "action"),
    (_rand("gam", 150), _rand("sam", 150), _rand("snm", 150), _rand("action", 40, n=3)),
    _EXH_SAM + _EXH_SNM,
))
_register(Suite(
    "gam-facts", _gam_facts, ("gam",), (_rand("gam", 500),), _EXH_GAM, _gam_fact_globals,
))
_register(Suite(
    "sam-equivalence", _sam_equivalence, ("gam", "sam", "action"),
    (_rand("gam", 300), _rand("sam", 300), _rand("action", 100, n=3)),
    _EXH_SAM,
))
_register(Suite(
    "snm-cover", _snm_cover, ("sam", "snm"), (_rand("sam", 300), _rand("snm", 500)),
    _EXH_SAM + _EXH_SNM,
))
_register(Suite(
    "representation-roundtrip", _representation_roundtrip, ("gam", "sam", "snm"),
    (_rand("sam", 500), _rand("snm", 500)), _EXH_SAM + _EXH_SNM, _representation_globals,
))
_register(Suite(
    "x-iff-x", _x_iff_x, ("gam", "sam", "snm"), (_rand("gam", 300), _rand("sam", 300), _rand("snm", 300)),
    _EXH_SAM + _EXH_SNM,
))
_register(Suite(
    "clear-equivalences", _clear_equivalences, ("gam", "sam", "snm"),
    (_rand("gam", 500), _rand("snm", 500)), _EXH_GAM + _EXH_SNM, _clear_globals,
))
_register(Suite(
    "clear-representation", _clear_representation, ("gam", "sam", "snm"),
    (_rand("gam", 500), _rand("sam", 300), _rand("snm", 500)), _EXH_SAM + _EXH_SNM,
    _representation_globals,
))
_register(Suite(
    "tree-equivalences", _tree_equivalences, ("gam", "sam", "snm"),
    (_rand("gam", 500), _rand("snm", 500)), _EXH_GAM + _EXH_SNM, _tree_globals,
))
_register(Suite(
    "tree-implies-clear", _tree_implies_clear, ("gam", "sam", "snm"),
    (_rand("gam", 500), _rand("snm", 500)), _EXH_GAM + _EXH_SNM, _tree_clear_globals,
))
_register(Suite(
    "unravel-equivalence", _unravel_equivalence, ("gam", "sam"), (_rand("gam", 100),),
    (_exh("gam", 2, 1, 2),),
))
_register(Suite(
    "axiom-validity", _axiom_validity, ("gam", "sam"), (_rand("gam", 300),),
    (_exh("gam", 2, 1, 2),),
))
_register(Suite(
    "final-determination", _final_determination, ("gam", "sam", "snm"),
    (_rand("gam", 60), _rand("snm", 60)), (_exh("gam", 2, 1, 1), _exh("snm", 2, 1, 1)),
))

SUITE_NAMES = tuple(_SUITES)


def _row_sweep(col: _Collector) -> None:
    """Every outcome row up to (3 states, 2 agents, 2 actions), vectorized."""
    from .vectorized import sweep

    t = time.perf_counter()
    report = sweep()
    r = col.results.setdefault("row-sweep-agrees", CheckResult())
    r.checked += report.rows
    r.seconds += time.perf_counter() - t
    if not report.agree:
        r.failed += sum(x.disagreements for x in report.sizes)
    c = col.results.setdefault("row-sweep-count", CheckResult())
    c.checked += 1
    if not report.counts_match:
        c.failed += 1
    col.note("rows-swept", report.rows)


def get_suite(name: str) -> Suite:
    try:
        return _SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}") from None


def _specs_for(suite: Suite, spec: Optional[GenSpec], exhaustive: bool) -> list[GenSpec]:
    if spec is None:
        return list(suite.exhaustive_defaults if exhaustive else suite.random_defaults)
    if spec.kind in suite.kinds:
        return [spec]
    return [replace(spec, kind=k) for k in suite.kinds if k in ("gam", "sam", "snm", "action")]


def _check_batch(args) -> _Collector:
    name, models = args
    suite = _SUITES[name]
    col = _Collector()
    for m in models:
        suite.check(m, col)
    return col


def _batches(models: Iterable, size: int) -> Iterator[list]:
    batch = []
    for m in models:
        batch.append(m)
        if len(batch) == size:
            yield batch
            batch = []
    if batch:
        yield batch


def run_suite(
    name: str,
    spec: Optional[GenSpec] = None,
    *,
    exhaustive: bool = False,
    workers: int = 1,
    models: Optional[Iterable] = None,
) -> SuiteReport:
    """Run suite ``name`` over a model stream.

    The stream is ``models`` if given, else generated from ``spec``, else the
    suite's default specs (random or exhaustive). Per-model results are pure and
    merged associatively, so ``workers > 1`` farms batches out to processes
    without changing the report.
    """
    suite = get_suite(name)
    start = time.perf_counter()
    col = _Collector()
    if suite.global_checks is not None:
        suite.global_checks(col)
    if exhaustive and spec is None and models is None and name == "sam-equivalence":
        _row_sweep(col)
    if models is None:
        streams = [generate(sp) for sp in _specs_for(suite, spec, exhaustive)]
        models = (m for stream in streams for m in stream)
    count = 0

    def counted(it):
        nonlocal count
        for m in it:
            count += 1
            yield m

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            jobs = ((name, b) for b in _batches(counted(models), 200))
            for part in pool.map(_check_batch, jobs):
                col.merge(part)
    else:
        for m in counted(models):
            suite.check(m, col)
    report = SuiteReport(name, col.results, count, time.perf_counter() - start, dict(col.notes))
    return report


# ---------------------------------------------------------------------------
# Countermodel search


def find_countermodel(f: Formula | str, spec: GenSpec) -> Optional[tuple[Model, int]]:
    """First generated pointed model falsifying ``f``; models lacking an agent
    that ``f`` names are skipped."""
    if isinstance(f, str):
        f = parse(f)
    needed = agents_of(f)
    for model in generate(spec):
        if not needed <= set(model.carrier.agents):
            continue
        ev = evaluator_for(model)
        for s in range(model.carrier.n):
            if not ev.holds(s, f):
                return model, s
    return None
