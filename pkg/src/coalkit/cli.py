"""Command-line front end: ``coalkit <subcommand> ...``.

JSON (or a model file) goes to stdout, diagnostics to stderr. Exit codes: 0 ok,
1 a negative answer (false / not represented / suite failed), 2 malformed input,
3 size bounds exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

from .action_semantics import actual_effectivity
from .core import ActionModel, NeighborhoodModel
from .errors import BoundsExceeded, CoalkitError, TooLarge
from .formula import parse, render_coalition, resolve_coalition
from .gam import GrandFirstActionModel, classify
from .harness.suites import SUITE_NAMES, get_suite, run_suite, evaluator_for
from .modelfile import dumps, fixture_names, fixture_path, kind_of, load
from .neighborhood import (
    alpha_mismatch,
    from_effectivity,
    superset_closure,
    z_mismatch,
)
from .represent import sam_to_snm, snm_to_sam, unravel
from .sam_snm import (
    SingleFirstActionModel,
    SingleFirstNeighborhoodModel,
    check_condition_set,
    classify_snm,
    gam_to_sam,
    sam_to_gam,
)
from .structure import is_clear_gam, is_clear_snm, is_treelike_gam, is_treelike_snm

EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_BOUNDS = 3


class _UsageError(Exception):
    pass


def _load(path: str):
    """A model file path; a bare fixture name (or ``fixtures/<name>.json``) also works."""
    p = Path(path)
    if not p.exists():
        stem = p.name[:-5] if p.name.endswith(".json") else p.name
        if stem in fixture_names():
            return load(str(fixture_path(stem)))
    return load(p)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def _names(ys, states) -> list[str]:
    return [states[t] for t in sorted(ys)]


def _coalition(text: str, agents: Sequence[str]) -> frozenset:
    text = text.strip()
    if text == "AG":
        return frozenset(agents)
    inner = text[1:-1] if text.startswith("{") and text.endswith("}") else text
    names = frozenset(x.strip() for x in inner.split(",") if x.strip())
    return resolve_coalition(names, agents)


def _action_model(model) -> Optional[ActionModel]:
    if isinstance(model, (GrandFirstActionModel, SingleFirstActionModel)):
        return model.action_model
    if isinstance(model, ActionModel):
        return model
    return None


def _neighborhood_model(model) -> Optional[NeighborhoodModel]:
    if isinstance(model, SingleFirstNeighborhoodModel):
        return model.neighborhood_model
    if isinstance(model, NeighborhoodModel):
        return model
    return None


# ---------------------------------------------------------------------------
# Subcommands


def cmd_eval(args) -> int:
    model = _load(args.model)
    f = parse(args.formula, model.carrier.agents)
    s = model.carrier.index(args.state)
    value = evaluator_for(model).holds(s, f)
    print("true" if value else "false")
    return 0 if value else EXIT_FALSE


def cmd_classify(args) -> int:
    model = _load(args.model)
    kind = kind_of(model)
    doc: dict = {"kind": kind}
    if isinstance(model, (GrandFirstActionModel, SingleFirstActionModel)):
        g = sam_to_gam(model) if isinstance(model, SingleFirstActionModel) else model
        sig = classify(g)
        tree, root = is_treelike_gam(g)
        doc.update(
            signature=str(sig),
            serial=sig.serial,
            independent=sig.independent,
            deterministic=sig.deterministic,
            clear=is_clear_gam(g),
            tree_like=tree,
            root=g.states[root] if tree else None,
            single_coalition_first=all(
                check_condition_set(g.action_model, s, 1) for s in range(g.n)
            ),
        )
    elif isinstance(model, SingleFirstNeighborhoodModel):
        sig = classify_snm(model)
        tree, root = is_treelike_snm(model)
        doc.update(
            signature=str(sig),
            serial=sig.serial,
            independent=sig.independent,
            deterministic=sig.deterministic,
            clear=is_clear_snm(model),
            tree_like=tree,
            root=model.states[root] if tree else None,
        )
    elif isinstance(model, ActionModel):
        doc["condition_sets"] = {
            model.states[s]: [check_condition_set(model, s, k) for k in (1, 2, 3)]
            for s in range(model.carrier.n)
        }
    _emit(doc)
    return 0


def cmd_derive(args) -> int:
    model = _load(args.model)
    st = model.carrier.states
    c = _coalition(args.coalition, model.carrier.agents)
    what = args.what
    table: dict = {}
    if what == "successor":
        if not hasattr(model, "suc"):
            raise _UsageError(f"a {kind_of(model)} model has no successor function")
        table = {st[s]: _names(model.suc(s), st) for s in range(model.carrier.n)}
    elif what in ("outcome", "availability"):
        am = _action_model(model)
        if am is None:
            raise _UsageError(f"a {kind_of(model)} model has no {what} function")
        for s in range(am.carrier.n):
            if what == "availability":
                table[st[s]] = sorted(sig.key() for sig in am.av(c, s))
            else:
                table[st[s]] = {
                    sig.key(): _names(am.out(c, s, sig), st) for sig in am.joint_actions(c)
                }
    else:
        nm = _neighborhood_model(model)
        if nm is None:
            nm = from_effectivity(actual_effectivity(_action_model(model)))
        table = {
            st[s]: sorted(_names(y, st) for y in nm.nei(c, s)) for s in range(nm.carrier.n)
        }
    _emit({"coalition": render_coalition(c), "what": what, "table": table})
    return 0


def _transform(model, target: str):
    kind = kind_of(model)
    if target == "alpha":
        nm = _neighborhood_model(model)
        if nm is None:
            nm = from_effectivity(actual_effectivity(_action_model(model)))
        return superset_closure(nm)
    if kind == target:
        return model
    if kind == "gam":
        sam = gam_to_sam(model)
        return sam if target == "sam" else sam_to_snm(sam)
    if kind == "sam":
        return sam_to_gam(model) if target == "gam" else sam_to_snm(model)
    if kind == "snm":
        sam = snm_to_sam(model)
        return sam if target == "sam" else sam_to_gam(sam)
    raise _UsageError(f"cannot transform a {kind} model to {target}")


def cmd_transform(args) -> int:
    print(dumps(_transform(_load(args.model), args.to)))
    return 0


def cmd_unravel(args) -> int:
    model = _load(args.model)
    if isinstance(model, SingleFirstActionModel):
        model = sam_to_gam(model)
    if not isinstance(model, GrandFirstActionModel):
        raise _UsageError("unraveling needs a gam or sam model")
    if args.depth < 0:
        raise _UsageError("depth must be nonnegative")
    print(dumps(unravel(model, args.start, args.depth)))
    return 0


def cmd_represent(args) -> int:
    a, b = _load(args.model_a), _load(args.model_b)
    nm = _neighborhood_model(a)
    am = _action_model(b)
    if nm is None or am is None:
        nm, am = _neighborhood_model(b), _action_model(a)
    if nm is None or am is None:
        raise _UsageError("represent needs one neighborhood model and one action model")
    mismatch = alpha_mismatch(nm, am) if args.alpha else z_mismatch(nm, am)
    word = "alpha-represents" if args.alpha else "z-represents"
    if mismatch is None:
        _emit({"result": word})
        return 0
    _emit({"result": "no", "mismatch": mismatch.describe(nm.carrier.states)})
    return EXIT_FALSE


def cmd_verify(args) -> int:
    names = list(SUITE_NAMES) if args.suite == "all" else [args.suite]
    for name in names:
        get_suite(name)
    reports = []
    for name in names:
        suite = get_suite(name)
        if args.exhaustive:
            report = run_suite(name, exhaustive=True, workers=args.workers)
        elif args.seed is None and args.count is None and args.kind is None:
            report = run_suite(name, workers=args.workers)
        else:
            specs = list(suite.random_defaults)
            if args.kind is not None:
                specs = [replace(specs[0], kind=args.kind)]
            specs = [
                replace(
                    sp,
                    seed=sp.seed if args.seed is None else args.seed,
                    count=sp.count if args.count is None else args.count,
                )
                for sp in specs
            ]
            from .harness.generate import generate

            stream = (m for sp in specs for m in generate(sp))
            report = run_suite(name, models=stream, workers=args.workers)
        if args.dump_dir:
            for path in report.dump_countermodels(args.dump_dir):
                print(f"countermodel written to {path}", file=sys.stderr)
        reports.append(report)
        status = "pass" if report.passed else "FAIL: " + ", ".join(report.failures())
        print(f"{name}: {status} ({report.models} models, {report.seconds:.1f}s)", file=sys.stderr)
    doc = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
    _emit(doc)
    return 0 if all(r.passed for r in reports) else EXIT_FALSE


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coalkit", description="Coalition logic workbench.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate a formula at a state")
    e.add_argument("model")
    e.add_argument("state")
    e.add_argument("formula")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("classify", help="signature, clearness and tree-likeness")
    c.add_argument("model")
    c.set_defaults(func=cmd_classify)

    d = sub.add_parser("derive", help="dump a derived table for one coalition")
    d.add_argument("model")
    d.add_argument("--coalition", required=True, help='e.g. "{a,b}", "{}", "AG"')
    d.add_argument(
        "--what",
        choices=("outcome", "availability", "neighborhood", "successor"),
        default="outcome",
    )
    d.set_defaults(func=cmd_derive)

    t = sub.add_parser("transform", help="convert between model kinds")
    t.add_argument("model")
    t.add_argument("--to", required=True, choices=("snm", "sam", "gam", "alpha"))
    t.set_defaults(func=cmd_transform)

    u = sub.add_parser("unravel", help="depth-bounded unraveling from a state")
    u.add_argument("model")
    u.add_argument("--from", dest="start", required=True)
    u.add_argument("--depth", type=int, required=True)
    u.set_defaults(func=cmd_unravel)

    r = sub.add_parser("represent", help="does a neighborhood model represent an action model?")
    r.add_argument("model_a")
    r.add_argument("model_b")
    r.add_argument("--alpha", action="store_true")
    r.set_defaults(func=cmd_represent)

    v = sub.add_parser("verify", help="run an invariant suite")
    v.add_argument("suite", help=f"one of: all, {', '.join(SUITE_NAMES)}")
    v.add_argument("--seed", type=int)
    v.add_argument("--count", type=int)
    v.add_argument("--kind", choices=("gam", "sam", "snm", "action"))
    v.add_argument("--exhaustive", action="store_true")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--dump-dir", help="write countermodels of failing checks here")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BoundsExceeded, TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except (CoalkitError, _UsageError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
