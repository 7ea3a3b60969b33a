"""JSON model files: one document per model, kind-tagged."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any, Union

from .core import (
    ActionModel,
    JointAction,
    NeighborhoodModel,
    coalition_key,
    parse_coalition_key,
)
from .errors import CoalkitError, ModelFileError
from .gam import GrandFirstActionModel
from .sam_snm import SingleFirstActionModel, SingleFirstNeighborhoodModel

AnyModel = Union[
    ActionModel,
    NeighborhoodModel,
    GrandFirstActionModel,
    SingleFirstActionModel,
    SingleFirstNeighborhoodModel,
]

KINDS = ("action", "neighborhood", "gam", "sam", "snm")


def kind_of(model: AnyModel) -> str:
    if isinstance(model, GrandFirstActionModel):
        return "gam"
    if isinstance(model, SingleFirstActionModel):
        return "sam"
    if isinstance(model, SingleFirstNeighborhoodModel):
        return "snm"
    if isinstance(model, ActionModel):
        return "action"
    if isinstance(model, NeighborhoodModel):
        return "neighborhood"
    raise TypeError(f"not a model: {type(model).__name__}")


# ---------------------------------------------------------------------------
# Loading


class _Reader:
    def __init__(self, doc: dict):
        if not isinstance(doc, dict):
            raise ModelFileError("model file must be a JSON object")
        self.doc = doc
        self.kind = doc.get("kind")
        if self.kind not in KINDS:
            raise ModelFileError(f"unknown or missing kind {self.kind!r}")
        self.states = self._names("states")
        self.agents = self._names("agents")
        self.index = {name: i for i, name in enumerate(self.states)}
        needs_actions = self.kind in ("action", "gam", "sam")
        self.actions = self._names("actions") if needs_actions or "actions" in doc else []
        lab = doc.get("labeling", {})
        if not isinstance(lab, dict):
            raise ModelFileError("labeling must be an object")
        self.labeling = {}
        for name, props in lab.items():
            self.state(name)
            if not isinstance(props, list):
                raise ModelFileError(f"labels of {name!r} must be a list")
            self.labeling[name] = [str(p) for p in props]

    def _names(self, key: str) -> list[str]:
        value = self.doc.get(key)
        if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
            raise ModelFileError(f"{key!r} must be a list of strings")
        return value

    def state(self, name: Any) -> int:
        try:
            return self.index[name]
        except (KeyError, TypeError):
            raise ModelFileError(f"unknown state {name!r}") from None

    def states_of(self, names: Any) -> frozenset:
        if not isinstance(names, list):
            raise ModelFileError(f"expected a list of states, got {names!r}")
        return frozenset(self.state(x) for x in names)

    def obj(self, key: str) -> dict:
        value = self.doc.get(key, {})
        if not isinstance(value, dict):
            raise ModelFileError(f"{key!r} must be an object")
        return value

    def coalition(self, key: str) -> frozenset:
        c = parse_coalition_key(key)
        unknown = c - set(self.agents)
        if unknown:
            raise ModelFileError(f"unknown agent(s) {sorted(unknown)} in coalition {key!r}")
        return c

    def joint_action(self, key: str) -> JointAction:
        try:
            return JointAction.from_key(key)
        except ValueError as exc:
            raise ModelFileError(str(exc)) from None

    def successor(self) -> dict:
        return {self.state(s): self.states_of(ys) for s, ys in self.obj("successor").items()}

    def build(self) -> AnyModel:
        kind = self.kind
        if kind == "action":
            av = {}
            for ck, rows in self.obj("availability").items():
                av[self.coalition(ck)] = {
                    self.state(s): [self.joint_action(k) for k in keys] for s, keys in rows.items()
                }
            out = {}
            for ck, rows in self.obj("outcome").items():
                out[self.coalition(ck)] = {
                    self.state(s): {self.joint_action(k): self.states_of(ys) for k, ys in row.items()}
                    for s, row in rows.items()
                }
            return ActionModel.build(self.states, self.agents, self.actions, av, out, self.labeling)
        if kind == "neighborhood":
            nei = {}
            for ck, rows in self.obj("neighborhood").items():
                nei[self.coalition(ck)] = {
                    self.state(s): [self.states_of(y) for y in fam] for s, fam in rows.items()
                }
            return NeighborhoodModel.build(self.states, self.agents, nei, self.labeling)
        if kind == "gam":
            table = {
                self.state(s): {self.joint_action(k): self.states_of(ys) for k, ys in row.items()}
                for s, row in self.obj("outcome_grand").items()
            }
            return GrandFirstActionModel.build(
                self.states, self.agents, self.actions, table, self.labeling
            )
        if kind == "sam":
            table = {}
            for a, rows in self.obj("outcome_agent").items():
                if a not in self.agents:
                    raise ModelFileError(f"unknown agent {a!r}")
                table[a] = {
                    self.state(s): {str(x): self.states_of(ys) for x, ys in row.items()}
                    for s, row in rows.items()
                }
            return SingleFirstActionModel.build(
                self.states, self.agents, self.actions, self.successor(), table, self.labeling
            )
        table = {}
        for a, rows in self.obj("neighborhood_agent").items():
            if a not in self.agents:
                raise ModelFileError(f"unknown agent {a!r}")
            table[a] = {
                self.state(s): [self.states_of(y) for y in fam] for s, fam in rows.items()
            }
        return SingleFirstNeighborhoodModel.build(
            self.states, self.agents, self.successor(), table, self.labeling
        )


def from_dict(doc: dict) -> AnyModel:
    try:
        return _Reader(doc).build()
    except ModelFileError:
        raise
    except CoalkitError as exc:
        raise ModelFileError(f"{type(exc).__name__}: {exc}") from exc


def loads(text: str) -> AnyModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"invalid JSON: {exc}") from None
    return from_dict(doc)


def load(path: str | Path) -> AnyModel:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ModelFileError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def load_with_meta(path: str | Path) -> tuple[AnyModel, dict]:
    doc = json.loads(Path(path).read_text())
    return from_dict(doc), doc


def fixture_path(name: str):
    return resources.files("coalkit") / "fixtures" / f"{name}.json"


def load_fixture(name: str) -> AnyModel:
    return loads(fixture_path(name).read_text())


def fixture_names() -> list[str]:
    folder = resources.files("coalkit") / "fixtures"
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


# ---------------------------------------------------------------------------
# Dumping


def _names(ys, states) -> list[str]:
    return [states[t] for t in sorted(ys)]


def _family(fam, states) -> list[list[str]]:
    return sorted(_names(y, states) for y in fam)


def to_dict(model: AnyModel) -> dict:
    kind = kind_of(model)
    car = model.carrier
    st = car.states
    doc: dict[str, Any] = {"kind": kind, "agents": list(car.agents), "states": list(st)}
    if hasattr(model, "actions"):
        doc["actions"] = list(model.actions)
    doc["labeling"] = {st[i]: sorted(lab) for i, lab in enumerate(car.labeling) if lab}
    if kind == "action":
        doc["availability"] = {
            coalition_key(c): {
                st[s]: sorted(sig.key() for sig in model.av(c, s))
                for s in range(car.n)
                if model.av(c, s)
            }
            for c in car.coalitions
        }
        doc["outcome"] = {
            coalition_key(c): {
                st[s]: {
                    sig.key(): _names(model.out(c, s, sig), st)
                    for sig in model.joint_actions(c)
                    if model.out(c, s, sig)
                }
                for s in range(car.n)
                if any(model.out(c, s, sig) for sig in model.joint_actions(c))
            }
            for c in car.coalitions
        }
    elif kind == "neighborhood":
        doc["neighborhood"] = {
            coalition_key(c): {
                st[s]: _family(model.nei(c, s), st) for s in range(car.n) if model.nei(c, s)
            }
            for c in car.coalitions
        }
    elif kind == "gam":
        doc["outcome_grand"] = {
            st[s]: {sig.key(): _names(ys, st) for sig, ys in sorted(row.items()) if ys}
            for s, row in enumerate(model.outcome_grand)
            if row
        }
    elif kind == "sam":
        doc["successor"] = {st[s]: _names(ys, st) for s, ys in enumerate(model.successor) if ys}
        doc["outcome_agent"] = {
            a: {
                st[s]: {x: _names(ys, st) for x, ys in row.items() if ys}
                for s, row in enumerate(model.outcome_agent[a])
                if row
            }
            for a in car.agents
        }
    else:
        doc["successor"] = {st[s]: _names(ys, st) for s, ys in enumerate(model.successor) if ys}
        doc["neighborhood_agent"] = {
            a: {
                st[s]: _family(fam, st)
                for s, fam in enumerate(model.neighborhood_agent[a])
                if fam
            }
            for a in car.agents
        }
    return doc


def dumps(model: AnyModel, **extra) -> str:
    doc = to_dict(model)
    doc.update(extra)
    return json.dumps(doc, indent=2, ensure_ascii=False)


def dump(model: AnyModel, path: str | Path, **extra) -> None:
    Path(path).write_text(dumps(model, **extra) + "\n")
