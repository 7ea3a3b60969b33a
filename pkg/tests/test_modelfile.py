import json

import pytest
from hypothesis import given, settings

from coalkit.action_semantics import actual_effectivity
from coalkit.errors import ModelFileError
from coalkit.modelfile import (
    dump,
    dumps,
    fixture_names,
    kind_of,
    load,
    load_fixture,
    load_with_meta,
    loads,
    to_dict,
)
from coalkit.neighborhood import from_effectivity

from strategies import gams, sams, snms

GAM_DOC = {
    "kind": "gam",
    "agents": ["a"],
    "states": ["s0", "s1"],
    "actions": ["x"],
    "outcome_grand": {"s0": {"a:x": ["s1"]}},
}


def roundtrip(m):
    return to_dict(loads(dumps(m))) == to_dict(m)


def test_fixture_names():
    assert set(fixture_names()) >= {"m1", "gam1", "gam2", "lock", "lock_snm", "proc", "u1", "n1", "tree_gam", "tree_snm"}


@pytest.mark.parametrize("name", ["m1", "gam1", "gam2", "lock", "lock_snm", "proc", "u1", "n1", "tree_gam", "tree_snm"])
def test_fixtures_roundtrip(name):
    assert roundtrip(load_fixture(name))


def test_explicit_models_roundtrip():
    am = load_fixture("m1").action_model
    assert kind_of(am) == "action"
    assert roundtrip(am)
    nm = from_effectivity(actual_effectivity(am))
    assert kind_of(nm) == "neighborhood"
    assert roundtrip(nm)


@settings(max_examples=40, deadline=None)
@given(gams())
def test_random_gams_roundtrip(g):
    assert roundtrip(g)


@settings(max_examples=40, deadline=None)
@given(sams())
def test_random_sams_roundtrip(m):
    assert roundtrip(m)


@settings(max_examples=40, deadline=None)
@given(snms())
def test_random_snms_roundtrip(m):
    assert roundtrip(m)


def test_dump_and_load(tmp_path):
    path = tmp_path / "m.json"
    dump(load_fixture("lock"), path, description="lock copy")
    m, meta = load_with_meta(path)
    assert meta["description"] == "lock copy"
    assert to_dict(m) == to_dict(load(path))


def test_kind_of_rejects_other_objects():
    with pytest.raises(TypeError):
        kind_of(object())


@pytest.mark.parametrize(
    "patch",
    [
        {"kind": "kripke"},
        {"states": ["s0", "s0"]},
        {"outcome_grand": {"s9": {"a:x": ["s1"]}}},
        {"outcome_grand": {"s0": {"a:x": ["nowhere"]}}},
        {"outcome_grand": {"s0": {"b:x": ["s1"]}}},
        {"outcome_grand": {"s0": {"a": ["s1"]}}},
        {"actions": []},
        {"outcome_grand": ["s0"]},
    ],
)
def test_errors(patch):
    with pytest.raises(ModelFileError):
        loads(json.dumps(GAM_DOC | patch))


def test_missing_field():
    doc = dict(GAM_DOC)
    del doc["states"]
    with pytest.raises(ModelFileError):
        loads(json.dumps(doc))


def test_invalid_json():
    with pytest.raises(ModelFileError):
        loads("{")


def test_unreadable(tmp_path):
    with pytest.raises(ModelFileError):
        load(tmp_path / "missing.json")


def test_snm_errors_are_wrapped():
    doc = {
        "kind": "snm",
        "agents": ["a"],
        "states": ["s0", "s1"],
        "successor": {"s0": ["s0", "s1"]},
        "neighborhood_agent": {"a": {"s0": [["s0"]]}},
    }
    with pytest.raises(ModelFileError, match="cover"):
        loads(json.dumps(doc))
