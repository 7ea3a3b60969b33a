import json

import pytest

from coalkit.cli import main
from coalkit.modelfile import dump, load, load_fixture, loads


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_true_and_false(capsys):
    assert run(capsys, "eval", "m1", "s0", "[AG]p")[:2] == (0, "true\n")
    assert run(capsys, "eval", "m1", "s0", "[{a}]p")[:2] == (1, "false\n")


def test_eval_on_snm(capsys):
    assert run(capsys, "eval", "n1", "s0", "[AG]T")[0] == 0


def test_eval_errors(capsys):
    code, _, err = run(capsys, "eval", "m1", "s0", "[{c}]p")
    assert code == 2 and "UnknownAgent" in err
    assert run(capsys, "eval", "m1", "s9", "p")[0] == 2
    assert run(capsys, "eval", "m1", "s0", "p &")[0] == 2
    assert run(capsys, "eval", "no-such-model", "s0", "p")[0] == 2


def test_classify_gam(capsys):
    code, out, _ = run(capsys, "classify", "lock")
    doc = json.loads(out)
    assert code == 0
    assert doc["kind"] == "gam" and doc["signature"] == "SD"
    assert doc["clear"] and not doc["tree_like"] and doc["single_coalition_first"]


def test_classify_tree_snm(capsys):
    doc = json.loads(run(capsys, "classify", "tree_snm")[1])
    assert doc["tree_like"] and doc["root"] == "r"


def test_classify_explicit(tmp_path, capsys):
    path = tmp_path / "am.json"
    dump(load_fixture("m1").action_model, path)
    doc = json.loads(run(capsys, "classify", str(path))[1])
    assert doc["condition_sets"]["s0"] == [False, False, False]
    assert doc["condition_sets"]["s1"] == [True, True, True]


def test_derive(capsys):
    doc = json.loads(run(capsys, "derive", "m1", "--coalition", "{a}", "--what", "outcome")[1])
    assert doc["table"]["s0"]["a:a1"] == ["s1", "s2"]
    doc = json.loads(run(capsys, "derive", "n1", "--coalition", "AG", "--what", "neighborhood")[1])
    assert doc["table"]["s0"] == [["s1"], ["s2"], ["s3"]]
    doc = json.loads(run(capsys, "derive", "m1", "--coalition", "{}", "--what", "successor")[1])
    assert doc["table"]["s0"] == ["s1", "s2"]


def test_derive_wrong_function(capsys):
    assert run(capsys, "derive", "n1", "--coalition", "{a}", "--what", "outcome")[0] == 2


def test_transform_roundtrip(capsys):
    code, out, _ = run(capsys, "transform", "lock", "--to", "snm")
    assert code == 0
    snm = loads(out)
    assert snm.nei_agent("a", 0) == load_fixture("lock_snm").nei_agent("a", 0)


def test_transform_m1_fails(capsys):
    assert run(capsys, "transform", "m1", "--to", "sam")[0] == 2


def test_unravel(capsys):
    code, out, _ = run(capsys, "unravel", "m1", "--from", "s0", "--depth", "1")
    assert code == 0 and loads(out).n == 5
    assert run(capsys, "unravel", "n1", "--from", "s0", "--depth", "1")[0] == 2


def test_represent(tmp_path, capsys):
    alpha = tmp_path / "alpha.json"
    alpha.write_text(run(capsys, "transform", "m1", "--to", "alpha")[1])
    assert json.loads(run(capsys, "represent", str(alpha), "m1", "--alpha")[1]) == {"result": "alpha-represents"}
    code, out, _ = run(capsys, "represent", str(alpha), "m1")
    assert code == 1 and json.loads(out)["result"] == "no"


def test_represent_needs_both_kinds(capsys):
    assert run(capsys, "represent", "m1", "lock")[0] == 2


def test_verify(capsys):
    code, out, err = run(capsys, "verify", "gam-facts", "--seed", "1", "--count", "20")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["models"] == 20
    assert "gam-facts: pass" in err


def test_verify_bounds(capsys):
    assert run(capsys, "verify", "gam-facts", "--count", "99999999")[0] == 3


def test_verify_unknown_suite(capsys):
    assert run(capsys, "verify", "nope")[0] == 2


def test_dumped_files_load(tmp_path, capsys):
    path = tmp_path / "u.json"
    path.write_text(run(capsys, "unravel", "lock", "--from", "s1", "--depth", "2")[1])
    assert load(path).states[0] == "s1"


def test_usage_error_exits(capsys):
    with pytest.raises(SystemExit):
        main(["eval"])


@pytest.mark.parametrize("name", ["lock", "proc", "tree_gam"])
def test_transform_then_represent(tmp_path, capsys, name):
    snm = tmp_path / "snm.json"
    snm.write_text(run(capsys, "transform", name, "--to", "snm")[1])
    code, out, _ = run(capsys, "represent", str(snm), name)
    assert code == 0 and json.loads(out) == {"result": "z-represents"}


def test_fixture_path_form(capsys):
    assert run(capsys, "eval", "fixtures/m1.json", "s0", "[AG]p")[:2] == (0, "true\n")


@pytest.mark.slow
def test_verify_exhaustive_gam_facts(capsys):
    code, out, _ = run(capsys, "verify", "gam-facts", "--exhaustive")
    assert code == 0 and json.loads(out)["passed"]
