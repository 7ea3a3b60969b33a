import json
from collections import Counter

import pytest
from hypothesis import given, settings

from coalkit.core import JointAction, Signature
from coalkit.errors import BoundsExceeded, UnknownSuite
from coalkit.formula import AxiomSchema, parse
from coalkit.gam import GrandFirstActionModel
from coalkit.harness import (
    BANK_VERSION,
    FILLERS,
    SUITE_NAMES,
    GenSpec,
    bank_text,
    find_countermodel,
    formula_bank,
    generate,
    run_suite,
)
from coalkit.harness.generate import exhaustive_count, signature_of, stream_size
from coalkit.harness.suites import axiom_validity, gam_fact_violation, get_suite, pointed_chain
from coalkit.harness.vectorized import (
    Layout,
    _cells,
    expected_condition_1_count,
    sweep_size,
    vec_condition_1,
    vec_condition_2,
    vec_condition_3,
)
from coalkit.modelfile import fixture_path, load_fixture, loads, to_dict
from coalkit.sam_snm import condition_set_1, condition_set_2, condition_set_3

import numpy as np

import oracles
from strategies import sams


def one_size(kind, n, k, m, **kw):
    return GenSpec(kind, n, k, m, mode="exhaustive", min_states=n, min_agents=k, min_actions=m, **kw)


class TestGenerate:
    def test_smallest_gam_stream(self):
        assert len(list(generate(one_size("gam", 1, 1, 1)))) == 2

    @pytest.mark.parametrize("n, k, m", [(1, 1, 1), (1, 2, 2), (2, 1, 1), (2, 1, 2), (2, 2, 1)])
    def test_gam_counts(self, n, k, m):
        assert exhaustive_count("gam", n, k, m) == oracles.count_gams(n, k, m)
        models = list(generate(one_size("gam", n, k, m)))
        assert len(models) == oracles.count_gams(n, k, m)
        assert len({json.dumps(to_dict(g), sort_keys=True) for g in models}) == len(models)

    @pytest.mark.parametrize("n, k, m", [(1, 1, 1), (2, 1, 2), (2, 2, 1), (2, 2, 2), (3, 1, 1)])
    def test_sam_counts(self, n, k, m):
        assert exhaustive_count("sam", n, k, m) == oracles.count_sams(n, k, m)
        assert len(list(generate(one_size("sam", n, k, m)))) == oracles.count_sams(n, k, m)

    @pytest.mark.parametrize("n, k", [(1, 1), (1, 2), (2, 1), (2, 2)])
    def test_snm_counts(self, n, k):
        assert exhaustive_count("snm", n, k, 1) == oracles.count_snms(n, k)
        assert len(list(generate(one_size("snm", n, k, 1)))) == oracles.count_snms(n, k)

    def test_up_to_bounds(self):
        spec = GenSpec("gam", 2, 1, 1, mode="exhaustive")
        assert spec.sizes() == [(1, 1, 1), (2, 1, 1)]
        assert stream_size(spec) == 2 + 16

    def test_bounds(self):
        with pytest.raises(BoundsExceeded):
            GenSpec(n_states=5)
        with pytest.raises(BoundsExceeded):
            GenSpec(n_agents=3)
        with pytest.raises(BoundsExceeded):
            GenSpec(count=10**8)
        with pytest.raises(BoundsExceeded):
            list(generate(GenSpec("gam", 3, 2, 2, mode="exhaustive")))
        with pytest.raises(ValueError):
            GenSpec(kind="kripke")

    @pytest.mark.parametrize("kind", ["gam", "sam", "snm", "action", "neighborhood"])
    def test_random_is_deterministic(self, kind):
        spec = GenSpec(kind, seed=7, count=20)
        first = [to_dict(m) for m in generate(spec)]
        assert first == [to_dict(m) for m in generate(spec)]
        assert len(first) == 20
        assert first != [to_dict(m) for m in generate(GenSpec(kind, seed=8, count=20))]

    @pytest.mark.parametrize("kind", ["gam", "sam", "snm"])
    def test_signature_filter(self, kind):
        want = Signature.parse("SI")
        models = list(generate(GenSpec(kind, seed=1, count=30, signature_filter=want)))
        assert models and all(signature_of(m).includes(want) for m in models)

    def test_random_gams_cover_styles(self):
        sigs = Counter(str(signature_of(g)) for g in generate(GenSpec("gam", seed=0, count=300)))
        assert {"SID", "SD", "ε"} <= set(sigs)


class TestBank:
    def test_size_and_schemas(self):
        bank = formula_bank()
        counts = Counter(e.schema for e in bank)
        assert len(bank) == 674
        assert counts == {
            AxiomSchema.NAAA: 4,
            AxiomSchema.SER: 4,
            AxiomSchema.MG: 4 * 36,
            AxiomSchema.MC: 9 * 6,
            AxiomSchema.IA: 9 * 36,
            AxiomSchema.DET: 4 * 36,
        }
        assert len(FILLERS) == 6

    def test_matches_packaged_file(self):
        text = (fixture_path("bank_v1").parent / f"bank_v{BANK_VERSION}.txt").read_text()
        assert text == bank_text()

    def test_lines_parse(self):
        for line in bank_text().splitlines()[1:]:
            schema, text = line.split("\t")
            assert AxiomSchema[schema]
            parse(text)

    def test_single_agent(self):
        assert len(formula_bank(("a",))) == 2 + 2 + 72 + 18 + 108 + 72


class TestVectorized:
    @pytest.mark.parametrize("n, k, m", [(1, 1, 1), (2, 1, 1), (2, 1, 2), (1, 2, 2), (2, 2, 1)])
    def test_matches_python_predicates(self, n, k, m):
        layout = Layout.of(n, k, m)
        rows = np.arange(layout.n_rows, dtype=np.uint64)
        v = _cells(layout, rows)
        vecs = [vec_condition_1(layout, v), vec_condition_2(layout, v), vec_condition_3(layout, v)]
        for row in range(layout.n_rows):
            am = layout.action_model(row)
            expected = [condition_set_1(am, 0), condition_set_2(am, 0), condition_set_3(am, 0)]
            assert [bool(x[row]) for x in vecs] == expected

    @pytest.mark.parametrize("n, k, m", [(1, 1, 1), (2, 1, 2), (2, 2, 1), (1, 2, 2), (2, 2, 2)])
    def test_condition_1_count(self, n, k, m):
        res = sweep_size(n, k, m)
        assert res.disagreements == 0
        assert res.satisfying == expected_condition_1_count(n, k, m) == oracles.count_condition_rows(n, k, m)

    @settings(max_examples=60, deadline=None)
    @given(sams(max_states=3))
    def test_rows_of_sams_satisfy_all(self, m):
        k, nact = len(m.carrier.agents), len(m.actions)
        layout = Layout.of(m.n, k, nact)
        row = 0
        for i, (c, sigma) in enumerate(layout.cells):
            bits = sum(1 << t for t in m.out(c, 0, sigma))
            row |= bits << (i * m.n)
        v = _cells(layout, np.array([row], dtype=np.uint64))
        assert vec_condition_1(layout, v)[0] and vec_condition_2(layout, v)[0] and vec_condition_3(layout, v)[0]


class TestChecks:
    @pytest.mark.parametrize("name", ["m1", "gam2", "lock", "proc", "u1", "tree_gam"])
    def test_gam_facts_hold_on_fixtures(self, name):
        assert gam_fact_violation(load_fixture(name)) is None

    def test_axiom_validity_on_lock(self):
        # lock is not independent, yet no bank instance over p and q sees it
        valid = axiom_validity(load_fixture("lock"))
        assert valid[AxiomSchema.SER] and valid[AxiomSchema.DET]
        assert valid[AxiomSchema.IA]

    def test_independence_refuted(self):
        ja = JointAction.of
        g = GrandFirstActionModel.build(
            ["s0", "s1", "s2"], ["a", "b"], ["x1", "x2"],
            {0: {ja({"a": "x1", "b": "x1"}): [1], ja({"a": "x2", "b": "x2"}): [2]}},
            {"s1": ["p"], "s2": ["q"]},
        )
        valid = axiom_validity(g)
        assert not valid[AxiomSchema.IA]
        assert valid[AxiomSchema.DET] and not valid[AxiomSchema.SER]

    def test_axiom_validity_on_a_dead_state(self):
        g = GrandFirstActionModel.build(["s0"], ["a"], ["x"], {})
        valid = axiom_validity(g)
        assert not valid[AxiomSchema.SER]
        assert valid[AxiomSchema.NAAA] and valid[AxiomSchema.MG] and valid[AxiomSchema.MC]

    def test_pointed_chain_on_m1(self):
        chain = pointed_chain(load_fixture("m1"), 0)
        assert len(chain) == 7
        assert set(chain) >= {"gam", "sam", "snm"}


class TestSuites:
    def test_registry(self):
        assert len(SUITE_NAMES) == 13
        with pytest.raises(UnknownSuite):
            get_suite("nope")

    @pytest.mark.parametrize("name", SUITE_NAMES)
    def test_small_random_run(self, name):
        kinds = get_suite(name).kinds
        spec = GenSpec(kinds[0], n_states=2, seed=3, count=15)
        report = run_suite(name, spec)
        assert report.passed, report.failures()
        assert report.models == 15
        assert report.to_json()["passed"]

    def test_workers_give_the_same_report(self):
        spec = GenSpec("gam", seed=5, count=40)
        one = run_suite("gam-facts", spec).to_json()
        two = run_suite("gam-facts", spec, workers=2).to_json()
        for doc in (one, two):
            doc.pop("seconds")
            for c in doc["checks"].values():
                c.pop("seconds")
        assert one == two

    def test_explicit_models(self):
        report = run_suite("gam-facts", models=[load_fixture("m1")])
        assert report.passed and report.models == 1

    def test_countermodel_dump(self, tmp_path):
        report = run_suite("gam-facts", models=[])
        report.checks["fake"] = type(next(iter(report.checks.values())))(
            1, 1, {**to_dict(load_fixture("m1")), "focus_state": "s0", "formula": None}
        )
        paths = report.dump_countermodels(tmp_path)
        assert [p.name for p in paths] == ["gam-facts-fake.json"]
        assert loads(paths[0].read_text()).n == 3


class TestFindCountermodel:
    def test_seriality_fails_somewhere(self):
        found = find_countermodel("[{a}]T", GenSpec("gam", seed=0, count=200))
        assert found is not None
        model, s = found
        assert not model.av(frozenset("a"), s)

    @pytest.mark.parametrize("text", ["~[{}]F", "p | ~p", "[{a}]p -> [{a,b}]p"])
    def test_valid_formulas_have_none(self, text):
        assert find_countermodel(text, GenSpec("gam", seed=0, count=300)) is None

    def test_skips_models_without_the_agent(self):
        found = find_countermodel(parse("[{b}]T"), GenSpec("gam", seed=0, count=200))
        model, _ = found
        assert "b" in model.carrier.agents

    def test_snm_search(self):
        found = find_countermodel("[{a}](p | q) -> ([{a}]p | [AG]q)", GenSpec("snm", seed=0, count=500))
        assert found is not None
