import pytest
from hypothesis import given, settings, strategies as st

from coalkit.core import JointAction
from coalkit.errors import EmptySetMember, InvalidModel
from coalkit.gam import classify
from coalkit.modelfile import load_fixture
from coalkit.sam_snm import (
    SingleFirstActionModel,
    SingleFirstNeighborhoodModel,
    check_condition_set,
    classify_sam,
    classify_snm,
    condition_set_1,
    condition_set_2,
    condition_set_3,
    gam_to_sam,
    odot,
    odot_all,
    sam_to_gam,
    snm_derive_neighborhood,
    snm_is_deterministic,
    snm_is_serial,
)

import oracles
from strategies import gams, sams, snms

ja = JointAction.of
A, B, AB, EMPTY = frozenset("a"), frozenset("b"), frozenset("ab"), frozenset()


def fam(*sets):
    return frozenset(frozenset(s) for s in sets)


class TestOdot:
    def test_example(self):
        assert odot(fam({1, 2}, {2, 3}), fam({2}, {1, 3})) == fam({1}, {2}, {3})

    def test_drops_empty_meets(self):
        assert odot(fam({1}), fam({2})) == frozenset()

    def test_rejects_empty_members(self):
        with pytest.raises(EmptySetMember):
            odot(fam(set()), fam({1}))
        with pytest.raises(EmptySetMember):
            odot_all([fam({1}), fam(set())])

    def test_empty_index(self):
        with pytest.raises(ValueError):
            odot_all([])

    @given(
        st.sets(st.frozensets(st.integers(0, 3), min_size=1), max_size=4),
        st.sets(st.frozensets(st.integers(0, 3), min_size=1), max_size=4),
    )
    def test_commutes(self, d1, d2):
        assert odot(d1, d2) == odot(d2, d1)
        assert odot_all([d1]) == frozenset(d1)


class TestSingleFirstActionModels:
    def test_lock_reads_as_sam(self):
        lock = load_fixture("lock")
        m = gam_to_sam(lock)
        s1 = 0
        assert m.out_agent("a", s1, "skip") == {0, 1}
        assert m.out_agent("b", s1, "skip") == {0, 2}
        # profile outcomes are intersections of the agents' outcomes
        assert m.out(AB, s1, ja({"a": "skip", "b": "skip"})) == {0}
        assert m.out(AB, s1, ja({"a": "open-f", "b": "open-b"})) == frozenset()
        assert sam_to_gam(m).outcome_grand == lock.outcome_grand

    def test_proc_reads_as_sam(self):
        proc = load_fixture("proc")
        m = gam_to_sam(proc)
        s4 = 3
        assert m.out_agent("a", s4, "x:=1") == {0, 1}
        assert m.out(AB, s4, ja({"a": "x:=1", "b": "y:=1"})) == {0}

    def test_m1_is_not_a_sam(self):
        with pytest.raises(InvalidModel):
            gam_to_sam(load_fixture("m1"))

    def test_fusion_failure_in_m1(self):
        am = load_fixture("m1").action_model
        for cond in (condition_set_1, condition_set_2, condition_set_3):
            assert not cond(am, 0)
            assert cond(am, 1)

    def test_outcomes_must_cover_successors(self):
        with pytest.raises(InvalidModel):
            SingleFirstActionModel.build(["s0", "s1"], ["a"], ["x"], {0: [0, 1]}, {"a": {0: {"x": [0]}}})

    def test_empty_coalition_gets_the_successors(self):
        m = SingleFirstActionModel.build(["s0", "s1"], ["a"], ["x"], {0: [1]}, {"a": {0: {"x": [1]}}})
        assert m.out(EMPTY, 0, JointAction(())) == {1}
        assert m.av(EMPTY, 1) == frozenset()

    def test_condition_set_index(self):
        am = load_fixture("lock").action_model
        assert check_condition_set(am, 0, 2)
        with pytest.raises(ValueError):
            check_condition_set(am, 0, 4)

    @settings(max_examples=60, deadline=None)
    @given(sams())
    def test_outcomes_match_oracle(self, m):
        for c in m.carrier.coalitions:
            for s in range(m.n):
                for sigma in oracles.joint_actions(c, m.actions):
                    assert m.out(c, s, sigma) == oracles.sam_out(m, c, s, sigma)

    @settings(max_examples=60, deadline=None)
    @given(sams())
    def test_sams_satisfy_all_condition_sets(self, m):
        am = m.action_model
        for s in range(m.n):
            assert condition_set_1(am, s) and condition_set_2(am, s) and condition_set_3(am, s)

    @settings(max_examples=60, deadline=None)
    @given(sams())
    def test_embedding_as_gam(self, m):
        g = sam_to_gam(m)
        for c in m.carrier.coalitions:
            for s in range(m.n):
                for sigma in m.joint_actions(c):
                    assert g.out(c, s, sigma) == m.out(c, s, sigma)
        assert str(classify_sam(m)) == oracles.gam_letters(g)
        assert gam_to_sam(g).action_model.carrier == m.carrier

    @settings(max_examples=80, deadline=None)
    @given(gams())
    def test_condition_sets_agree_on_gams(self, g):
        am = g.action_model
        for s in range(g.n):
            verdicts = {condition_set_1(am, s), condition_set_2(am, s), condition_set_3(am, s)}
            assert len(verdicts) == 1


class TestSingleFirstNeighborhoodModels:
    def test_n1_grand_neighborhood(self):
        n1 = load_fixture("n1")
        assert n1.nei(AB, 0) == fam({1}, {2}, {3})
        assert n1.nei(A, 0) == fam({1, 2}, {2, 3})
        assert n1.nei(EMPTY, 0) == fam({1, 2, 3})
        assert n1.nei(AB, 1) == frozenset()

    def test_n1_classification(self):
        n1 = load_fixture("n1")
        assert str(classify_snm(n1, states=[0])) == "SID"
        assert not snm_is_serial(n1)

    def test_rejects_empty_member(self):
        with pytest.raises(InvalidModel):
            SingleFirstNeighborhoodModel.build(["s0"], ["a"], {0: [0]}, {"a": {0: [[0], []]}})

    def test_must_cover(self):
        with pytest.raises(InvalidModel):
            SingleFirstNeighborhoodModel.build(["s0", "s1"], ["a"], {0: [0, 1]}, {"a": {0: [[0]]}})

    @settings(max_examples=60, deadline=None)
    @given(snms())
    def test_neighborhoods_match_oracle(self, m):
        for c in m.carrier.coalitions:
            rows = snm_derive_neighborhood(m, c)
            for s in range(m.n):
                assert rows[s] == oracles.snm_nei(m, c, s)

    @settings(max_examples=60, deadline=None)
    @given(snms())
    def test_seriality_is_having_successors(self, m):
        # each agent covers the successors, so every successor survives ⊙
        assert snm_is_serial(m) == all(m.suc(s) for s in range(m.n))
        ag = m.carrier.agents
        singletons = all(len(y) == 1 for s in range(m.n) for y in oracles.snm_nei(m, ag, s))
        assert snm_is_deterministic(m) == singletons

    @settings(max_examples=60, deadline=None)
    @given(sams())
    def test_sam_classification_matches_its_gam(self, m):
        assert classify_sam(m) == classify(sam_to_gam(m))
