import pytest
from hypothesis import given, settings

from gentlequiver import NormalFormSpec, fixture, linear_quiver, make_normal_form
from gentlequiver.classification import (ALL_M, ClassificationError, DisconnectedInputError,
                                         classify, classify_components, derived_equivalent,
                                         infer_m, invariant_pair, is_A_branched, is_m_branched)
from gentlequiver.normal_forms import SpecError
from gentlequiver.quiver import euler_characteristic, simple_oriented_cycles

from conftest import branched_quivers, normal_form, quiver


class TestBranched:
    def test_example_ideals(self):
        assert is_m_branched(fixture("ex3_2_I1"), 3)
        assert is_m_branched(fixture("ex3_2_I2"), 3)

    def test_wrong_length(self):
        assert not is_m_branched(normal_form(1, 1, 3), 2)

    def test_partial_relations(self):
        partial = quiver(["a:1->2", "b:2->3", "c:3->1"], ["a b", "b c"])
        assert not any(is_m_branched(partial, m) for m in range(1, 5))
        assert infer_m(partial) == frozenset()

    def test_a_branched(self):
        assert is_A_branched(normal_form(2, 2, 9), 2)
        assert is_A_branched(fixture("ex3_2_I1"), 3)
        assert not is_A_branched(fixture("ex3_2_I2"), 3)
        tree = quiver(["a:1->2", "b:3->2", "c:3->4"])
        assert is_A_branched(tree, 1) and is_A_branched(tree, 5)

    def test_tree_with_relation_is_branched_not_a_branched(self):
        A = quiver(["a:1->2", "b:2->3"], ["a b"])
        assert is_m_branched(A, 2) and not is_A_branched(A, 2)


class TestInferM:
    def test_examples(self):
        assert infer_m(normal_form(3, 1, 5)) == frozenset({3})
        tree = infer_m(linear_quiver(4))
        assert tree is ALL_M and 1 in tree and 7 in tree and 0 not in tree
        assert infer_m(quiver(["a:1->2", "b:2->3", "c:3->1"])) == frozenset()

    def test_mixed_cycle_lengths(self):
        A = quiver(["a:1->2", "b:2->3", "c:3->1", "d:1->4", "e:4->5", "f:5->6", "g:6->1"],
                   ["a b", "b c", "c a", "d e", "e f", "f g", "g d"])
        assert infer_m(A) == frozenset()

    @given(branched_quivers())
    @settings(max_examples=40, deadline=None)
    def test_generated(self, mA):
        m, A = mA
        found = infer_m(A)
        assert m in found
        assert euler_characteristic(A) == len(simple_oriented_cycles(A))


class TestInvariantPair:
    def test_examples(self):
        assert invariant_pair(fixture("ex3_2_I1"), 3) == (2, 14)
        assert invariant_pair(linear_quiver(7), 1) == (0, 7)

    @pytest.mark.parametrize("m,r,s", [(1, 0, 1), (1, 2, 8), (2, 2, 7), (3, 1, 9)])
    def test_normal_forms(self, m, r, s):
        A = make_normal_form(NormalFormSpec(m, r, s))
        assert invariant_pair(A, m) == (r, s)
        assert is_A_branched(A, m)
        assert euler_characteristic(A) == r

    def test_errors(self):
        with pytest.raises(DisconnectedInputError):
            invariant_pair(fixture("ex6_4_left"), 2)
        with pytest.raises(ClassificationError):
            invariant_pair(fixture("ex7_8_A"), 2)


class TestNormalForms:
    def test_three_cycle(self):
        A = normal_form(1, 1, 3)
        assert {tuple(r) for r in A.relations} == {("a1_0", "a1_1"), ("a1_1", "a1_2"),
                                                   ("a1_2", "a1_0")}

    def test_linear(self):
        A = normal_form(1, 0, 4)
        assert A.num_arrows == 3 and not A.relations

    def test_shared_vertex(self):
        A = normal_form(2, 2, 7)
        assert A.num_vertices == 7 and A.num_arrows == 8
        assert len(A.in_arrows("v1")) == 2 and len(A.out_arrows("v1")) == 2

    def test_tail_nonzero(self):
        A = normal_form(1, 1, 6)
        tail = [a.name for a in A.arrows if a.name.startswith("b")]
        assert len(tail) == 3
        assert not any(A.is_relation(x, y) for x in tail for y in tail)

    @pytest.mark.parametrize("args", [(0, 1, 3), (1, -1, 3), (1, 1, 2), (1, 0, 0)])
    def test_invalid(self, args):
        with pytest.raises(SpecError):
            NormalFormSpec(*args)


class TestClassify:
    def test_report(self):
        r = classify(fixture("ex6_6"))
        assert r.gentle and r.connected and r.finite_dimensional
        assert r.m_candidates == frozenset({1}) and not r.a_branched
        assert r.invariant_pair == (3, 16)
        assert r.cycles == ((3, True), (3, True), (3, True))
        assert not r.simply_connected and r.pi1_rank == 3

    def test_tree(self):
        r = classify(linear_quiver(3))
        assert r.m_candidates is ALL_M and r.a_branched and r.simply_connected
        assert r.to_json()["m_candidates"] == "all"

    def test_disconnected(self):
        r = classify(fixture("ex6_4_left"))
        assert r.invariant_pair is None and r.m_candidates == frozenset({2})
        parts = classify_components(fixture("ex6_4_left"))
        assert sorted(p.invariant_pair for p in parts) == [(0, 3), (1, 5)]

    def test_infinite_dimensional(self):
        r = classify(quiver(["a:1->2", "b:2->3", "c:3->1"]))
        assert not r.finite_dimensional and not r.branched

    def test_explicit_m(self):
        assert classify(normal_form(1, 1, 3), 2).m_candidates == frozenset()


class TestDerivedEquivalence:
    def test_example_ideals(self):
        v = derived_equivalent(fixture("ex3_2_I1"), fixture("ex3_2_I2"), 3)
        assert v.equivalent
        assert v.evidence["phi_equal"] and v.evidence["hh_equal"]

    def test_different_rank(self):
        v = derived_equivalent(normal_form(1, 2, 8), normal_form(1, 2, 9), 1)
        assert not v.equivalent and not v.evidence["phi_equal"]
        # Hochschild dimensions alone cannot see the tail
        assert v.evidence["hh_equal"] and not v.evidence["hh_and_k0_rank_equal"]

    def test_disconnected_input(self):
        with pytest.raises(DisconnectedInputError, match="components"):
            derived_equivalent(fixture("ex6_4_left"), fixture("ex6_4_right"), 2)

    def test_not_branched(self):
        with pytest.raises(ClassificationError):
            derived_equivalent(fixture("ex7_8_A"), fixture("ex7_8_Aprime"), 1)

    def test_same_total_pair_components_differ(self):
        left = classify_components(fixture("ex6_4_left"))
        right = classify_components(fixture("ex6_4_right"))
        assert sum(p.invariant_pair.s for p in left) == sum(p.invariant_pair.s for p in right)
        assert sorted(p.invariant_pair for p in left) != sorted(p.invariant_pair for p in right)
