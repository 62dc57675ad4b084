import random

import pytest
from hypothesis import given, settings, strategies as st

from gentlequiver import NormalFormSpec, fixture, linear_quiver
from gentlequiver.ag_invariant import (FORBIDDEN, PERMITTED, PairingError, PhiInvariant,
                                       assign_signs, check_signs, orbits, phi, phi_closed_form,
                                       phi_equal, threads)
from gentlequiver.quiver import BoundQuiver, QuiverError

from conftest import branched_quivers, normal_form, quiver


class TestSigns:
    def test_single_arrow(self):
        s = assign_signs(quiver(["a:1->2"]))
        assert (s.sigma["a"], s.epsilon["a"]) == (1, 1)

    def test_shared_source(self):
        s = assign_signs(quiver(["a:1->2", "b:1->3"]))
        assert s.sigma["a"] == -s.sigma["b"]

    def test_nonzero_composite(self):
        s = assign_signs(quiver(["a:1->2", "b:2->3"]))
        assert s.sigma["b"] == -s.epsilon["a"]

    @given(branched_quivers(), st.integers(0, 10**6))
    @settings(max_examples=40, deadline=None)
    def test_random_resolution_satisfies_constraints(self, mA, seed):
        _, A = mA
        assert check_signs(A, assign_signs(A, random.Random(seed)))


def labels(ts, kind):
    return sorted(t.label() for t in ts if t.kind == kind)


class TestThreads:
    def test_pure_cycle(self):
        ts = threads(normal_form(1, 1, 3))
        assert labels(ts, PERMITTED) == ["a1_0", "a1_1", "a1_2"]
        assert labels(ts, FORBIDDEN) == ["p_c1_1", "p_c1_2", "p_v0"]

    def test_hereditary_a2(self):
        ts = threads(linear_quiver(2))
        assert labels(ts, PERMITTED) == ["a1", "h_1", "h_2"]
        assert labels(ts, FORBIDDEN) == ["a1", "p_1", "p_2"]

    def test_isolated_vertex(self):
        ts = threads(BoundQuiver(("x",), ()))
        assert labels(ts, PERMITTED) == ["h_x+", "h_x-"]
        assert labels(ts, FORBIDDEN) == ["p_x+", "p_x-"]

    def test_forbidden_threads_are_relation_chains(self):
        A = fixture("ex3_2_I2")
        for t in threads(A):
            if t.kind == FORBIDDEN and len(t.body) > 1:
                assert all(A.is_relation(a, b) for a, b in zip(t.body, t.body[1:]))
                assert len(set(t.body)) == len(t.body)

    def test_permitted_threads_are_maximal(self):
        A = fixture("ex6_6")
        for t in threads(A):
            if t.kind == PERMITTED and t.body:
                assert not A.path_predecessors(t.body[0])
                assert not A.path_successors(t.body[-1])


class TestPhi:
    def test_examples(self):
        assert phi(normal_form(1, 1, 3)).as_dict() == {(0, 3): 1, (3, 0): 1}
        assert phi(linear_quiver(3)).as_dict() == {(4, 2): 1}
        bound = quiver(["a:2->3", "b:3->1"], ["a b"])
        assert phi(bound).as_dict() == {(4, 2): 1}
        assert phi(linear_quiver(2)).as_dict() == {(3, 1): 1}

    def test_closed_form_examples(self):
        assert phi_closed_form(NormalFormSpec(1, 2, 8)).as_dict() == {(0, 3): 2, (7, 3): 1}
        assert phi_closed_form(NormalFormSpec(3, 1, 5)).as_dict() == {(0, 5): 1, (5, 0): 1}
        assert phi_closed_form(NormalFormSpec(1, 0, 1)).as_dict() == {(2, 0): 1}

    def test_formal_sum(self):
        assert phi(normal_form(1, 2, 8)).formal_sum() == "2·(0,3) + 1·(7,3)"

    def test_equality(self):
        assert phi_equal(phi(normal_form(1, 1, 3)), phi_closed_form(NormalFormSpec(1, 1, 3)))
        assert not phi_equal(PhiInvariant.from_pairs([(0, 3)]),
                             PhiInvariant.from_pairs([(0, 3), (0, 3)]))
        assert phi_equal(phi(fixture("ex3_2_I1")), phi(fixture("ex3_2_I2")))

    @pytest.mark.parametrize("m", [1, 2, 3])
    @pytest.mark.parametrize("r", [0, 1, 2])
    @pytest.mark.parametrize("n", [0, 1, 3])
    def test_normal_form_grid(self, m, r, n):
        spec = NormalFormSpec.from_tail(m, r, n)
        if spec.s >= 1:
            assert phi(normal_form(m, r, spec.s)) == phi_closed_form(spec)

    @given(branched_quivers(), st.integers(0, 10**6))
    @settings(max_examples=40, deadline=None)
    def test_independent_of_sign_choices(self, mA, seed):
        _, A = mA
        assert phi(A, assign_signs(A, random.Random(seed))) == phi(A)

    @given(branched_quivers())
    @settings(max_examples=40, deadline=None)
    def test_arrow_count_and_matching(self, mA):
        _, A = mA
        assert phi(A).total_length() == A.num_arrows
        permitted = [t.key() for t in threads(A) if t.kind == PERMITTED]
        used = [h.key() for o in orbits(A) for h in o.permitted]
        assert sorted(used) == sorted(permitted)

    def test_requires_gentle(self):
        with pytest.raises(QuiverError):
            phi(quiver(["a:x->1", "b:x->2", "c:x->3"]))
        with pytest.raises(QuiverError):
            phi(quiver(["a:1->2", "b:2->1"]))

    def test_literal_alternative_convention_breaks_pairing(self):
        with pytest.raises(PairingError):
            phi(linear_quiver(3), convention="ag")
        with pytest.raises(ValueError):
            threads(linear_quiver(3), convention="other")
