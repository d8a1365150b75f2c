"""Implicit enumeration and minimal-vector reduction."""

import itertools

import pytest

from edgerel.errors import SearchSpaceExceeded
from edgerel.model import StateVector
from edgerel.pathset import feasible_vectors, minimal_elements, minimal_vectors
from edgerel.timing import lead_total, total_time

from conftest import pmf, random_instance, single_stage_plan


def naive_feasible(plan, input_size, deadline):
    """Full product-space enumeration, straight off the timing model."""
    xs = [b.bandwidth.support() for b in plan.branches]
    ys = [n.resource.support() for n in plan.compute_nodes]
    nb = len(xs)
    out = []
    for combo in itertools.product(*xs, *ys):
        v = StateVector(x=tuple(l for l, _ in combo[:nb]),
                        y=tuple(l for l, _ in combo[nb:]))
        if total_time(plan, input_size, v).meets(deadline):
            out.append(v)
    return sorted(out, key=lambda v: v.concat())


class TestFeasibleVectors:
    def test_toy_matches_exhaustive_check(self):
        plan = single_stage_plan(ratio=1.0, lead=0.0,
                                 bandwidth=pmf({1: 0.5, 2: 0.5}),
                                 resource=pmf({1: 0.5, 2: 0.5}))
        # input 4: times are ceil(4/x) + 4/y over the four states
        got = feasible_vectors(plan, 4, 5.0)
        assert got.vectors == tuple(naive_feasible(plan, 4, 5.0))
        assert got.vectors == (StateVector((2,), (2,)),)

    def test_pruned_equals_naive_on_random_instances(self):
        for seed in range(60):
            plan, c, t = random_instance(seed)
            got = feasible_vectors(plan, c, t)
            assert list(got.vectors) == naive_feasible(plan, c, t), f"seed {seed}"

    def test_deadline_below_lead_is_empty(self):
        plan, c, _ = random_instance(3)
        lead = lead_total(plan)
        if lead == 0:
            plan, c, _ = random_instance(5)
            lead = lead_total(plan)
        assert lead > 0
        assert feasible_vectors(plan, c, lead * 0.5).vectors == ()

    def test_canonical_lexicographic_order(self):
        for seed in range(20):
            plan, c, t = random_instance(seed)
            vecs = [v.concat() for v in feasible_vectors(plan, c, t).vectors]
            assert vecs == sorted(vecs)
            assert len(set(vecs)) == len(vecs)

    def test_upper_closure(self):
        for seed in range(25):
            plan, c, t = random_instance(seed)
            solutions = feasible_vectors(plan, c, t)
            members = {v.concat() for v in solutions.vectors}
            supports = [b.bandwidth.levels for b in plan.branches] + \
                       [n.resource.levels for n in plan.compute_nodes]
            for v in list(members)[:50]:
                for i, levels in enumerate(supports):
                    for up in levels:
                        if up > v[i]:
                            w = v[:i] + (up,) + v[i + 1:]
                            assert w in members, f"seed {seed}: {w} missing above {v}"

    def test_guard_trips(self):
        plan, c, t = random_instance(11)
        with pytest.raises(SearchSpaceExceeded):
            feasible_vectors(plan, c, t, guard=2)


class TestMinimalVectors:
    def test_singleton(self):
        assert minimal_elements([(1, 1)]) == [(1, 1)]

    def test_dominated_member_removed(self):
        assert minimal_elements([(1, 2), (2, 1), (2, 2)]) == [(1, 2), (2, 1)]

    def test_idempotent_antichain_cover(self):
        for seed in range(40):
            plan, c, t = random_instance(seed)
            solutions = feasible_vectors(plan, c, t)
            msvs = minimal_vectors(solutions)
            again = minimal_vectors(
                type(solutions)(plan, msvs.vectors, t, c))
            assert again.vectors == msvs.vectors  # idempotence
            flats = [v.concat() for v in msvs.vectors]
            for a, b in itertools.combinations(flats, 2):  # antichain
                assert not all(x <= y for x, y in zip(a, b))
                assert not all(y <= x for x, y in zip(a, b))
            for v in solutions.vectors:  # cover
                fv = v.concat()
                assert any(all(m[i] <= fv[i] for i in range(len(fv))) for m in flats)

    def test_empty(self):
        assert minimal_elements([]) == []
