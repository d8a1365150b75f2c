"""RSDP against its two oracles, event probabilities, and the plan union."""

import itertools
import random

import pytest

from edgerel.model import DeploymentPlan, StateVector
from edgerel.pathset import MsvSet, SolutionSet, feasible_vectors, minimal_vectors
from edgerel.reliability import (
    evaluate_scenario,
    event_probability,
    exact_reliability,
    inclusion_exclusion_reliability,
    rsdp_reliability,
    union_dominance_ie,
    union_dominance_rsdp,
    union_reliability,
)

from conftest import pmf, random_instance, single_stage_plan

HALF = pmf({0: 0.2, 1: 0.3, 2: 0.5})


def msv_set(plan, vectors, deadline=1.0, input_size=1.0):
    nb = len(plan.branches)
    return MsvSet(plan, tuple(StateVector(v[:nb], v[nb:]) for v in vectors),
                  deadline, input_size)


class TestEventProbability:
    def spec_shaped_plan(self, golden_scenario):
        """Four branches and computes (source, mid, final) around one transit."""
        s = golden_scenario
        path = (s.node("s0"), s.branch("i1"), s.node("s11"), s.branch("i2"),
                s.node("s12"), s.branch("i3"), s.node("s13"), s.branch("i4"),
                s.node("cloud"))
        return DeploymentPlan("spec-a", path)

    def test_published_vector_value(self, golden_scenario):
        plan = self.spec_shaped_plan(golden_scenario)
        v = StateVector(x=(2, 3, 4, 1), y=(5, 1, 6))
        # survival products 0.95 * 0.94 * 0.93 * 0.97 * 0.27 * 1.0 * 0.07
        assert event_probability(v, plan) == pytest.approx(0.01522537317, abs=1e-11)

    def test_all_zero_vector(self, golden_scenario):
        plan = self.spec_shaped_plan(golden_scenario)
        v = StateVector(x=(0, 0, 0, 0), y=(0, 0, 0))
        assert event_probability(v, plan) == pytest.approx(1.0, abs=1e-12)

    def test_component_above_max_level(self, golden_scenario):
        plan = self.spec_shaped_plan(golden_scenario)
        v = StateVector(x=(6, 0, 0, 0), y=(0, 0, 0))
        assert event_probability(v, plan) == 0.0


class TestUnionDominance:
    def test_two_vector_toy(self):
        pmfs = [HALF, HALF]
        vectors = [(1, 1), (2, 0)]
        # by hand: 0.64 + 0.5 - 0.4
        assert union_dominance_rsdp(vectors, pmfs) == pytest.approx(0.74, abs=1e-12)
        assert union_dominance_ie(vectors, pmfs) == pytest.approx(0.74, abs=1e-12)

    def test_direct_pmf_summation_agrees(self):
        pmfs = [HALF, HALF]
        vectors = [(1, 1), (2, 0)]
        total = 0.0
        for (lx, px), (ly, py) in itertools.product(HALF.entries, HALF.entries):
            if any(lx >= v[0] and ly >= v[1] for v in vectors):
                total += px * py
        assert total == pytest.approx(0.74, abs=1e-12)

    def test_random_antichains_match_ie(self):
        rng = random.Random(2024)
        for _ in range(30):
            k = rng.randint(1, 3)
            pmfs = [pmf({0: 0.25, 1: 0.25, 2: 0.25, 3: 0.25}) for _ in range(k)]
            vectors = {tuple(rng.randint(0, 3) for _ in range(k))
                       for _ in range(rng.randint(1, 6))}
            a = union_dominance_rsdp(vectors, pmfs)
            b = union_dominance_ie(vectors, pmfs)
            assert a == pytest.approx(b, abs=1e-9)


class TestPlanReliability:
    def toy(self):
        return single_stage_plan(ratio=1.0, lead=0.0, bandwidth=HALF, resource=HALF)

    def test_empty_msvs_yield_zero(self):
        plan = self.toy()
        assert rsdp_reliability(msv_set(plan, []), plan) == 0.0
        assert inclusion_exclusion_reliability(msv_set(plan, []), plan) == 0.0

    def test_singleton_equals_event_probability(self):
        plan = self.toy()
        m = msv_set(plan, [(1, 2)])
        assert rsdp_reliability(m, plan) == pytest.approx(
            event_probability(StateVector((1,), (2,)), plan), abs=1e-12)

    def test_toy_pipeline_all_three_routes(self):
        plan = self.toy()
        # input 4, deadline 6: feasible states are (1,2), (2,1), (2,2)
        solutions = feasible_vectors(plan, 4, 6)
        msvs = minimal_vectors(solutions)
        assert {v.concat() for v in msvs.vectors} == {(1, 2), (2, 1)}
        r = rsdp_reliability(msvs, plan)
        assert r == pytest.approx(0.55, abs=1e-12)
        assert exact_reliability(plan, 4, 6) == pytest.approx(r, abs=1e-9)
        assert inclusion_exclusion_reliability(msvs, plan) == pytest.approx(r, abs=1e-9)

    def test_oracle_equivalence_random(self):
        for seed in range(40):
            plan, c, t = random_instance(seed)
            msvs = minimal_vectors(feasible_vectors(plan, c, t))
            r = rsdp_reliability(msvs, plan)
            assert r == pytest.approx(exact_reliability(plan, c, t), abs=1e-9), f"seed {seed}"
            if len(msvs) <= 15:
                assert r == pytest.approx(
                    inclusion_exclusion_reliability(msvs, plan), abs=1e-9), f"seed {seed}"

    def test_dominated_vector_removal_is_neutral(self):
        for seed in range(25):
            plan, c, t = random_instance(seed)
            solutions = feasible_vectors(plan, c, t)
            if not solutions.vectors:
                continue
            msvs = minimal_vectors(solutions)
            full = MsvSet(plan, solutions.vectors, t, c)  # un-minimized input
            assert rsdp_reliability(full, plan) == pytest.approx(
                rsdp_reliability(msvs, plan), abs=1e-9)

    def test_probability_bounds(self):
        for seed in range(25):
            plan, c, t = random_instance(seed)
            msvs = minimal_vectors(feasible_vectors(plan, c, t))
            if not msvs.vectors:
                continue
            r = rsdp_reliability(msvs, plan)
            events = [event_probability(v, plan) for v in msvs.vectors]
            assert max(events) - 1e-12 <= r <= min(1.0, sum(events)) + 1e-12

    def test_monotone_in_deadline_and_input(self):
        plan, c, t = random_instance(17)
        r_of = lambda cc, tt: rsdp_reliability(
            minimal_vectors(feasible_vectors(plan, cc, tt)), plan)
        base = r_of(c, t)
        assert r_of(c, t * 1.5) >= base - 1e-12
        assert r_of(c * 1.5, t) <= base + 1e-12


class TestUnionReliability:
    def test_certain_plan_dominates(self):
        assert union_reliability([1.0, 0.3]) == pytest.approx(1.0, abs=1e-12)

    def test_single_plan_passthrough(self):
        assert union_reliability([0.375]) == pytest.approx(0.375, abs=1e-15)

    def test_reference_three_plan_value(self):
        got = union_reliability([0.82344, 0.87679, 0.90955])
        assert got == pytest.approx(0.99805, abs=5e-6)

    def test_matches_product_form_and_permutation_invariant(self):
        rng = random.Random(99)
        for _ in range(200):
            values = [rng.random() for _ in range(rng.randint(1, 5))]
            r = union_reliability(values)
            prod = 1.0
            for v in values:
                prod *= 1.0 - v
            assert r == pytest.approx(1.0 - prod, abs=1e-12)
            shuffled = values[:]
            rng.shuffle(shuffled)
            assert union_reliability(shuffled) == pytest.approx(r, abs=1e-12)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            union_reliability([1.5])


class TestEvaluateScenario:
    def test_golden_values_oracle_checked(self, golden_scenario):
        report = evaluate_scenario(golden_scenario, 15, 25, cross_check=True)
        assert report.diagnostics["max_abs_delta"] < 1e-9
        by_name = {p.name: p for p in report.per_plan}
        # frozen regression values, equal to the exact oracle above
        assert by_name["a"].reliability == pytest.approx(0.84024472, abs=1e-7)
        assert by_name["b"].reliability == pytest.approx(0.88185071, abs=1e-7)
        assert by_name["c"].reliability == pytest.approx(0.90939020, abs=1e-7)
        assert report.global_reliability == pytest.approx(
            union_reliability([p.reliability for p in report.per_plan]), abs=1e-12)

    def test_report_serializes(self, golden_scenario):
        import json
        report = evaluate_scenario(golden_scenario, 15, 25)
        doc = json.loads(report.to_json())
        assert doc["global_reliability"] == report.global_reliability
        assert [p["name"] for p in doc["plans"]] == ["a", "b", "c"]
