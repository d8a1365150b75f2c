"""Shared fixtures: the reference scenario, toy builders, random scenarios."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from edgerel.model import (
    BranchSpec,
    DeploymentPlan,
    NodeSpec,
    Pmf,
    Scenario,
)
from edgerel.timing import min_total_time, total_time
from edgerel.model import StateVector

REPO_ROOT = Path(__file__).resolve().parent.parent
GOLDEN_PATH = REPO_ROOT / "examples" / "remr-paper.scenario"
TRACE_PATH = Path(__file__).resolve().parent / "data" / "google-trace-toy.csv"

NODE_PMF = Pmf(((1, 0.01), (2, 0.09), (3, 0.26), (4, 0.37), (5, 0.20), (6, 0.07)))


@pytest.fixture(scope="session")
def golden_scenario():
    from edgerel.model import load_scenario
    return load_scenario(GOLDEN_PATH)


def pmf(mapping) -> Pmf:
    return Pmf(tuple((int(k), float(v)) for k, v in mapping.items()))


def sink(node_id="sink") -> NodeSpec:
    return NodeSpec(node_id, "sink")


def single_stage_plan(ratio=0.8, lead=2.0, bandwidth=None, resource=None,
                      name="toy") -> DeploymentPlan:
    """One compute node, one branch, one sink."""
    bw = bandwidth or pmf({1: 0.2, 3: 0.3, 5: 0.5})
    res = resource or NODE_PMF
    node = NodeSpec("n0", "compute", ratio=ratio, resource=res)
    branch = BranchSpec("b1", lead, bw)
    return DeploymentPlan(name, (node, branch, sink()))


def scenario_for(plans) -> Scenario:
    branches, nodes, seen = [], [], set()
    for plan in plans:
        for item in plan.path:
            if item.id in seen:
                continue
            seen.add(item.id)
            (branches if isinstance(item, BranchSpec) else nodes).append(item)
    return Scenario(tuple(branches), tuple(nodes), tuple(plans))


def random_pmf(rng: random.Random, max_levels=4, level_pool=(0, 1, 2, 3, 4, 5)) -> Pmf:
    k = rng.randint(1, max_levels)
    levels = rng.sample(level_pool, k)
    weights = [rng.uniform(0.1, 1.0) for _ in levels]
    total = sum(weights)
    return Pmf(tuple(sorted((l, w / total) for l, w in zip(levels, weights))))


def random_plan(rng: random.Random, max_branches=3, max_computes=3,
                max_levels=4, name="rand") -> DeploymentPlan:
    nb = rng.randint(1, max_branches)
    n_compute = rng.randint(0, min(nb, max_computes))
    kinds = ["compute"] * n_compute + ["transit"] * (nb - n_compute)
    rng.shuffle(kinds)
    path = []
    for i, kind in enumerate(kinds):
        if kind == "compute":
            override = rng.choice([None, None, None, round(rng.uniform(0.01, 3.0), 3)])
            node = NodeSpec(f"{name}-n{i}", "compute",
                            ratio=round(rng.uniform(0.3, 2.0), 3),
                            resource=random_pmf(rng, max_levels, (0, 1, 2, 3, 4, 5, 6)),
                            output_override=override)
        else:
            node = NodeSpec(f"{name}-n{i}", "transit")
        path.append(node)
        path.append(BranchSpec(f"{name}-b{i}", rng.randint(0, 2),
                               random_pmf(rng, max_levels)))
    path.append(sink(f"{name}-sink"))
    return DeploymentPlan(name, tuple(path))


def pick_deadline(rng: random.Random, plan: DeploymentPlan, input_size: float) -> float:
    """A deadline near a random achievable time, so feasibility is non-trivial."""
    best = min_total_time(plan, input_size).total
    v = StateVector(
        x=tuple(rng.choice(b.bandwidth.levels) for b in plan.branches),
        y=tuple(rng.choice(n.resource.levels) for n in plan.compute_nodes),
    )
    t = total_time(plan, input_size, v).total
    anchor = t if t != float("inf") else best * 2.0
    return max(best * rng.uniform(0.9, 1.1), min(anchor, best * 4.0), 0.5)


def random_instance(seed: int, max_branches=3, max_computes=3, max_levels=4):
    """(plan, input_size, deadline) for oracle-equivalence style tests."""
    rng = random.Random(seed)
    plan = random_plan(rng, max_branches, max_computes, max_levels,
                       name=f"rand{seed}")
    input_size = round(rng.uniform(2.0, 18.0), 2)
    deadline = pick_deadline(rng, plan, input_size)
    return plan, input_size, deadline
