"""Seeded Monte Carlo estimation of scenario reliability.

The simulator samples the analytic timing model directly: per trial, every
plan draws one independent state (capacities are held for the duration of
a task), its completion time is evaluated, and the trial succeeds when any
plan meets the deadline -- the same union-of-independent-plans semantics
the analytic pipeline uses.  Plans sharing a physical source node still
sample independently, which is exactly the independence assumption of the
analytic combination.

Randomness is fully reproducible.  Trials are processed in fixed logical
chunks of ``CHUNK_TRIALS``; chunk ``k`` draws its uniforms from
``PCG64(SeedSequence(entropy=seed, spawn_key=(k,)))`` as one
(trials, components) matrix, components ordered plan by plan (branches
then compute nodes).  Levels come from the inverse CDF over ascending
level order.  The partitioning is logical, so results are identical no
matter how chunks would be distributed across workers, and identical
(seed, trials) inputs give bit-identical results on either kernel backend.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._tables import plan_table
from .model import DeploymentPlan, Scenario, StateVector

CHUNK_TRIALS = 1 << 16
DEFAULT_SEED = 20210419


@dataclass(frozen=True)
class SimConfig:
    trials: int
    seed: int = DEFAULT_SEED
    confidence_z: float = 3.0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass(frozen=True)
class SimResult:
    """Estimate with a z-sigma binomial half-width and per-plan hit rates."""

    estimate: float
    half_width: float
    trials: int
    seed: int
    per_plan_estimates: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "half_width": self.half_width,
            "trials": self.trials,
            "seed": self.seed,
            "per_plan_estimates": dict(self.per_plan_estimates),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(chunk_index,))
    return np.random.Generator(np.random.PCG64(ss))


def sample_state(plan: DeploymentPlan, input_size: float,
                 rng: np.random.Generator) -> StateVector:
    """Draw one state for ``plan`` by inverse CDF, one uniform per component."""
    table = plan_table(plan, input_size)
    flat = []
    for levels, cum in zip(table.levels, table.cums):
        u = rng.random()
        idx = int(np.searchsorted(cum, u, side="right"))
        idx = min(idx, len(levels) - 1)
        flat.append(int(levels[idx]))
    x, y = table.split(tuple(flat))
    return StateVector(x=x, y=y)


def simulate(scenario: Scenario, input_size: float, deadline: float,
             cfg: SimConfig) -> SimResult:
    """Estimate Pr(any plan meets the deadline) from ``cfg.trials`` samples."""
    tables = [plan_table(p, input_size) for p in scenario.plans]
    level_parts, cum_parts, contrib_parts, sizes = [], [], [], []
    plan_ptr = [0]
    for t in tables:
        level_parts.extend(t.levels)
        cum_parts.extend(t.cums)
        contrib_parts.extend(t.contribs)
        sizes.extend(len(l) for l in t.levels)
        plan_ptr.append(plan_ptr[-1] + t.n_components)
    comp_ptr = np.zeros(len(sizes) + 1, dtype=np.int64)
    np.cumsum(sizes, out=comp_ptr[1:])
    levels = np.concatenate(level_parts)
    cums = np.concatenate(cum_parts)
    contribs = np.concatenate(contrib_parts)
    plan_ptr = np.array(plan_ptr, dtype=np.int64)
    budgets = np.array([t.budget(deadline) for t in tables], dtype=np.float64)
    n_comp = int(plan_ptr[-1])

    union_hits = 0
    per_plan_hits = np.zeros(len(tables), dtype=np.int64)
    done = 0
    chunk_index = 0
    while done < cfg.trials:
        n = min(CHUNK_TRIALS, cfg.trials - done)
        u = _chunk_rng(cfg.seed, chunk_index).random((n, n_comp))
        hits, per = kernels.mc_chunk(u, comp_ptr, levels, cums, contribs,
                                     plan_ptr, budgets)
        union_hits += hits
        per_plan_hits += per
        done += n
        chunk_index += 1

    estimate = union_hits / cfg.trials
    half_width = cfg.confidence_z * math.sqrt(estimate * (1.0 - estimate) / cfg.trials)
    per_plan = {p.name: int(h) / cfg.trials
                for p, h in zip(scenario.plans, per_plan_hits)}
    return SimResult(estimate, half_width, cfg.trials, cfg.seed, per_plan)
