"""Flattened per-component tables consumed by the enumeration/simulation kernels.

Each state component (branch bandwidth or compute-node resource, in the
canonical order: branches in plan order, then compute nodes in plan order)
gets three parallel arrays over the positive-probability levels of its pmf:

* ``levels``  -- the capacity levels, ascending
* ``probs``   -- their probabilities (``cums`` is the inclusive prefix sum)
* ``contrib`` -- the component's additive share of the completion time at
  that level (rounded transmission for branches, unrounded running time for
  compute nodes, ``inf`` at level 0 when the component carries data)

The total completion time of a vector is ``lead + sum(contrib)``, so both
kernels and the Monte Carlo sampler work from sums of table lookups and are
bit-identical across backends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import DeploymentPlan, Pmf
from .timing import ceil_units, compute_inputs, data_sizes, lead_total, TIME_TOL


def _component_table(pmf: Pmf, load: float, rounded: bool):
    support = pmf.support()
    levels = np.array([l for l, _ in support], dtype=np.int64)
    probs = np.array([p for _, p in support], dtype=np.float64)
    contrib = np.empty(len(support), dtype=np.float64)
    for i, (level, _) in enumerate(support):
        if load <= 0.0:
            contrib[i] = 0.0
        elif level == 0:
            contrib[i] = math.inf
        elif rounded:
            contrib[i] = float(ceil_units(load / level))
        else:
            contrib[i] = load / level
    return levels, probs, contrib


@dataclass(frozen=True)
class PlanTable:
    """Kernel-ready view of one plan at a given input size."""

    plan: DeploymentPlan
    input_size: float
    lead: float
    levels: tuple[np.ndarray, ...]
    probs: tuple[np.ndarray, ...]
    cums: tuple[np.ndarray, ...]
    contribs: tuple[np.ndarray, ...]
    n_branches: int

    @property
    def n_components(self) -> int:
        return len(self.levels)

    def budget(self, deadline: float) -> float:
        """Slack-adjusted bound on the sum of contributions."""
        return deadline - self.lead + TIME_TOL

    def pmfs(self) -> list[Pmf]:
        return [b.bandwidth for b in self.plan.branches] + \
               [n.resource for n in self.plan.compute_nodes]

    def split(self, flat: tuple[int, ...]):
        return flat[:self.n_branches], flat[self.n_branches:]

    def packed(self):
        """Flat (comp_ptr, levels, cums, contribs) arrays for the kernels."""
        sizes = [len(l) for l in self.levels]
        ptr = np.zeros(len(sizes) + 1, dtype=np.int64)
        np.cumsum(sizes, out=ptr[1:])
        return (ptr,
                np.concatenate(self.levels),
                np.concatenate(self.cums),
                np.concatenate(self.contribs))


def plan_table(plan: DeploymentPlan, input_size: float) -> PlanTable:
    loads = data_sizes(plan, input_size).sizes
    inputs = compute_inputs(plan, input_size)
    levels, probs, cums, contribs = [], [], [], []
    for branch, load in zip(plan.branches, loads):
        l, p, c = _component_table(branch.bandwidth, load, rounded=True)
        levels.append(l); probs.append(p); contribs.append(c)
    for node, cin in zip(plan.compute_nodes, inputs):
        l, p, c = _component_table(node.resource, cin, rounded=False)
        levels.append(l); probs.append(p); contribs.append(c)
    for p in probs:
        cum = np.cumsum(p)
        cum[-1] = 1.0  # guard inverse-CDF sampling against rounding
        cums.append(cum)
    return PlanTable(
        plan=plan,
        input_size=float(input_size),
        lead=lead_total(plan),
        levels=tuple(levels),
        probs=tuple(probs),
        cums=tuple(cums),
        contribs=tuple(contribs),
        n_branches=len(plan.branches),
    )
