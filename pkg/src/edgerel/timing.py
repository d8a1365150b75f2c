"""Data-size evolution along a plan and total completion time of a state.

The completion time of one joint capacity assignment decomposes into three
parts: the fixed per-branch lead times, the per-branch transmission times
(data carried by the branch divided by its bandwidth level, rounded up),
and the per-compute-node running times (data input to the node divided by
its resource level, not rounded).  Transit nodes contribute no computation
term.  A zero bandwidth level on a loaded branch, or a zero resource level
on a loaded compute node, makes the state infeasible (total = inf).

All boundary comparisons use an absolute slack of ``TIME_TOL`` so that the
floating-point size chain (products of decimal ratios) cannot flip a
rounded transmission term or a deadline check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DimensionMismatch
from .model import DeploymentPlan, StateVector

TIME_TOL = 1e-9


def ceil_units(quantity: float) -> int:
    """Round a transmission time up to whole seconds, with float slack."""
    return math.ceil(quantity - TIME_TOL)


@dataclass(frozen=True)
class StageSizes:
    """Data sizes along a plan: sizes[i] = output of node i = load of branch i+1."""

    sizes: tuple[float, ...]

    @property
    def final(self) -> float:
        return self.sizes[-1]


@dataclass(frozen=True)
class CompletionTime:
    """Total completion time and its three components (seconds)."""

    total: float
    lead: float
    transmission: float
    computation: float

    @property
    def feasible(self) -> bool:
        return math.isfinite(self.total)

    def meets(self, deadline: float) -> bool:
        return self.total <= deadline + TIME_TOL


def data_sizes(plan: DeploymentPlan, input_size: float) -> StageSizes:
    """Evolve the input size through the plan's node chain.

    Compute nodes multiply by their ratio (or pin the output to their
    ``output_override``); transit nodes forward unchanged.  Independent of
    any state vector.
    """
    if input_size <= 0:
        raise ValueError("input_size must be > 0")
    size = float(input_size)
    out = []
    for node in plan.chain:
        if node.computes:
            size = node.output_override if node.output_override is not None else size * node.ratio
        out.append(size)
    return StageSizes(tuple(out))


def compute_inputs(plan: DeploymentPlan, input_size: float) -> tuple[float, ...]:
    """Data size arriving at each compute node, in plan order."""
    size = float(input_size)
    inputs = []
    for node in plan.chain:
        if node.computes:
            inputs.append(size)
            size = node.output_override if node.output_override is not None else size * node.ratio
    return tuple(inputs)


def lead_total(plan: DeploymentPlan) -> float:
    return math.fsum(b.lead_time for b in plan.branches)


def total_time(plan: DeploymentPlan, input_size: float, v: StateVector) -> CompletionTime:
    """Evaluate the completion time of state ``v`` on ``plan``.

    ``v`` must carry one bandwidth level per branch and one resource level
    per compute node, in plan order.
    """
    branches = plan.branches
    if len(v.x) != len(branches) or len(v.y) != len(plan.compute_nodes):
        raise DimensionMismatch(
            f"plan {plan.name} expects {len(branches)} x / "
            f"{len(plan.compute_nodes)} y components, got {len(v.x)}/{len(v.y)}")

    lead = lead_total(plan)
    loads = data_sizes(plan, input_size).sizes
    transmission = 0.0
    for load, level in zip(loads, v.x):
        if load <= 0.0:
            continue
        if level == 0:
            transmission = math.inf
            break
        transmission += ceil_units(load / level)

    computation = 0.0
    for cin, level in zip(compute_inputs(plan, input_size), v.y):
        if cin <= 0.0:
            continue
        if level == 0:
            computation = math.inf
            break
        computation += cin / level

    total = lead + transmission + computation
    return CompletionTime(total, lead, transmission, computation)


def min_total_time(plan: DeploymentPlan, input_size: float) -> CompletionTime:
    """Completion time with every capacity at its maximum level.

    This is the plan's minimum achievable time; if it exceeds the deadline
    the feasible set is empty.
    """
    v = StateVector(
        x=tuple(b.bandwidth.max_level for b in plan.branches),
        y=tuple(n.resource.max_level for n in plan.compute_nodes),
    )
    return total_time(plan, input_size, v)
