"""Feasible-state enumeration and reduction to minimal status vectors.

The completion time is antitone in every capacity component, so the
feasible set under a deadline is an upper set of the component level
lattice: it is fully described by its minimal elements.  Enumeration is
implicit (subtrees that cannot meet the deadline even at maximal remaining
capacities are skipped) and iterates only levels with positive
probability -- zero-probability levels cannot occur.

Vectors are kept in canonical order: lexicographic over the concatenated
(x, y) tuple.  This makes enumeration, minimal-vector filtering, and the
downstream disjoint-products recursion deterministic across runs and
backends.  Enumeration may be partitioned across workers by splitting the
outermost level range; all functions here are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from ._tables import plan_table
from .model import DeploymentPlan, StateVector

DEFAULT_GUARD = 10 ** 8


@dataclass(frozen=True)
class SolutionSet:
    """Every positive-support state meeting the deadline, canonically ordered."""

    plan: DeploymentPlan
    vectors: tuple[StateVector, ...]
    deadline: float
    input_size: float

    def __len__(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class MsvSet:
    """The minimal elements of a solution set (an antichain under <=)."""

    plan: DeploymentPlan
    vectors: tuple[StateVector, ...]
    deadline: float
    input_size: float

    def __len__(self) -> int:
        return len(self.vectors)


def feasible_vectors(plan: DeploymentPlan, input_size: float, deadline: float,
                     guard: int = DEFAULT_GUARD) -> SolutionSet:
    """Enumerate all states whose completion time meets the deadline.

    Raises SearchSpaceExceeded when the pruned traversal would visit more
    than ``guard`` level expansions.
    """
    if deadline <= 0:
        raise ValueError("deadline must be > 0")
    table = plan_table(plan, input_size)
    comp_ptr, levels, cums, contribs = table.packed()
    rows, _visited = kernels.enumerate_feasible(
        comp_ptr, levels, cums, contribs, table.budget(deadline), guard)
    nb = table.n_branches
    vectors = tuple(
        StateVector(x=tuple(int(v) for v in row[:nb]),
                    y=tuple(int(v) for v in row[nb:]))
        for row in rows
    )
    return SolutionSet(plan, vectors, float(deadline), float(input_size))


def minimal_elements(vectors) -> list[tuple[int, ...]]:
    """Minimal elements of lexicographically sorted concatenated vectors.

    In lexicographic order any dominator of a vector appears earlier, so a
    single pass against the kept antichain suffices (the pairwise quadratic
    filter, linear in practice at these antichain sizes).
    """
    kept: list[tuple[int, ...]] = []
    for v in vectors:
        if not any(all(m[i] <= v[i] for i in range(len(v))) for m in kept):
            kept.append(v)
    return kept


def minimal_vectors(solutions: SolutionSet) -> MsvSet:
    """Reduce a solution set to its minimal status vectors.

    Idempotent; the result is an antichain that covers the input (every
    feasible vector dominates at least one member).
    """
    flat = [v.concat() for v in solutions.vectors]
    nb = len(solutions.plan.branches)
    kept = minimal_elements(flat)
    vectors = tuple(StateVector(x=v[:nb], y=v[nb:]) for v in kept)
    return MsvSet(solutions.plan, vectors, solutions.deadline, solutions.input_size)
