"""Pure-Python reference implementations of the hot kernels.

These mirror the compiled versions in ``_speedups.pyx`` operation for
operation; both lanes must produce identical outputs (same traversal
order, same float accumulation order).
"""

from __future__ import annotations

import numpy as np

from ..errors import SearchSpaceExceeded

BACKEND = "pure"


def enumerate_feasible(comp_ptr, levels, cums, contribs, budget, guard):
    """Depth-first implicit enumeration over the component level lattice.

    Returns an (n, k) int64 array of level vectors with contribution sum
    <= budget, in lexicographic order, plus the number of level expansions
    visited.  Raises SearchSpaceExceeded when the visit count passes
    ``guard``: the contribution of every component is non-increasing in its
    level, so any level whose best-case completion already misses the
    budget prunes its whole subtree.
    """
    k = len(comp_ptr) - 1
    spans = [(int(comp_ptr[i]), int(comp_ptr[i + 1])) for i in range(k)]
    # minimal possible contribution of components i.. (suffix)
    min_rest = [0.0] * (k + 1)
    for i in range(k - 1, -1, -1):
        lo, hi = spans[i]
        min_rest[i] = min_rest[i + 1] + min(contribs[lo:hi])

    out: list[tuple[int, ...]] = []
    vec = [0] * k
    visited = 0

    def descend(i: int, partial: float):
        nonlocal visited
        if i == k:
            out.append(tuple(vec))
            return
        lo, hi = spans[i]
        for j in range(lo, hi):
            visited += 1
            if visited > guard:
                raise SearchSpaceExceeded(f"enumeration guard of {guard} visits exceeded")
            if partial + contribs[j] + min_rest[i + 1] <= budget:
                vec[i] = int(levels[j])
                descend(i + 1, partial + contribs[j])

    descend(0, 0.0)
    result = np.array(out, dtype=np.int64) if out else np.empty((0, k), dtype=np.int64)
    return result, visited


def mc_chunk(u, comp_ptr, levels, cums, contribs, plan_ptr, budgets):
    """Evaluate one chunk of simulation trials.

    ``u`` is an (n, k_total) matrix of uniforms, one column per component
    (plans concatenated).  Each uniform maps to a level by inverse CDF over
    the canonical level order; the trial succeeds for a plan when that
    plan's contribution sum is within its budget.  Returns the union
    success count and the per-plan counts.
    """
    n = u.shape[0]
    n_plans = len(budgets)
    per_plan = np.zeros(n_plans, dtype=np.int64)
    union = np.zeros(n, dtype=bool)
    for p in range(n_plans):
        t = np.zeros(n, dtype=np.float64)
        for c in range(int(plan_ptr[p]), int(plan_ptr[p + 1])):
            lo, hi = int(comp_ptr[c]), int(comp_ptr[c + 1])
            idx = np.searchsorted(cums[lo:hi], u[:, c], side="right")
            np.minimum(idx, hi - lo - 1, out=idx)
            t += contribs[lo:hi][idx]
        ok = t <= budgets[p]
        per_plan[p] = int(np.count_nonzero(ok))
        union |= ok
    return int(np.count_nonzero(union)), per_plan
