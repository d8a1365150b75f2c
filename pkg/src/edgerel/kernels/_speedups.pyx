# cython: language_level=3
"""Compiled kernels: implicit enumeration and Monte Carlo chunk evaluation.

Must stay operation-for-operation identical to ``_pure.py`` (same traversal
order, same float accumulation order, same visit counting) so that the two
backends are interchangeable bit for bit.
"""

import numpy as np

from ..errors import SearchSpaceExceeded

BACKEND = "compiled"


def enumerate_feasible(long[::1] comp_ptr, long[::1] levels, double[::1] cums,
                       double[::1] contribs, double budget, long guard):
    cdef long k = comp_ptr.shape[0] - 1
    cdef long i, j, d, visited = 0, count = 0, row = 0
    cdef double c

    min_rest_arr = np.zeros(k + 1, dtype=np.float64)
    cdef double[::1] min_rest = min_rest_arr
    for i in range(k - 1, -1, -1):
        c = contribs[comp_ptr[i]]
        for j in range(comp_ptr[i] + 1, comp_ptr[i + 1]):
            if contribs[j] < c:
                c = contribs[j]
        min_rest[i] = min_rest[i + 1] + c

    pos_arr = np.zeros(k + 1, dtype=np.int64)
    acc_arr = np.zeros(k + 1, dtype=np.float64)
    vec_arr = np.zeros(k, dtype=np.int64)
    cdef long[::1] pos = pos_arr
    cdef double[::1] acc = acc_arr
    cdef long[::1] vec = vec_arr

    # pass 1: count leaves, enforcing the visit guard
    cdef long phase
    for phase in range(2):
        d = 0
        pos[0] = comp_ptr[0]
        acc[0] = 0.0
        if phase == 1:
            out_arr = np.empty((count, k), dtype=np.int64)
            out = out_arr
            row = 0
        while d >= 0:
            if d == k:
                if phase == 0:
                    count += 1
                else:
                    for i in range(k):
                        out_arr[row, i] = vec[i]
                    row += 1
                d -= 1
                continue
            j = pos[d]
            if j >= comp_ptr[d + 1]:
                d -= 1
                continue
            pos[d] = j + 1
            if phase == 0:
                visited += 1
                if visited > guard:
                    raise SearchSpaceExceeded(
                        f"enumeration guard of {guard} visits exceeded")
            if acc[d] + contribs[j] + min_rest[d + 1] <= budget:
                vec[d] = levels[j]
                acc[d + 1] = acc[d] + contribs[j]
                d += 1
                if d < k:
                    pos[d] = comp_ptr[d]
        if phase == 0 and count == 0:
            return np.empty((0, k), dtype=np.int64), visited
    return out_arr, visited


def mc_chunk(double[:, ::1] u, long[::1] comp_ptr, long[::1] levels,
             double[::1] cums, double[::1] contribs, long[::1] plan_ptr,
             double[::1] budgets):
    cdef long n = u.shape[0]
    cdef long n_plans = budgets.shape[0]
    cdef long i, p, c, lo, hi, l, r, m, union_count = 0
    cdef double t, uu
    cdef bint any_ok

    per_arr = np.zeros(n_plans, dtype=np.int64)
    cdef long[::1] per = per_arr

    for i in range(n):
        any_ok = False
        for p in range(n_plans):
            t = 0.0
            for c in range(plan_ptr[p], plan_ptr[p + 1]):
                lo = comp_ptr[c]
                hi = comp_ptr[c + 1]
                uu = u[i, c]
                l = lo
                r = hi
                while l < r:
                    m = (l + r) >> 1
                    if cums[m] <= uu:
                        l = m + 1
                    else:
                        r = m
                if l >= hi:
                    l = hi - 1
                t += contribs[l]
            if t <= budgets[p]:
                per[p] += 1
                any_ok = True
        if any_ok:
            union_count += 1
    return union_count, per_arr
