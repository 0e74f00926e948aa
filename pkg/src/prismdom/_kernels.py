"""Bitmask search kernels.

Every vertex set is a ``uint64`` mask and every graph is passed as the array
of its closed neighbourhoods, ``closed[v] = adj[v] | (1 << v)``. The same
source runs under numba or as plain Python (see ``_jit``), so the code sticks
to the subset of numpy that numba understands and keeps every mask in
``np.uint64`` to avoid signed/unsigned promotion to float.
"""
from __future__ import annotations

import numpy as np

from ._jit import jit


@jit
def popcount(x):
    # no multiply: keeps numpy scalars in the fallback path free of overflow
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    x = x + (x >> np.uint64(8))
    x = x + (x >> np.uint64(16))
    x = x + (x >> np.uint64(32))
    return np.int64(x & np.uint64(0x7F))


@jit
def bit(v):
    return np.uint64(1) << np.uint64(v)


@jit
def union_all(closed):
    acc = np.uint64(0)
    for v in range(closed.shape[0]):
        acc = acc | closed[v]
    return acc


@jit
def coverage(closed, sel):
    acc = np.uint64(0)
    for v in range(closed.shape[0]):
        if (sel >> np.uint64(v)) & np.uint64(1):
            acc = acc | closed[v]
    return popcount(acc)


@jit
def greedy_cover(closed, k):
    """Pick up to ``k`` vertices by largest marginal gain. Returns (covered, selected)."""
    n = closed.shape[0]
    covered = np.uint64(0)
    sel = np.uint64(0)
    for _ in range(k):
        best_gain = 0
        best_v = -1
        for v in range(n):
            if (sel >> np.uint64(v)) & np.uint64(1):
                continue
            g = popcount(closed[v] & ~covered)
            if g > best_gain:
                best_gain = g
                best_v = v
        if best_v < 0:
            break
        sel = sel | bit(best_v)
        covered = covered | closed[best_v]
    return covered, sel


@jit
def _degree_order(closed):
    n = closed.shape[0]
    deg = np.empty(n, np.int64)
    for v in range(n):
        deg[v] = -popcount(closed[v])
    return np.argsort(deg, kind="mergesort")


@jit
def max_coverage(closed, k, target, floor):
    """Largest |N[S]| over k-subsets S, by branch and bound.

    Only sets covering more than ``floor`` are searched for; the search stops
    as soon as ``target`` is reached. Returns ``(best, mask)``; when nothing
    beats ``floor`` the result is ``(floor, 0)`` unless greedy already did.
    """
    n = closed.shape[0]
    if k <= 0:
        return np.int64(0), np.uint64(0)
    if k >= n:
        allsel = np.uint64(0)
        for v in range(n):
            allsel = allsel | bit(v)
        return popcount(union_all(closed)), allsel

    gcov, gsel = greedy_cover(closed, k)
    best = popcount(gcov)
    best_sel = gsel
    if best >= target:
        return best, best_sel
    if floor > best:
        best = np.int64(floor)
        best_sel = np.uint64(0)
    limit = min(target, n)
    if best >= limit:
        return best, best_sel

    order = _degree_order(closed)
    pos = np.zeros(k + 1, np.int64)
    cov = np.zeros(k + 1, np.uint64)
    sel = np.zeros(k + 1, np.uint64)
    top = np.zeros(k + 1, np.int64)

    d = 0
    while d >= 0:
        r = k - d
        j = pos[d]
        if n - j < r:
            d -= 1
            continue
        covered = cov[d]
        c = popcount(covered)

        if r == 1:
            best_gain = -1
            best_t = -1
            for t in range(j, n):
                g = popcount(closed[order[t]] & ~covered)
                if g > best_gain:
                    best_gain = g
                    best_t = t
            if c + best_gain > best:
                best = c + best_gain
                best_sel = sel[d] | bit(order[best_t])
                if best >= limit:
                    break
            d -= 1
            continue

        # optimistic bound: the r largest marginal gains among the remaining candidates
        cnt = 0
        for t in range(j, n):
            g = popcount(closed[order[t]] & ~covered)
            if cnt < r:
                q = cnt
                cnt += 1
            elif g > top[r - 1]:
                q = r - 1
            else:
                continue
            while q > 0 and top[q - 1] < g:
                top[q] = top[q - 1]
                q -= 1
            top[q] = g
        ub = c
        for q in range(cnt):
            ub += top[q]
        if ub <= best:
            d -= 1
            continue

        v = order[j]
        pos[d] = j + 1
        cov[d + 1] = covered | closed[v]
        sel[d + 1] = sel[d] | bit(v)
        pos[d + 1] = j + 1
        d += 1

    return best, best_sel


@jit
def coverage_profile(closed):
    n = closed.shape[0]
    prof = np.empty(n + 1, np.int64)
    prof[0] = 0
    k = 1
    while k <= n:
        # c[k] > c[k-1] whenever c[k-1] < n, so the previous value is a safe floor
        best, _ = max_coverage(closed, k, n, prof[k - 1])
        prof[k] = best
        k += 1
        if best >= n:
            break
    while k <= n:
        prof[k] = n
        k += 1
    return prof


@jit
def min_k_reaching(closed, target):
    """Smallest k with a k-set covering at least ``target`` vertices, and one such set."""
    n = closed.shape[0]
    if target <= 0:
        return np.int64(0), np.uint64(0)
    for k in range(1, n + 1):
        best, sel = max_coverage(closed, k, target, target - 1)
        if best >= target:
            return np.int64(k), sel
    return np.int64(-1), np.uint64(0)


@jit
def min_k_reaching_many(closed, targets):
    """``min_k_reaching`` for an ascending array of targets."""
    out = np.empty(targets.shape[0], np.int64)
    n = closed.shape[0]
    k = 1
    for t in range(targets.shape[0]):
        target = targets[t]
        while k <= n:
            best, _ = max_coverage(closed, k, target, target - 1)
            if best >= target:
                break
            k += 1
        out[t] = k if k <= n else -1
    return out


@jit
def min_dominating_set(closed):
    """Exact domination number by branch and bound. Returns (size, mask)."""
    n = closed.shape[0]
    full = union_all(closed)

    covered = np.uint64(0)
    best_sel = np.uint64(0)
    best = 0
    while covered != full:
        gbest = -1
        gv = -1
        for v in range(n):
            g = popcount(closed[v] & ~covered)
            if g > gbest:
                gbest = g
                gv = v
        covered = covered | closed[gv]
        best_sel = best_sel | bit(gv)
        best += 1

    cov = np.zeros(n + 1, np.uint64)
    sel = np.zeros(n + 1, np.uint64)
    cand = np.zeros((n + 1, n), np.int64)
    ncand = np.zeros(n + 1, np.int64)
    ptr = np.zeros(n + 1, np.int64)
    gains = np.empty(n, np.int64)

    d = 0
    fresh = True
    while d >= 0:
        if fresh:
            fresh = False
            here = cov[d]
            if here == full:
                if d < best:
                    best = d
                    best_sel = sel[d]
                d -= 1
                continue
            if d + 1 >= best:
                d -= 1
                continue
            maxgain = 0
            for v in range(n):
                g = popcount(closed[v] & ~here)
                gains[v] = g
                if g > maxgain:
                    maxgain = g
            left = popcount(full & ~here)
            if d + (left + maxgain - 1) // maxgain >= best:
                d -= 1
                continue
            # branch on the undominated vertex with the fewest possible dominators
            u = -1
            fewest = n + 1
            for v in range(n):
                if (here >> np.uint64(v)) & np.uint64(1):
                    continue
                f = popcount(closed[v])
                if f < fewest:
                    fewest = f
                    u = v
            cnt = 0
            nb = closed[u]
            for w in range(n):
                if (nb >> np.uint64(w)) & np.uint64(1):
                    q = cnt
                    cnt += 1
                    while q > 0 and gains[cand[d, q - 1]] < gains[w]:
                        cand[d, q] = cand[d, q - 1]
                        q -= 1
                    cand[d, q] = w
            ncand[d] = cnt
            ptr[d] = 0

        if ptr[d] >= ncand[d] or d + 1 >= best:
            d -= 1
            continue
        w = cand[d, ptr[d]]
        ptr[d] += 1
        cov[d + 1] = cov[d] | closed[w]
        sel[d + 1] = sel[d] | bit(w)
        d += 1
        fresh = True

    return np.int64(best), best_sel


@jit
def prism_closed(closed, perm):
    """Closed neighbourhoods of the prism: copy-1 vertex v is v, copy-2 vertex v is n+v."""
    n = closed.shape[0]
    inv = np.empty(n, np.int64)
    for v in range(n):
        inv[perm[v]] = v
    out = np.empty(2 * n, np.uint64)
    for v in range(n):
        out[v] = closed[v] | bit(n + perm[v])
        out[n + v] = (closed[v] << np.uint64(n)) | bit(inv[v])
    return out


@jit
def batch_prism_min_k(closed, perms, targets):
    out = np.empty((perms.shape[0], targets.shape[0]), np.int64)
    for i in range(perms.shape[0]):
        out[i, :] = min_k_reaching_many(prism_closed(closed, perms[i]), targets)
    return out


@jit
def batch_prism_profiles(closed, perms):
    n = closed.shape[0]
    out = np.empty((perms.shape[0], 2 * n + 1), np.int64)
    for i in range(perms.shape[0]):
        out[i, :] = coverage_profile(prism_closed(closed, perms[i]))
    return out


@jit
def batch_prism_gamma(closed, perms):
    out = np.empty(perms.shape[0], np.int64)
    for i in range(perms.shape[0]):
        size, _ = min_dominating_set(prism_closed(closed, perms[i]))
        out[i] = size
    return out
