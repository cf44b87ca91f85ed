"""Hot loops: canonical labeling of small graphs and edge-coloring search.

Everything here works on plain numpy arrays and is compiled with numba unless
``MULTIFAN_DISABLE_JIT`` is set, in which case the same functions run as
ordinary Python.

Color ``c`` (1-based) occupies bit ``c - 1`` of a vertex's used-color mask, so
palettes are limited to 62 colors.
"""

from __future__ import annotations

import numpy as np

from ._jit import njit

MAX_PALETTE = 62

# search status codes
EXHAUSTED = 0
LIMIT_REACHED = 1
BUDGET_EXCEEDED = 2


@njit(cache=True)
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


# -- canonical form ------------------------------------------------------


@njit(cache=True)
def _row_less(s, a, b, width):
    for t in range(width):
        if s[a, t] != s[b, t]:
            return s[a, t] < s[b, t]
    return False


@njit(cache=True)
def _row_equal(s, a, b, width):
    for t in range(width):
        if s[a, t] != s[b, t]:
            return False
    return True


@njit(cache=True)
def refine_colors(adj):
    """Color refinement starting from degrees; classes are named by rank of
    their (own color, sorted neighbor colors) signature, so the result is
    invariant under relabeling."""
    n = adj.shape[0]
    col = np.zeros(n, dtype=np.int64)
    for v in range(n):
        d = 0
        for w in range(n):
            d += adj[v, w]
        col[v] = d
    width = n + 1
    sig = np.full((n, width), -1, dtype=np.int64)
    idx = np.arange(n)
    nclasses = -1
    while True:
        for v in range(n):
            sig[v, 0] = col[v]
            k = 1
            for w in range(n):
                if adj[v, w]:
                    sig[v, k] = col[w]
                    k += 1
            for t in range(k, width):
                sig[v, t] = -1
            # insertion sort of the neighbor colors
            for a in range(2, k):
                x = sig[v, a]
                b = a - 1
                while b >= 1 and sig[v, b] > x:
                    sig[v, b + 1] = sig[v, b]
                    b -= 1
                sig[v, b + 1] = x
        for a in range(n):
            idx[a] = a
        for a in range(1, n):
            x = idx[a]
            b = a - 1
            while b >= 0 and _row_less(sig, x, idx[b], width):
                idx[b + 1] = idx[b]
                b -= 1
            idx[b + 1] = x
        rank = 0
        for a in range(n):
            if a > 0 and not _row_equal(sig, idx[a], idx[a - 1], width):
                rank += 1
            col[idx[a]] = rank
        count = rank + 1 if n > 0 else 0
        if count == nclasses:
            break
        nclasses = count
    return col


@njit(cache=True)
def _next_perm(arr, lo, hi):
    i = hi - 2
    while i >= lo and arr[i] >= arr[i + 1]:
        i -= 1
    if i < lo:
        a, b = lo, hi - 1
        while a < b:
            arr[a], arr[b] = arr[b], arr[a]
            a += 1
            b -= 1
        return False
    j = hi - 1
    while arr[j] <= arr[i]:
        j -= 1
    arr[i], arr[j] = arr[j], arr[i]
    a, b = i + 1, hi - 1
    while a < b:
        arr[a], arr[b] = arr[b], arr[a]
        a += 1
        b -= 1
    return True


@njit(cache=True)
def canonical_code(adj):
    """Minimum upper-triangle bit string over all labelings that list the
    refined color classes in rank order.

    Returns ``(code, order)`` where ``order[p]`` is the original vertex placed
    at position ``p`` of the canonical labeling.
    """
    n = adj.shape[0]
    order = np.zeros(n, dtype=np.int64)
    if n <= 1:
        for v in range(n):
            order[v] = v
        return 0, order
    col = refine_colors(adj)
    pos = np.zeros(n, dtype=np.int64)
    k = 0
    for c in range(n):
        for v in range(n):
            if col[v] == c:
                pos[k] = v
                k += 1
    # cell boundaries
    starts = np.zeros(n + 1, dtype=np.int64)
    ncells = 0
    for p in range(n):
        if p == 0 or col[pos[p]] != col[pos[p - 1]]:
            starts[ncells] = p
            ncells += 1
    starts[ncells] = n
    total = n * (n - 1) // 2
    best = np.int64(-1)
    while True:
        cur = np.int64(0)
        nb = 0
        smaller = best < 0
        aborted = False
        for j in range(1, n):
            for i in range(j):
                cur = (cur << 1) | adj[pos[i], pos[j]]
                nb += 1
            if not smaller:
                ref = best >> (total - nb)
                if cur > ref:
                    aborted = True
                    break
                if cur < ref:
                    smaller = True
        if not aborted and (best < 0 or cur < best):
            best = cur
            for p in range(n):
                order[p] = pos[p]
        c = ncells - 1
        while c >= 0:
            if _next_perm(pos, starts[c], starts[c + 1]):
                break
            c -= 1
        if c < 0:
            break
    return best, order


@njit(cache=True)
def decode_code(code, n):
    adj = np.zeros((n, n), dtype=np.int64)
    total = n * (n - 1) // 2
    b = total - 1
    for j in range(1, n):
        for i in range(j):
            if (code >> b) & 1:
                adj[i, j] = 1
                adj[j, i] = 1
            b -= 1
    return adj


@njit(cache=True)
def child_codes(code, n):
    """Canonical codes of every graph obtained by adding one edge."""
    adj = decode_code(code, n)
    total = n * (n - 1) // 2
    m = 0
    for j in range(1, n):
        for i in range(j):
            m += adj[i, j]
    out = np.zeros(total - m, dtype=np.int64)
    k = 0
    for j in range(1, n):
        for i in range(j):
            if adj[i, j] == 0:
                adj[i, j] = 1
                adj[j, i] = 1
                c, _ = canonical_code(adj)
                out[k] = c
                k += 1
                adj[i, j] = 0
                adj[j, i] = 0
    return out


# -- edge-coloring search ------------------------------------------------


@njit(cache=True)
def color_search(eu, ev, n, k, budget, limit, out):
    """Backtracking search for proper ``k``-edge-colorings.

    Branches on the uncolored edge with the fewest feasible colors (ties go to
    the earlier edge in the given order) and only ever opens the smallest
    unused color, so each color-permutation orbit is reached exactly once.
    Up to ``limit`` solutions are written as rows of ``out``.

    Returns ``(status, nodes, found)``.
    """
    m = eu.shape[0]
    full = (np.int64(1) << k) - 1
    color = np.zeros(m, dtype=np.int64)
    used = np.zeros(n, dtype=np.int64)
    top = np.zeros(m + 1, dtype=np.int64)
    at = np.full(m + 1, -1, dtype=np.int64)
    cand = np.zeros(m + 1, dtype=np.int64)
    nodes = 0
    found = 0
    depth = 0
    select = True
    while True:
        if select:
            nodes += 1
            if nodes > budget:
                return BUDGET_EXCEEDED, nodes, found
            sel = -1
            bestc = k + 1
            dead = False
            for f in range(m):
                if color[f] == 0:
                    a = full & ~(used[eu[f]] | used[ev[f]])
                    pc = popcount(a)
                    if pc == 0:
                        dead = True
                        break
                    if pc < bestc:
                        bestc = pc
                        sel = f
            if not dead and sel < 0:
                if found < limit:
                    for f in range(m):
                        out[found, f] = color[f]
                found += 1
                if found >= limit:
                    return LIMIT_REACHED, nodes, found
                dead = True
            if dead:
                if depth == 0:
                    return EXHAUSTED, nodes, found
                depth -= 1
                e = at[depth]
                bit = np.int64(1) << (color[e] - 1)
                used[eu[e]] ^= bit
                used[ev[e]] ^= bit
                color[e] = 0
                select = False
                continue
            a = full & ~(used[eu[sel]] | used[ev[sel]])
            t = top[depth] + 1
            if t > k:
                t = k
            cand[depth] = a & ((np.int64(1) << t) - 1)
            at[depth] = sel
        if cand[depth] == 0:
            if depth == 0:
                return EXHAUSTED, nodes, found
            depth -= 1
            e = at[depth]
            bit = np.int64(1) << (color[e] - 1)
            used[eu[e]] ^= bit
            used[ev[e]] ^= bit
            color[e] = 0
            select = False
            continue
        low = cand[depth] & -cand[depth]
        cand[depth] ^= low
        c = 1
        while (low >> (c - 1)) != 1:
            c += 1
        e = at[depth]
        color[e] = c
        used[eu[e]] |= low
        used[ev[e]] |= low
        top[depth + 1] = top[depth] if top[depth] > c else c
        depth += 1
        select = True


def run_color_search(eu, ev, n, k, budget, limit):
    """Allocate buffers and run :func:`color_search`.

    Returns ``(status, nodes, solutions)`` with ``solutions`` an int8 array of
    shape ``(found, m)``.
    """
    if k > MAX_PALETTE:
        raise ValueError(f"palette of {k} colors exceeds the {MAX_PALETTE}-color limit")
    eu = np.ascontiguousarray(eu, dtype=np.int64)
    ev = np.ascontiguousarray(ev, dtype=np.int64)
    m = eu.shape[0]
    out = np.zeros((max(int(limit), 0), m), dtype=np.int8)
    status, nodes, found = color_search(eu, ev, np.int64(n), np.int64(k), np.int64(budget), np.int64(limit), out)
    return int(status), int(nodes), out[: min(int(found), int(limit))]
