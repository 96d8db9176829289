"""Compiled array kernels behind the linear-time codecs.

Conventions shared by every kernel:

* a successor array ``s`` is an ``int64`` array of length ``n + 1``; ``s[v]`` is
  the successor of vertex ``v`` for ``1 <= v <= n`` and ``s[0]`` is unused;
* a code ``c`` is an ``int64`` array of length ``n - 1`` with ``c[k]`` holding
  the ``(k+1)``-th code entry;
* the root is always vertex 0.

The kernels trust their inputs: range checks happen in the Python wrappers.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def first_cycle_vertex(s):
    """Return a vertex lying on a cycle of ``s``, or -1 when ``s`` is a tree."""
    n = s.shape[0] - 1
    state = np.zeros(n + 1, np.int8)
    state[0] = 2
    for v in range(1, n + 1):
        if state[v] != 0:
            continue
        x = v
        while state[x] == 0:
            state[x] = 1
            x = s[x]
        if state[x] == 1:
            return x
        x = v
        while state[x] == 1:
            state[x] = 2
            x = s[x]
    return -1


@njit(cache=True)
def cycle_maxima(s):
    """Flag, for a functional digraph with sink 0, the largest vertex of every cycle."""
    n = s.shape[0] - 1
    seen = np.zeros(n + 1, np.int64)
    is_max = np.zeros(n + 1, np.bool_)
    for v in range(1, n + 1):
        if seen[v] != 0:
            continue
        x = v
        while x != 0 and seen[x] == 0:
            seen[x] = v
            x = s[x]
        if x != 0 and seen[x] == v:
            m = x
            y = s[x]
            while y != x:
                if y > m:
                    m = y
                y = s[y]
            is_max[m] = True
    return is_max


# ---------------------------------------------------------------- Prüfer


@njit(cache=True)
def prufer_encode(s):
    n = s.shape[0] - 1
    indeg = np.zeros(n + 1, np.int64)
    for v in range(1, n + 1):
        indeg[s[v]] += 1
    code = np.empty(n - 1, np.int64)
    ptr = 1
    while indeg[ptr] != 0:
        ptr += 1
    leaf = ptr
    for k in range(n - 1):
        p = s[leaf]
        code[k] = p
        indeg[p] -= 1
        if p != 0 and indeg[p] == 0 and p < ptr:
            leaf = p
        else:
            ptr += 1
            while ptr <= n and indeg[ptr] != 0:
                ptr += 1
            leaf = ptr
    return code


@njit(cache=True)
def prufer_decode(c):
    n = c.shape[0] + 1
    remaining = np.zeros(n + 1, np.int64)
    for k in range(n - 1):
        remaining[c[k]] += 1
    s = np.zeros(n + 1, np.int64)
    ptr = 1
    while remaining[ptr] != 0:
        ptr += 1
    leaf = ptr
    for k in range(n - 1):
        p = c[k]
        s[leaf] = p
        remaining[p] -= 1
        if p != 0 and remaining[p] == 0 and p < ptr:
            leaf = p
        else:
            ptr += 1
            while ptr <= n and remaining[ptr] != 0:
                ptr += 1
            leaf = ptr
    s[leaf] = 0
    return s


# ---------------------------------------------------------------- Blob


@njit(cache=True)
def blob_encode(s):
    """Blob code in one pass.

    A vertex takes the "path meets the blob" branch exactly when one of its
    ancestors is larger than itself; all other vertices ("records") hand the
    blob's outgoing edge down the chain of records.
    """
    n = s.shape[0] - 1
    top_anc = np.full(n + 1, -1, np.int64)
    top_anc[0] = 0
    stack = np.empty(n + 1, np.int64)
    for v in range(1, n + 1):
        if top_anc[v] >= 0:
            continue
        depth = 0
        x = v
        while top_anc[x] < 0:
            stack[depth] = x
            depth += 1
            x = s[x]
        while depth > 0:
            depth -= 1
            y = stack[depth]
            up = top_anc[s[y]]
            top_anc[y] = s[y] if s[y] > up else up
    code = np.empty(n - 1, np.int64)
    blob_succ = s[n]
    for v in range(n - 1, 0, -1):
        if top_anc[v] > v:
            code[v - 1] = s[v]
        else:
            code[v - 1] = blob_succ
            blob_succ = s[v]
    return code


@njit(cache=True)
def blob_decode(c):
    """Inverse of :func:`blob_encode`.

    Vertex ``i`` is a record iff the forward orbit of ``c_i`` under
    ``x -> c_x`` (with ``n`` and 0 absorbing) never exceeds ``i``.
    """
    n = c.shape[0] + 1
    orbit_max = np.full(n + 1, -1, np.int64)
    orbit_max[0] = 0
    orbit_max[n] = n
    seen = np.zeros(n + 1, np.int64)
    stack = np.empty(n + 1, np.int64)
    for v in range(1, n):
        if orbit_max[v] >= 0:
            continue
        depth = 0
        x = v
        while orbit_max[x] < 0 and seen[x] == 0:
            seen[x] = v
            stack[depth] = x
            depth += 1
            x = c[x - 1]
        if orbit_max[x] < 0:
            m = x
            y = c[x - 1]
            while y != x:
                if y > m:
                    m = y
                y = c[y - 1]
            y = x
            while True:
                orbit_max[y] = m
                y = c[y - 1]
                if y == x:
                    break
        while depth > 0:
            depth -= 1
            y = stack[depth]
            if orbit_max[y] < 0:
                up = orbit_max[c[y - 1]]
                orbit_max[y] = y if y > up else up
    s = np.zeros(n + 1, np.int64)
    blob_succ = 0
    for i in range(1, n):
        ci = c[i - 1]
        if orbit_max[ci] > i:
            s[i] = ci
        else:
            s[i] = blob_succ
            blob_succ = ci
    s[n] = blob_succ
    return s


# ---------------------------------------------------------------- Happy


@njit(cache=True)
def happy_encode(s):
    """Permute a naïve code into the Happy code; the flag is False for non-trees."""
    n = s.shape[0] - 1
    p = s.copy()
    top = 0  # largest vertex currently on a cycle (0: no cycle yet)
    steps = 0
    while p[1] != 0:
        steps += 1
        if steps > n:
            return p[2:].copy(), False
        a = p[1]
        p[1] = p[a]
        if a > top:
            p[a] = a
            top = a
        else:
            p[a] = p[top]
            p[top] = a
    return p[2:].copy(), True


@njit(cache=True)
def happy_decode(c):
    n = c.shape[0] + 1
    s = np.zeros(n + 1, np.int64)
    for i in range(2, n + 1):
        s[i] = c[i - 2]
    is_max = cycle_maxima(s)
    for top in range(n, 1, -1):
        if not is_max[top]:
            continue
        while True:
            k = s[top]
            if k == top:
                s[top] = s[1]
                s[1] = top
                break
            s[top] = s[k]
            s[k] = s[1]
            s[1] = k
    return s


# ---------------------------------------------------------------- Dandelion


@njit(cache=True)
def dandelion_encode(s):
    n = s.shape[0] - 1
    t = s.copy()
    m = 0
    x = s[1]
    while x != 0:
        m += 1
        x = s[x]
    p = np.empty(m, np.int64)
    x = s[1]
    for k in range(m):
        p[k] = x
        x = s[x]
    closes = np.zeros(m, np.bool_)
    best = -1
    for k in range(m - 1, -1, -1):
        if p[k] > best:
            best = p[k]
            closes[k] = True
    start = 0
    for k in range(m):
        if closes[k]:
            for j in range(start, k):
                t[p[j]] = p[j + 1]
            t[p[k]] = p[start]
            start = k + 1
    return t[2:].copy()


@njit(cache=True)
def dandelion_decode(c):
    n = c.shape[0] + 1
    s = np.zeros(n + 1, np.int64)
    for i in range(2, n + 1):
        s[i] = c[i - 2]
    is_max = cycle_maxima(s)
    prev = 1
    for top in range(n, 1, -1):
        if is_max[top]:
            s[prev] = s[top]
            prev = top
    s[prev] = 0
    return s
