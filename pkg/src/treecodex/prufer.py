"""Prüfer code for trees rooted at 0.

Encoding repeatedly removes the least leaf and records its successor; the
code has length ``n - 1`` (the last surviving vertex always points at 0, so
its edge is implicit).  Both directions run in linear time using a single
forward-moving pointer plus an "immediately re-use the new leaf if it is
smaller than the pointer" shortcut.  :func:`prufer_encode_heap` is an
independent heap-based implementation kept as a test oracle.
"""

from __future__ import annotations

import heapq
from collections.abc import Sequence

import numpy as np

from . import _kernels
from .core import Code, RootedTree, code_array, tree_array


def prufer_encode(t: RootedTree | Sequence[int]) -> Code:
    return tuple(_kernels.prufer_encode(tree_array(t)).tolist())


def prufer_decode(code: Sequence[int] | np.ndarray, n: int | None = None) -> RootedTree:
    return RootedTree._trusted(_kernels.prufer_decode(code_array(code, n)))


def prufer_encode_heap(t: RootedTree | Sequence[int]) -> Code:
    """Least-leaf removal driven by a min-heap of current leaves."""
    s = tree_array(t).tolist()
    n = len(s) - 1
    indeg = [0] * (n + 1)
    for v in range(1, n + 1):
        indeg[s[v]] += 1
    leaves = [v for v in range(1, n + 1) if indeg[v] == 0]
    heapq.heapify(leaves)
    code = []
    for _ in range(n - 1):
        leaf = heapq.heappop(leaves)
        parent = s[leaf]
        code.append(parent)
        indeg[parent] -= 1
        if parent != 0 and indeg[parent] == 0:
            heapq.heappush(leaves, parent)
    return tuple(code)
