"""Dandelion Code: turn the path from 1 to 0 into a permutation's cycles.

The fast encoder takes the interior ``p`` of the path from 1 to 0, cuts it
after every entry that is larger than everything following it (each right-to-
left maximum), closes each piece into a cycle, and reads off
``(succ'(2), ..., succ'(n))``.  Vertices off the path keep their successors.

The decoder builds ``i -> c_(i-1)``, sorts the cycles by decreasing maximum,
rotates each so its maximum comes last, and strings them between 1 and 0.

The surgery versions re-point vertices ``n, n-1, ..., 2`` at 1 with a weight
(the old successor), swapping with ``succ(1)`` whenever the re-pointing would
close a cycle; the code is the list of weights.  They work with any roots
``<= 0`` and serve as the differential oracle for the fast pair.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from . import _kernels
from .core import Code, RootedTree, code_array, tree_array

# ----------------------------------------------------------------- fast codec


def dandelion_encode_fast(t: RootedTree | Sequence[int]) -> Code:
    return tuple(_kernels.dandelion_encode(tree_array(t)).tolist())


def dandelion_decode(code: Sequence[int] | np.ndarray, n: int | None = None) -> RootedTree:
    return RootedTree._trusted(_kernels.dandelion_decode(code_array(code, n)))


# ------------------------------------------------------------ literal surgery


def surgery_encode(succ: Sequence[int]) -> tuple[list[int], int]:
    """Weighted surgery on a 1-indexed successor list whose roots are labels ``<= 0``.

    Returns the weights ``(w_2, ..., w_m)`` and the final ``succ(1)``.
    """
    s = list(succ)
    m = len(s) - 1
    weight = [0] * (m + 1)
    for r in range(m, 1, -1):
        old = s[r]
        k = s[1]
        s[r] = 1
        weight[r] = old
        # A cycle appears iff the path from 1 runs through r.  Vertices above
        # r already point at 1 and never lie on that path, so the walk ends.
        x = k
        while x > 0 and x != r:
            x = s[x]
        if x == r:
            s[1] = old
            weight[r] = k
    return weight[2:], s[1]


def surgery_decode(code: Sequence[int], root: int) -> list[int]:
    """Inverse of :func:`surgery_encode` with final ``succ(1) = root``."""
    m = len(code) + 1
    s = [0, root] + [1] * (m - 1)
    for i in range(2, m + 1):
        k = code[i - 2]
        s[i] = k
        x = k
        steps = 0
        while x > 0 and x != i and steps <= m:
            x = s[x]
            steps += 1
        if x == i:
            old = s[1]
            s[1] = k
            s[i] = old
    return s


def dandelion_encode(t: RootedTree | Sequence[int]) -> Code:
    code, _ = surgery_encode(tree_array(t).tolist())
    return tuple(code)


def dandelion_decode_surgery(code: Sequence[int], n: int | None = None) -> RootedTree:
    c = code_array(code, n)
    return RootedTree._trusted(np.array(surgery_decode(c.tolist(), 0), dtype=np.int64))
