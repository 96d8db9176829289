"""Exact checks of the determinant identities behind the tree codes.

* :func:`laplacian` builds the weighted Laplacian of the complete digraph on
  ``0..n`` (no edges out of 0) under the uniform weighting ``w(i->j) = b_j``
  or the ascent-sensitive weighting ``w(i->j) = a_{i,j}`` for ``j > i`` and
  ``b_j`` otherwise.
* :func:`tree_weight_sum` sums edge-weight products over all rooted trees,
  and :func:`mtt_check` compares it with the reduced determinant.
* :func:`uniform_closed_form` is ``b0 * (b0 + ... + bn)^(n-1)``;
  :func:`ucsd_product` is the product formula for the ascent weighting.
* :func:`blob_reduction` performs the row/column operations that make the
  reduced Laplacian upper triangular, exposing those closed forms as the
  product of the diagonal.
"""

from __future__ import annotations

import random
from collections import defaultdict
from collections.abc import Callable

from .core import ENUMERATION_BOUND, enumerate_trees
from .errors import BoundExceeded
from .poly import LAM, B, MultiPoly, SymMatrix, Var, a, b, det, det_bareiss, poly_prod, poly_sum

WEIGHTINGS = ("uniform", "ucsd")

__all__ = [
    "LAM",
    "WEIGHTINGS",
    "B",
    "a",
    "b",
    "blob_reduction",
    "edge_weight",
    "laplacian",
    "mtt_check",
    "random_point_check",
    "reduced_laplacian",
    "tree_weight_sum",
    "ucsd_product",
    "uniform_closed_form",
]


def edge_weight(i: int, j: int, weighting: str) -> Var:
    if weighting == "uniform":
        return b(j)
    if weighting == "ucsd":
        return a(i, j) if j > i else b(j)
    raise ValueError(f"unknown weighting {weighting!r}; choose from {', '.join(WEIGHTINGS)}")


def laplacian(n: int, weighting: str = "uniform") -> SymMatrix:
    """Full ``(n+1) x (n+1)`` Laplacian indexed from 0; every row sums to zero."""
    rows: list[list[MultiPoly]] = [[MultiPoly() for _ in range(n + 1)] for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(n + 1):
            if j != i:
                w = MultiPoly.var(edge_weight(i, j, weighting))
                rows[i][j] = -w
                rows[i][i] = rows[i][i] + w
    return SymMatrix(rows, origin=0)


def reduced_laplacian(n: int, weighting: str = "uniform") -> SymMatrix:
    """The Laplacian without row and column 0, indexed ``1..n``."""
    return laplacian(n, weighting).minor(0)


def tree_weight_sum(n: int, weighting: str = "uniform", bound: int = ENUMERATION_BOUND) -> MultiPoly:
    """Sum over all rooted trees on ``0..n`` of the product of their edge weights."""
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds the enumeration bound {bound}")
    acc: dict = defaultdict(int)
    for t in enumerate_trees(n, bound):
        s = t.succ
        exps: dict[Var, int] = defaultdict(int)
        for i in range(1, n + 1):
            exps[edge_weight(i, s[i - 1], weighting)] += 1
        acc[tuple(sorted(exps.items()))] += 1
    return MultiPoly(acc)


def mtt_check(n: int, weighting: str = "uniform") -> bool:
    """Matrix Tree Theorem instance: reduced determinant equals the tree sum."""
    return det(reduced_laplacian(n, weighting)) == tree_weight_sum(n, weighting)


def uniform_closed_form(n: int) -> MultiPoly:
    """``b0 * (b0 + b1 + ... + bn)^(n-1)``."""
    total = poly_sum(MultiPoly.var(b(j)) for j in range(n + 1))
    return MultiPoly.var(b(0)) * total ** (n - 1)


def ucsd_factor(n: int, i: int) -> MultiPoly:
    """``sum_{k<i} b_k + sum_{j>=i} a_{i-1,j}``."""
    return poly_sum(
        [MultiPoly.var(b(k)) for k in range(i)] + [MultiPoly.var(a(i - 1, j)) for j in range(i, n + 1)]
    )


def ucsd_product(n: int) -> MultiPoly:
    """``b0 * prod_{i=2}^{n} ucsd_factor(n, i)``, expanded."""
    return MultiPoly.var(b(0)) * poly_prod(ucsd_factor(n, i) for i in range(2, n + 1))


def blob_reduction(n: int, weighting: str = "uniform") -> SymMatrix:
    """Reduced Laplacian after ``row r -= row r-1; column r-1 += column r`` for ``r = n..2``.

    For both weightings the result is upper triangular, so its determinant is
    the product of the diagonal.
    """
    m = reduced_laplacian(n, weighting)
    for r in range(n, 1, -1):
        m.row_subtract(r, r - 1)
        m.column_add(r - 1, r)
    return m


def _tree_sum_at(n: int, weighting: str, value: Callable[[Var], int]) -> int:
    total = 0
    for t in enumerate_trees(n):
        s = t.succ
        prod = 1
        for i in range(1, n + 1):
            prod *= value(edge_weight(i, s[i - 1], weighting))
        total += prod
    return total


def random_point_check(n: int, points: int = 20, seed: int = 0) -> bool:
    """Compare the UCSD product, the tree sum and the Bareiss determinant at random points.

    Values are drawn from ``[1, 2^31)``; all arithmetic is exact.
    """
    rng = random.Random(seed)
    lap = reduced_laplacian(n, "ucsd")
    factors = [MultiPoly.var(b(0))] + [ucsd_factor(n, i) for i in range(2, n + 1)]
    for _ in range(points):
        vals: dict[Var, int] = {}

        def value(v: Var) -> int:
            if v not in vals:
                vals[v] = rng.randrange(1, 2**31)
            return vals[v]

        prod = 1
        for f in factors:
            prod *= f.evaluate(value)
        if prod != _tree_sum_at(n, "ucsd", value):
            return False
        if prod != det_bareiss(lap.evaluate(value)):
            return False
    return True
