"""Blob Code: encode by absorbing vertices ``n, n-1, ..., 2`` into a blob.

The blob starts as ``{n}`` and grows downward.  When vertex ``v`` joins, the
code gets ``succ(v)`` if the path from ``v`` already runs into the blob;
otherwise the blob's outgoing edge is recorded and the blob is re-pointed at
``succ(v)``.  Decoding peels ``1, 2, ...`` back out.

Two implementations are provided:

* :func:`blob_encode_surgery` / :func:`blob_decode_surgery` follow the
  step-by-step blob bookkeeping literally (quadratic worst case).  They accept
  any non-positive root labels, which the forest extension relies on.
* :func:`blob_encode` / :func:`blob_decode` are linear-time reformulations:
  ``v`` hits the blob exactly when some ancestor of ``v`` exceeds ``v``, and on
  the way back ``i`` re-enters directly exactly when the orbit of ``c_i`` under
  ``x -> c_x`` climbs above ``i``.

The UCSD-weighted variant tags every code entry ``c_v > v`` as an ascent token
``a_{v,c_v}`` and every other entry as ``b_{c_v}``, after a leading ``b_0``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import Code, RootedTree, code_array, tree_array
from .errors import MalformedToken

# ----------------------------------------------------------------- fast codec


def blob_encode(t: RootedTree | Sequence[int]) -> Code:
    return tuple(_kernels.blob_encode(tree_array(t)).tolist())


def blob_decode(code: Sequence[int] | np.ndarray, n: int | None = None) -> RootedTree:
    return RootedTree._trusted(_kernels.blob_decode(code_array(code, n)))


# ------------------------------------------------------------ literal surgery


def surgery_encode(succ: Sequence[int]) -> tuple[list[int], int]:
    """Blob surgery on a 1-indexed successor list whose roots are labels ``<= 0``.

    Returns the code and the label the blob finally points at (a root).
    """
    s = list(succ)
    m = len(s) - 1
    code = [0] * (m - 1)
    blob_succ = s[m]  # blob = {v+1, ..., m} while processing v
    for v in range(m - 1, 0, -1):
        # Walk path(v); vertices below v still carry their own edges, so the
        # walk stops either at a root or on entering the blob.
        x = s[v]
        while 0 < x < v:
            x = s[x]
        if x > v:
            code[v - 1] = s[v]
        else:
            code[v - 1] = blob_succ
            blob_succ = s[v]
    return code, blob_succ


def surgery_decode(code: Sequence[int], root: int) -> list[int]:
    """Inverse of :func:`surgery_encode`; ``root`` is the blob's final target."""
    m = len(code) + 1
    s = [0] * (m + 1)
    blob_succ = root  # blob = {i+1, ..., m} after peeling i
    for i in range(1, m):
        c = code[i - 1]
        x = c
        while 0 < x < i:
            x = s[x]
        if x > i:
            s[i] = c
        else:
            s[i] = blob_succ
            blob_succ = c
    s[m] = blob_succ
    return s


def blob_encode_surgery(t: RootedTree | Sequence[int]) -> Code:
    code, _ = surgery_encode(tree_array(t).tolist())
    return tuple(code)


def blob_decode_surgery(code: Sequence[int], n: int | None = None) -> RootedTree:
    c = code_array(code, n)
    return RootedTree._trusted(np.array(surgery_decode(c.tolist(), 0), dtype=np.int64))


# ------------------------------------------------------------ weighted tokens


@dataclass(frozen=True, slots=True)
class Ascent:
    """Weight ``a_{i,j}`` of an ascent edge ``i -> j`` (``j > i``)."""

    i: int
    j: int

    def __str__(self) -> str:
        return f"a{self.i}_{self.j}"


@dataclass(frozen=True, slots=True)
class NonAscent:
    """Weight ``b_j`` of an edge into ``j`` that is not an ascent."""

    j: int

    def __str__(self) -> str:
        return f"b{self.j}"


WeightedToken = Ascent | NonAscent


def weighted_from_code(code: Sequence[int]) -> tuple[WeightedToken, ...]:
    out: list[WeightedToken] = [NonAscent(0)]
    for v, c in enumerate(code, start=1):
        out.append(Ascent(v, c) if c > v else NonAscent(c))
    return tuple(out)


def check_weighted(tokens: Sequence[WeightedToken]) -> int:
    """Validate the ascent/non-ascent shape and return ``n`` (the token count)."""
    n = len(tokens)
    if n == 0:
        raise MalformedToken("a weighted code has at least the leading b0")
    if tokens[0] != NonAscent(0):
        raise MalformedToken(f"weighted code must start with b0, got {tokens[0]}")
    for pos in range(2, n + 1):
        tok = tokens[pos - 1]
        if isinstance(tok, Ascent):
            if tok.i != pos - 1 or not pos <= tok.j <= n:
                raise MalformedToken(
                    f"position {pos}: expected a{pos - 1}_j with {pos} <= j <= {n}, got {tok}"
                )
        elif isinstance(tok, NonAscent):
            if not 0 <= tok.j <= pos - 1:
                raise MalformedToken(f"position {pos}: expected b_j with j <= {pos - 1}, got {tok}")
        else:
            raise MalformedToken(f"position {pos}: not a weighted token: {tok!r}")
    return n


def project(tokens: Sequence[WeightedToken]) -> Code:
    """Drop the leading ``b0`` and keep subscripts' targets: the plain Blob Code."""
    check_weighted(tokens)
    return tuple(tok.j for tok in tokens[1:])


def blob_encode_weighted(t: RootedTree | Sequence[int]) -> tuple[WeightedToken, ...]:
    return weighted_from_code(blob_encode(t))


def blob_decode_weighted(tokens: Sequence[WeightedToken]) -> RootedTree:
    return blob_decode(project(tokens))


def format_weighted(tokens: Iterable[WeightedToken]) -> str:
    return ",".join(map(str, tokens))


def parse_weighted(text: str) -> tuple[WeightedToken, ...]:
    out: list[WeightedToken] = []
    for raw in text.split(","):
        tok = raw.strip()
        try:
            if tok.startswith("a"):
                i, j = tok[1:].split("_")
                out.append(Ascent(int(i), int(j)))
            elif tok.startswith("b"):
                out.append(NonAscent(int(tok[1:])))
            else:
                raise ValueError(tok)
        except ValueError as exc:
            raise MalformedToken(f"cannot parse weighted token {tok!r}") from exc
    check_weighted(out)
    return tuple(out)


@dataclass(frozen=True)
class DegreeTable:
    """Ascending/descending in- and out-degrees of vertices ``0..n``.

    Edges into 0 count as descents; non-ascent edges count as descents.
    """

    in_ascent: tuple[int, ...]
    in_descent: tuple[int, ...]
    out_ascent: tuple[int, ...]
    out_descent: tuple[int, ...]

    def row(self, v: int) -> tuple[int, int, int, int]:
        return (self.in_ascent[v], self.in_descent[v], self.out_ascent[v], self.out_descent[v])


def code_stats(tokens: Sequence[WeightedToken]) -> DegreeTable:
    """Degree table read straight off a weighted code."""
    n = check_weighted(tokens)
    i_a = [0] * (n + 1)
    i_d = [0] * (n + 1)
    o_a = [0] * (n + 1)
    for tok in tokens:
        if isinstance(tok, Ascent):
            i_a[tok.j] += 1
            o_a[tok.i] += 1
        else:
            i_d[tok.j] += 1
    o_d = [0] + [1 - o_a[v] for v in range(1, n + 1)]
    return DegreeTable(tuple(i_a), tuple(i_d), tuple(o_a), tuple(o_d))


def edge_stats(t: RootedTree | Sequence[int]) -> DegreeTable:
    """Degree table computed directly from the edges of a tree."""
    s = tree_array(t).tolist()
    n = len(s) - 1
    i_a = [0] * (n + 1)
    i_d = [0] * (n + 1)
    o_a = [0] * (n + 1)
    o_d = [0] * (n + 1)
    for v in range(1, n + 1):
        if s[v] > v:
            i_a[s[v]] += 1
            o_a[v] += 1
        else:
            i_d[s[v]] += 1
            o_d[v] += 1
    return DegreeTable(tuple(i_a), tuple(i_d), tuple(o_a), tuple(o_d))

