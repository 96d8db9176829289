"""Happy Code: dismantle the path from 1 to 0 into cycles.

Tree surgery repeatedly detaches ``j = succ(1)`` from the path.  If ``j`` is
larger than every vertex already on a cycle it becomes a loop; otherwise it is
spliced into the cycle of the current cycle maximum ``J``, right after ``J``.
When ``succ(1) = 0`` the graph is a happy functional digraph and the code is
``(succ(2), ..., succ(n))``.  Edges off the path are never touched.

Implementations:

* :func:`happy_encode` — compiled permutation of the naïve code, O(n);
* :func:`happy_encode_surgery` — literal successor-map surgery (any roots ``<= 0``);
* :func:`happy_encode_slots` — the case-marked slot algorithm, where a
  lower-case slot means "on a cycle" and ``J`` is found as the rightmost
  lower-case slot instead of being tracked;
* :func:`happy_decode` / :func:`happy_decode_surgery` — repeatedly pull
  ``k = succ(J)`` for the largest cycle vertex ``J`` back onto the path after 1.

:func:`escher_insert_trace` simulates the active/inactive cycle-merging loop
that lifts the surgery to the matrix setting and counts its iterations.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import Code, FunctionalDigraph, RootedTree, code_array, tree_array
from .errors import InvalidLabel, NotATree, PreconditionViolated

# ----------------------------------------------------------------- fast codec


def _naive_array(nc: FunctionalDigraph | Sequence[int] | np.ndarray) -> np.ndarray:
    if isinstance(nc, FunctionalDigraph):
        return nc.array
    raw = np.asarray(nc, dtype=np.int64).reshape(-1)
    n = raw.shape[0]
    if n == 0 or int(raw.min()) < 0 or int(raw.max()) > n:
        raise InvalidLabel(f"naive code entries must lie in 0..{n}")
    s = np.empty(n + 1, dtype=np.int64)
    s[0] = 0
    s[1:] = raw
    return s


def _permute(s: np.ndarray) -> Code:
    code, ok = _kernels.happy_encode(s)
    if not ok:
        raise NotATree("position 1 never reached 0: the naive code is not a tree")
    return tuple(code.tolist())


def happy_encode_fast(nc: FunctionalDigraph | Sequence[int] | np.ndarray) -> Code:
    """Happy Code from a naïve code ``(succ(1), ..., succ(n))`` of a tree."""
    return _permute(_naive_array(nc))


def happy_encode(t: RootedTree | Sequence[int]) -> Code:
    return _permute(tree_array(t))


def happy_decode(code: Sequence[int] | np.ndarray, n: int | None = None) -> RootedTree:
    return RootedTree._trusted(_kernels.happy_decode(code_array(code, n)))


# ------------------------------------------------------------ literal surgery


def surgery_encode(succ: Sequence[int]) -> tuple[list[int], int]:
    """Happy surgery on a 1-indexed successor list whose roots are labels ``<= 0``.

    Returns ``(succ(2), ..., succ(m))`` of the final digraph and ``succ(1)``.
    """
    s = list(succ)
    top = 0  # largest vertex on a cycle so far; 0 = none yet
    while s[1] > 0:
        j = s[1]
        s[1] = s[j]
        if j > top:
            s[j] = j
            top = j
        else:
            s[j] = s[top]
            s[top] = j
    return s[2:], s[1]


def _cycle_vertices(s: list[int]) -> list[int]:
    m = len(s) - 1
    seen = [0] * (m + 1)
    on_cycle: list[int] = []
    for v in range(1, m + 1):
        x = v
        while x > 0 and not seen[x]:
            seen[x] = v
            x = s[x]
        if x > 0 and seen[x] == v:
            y = x
            while True:
                on_cycle.append(y)
                y = s[y]
                if y == x:
                    break
    return on_cycle


def surgery_decode(code: Sequence[int], root: int) -> list[int]:
    """Inverse of :func:`surgery_encode` with final ``succ(1) = root``."""
    s = [0, root, *code]
    while True:
        on_cycle = _cycle_vertices(s)
        if not on_cycle:
            return s
        top = max(on_cycle)
        k = s[top]
        s[top] = s[k]
        s[k] = s[1]
        s[1] = k


def happy_encode_surgery(t: RootedTree | Sequence[int]) -> Code:
    code, _ = surgery_encode(tree_array(t).tolist())
    return tuple(code)


def happy_decode_surgery(code: Sequence[int], n: int | None = None) -> RootedTree:
    c = code_array(code, n)
    return RootedTree._trusted(np.array(surgery_decode(c.tolist(), 0), dtype=np.int64))


# ------------------------------------------------------------- case-marked slots


@dataclass
class HappySlots:
    """Slot ``i`` holds the label of ``succ(i)`` and whether it is lower-case.

    Lower-case slots are exactly the vertices currently lying on a cycle.
    """

    labels: list[int]
    lower: list[bool]

    @classmethod
    def from_naive(cls, nc: Sequence[int]) -> HappySlots:
        return cls([0, *nc], [False] * (len(nc) + 1))

    def __str__(self) -> str:
        return " ".join(
            ("b" if self.lower[i] else "B") + str(self.labels[i]) for i in range(1, len(self.labels))
        )


def happy_encode_slots(nc: Sequence[int], check: bool = True) -> Code:
    """Happy Code by the slot algorithm, scanning for the rightmost lower-case slot.

    With ``check`` set, the tracked cycle maximum used by the other
    implementations is asserted to coincide with the scanned slot each step.
    """
    slots = HappySlots.from_naive(nc)
    p, lower = slots.labels, slots.lower
    n = len(p) - 1
    top = 0
    for _ in range(n + 1):
        if p[1] == 0 and not lower[1]:
            return tuple(p[2:])
        a = p[1]
        if a == 1:
            break
        p[1], p[a] = p[a], p[1]
        lower[1], lower[a] = lower[a], True
        k = n
        while k > a and not lower[k]:
            k -= 1
        if check:
            expected = a if a > top else top
            assert (k if k > a else a) == expected, "rightmost lower-case slot is not the cycle max"
            top = expected
        p[a], p[k] = p[k], p[a]
        lower[a], lower[k] = lower[k], lower[a]
    raise NotATree("position 1 never reached 0: the naive code is not a tree")


# ---------------------------------------------------------------- Escher cycle insertion


def escher_insert_trace(loop_vertex: int, cycle: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Insert an active loop into an active cycle by repeated successor swaps.

    ``cycle`` lists its vertices in edge order (``cycle[k] -> cycle[k+1]``).
    Each iteration swaps the successors of the two largest vertices lying on
    active cycles, marks the cycles through them active, and toggles the
    activity of the cycle containing the cycle maximum ``J``; it stops when no
    cycle is active.  Returns the final cycle through ``J`` (listed from ``J``)
    and the number of iterations.
    """
    verts = list(cycle)
    if not verts or len(set(verts)) != len(verts):
        raise PreconditionViolated("the cycle must be a nonempty list of distinct vertices")
    if loop_vertex in verts:
        raise PreconditionViolated("the loop vertex must not lie on the cycle")
    top = max(verts)
    if top < loop_vertex:
        raise PreconditionViolated(
            f"the cycle needs a vertex greater than the loop vertex {loop_vertex}"
        )
    succ = {v: verts[(k + 1) % len(verts)] for k, v in enumerate(verts)}
    succ[loop_vertex] = loop_vertex
    active = dict.fromkeys(succ, True)

    def orbit(v: int) -> list[int]:
        out = [v]
        y = succ[v]
        while y != v:
            out.append(y)
            y = succ[y]
        return out

    steps = 0
    while any(active.values()):
        live = sorted((v for v, a in active.items() if a), reverse=True)
        if len(live) < 2:
            raise PreconditionViolated("a single active vertex cannot be swapped")
        p, q = live[0], live[1]
        succ[p], succ[q] = succ[q], succ[p]
        for v in orbit(p) + orbit(q):
            active[v] = True
        for v in orbit(top):
            active[v] = not active[v]
        steps += 1
    return tuple(orbit(top)), steps
