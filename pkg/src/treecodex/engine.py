"""Signed sets, sign-reversing involutions and the Garsia–Milne walk.

Symbolic matrices
-----------------
A :class:`SymbolicMatrix` keeps every entry as an *uncancelled* list of
monomial terms.  Each term has a coefficient (±1), a symbol — ``("B", j)``,
``("b", j)`` or ``("lam",)`` — and a *term id* recording where it came from:

* ``("D", j)`` — the ``B_j`` summand of a diagonal entry,
* ``("A", j)`` — the ``-b_j`` entry in column ``j`` (diagonal included),
* ``("lam",)`` — the placeholder ``λ``,
* ``("sub", t)`` — the negated copy of term ``t`` produced by a row subtraction,
* ``("add", t)`` — the copy of term ``t`` produced by a column addition.

An *array* (an element of a matrix set) picks one term per row from distinct
columns; it is stored as a tuple of ``(column, term id)`` in row order.  Its
sign is the permutation sign times the product of the chosen coefficients.

Involutions
-----------
Every involution acts on the difference ``S_d - S_(d+1)`` of two consecutive
stages and is given as ``apply(which, x) -> (which', y)`` where ``which`` is 0
for the upper stage and 1 for the lower one.  Generic builders cover the four
kinds used by all pipelines: Matrix-Tree toggling, row subtraction, column
addition and in-entry cancellation.

The walk
--------
:func:`walk` chains the involutions with negative-identity transfers between
adjacent differences until the element lands in the far terminal stage.
"""

from __future__ import annotations

import itertools
import os
from collections import defaultdict
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import Any

from .errors import NotACycle, StepBudgetExceeded

Sym = tuple
Tid = tuple
Entry = tuple[int, Tid]  # (column, term id)
Array = tuple[Entry, ...]

STEP_BUDGET_ENV = "TREECODEX_STEP_BUDGET"


# ---------------------------------------------------------------- symbols


def render_sym(sym: Sym, lowercase: bool = False) -> str:
    if sym[0] == "lam":
        return "lam"
    letter = "b" if lowercase else sym[0]
    return f"{letter}{sym[1]}"


def base_kind(tid: Tid) -> str:
    """``"D"`` for diagonal-sum (and λ) terms, ``"A"`` for adjacency terms."""
    while tid[0] in ("sub", "add"):
        tid = tid[1]
    return "A" if tid[0] == "A" else "D"


@dataclass(frozen=True, slots=True)
class Term:
    coef: int
    sym: Sym


# ---------------------------------------------------------------- matrices


class SymbolicMatrix:
    """Square matrix of uncancelled monomial terms with tracked provenance."""

    def __init__(self, indices: Sequence[int], cells: dict[tuple[int, int], dict[Tid, Term]]):
        self.indices = tuple(indices)
        self.cells = cells
        self._first = self.indices[0]
        self._lookup: dict[tuple[int, int, Sym, int], list[Tid]] = defaultdict(list)
        for (r, c), terms in cells.items():
            for tid, term in terms.items():
                self._lookup[(r, c, term.sym, term.coef)].append(tid)

    # -- construction -------------------------------------------------------

    @classmethod
    def laplacian(cls, indices: Sequence[int], n: int, lam: bool = False) -> SymbolicMatrix:
        """Rows/columns ``indices``; diagonal ``sum_j B_j - b_i``, off-diagonal ``-b_j``.

        With ``lam`` the ``(0, 0)`` entry is ``λ - b_0`` instead.
        """
        cells: dict[tuple[int, int], dict[Tid, Term]] = {}
        for r in indices:
            for c in indices:
                cell: dict[Tid, Term] = {}
                if r == c:
                    if lam and r == 0:
                        cell[("lam",)] = Term(1, ("lam",))
                    else:
                        for j in range(n + 1):
                            cell[("D", j)] = Term(1, ("B", j))
                cell[("A", c)] = Term(-1, ("b", c))
                cells[(r, c)] = cell
        return cls(indices, cells)

    def row_subtract(self, target: int, source: int) -> SymbolicMatrix:
        """Row ``target`` -= row ``source``, keeping every term."""
        cells = {k: dict(v) for k, v in self.cells.items()}
        for c in self.indices:
            for tid, term in self.cells[(source, c)].items():
                cells[(target, c)][("sub", tid)] = Term(-term.coef, term.sym)
        return SymbolicMatrix(self.indices, cells)

    def column_add(self, target: int, source: int) -> SymbolicMatrix:
        """Column ``target`` += column ``source``, keeping every term."""
        cells = {k: dict(v) for k, v in self.cells.items()}
        for r in self.indices:
            for tid, term in self.cells[(r, source)].items():
                cells[(r, target)][("add", tid)] = Term(term.coef, term.sym)
        return SymbolicMatrix(self.indices, cells)

    def cancel(
        self, where: Iterable[tuple[int, int]], substitute: bool = False
    ) -> tuple[SymbolicMatrix, dict[tuple[int, int, Tid], Tid]]:
        """Cancel equal-and-opposite terms inside the given cells.

        With ``substitute`` the comparison treats ``B_j`` as ``b_j``.  Returns
        the reduced matrix and the partner map used by the matching
        involution.  Each symbol may pair at most once per cell.
        """
        cells = {k: dict(v) for k, v in self.cells.items()}
        partner: dict[tuple[int, int, Tid], Tid] = {}
        for r, c in where:
            by_key: dict[tuple, dict[int, list[Tid]]] = defaultdict(lambda: {1: [], -1: []})
            for tid, term in self.cells[(r, c)].items():
                key = term.sym
                if substitute and key[0] in ("B", "b"):
                    key = ("b", key[1])
                by_key[key][term.coef].append(tid)
            for key, side in by_key.items():
                pos, neg = side[1], side[-1]
                if pos and neg:
                    if len(pos) != 1 or len(neg) != 1:
                        raise AssertionError(f"ambiguous cancellation of {key} in cell {(r, c)}")
                    partner[(r, c, pos[0])] = neg[0]
                    partner[(r, c, neg[0])] = pos[0]
                    del cells[(r, c)][pos[0]]
                    del cells[(r, c)][neg[0]]
        return SymbolicMatrix(self.indices, cells), partner

    # -- queries ------------------------------------------------------------

    def pos(self, row: int) -> int:
        return row - self._first

    def term(self, r: int, c: int, tid: Tid) -> Term:
        return self.cells[(r, c)][tid]

    def find(self, r: int, c: int, sym: Sym, coef: int) -> Tid:
        hits = self._lookup.get((r, c, sym, coef), ())
        if len(hits) != 1:
            raise KeyError(f"expected one {coef:+d}*{render_sym(sym)} in cell {(r, c)}, found {len(hits)}")
        return hits[0]

    def contains(self, arr: Array) -> bool:
        if len(arr) != len(self.indices):
            return False
        cols = [c for c, _ in arr]
        if sorted(cols) != list(self.indices):
            return False
        return all(tid in self.cells[(r, c)] for r, (c, tid) in zip(self.indices, arr))

    def sign(self, arr: Array) -> int:
        s = 1
        cols = [c for c, _ in arr]
        for a in range(len(cols)):
            for b in range(a + 1, len(cols)):
                if cols[a] > cols[b]:
                    s = -s
        for r, (c, tid) in zip(self.indices, arr):
            s *= self.cells[(r, c)][tid].coef
        return s

    def arrays(self, keep: Callable[[Array], bool] | None = None) -> Iterator[Array]:
        """Every array (one term per row and column), optionally filtered."""
        for perm in itertools.permutations(self.indices):
            choices = [
                [(c, tid) for tid in self.cells[(r, c)]] for r, c in zip(self.indices, perm)
            ]
            for arr in itertools.product(*choices):
                if keep is None or keep(arr):
                    yield arr

    def render(self, arr: Array, lowercase: bool = False) -> str:
        parts = []
        for r, (c, tid) in zip(self.indices, arr):
            term = self.cells[(r, c)][tid]
            sign = "+" if term.coef > 0 else "-"
            parts.append(f"({r},{c},{sign}{render_sym(term.sym, lowercase)},{base_kind(tid)})")
        return " ".join(parts)


def replace_row(arr: Array, pos: int, entry: Entry) -> Array:
    return arr[:pos] + (entry,) + arr[pos + 1 :]


# ---------------------------------------------------------------- stages


@dataclass(frozen=True)
class LabelledTree:
    """Tree-like stage element: a successor label per graph row plus a diagonal tail.

    ``labels`` are the symbol subscripts chosen in the graph rows (for plain
    trees, the successors); ``gamma`` lists the ``B`` subscripts sitting on
    the diagonal of the rows outside the graph.
    """

    labels: tuple[int, ...]
    gamma: tuple[int, ...] = ()

    def render(self) -> str:
        head = "tree " + " ".join(map(str, self.labels))
        return head + (" | gamma " + " ".join(map(str, self.gamma)) if self.gamma else "")


@dataclass(frozen=True)
class Stage:
    """One signed set of a pipeline."""

    id: str
    kind: str  # "trees" | "arrays" | "monomials" | "codes"
    sign: Callable[[Any], int]
    render: Callable[[Any], str]
    enumerate: Callable[[], Iterable[Any]]
    contains: Callable[[Any], bool]
    matrix: SymbolicMatrix | None = None


@dataclass(frozen=True)
class Involution:
    """Sign-reversing involution on ``upper - lower`` (two adjacent stages)."""

    name: str
    apply: Callable[[int, Any], tuple[int, Any]]


@dataclass
class Pipeline:
    name: str
    n: int
    stages: list[Stage]
    involutions: list[Involution]
    to_first: Callable[[Any], Any] = field(repr=False, default=lambda x: x)
    from_first: Callable[[Any], Any] = field(repr=False, default=lambda x: x)
    to_last: Callable[[Any], Any] = field(repr=False, default=lambda x: x)
    from_last: Callable[[Any], Any] = field(repr=False, default=lambda x: x)

    def __post_init__(self) -> None:
        assert len(self.involutions) == len(self.stages) - 1

    def stage_ids(self) -> list[str]:
        return [s.id for s in self.stages]

    def difference_sign(self, d: int, which: int, x: Any) -> int:
        """Sign of ``x`` inside ``S_d - S_(d+1)`` (lower-stage signs are negated)."""
        s = self.stages[d + which].sign(x)
        return s if which == 0 else -s


# ---------------------------------------------------------------- graph layouts


@dataclass(frozen=True)
class GraphLayout:
    """How a block of matrix rows encodes a functional digraph (Matrix Tree Theorem).

    Row ``v`` choosing a symbol with subscript ``j`` is the edge
    ``v -> target(v, j)``.  The *diagonal* form is ``+B_j`` at ``(v, v)``;
    the *off-diagonal* form is ``-(off_letter(v))_j`` at ``(v, target)``.
    Rows listed in ``gamma_rows`` always hold a diagonal ``B`` and are not
    graph vertices; ``fixed`` pins the entries of any remaining rows.
    """

    rows: tuple[int, ...]
    target: Callable[[int, int], int]
    off_letter: Callable[[int], str] = lambda v: "b"
    gamma_rows: tuple[int, ...] = ()
    fixed: tuple[tuple[int, Entry], ...] = ()
    n: int = 0

    def tree_ok(self, labels: Sequence[int]) -> bool:
        succ = {v: self.target(v, j) for v, j in zip(self.rows, labels)}
        for v in self.rows:
            x, steps = v, 0
            while x != 0:
                x = succ[x]
                steps += 1
                if steps > len(self.rows):
                    return False
        return True

    def trees(self) -> Iterator[LabelledTree]:
        for labels in itertools.product(range(self.n + 1), repeat=len(self.rows)):
            if self.tree_ok(labels):
                for gamma in itertools.product(range(self.n + 1), repeat=len(self.gamma_rows)):
                    yield LabelledTree(tuple(labels), tuple(gamma))


def tree_to_array(tree: LabelledTree, layout: GraphLayout, m: SymbolicMatrix) -> Array:
    arr: list[Entry | None] = [None] * len(m.indices)
    for v, j in zip(layout.rows, tree.labels):
        arr[m.pos(v)] = (v, m.find(v, v, ("B", j), 1))
    for v, j in zip(layout.gamma_rows, tree.gamma):
        arr[m.pos(v)] = (v, m.find(v, v, ("B", j), 1))
    for v, entry in layout.fixed:
        arr[m.pos(v)] = entry
    return tuple(arr)  # type: ignore[arg-type]


def read_graph(arr: Array, layout: GraphLayout, m: SymbolicMatrix) -> tuple[dict[int, int], dict[int, bool]]:
    """Labels and diagonality of every graph row of an array."""
    labels: dict[int, int] = {}
    diag: dict[int, bool] = {}
    for v in layout.rows:
        c, tid = arr[m.pos(v)]
        term = m.term(v, c, tid)
        j = term.sym[1]
        is_diag = c == v and term.coef == 1 and term.sym[0] == "B"
        if not is_diag:
            assert term.coef == -1 and term.sym[0] == layout.off_letter(v), "not an edge term"
            assert c == layout.target(v, j), "off-diagonal term in the wrong column"
        labels[v] = j
        diag[v] = is_diag
    return labels, diag


def graph_cycles(labels: dict[int, int], layout: GraphLayout) -> list[list[int]]:
    succ = {v: layout.target(v, j) for v, j in labels.items()}
    seen: dict[int, int] = {}
    cycles = []
    for v in layout.rows:
        x = v
        while x != 0 and x not in seen:
            seen[x] = v
            x = succ[x]
        if x != 0 and seen[x] == v:
            cyc = [x]
            y = succ[x]
            while y != x:
                cyc.append(y)
                y = succ[y]
            cycles.append(cyc)
    return cycles


def toggle_cycle(arr: Array, cycle: Sequence[int], layout: GraphLayout, m: SymbolicMatrix) -> Array:
    """Move one cycle of the array's digraph onto or off the diagonal."""
    labels, diag = read_graph(arr, layout, m)
    cyc = list(cycle)
    if not cyc or any(v not in labels for v in cyc):
        raise NotACycle(f"{cyc} are not graph rows")
    k = len(cyc)
    if any(layout.target(cyc[i], labels[cyc[i]]) != cyc[(i + 1) % k] for i in range(k)):
        raise NotACycle(f"{cyc} is not a cycle of the array's digraph")
    out = arr
    for v in cyc:
        j = labels[v]
        if diag[v]:
            col = layout.target(v, j)
            entry = (col, m.find(v, col, (layout.off_letter(v), j), -1))
        else:
            entry = (v, m.find(v, v, ("B", j), 1))
        out = replace_row(out, m.pos(v), entry)
    return out


def mtt_pair(arr: Array, layout: GraphLayout, m: SymbolicMatrix) -> Array | LabelledTree:
    """Matrix-Tree partner of an array: its tree, or the array with one cycle toggled."""
    labels, _ = read_graph(arr, layout, m)
    cycles = graph_cycles(labels, layout)
    if not cycles:
        gamma = []
        for v in layout.gamma_rows:
            c, tid = arr[m.pos(v)]
            term = m.term(v, c, tid)
            assert c == v and term.sym[0] == "B" and term.coef == 1
            gamma.append(term.sym[1])
        return LabelledTree(tuple(labels[v] for v in layout.rows), tuple(gamma))
    top = max(max(c) for c in cycles)
    cyc = next(c for c in cycles if top in c)
    return toggle_cycle(arr, cyc, layout, m)


# ---------------------------------------------------------------- involution kinds


def mtt_involution(name: str, layout: GraphLayout, m: SymbolicMatrix, trees_first: bool) -> Involution:
    tree_side = 0 if trees_first else 1
    array_side = 1 - tree_side

    def apply(which: int, x: Any) -> tuple[int, Any]:
        if which == tree_side:
            return array_side, tree_to_array(x, layout, m)
        y = mtt_pair(x, layout, m)
        return (tree_side, y) if isinstance(y, LabelledTree) else (array_side, y)

    return Involution(name, apply)


def row_subtract_involution(name: str, m_after: SymbolicMatrix, source: int, target: int) -> Involution:
    """Pairs arrays across ``row target -= row source``.

    An array of the lower stage whose ``target`` row holds a subtracted copy
    swaps (and negates) its ``source`` and ``target`` entries; every other
    array is matched with the identical array of the other stage.
    """
    ps, pt = m_after.pos(source), m_after.pos(target)

    def apply(which: int, x: Array) -> tuple[int, Array]:
        if which == 0:
            return 1, x
        c, tid = x[pt]
        if tid[0] != "sub":
            return 0, x
        c_src, tid_src = x[ps]
        y = replace_row(x, ps, (c, tid[1]))
        y = replace_row(y, pt, (c_src, ("sub", tid_src)))
        return 1, y

    return Involution(name, apply)


def column_add_involution(name: str, target: int, source: int) -> Involution:
    """Pairs arrays across ``column target += column source``."""

    def apply(which: int, x: Array) -> tuple[int, Array]:
        if which == 0:
            return 1, x
        p = next(k for k, (c, _) in enumerate(x) if c == target)
        tid = x[p][1]
        if tid[0] != "add":
            return 0, x
        q = next(k for k, (c, _) in enumerate(x) if c == source)
        y = replace_row(x, p, (source, tid[1]))
        y = replace_row(y, q, (target, ("add", x[q][1])))
        return 1, y

    return Involution(name, apply)


def cancel_involution(
    name: str,
    m_before: SymbolicMatrix,
    partner: dict[tuple[int, int, Tid], Tid],
    row: int | None = None,
    column: int | None = None,
) -> Involution:
    """Pairs an array using a cancelled term with its partner-term twin."""

    def apply(which: int, x: Array) -> tuple[int, Array]:
        if which == 1:
            return 0, x
        if row is not None:
            p = m_before.pos(row)
        else:
            p = next(k for k, (c, _) in enumerate(x) if c == column)
        r = m_before.indices[p]
        c, tid = x[p]
        other = partner.get((r, c, tid))
        if other is None:
            return 1, x
        return 0, replace_row(x, p, (c, other))

    return Involution(name, apply)


# ---------------------------------------------------------------- the walk


def default_budget(n: int) -> int:
    env = os.environ.get(STEP_BUDGET_ENV)
    if env:
        return int(env)
    return 8**n


@dataclass
class TraceLine:
    step: int
    stage: str
    sign: int
    rendering: str

    def __str__(self) -> str:
        return f"STEP {self.step} | stage={self.stage} | sign={'+' if self.sign > 0 else '-'} | {self.rendering}"


@dataclass
class WalkResult:
    value: Any
    steps: int
    trace: list[TraceLine]


def walk(
    p: Pipeline,
    x: Any,
    *,
    reverse: bool = False,
    budget: int | None = None,
    trace: bool = False,
    debug: bool = False,
) -> WalkResult:
    """Carry a terminal-stage element to the opposite terminal stage.

    Forward walks start in the first stage; ``reverse`` walks start in the
    last one.  Each step applies one involution; when the image lies in a
    middle stage, the negative identity transfers it into the neighbouring
    difference and the walk continues there.

    Trace lines are emitted for the start, every involution image and every
    negative-identity transfer; the recorded sign is the element's sign
    within the difference set it currently belongs to.  ``steps`` (and the
    budget) count involution applications only.
    """
    last = len(p.stages) - 1
    limit = default_budget(p.n) if budget is None else budget
    lines: list[TraceLine] = []

    def record(k: int, s: int, v: Any, sign: int) -> None:
        if trace:
            lines.append(TraceLine(k, p.stages[s].id, sign, p.stages[s].render(v)))

    stage = last if reverse else 0
    d = last - 1 if reverse else 0
    line = 0
    record(line, stage, x, p.difference_sign(d, stage - d, x))
    steps = 0
    while True:
        which = stage - d
        inv = p.involutions[d]
        w2, y = inv.apply(which, x)
        if debug:
            assert p.stages[d + w2].contains(y), f"{inv.name} left its domain"
            assert inv.apply(w2, y) == (which, x), f"{inv.name} is not an involution at {x!r}"
            assert p.difference_sign(d, w2, y) == -p.difference_sign(d, which, x), (
                f"{inv.name} is not sign-reversing at {x!r}"
            )
        steps += 1
        stage, x = d + w2, y
        line += 1
        record(line, stage, x, p.difference_sign(d, w2, x))
        if stage == (0 if reverse else last):
            return WalkResult(x, steps, lines)
        if steps >= limit:
            raise StepBudgetExceeded(limit)
        if stage == (last if reverse else 0):
            raise AssertionError("walk returned to its starting stage")
        # negative identity: the same element, now read in the neighbouring difference
        d = stage if stage == d + 1 else stage - 1
        line += 1
        record(line, stage, x, p.difference_sign(d, stage - d, x))
