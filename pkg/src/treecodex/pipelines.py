"""Concrete involution pipelines for the Happy, Blob and Dandelion Codes.

Each builder returns a :class:`~treecodex.engine.Pipeline` whose first stage
is the set of rooted trees on ``0..n`` and whose last stage is the set of
codes.  Walking a tree through the pipeline (:func:`matrix_encode`) yields
its code; walking a code backwards (:func:`matrix_decode`) yields its tree.

Happy
    ``M0'`` has rows/columns ``0..n`` with ``(0, 0) = λ - b0``.  Step ``i``
    subtracts row 0 from row ``n - i + 1`` and cancels inside that row.  The
    final arrays become monomials read column by column, and one last
    involution trades monomials with a leading ``b0`` for codes.

Blob
    Step ``i`` (``r = n - i + 1``) subtracts row ``r - 1`` from row ``r``,
    cancels row ``r``, adds column ``r`` to column ``r - 1`` and cancels again.
    The graph rows ``1..n-i`` then describe a digraph whose vertex ``n - i``
    is the blob, with rows below carrying diagonal ``B`` weights.

Dandelion
    Step ``i`` subtracts row 1 from row ``n - i + 1`` and cancels that row,
    leaving ``-B_j`` in column 1 and ``B_j`` on the diagonal: the row now
    encodes an edge into 1 weighted by ``j``.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from functools import lru_cache
from typing import Any

from .core import Code, RootedTree, tree_array
from .engine import (
    GraphLayout,
    Involution,
    LabelledTree,
    Pipeline,
    Stage,
    SymbolicMatrix,
    WalkResult,
    cancel_involution,
    column_add_involution,
    mtt_involution,
    row_subtract_involution,
    tree_to_array,
    walk,
)

Mono = tuple[tuple[str, int], ...]


def _plus(_: Any) -> int:
    return 1


def _tree_stage(sid: str, layout: GraphLayout) -> Stage:
    def contains(x: Any) -> bool:
        return (
            isinstance(x, LabelledTree)
            and len(x.labels) == len(layout.rows)
            and len(x.gamma) == len(layout.gamma_rows)
            and all(0 <= j <= layout.n for j in x.labels + x.gamma)
            and layout.tree_ok(x.labels)
        )

    return Stage(sid, "trees", _plus, LabelledTree.render, layout.trees, contains)


def _array_stage(sid: str, m: SymbolicMatrix, keep=None, lowercase: bool = False) -> Stage:
    def contains(x: Any) -> bool:
        return isinstance(x, tuple) and m.contains(x) and (keep is None or keep(x))

    return Stage(
        sid,
        "arrays",
        m.sign,
        lambda x: m.render(x, lowercase),
        lambda: m.arrays(keep),
        contains,
        m,
    )


def _render_mono(x: Mono) -> str:
    return " ".join(f"{letter}{j}" for letter, j in x)


def _tree_labels(t: RootedTree | Sequence[int]) -> LabelledTree:
    return LabelledTree(tuple(tree_array(t).tolist()[1:]))


def _labels_tree(x: LabelledTree) -> RootedTree:
    return RootedTree(x.labels)


# ====================================================================== Happy


@lru_cache(maxsize=None)
def happy_pipeline(n: int) -> Pipeline:
    idx = range(0, n + 1)
    m0 = SymbolicMatrix.laplacian(idx, n, lam=True)

    lam_entry = (0, ("lam",))
    layout = GraphLayout(tuple(range(1, n + 1)), lambda v, j: j, fixed=((0, lam_entry),), n=n)

    stages = [_tree_stage("A0", layout)]
    invs: list[Involution] = [mtt_involution("phi0", layout, m0, trees_first=True)]

    def lam_filter(m: SymbolicMatrix):
        def keep(arr) -> bool:
            return any(m.term(r, c, t).sym == ("lam",) for r, (c, t) in zip(m.indices, arr))

        return keep

    stages.append(_array_stage("A0'", m0, lam_filter(m0)))
    cur = m0
    for i in range(1, n + 1):
        r = n - i + 1
        sub = cur.row_subtract(r, 0)
        red, partner = sub.cancel([(r, c) for c in idx])
        invs.append(row_subtract_involution(f"phi{i - 1}'", sub, 0, r))
        stages.append(_array_stage(f"A{i}", sub, lam_filter(sub)))
        invs.append(cancel_involution(f"phi{i}", sub, partner, row=r))
        stages.append(_array_stage(f"A{i}'", red, lam_filter(red)))
        cur = red
    final = cur

    def array_to_mono(arr) -> Mono:
        letters: list[tuple[str, int]] = [("", 0)] * (n + 1)
        for r, (c, t) in zip(final.indices, arr):
            sym = final.term(r, c, t).sym
            if c > 0:
                letters[c] = (sym[0], sym[1])
        return tuple(letters[1:])

    def mono_to_array(x: Mono) -> tuple:
        arr: list[Any] = [None] * (n + 1)
        low = [p for p, (letter, _) in enumerate(x, start=1) if letter == "b"]
        if low:
            (j,) = low
            arr[0] = (j, ("A", j))
            arr[j] = (0, ("sub", ("lam",)))
        else:
            arr[0] = lam_entry
        for p, (letter, k) in enumerate(x, start=1):
            if letter == "B":
                arr[p] = (p, final.find(p, p, ("B", k), 1))
        return tuple(arr)

    def phi_n_prime(which: int, x: Any) -> tuple[int, Any]:
        return (1, array_to_mono(x)) if which == 0 else (0, mono_to_array(x))

    invs.append(Involution(f"phi{n}'", phi_n_prime))

    def mono_sign(x: Mono) -> int:
        return -1 if any(letter == "b" for letter, _ in x) else 1

    def monos():
        for js in itertools.product(range(n + 1), repeat=n):
            yield tuple(("B", j) for j in js)
        for p in range(1, n + 1):
            for js in itertools.product(range(n + 1), repeat=n - 1):
                rest = [("B", j) for j in js]
                yield tuple(rest[: p - 1] + [("b", p)] + rest[p - 1 :])

    def mono_ok(x: Any) -> bool:
        if not isinstance(x, tuple) or len(x) != n:
            return False
        low = [p for p, (letter, j) in enumerate(x, start=1) if letter == "b"]
        return len(low) <= 1 and all(x[p - 1][1] == p for p in low) and all(0 <= j <= n for _, j in x)

    stages.append(Stage(f"A{n + 1}", "monomials", mono_sign, _render_mono, monos, mono_ok))

    def code_monos():
        for js in itertools.product(range(n + 1), repeat=n - 1):
            yield (("b", 0), *(("B", j) for j in js))

    def code_ok(x: Any) -> bool:
        return isinstance(x, tuple) and len(x) == n and x[0] == ("b", 0) and all(
            letter == "B" and 0 <= j <= n for letter, j in x[1:]
        )

    stages.append(Stage(f"A{n + 1}'", "codes", _plus, _render_mono, code_monos, code_ok))

    def phi_last(which: int, x: Mono) -> tuple[int, Mono]:
        if which == 1:
            return 0, (("B", 0), *x[1:])
        low = [p for p, (letter, _) in enumerate(x, start=1) if letter == "b"]
        y = list(x)
        if low:
            (j,) = low
            y[j - 1] = x[0]
            y[0] = ("B", j)
            return 0, tuple(y)
        j1 = x[0][1]
        if j1 == 0:
            return 1, (("b", 0), *x[1:])
        y[0] = ("B", x[j1 - 1][1])
        y[j1 - 1] = ("b", j1)
        return 0, tuple(y)

    invs.append(Involution(f"phi{n + 1}", phi_last))

    return Pipeline(
        "happy",
        n,
        stages,
        invs,
        to_first=_tree_labels,
        from_first=_labels_tree,
        to_last=lambda code: (("b", 0), *(("B", j) for j in code)),
        from_last=lambda x: tuple(j for _, j in x[1:]),
    )


# ====================================================================== Blob


def _blob_layout(n: int, i: int) -> GraphLayout:
    top = n - i

    def target(v: int, j: int) -> int:
        return top if j >= top else j

    return GraphLayout(tuple(range(1, top + 1)), target, gamma_rows=tuple(range(top + 1, n + 1)), n=n)


def _code_stage(sid: str, n: int, prefix: bool = False) -> Stage:
    """Terminal stage of plain codes (optionally as ``b0``-led monomials)."""

    def items():
        for js in itertools.product(range(n + 1), repeat=n - 1):
            yield ((("b", 0),) + tuple(("b", j) for j in js)) if prefix else js

    def ok(x: Any) -> bool:
        if not isinstance(x, tuple):
            return False
        if prefix:
            return len(x) == n and x[0] == ("b", 0) and all(
                letter == "b" and 0 <= j <= n for letter, j in x[1:]
            )
        return len(x) == n - 1 and all(isinstance(j, int) and 0 <= j <= n for j in x)

    render = _render_mono if prefix else (lambda x: " ".join(map(str, x)))
    return Stage(sid, "codes", _plus, render, items, ok)


@lru_cache(maxsize=None)
def blob_pipeline(n: int) -> Pipeline:
    conv = dict(
        to_first=_tree_labels,
        from_first=_labels_tree,
    )
    if n == 1:
        stages = [_tree_stage("G0", _blob_layout(1, 0)), _code_stage("S1", 1, prefix=True)]

        def only(which: int, x: Any) -> tuple[int, Any]:
            return (1, (("b", 0),)) if which == 0 else (0, LabelledTree((0,)))

        return Pipeline(
            "blob", 1, stages, [Involution("rho1", only)],
            to_last=lambda code: (("b", 0),), from_last=lambda x: (), **conv,
        )

    idx = range(1, n + 1)
    cur = SymbolicMatrix.laplacian(idx, n)
    layout0 = _blob_layout(n, 0)
    stages = [_tree_stage("G0", layout0), _array_stage("G0'", cur)]
    invs: list[Involution] = [mtt_involution("mu0'", layout0, cur, trees_first=True)]
    for i in range(1, n):
        r = n - i + 1
        low = i == n - 1
        rs = cur.row_subtract(r, r - 1)
        rs_red, p1 = rs.cancel([(r, c) for c in idx])
        ca = rs_red.column_add(r - 1, r)
        if low:
            ca_red, p2 = ca.cancel([(k, 1) for k in idx], substitute=True)
            kappa = cancel_involution(f"kappa{i}'", ca, p2, column=1)
        else:
            ca_red, p2 = ca.cancel([(r, r - 1)])
            kappa = cancel_involution(f"kappa{i}'", ca, p2, row=r)
        layout = _blob_layout(n, i)
        invs += [
            row_subtract_involution(f"rho{i}", rs, r - 1, r),
            cancel_involution(f"rho{i}'", rs, p1, row=r),
            column_add_involution(f"kappa{i}", r - 1, r),
            kappa,
            mtt_involution(f"mu{i}", layout, ca_red, trees_first=False),
            mtt_involution(f"mu{i}'", layout, ca_red, trees_first=True),
        ]
        stages += [
            _array_stage(f"S{i}", rs),
            _array_stage(f"S{i}'", rs_red),
            _array_stage(f"T{i}", ca),
            _array_stage(f"T{i}'", ca_red, lowercase=low),
            _tree_stage(f"G{i}", layout),
            _array_stage(f"G{i}'", ca_red, lowercase=low),
        ]
        cur = ca_red
    final = cur

    def rho_n(which: int, x: Any) -> tuple[int, Any]:
        if which == 0:
            syms = [final.term(r, c, t).sym for r, (c, t) in zip(final.indices, x)]
            return 1, tuple(("b", s[1]) for s in syms)
        arr = tuple((k, final.find(k, k, ("B", j), 1)) for k, (_, j) in enumerate(x, start=1))
        return 0, arr

    invs.append(Involution(f"rho{n}", rho_n))
    stages.append(_code_stage(f"S{n}", n, prefix=True))
    return Pipeline(
        "blob", n, stages, invs,
        to_last=lambda code: (("b", 0), *(("b", j) for j in code)),
        from_last=lambda x: tuple(j for _, j in x[1:]),
        **conv,
    )


# ====================================================================== Dandelion


def _dandelion_layout(n: int, i: int) -> GraphLayout:
    cut = n - i

    def target(v: int, j: int) -> int:
        return 1 if v > cut else j

    def letter(v: int) -> str:
        return "B" if v > cut else "b"

    return GraphLayout(tuple(range(1, n + 1)), target, letter, n=n)


@lru_cache(maxsize=None)
def dandelion_pipeline(n: int) -> Pipeline:
    conv = dict(to_first=_tree_labels, from_first=_labels_tree, to_last=tuple, from_last=tuple)
    if n == 1:
        stages = [_tree_stage("F0", _dandelion_layout(1, 0)), _code_stage("F0'", 1)]

        def only(which: int, x: Any) -> tuple[int, Any]:
            return (1, ()) if which == 0 else (0, LabelledTree((0,)))

        return Pipeline("dandelion", 1, stages, [Involution("mu0'", only)], **conv)

    idx = range(1, n + 1)
    cur = SymbolicMatrix.laplacian(idx, n)
    layout = _dandelion_layout(n, 0)
    stages = [_tree_stage("F0", layout), _array_stage("F0'", cur)]
    invs: list[Involution] = [mtt_involution("mu0'", layout, cur, trees_first=True)]
    for i in range(1, n):
        r = n - i + 1
        sub = cur.row_subtract(r, 1)
        red, partner = sub.cancel([(r, c) for c in idx])
        layout = _dandelion_layout(n, i)
        invs += [
            row_subtract_involution(f"xi{i}", sub, 1, r),
            cancel_involution(f"xi{i}'", sub, partner, row=r),
            mtt_involution(f"mu{i}", layout, red, trees_first=False),
        ]
        stages += [
            _array_stage(f"D{i}", sub),
            _array_stage(f"D{i}'", red),
            _tree_stage(f"F{i}", layout),
        ]
        if i < n - 1:
            invs.append(mtt_involution(f"mu{i}'", layout, red, trees_first=True))
            stages.append(_array_stage(f"F{i}'", red))
        cur = red

    def mu_hat(which: int, x: Any) -> tuple[int, Any]:
        if which == 0:
            return 1, x.labels[1:]
        return 0, LabelledTree((0, *x))

    invs.append(Involution(f"mu{n - 1}^", mu_hat))
    stages.append(_code_stage(f"F{n - 1}'", n))
    return Pipeline("dandelion", n, stages, invs, **conv)


# ====================================================================== entry points

PIPELINES = {"happy": happy_pipeline, "blob": blob_pipeline, "dandelion": dandelion_pipeline}


def get_pipeline(codec: str, n: int) -> Pipeline:
    try:
        build = PIPELINES[codec]
    except KeyError:
        raise ValueError(f"codec {codec!r} has no matrix pipeline; choose from {', '.join(PIPELINES)}") from None
    return build(n)


def matrix_encode_walk(
    t: RootedTree | Sequence[int], codec: str, *, trace: bool = False, debug: bool = False,
    budget: int | None = None,
) -> tuple[Code, WalkResult]:
    arr = tree_array(t)
    p = get_pipeline(codec, len(arr) - 1)
    res = walk(p, p.to_first(t), trace=trace, debug=debug, budget=budget)
    return p.from_last(res.value), res


def matrix_decode_walk(
    code: Sequence[int], codec: str, *, trace: bool = False, debug: bool = False,
    budget: int | None = None,
) -> tuple[RootedTree, WalkResult]:
    c = tuple(int(x) for x in code)
    p = get_pipeline(codec, len(c) + 1)
    res = walk(p, p.to_last(c), reverse=True, trace=trace, debug=debug, budget=budget)
    return p.from_first(res.value), res


def matrix_encode(t: RootedTree | Sequence[int], codec: str) -> Code:
    """Code of ``t`` obtained by walking it through the involution pipeline."""
    return matrix_encode_walk(t, codec)[0]


def matrix_decode(code: Sequence[int], codec: str) -> RootedTree:
    """Tree of ``code`` obtained by walking the pipeline backwards."""
    return matrix_decode_walk(code, codec)[0]


__all__ = [
    "PIPELINES",
    "blob_pipeline",
    "dandelion_pipeline",
    "get_pipeline",
    "happy_pipeline",
    "matrix_decode",
    "matrix_decode_walk",
    "matrix_encode",
    "matrix_encode_walk",
    "tree_to_array",
]
