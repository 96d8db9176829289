"""End-to-end acceptance checks, one test per criterion.

Each test records a ``PASS|FAIL criterion N <summary> <elapsed>`` line, shown
in the terminal summary (and printed immediately when run with ``-s``), and
then asserts the outcome.
"""

from __future__ import annotations

import io
import time
from collections.abc import Callable
from contextlib import redirect_stdout
from typing import Any

import numpy as np
import pytest
from conftest import ACCEPTANCE_LINES

from treecodex import (
    CODECS,
    CycleFound,
    FunctionalDigraph,
    RootedTree,
    blob_decode,
    blob_decode_weighted,
    blob_encode,
    blob_encode_weighted,
    code_stats,
    cycles_of,
    dandelion_decode,
    dandelion_encode,
    dandelion_encode_fast,
    enumerate_codes,
    enumerate_trees,
    escher_insert_trace,
    format_weighted,
    happy_decode,
    happy_encode,
    happy_encode_fast,
    mtt_check,
    naive_code,
    parse_weighted,
    path,
    prufer_decode,
    prufer_encode,
    random_tree,
    reverse_path,
    tree_weight_sum,
    ucsd_product,
    validate_tree,
    warm_up,
)
from treecodex import _kernels
from treecodex.cli import main
from treecodex.core import random_code
from treecodex.forests import (
    FOREST_CODECS,
    brute_force_forests,
    code_space_size,
    enumerate_forest_codes,
    forest_decode,
    forest_det_check,
    forest_encode,
)
from treecodex.matrix_verify import blob_reduction, random_point_check, reduced_laplacian, uniform_closed_form
from treecodex.pipelines import blob_pipeline, happy_pipeline, matrix_encode, matrix_encode_walk
from treecodex.poly import MultiPoly, b, det, poly_prod, poly_sum

FIG = (6, 4, 2, 0, 4, 2, 4)
PATH_TREE = RootedTree((6, 5, 2, 9, 7, 4, 0, 3, 8))  # 1→6→4→9→8→3→2→5→7→0


def report(number: int, passed: bool, summary: str, start: float) -> None:
    line = f"{'PASS' if passed else 'FAIL'} criterion {number} {summary} ({time.perf_counter() - start:.2f}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)


# ---------------------------------------------------------------- 1. golden vectors


def _raises(fn: Callable[[], Any], exc: type[BaseException]) -> str:
    try:
        fn()
    except exc:
        return exc.__name__
    return "no error"


def _rotations(cycles) -> set[tuple[int, ...]]:
    def canon(c):
        k = c.index(min(c))
        return tuple(c[k:] + c[:k])

    return {canon(tuple(c)) for c in cycles}


def _cli(*argv: str) -> str:
    buf = io.StringIO()
    with redirect_stdout(buf):
        main(list(argv))
    return buf.getvalue()


def _happy_last(n: int, x: tuple[int, ...]) -> str:
    p = happy_pipeline(n)
    w, y = p.involutions[-1].apply(0, tuple(("B", j) for j in x))
    st = p.stages[-2 + w]
    return ("-" if p.difference_sign(len(p.stages) - 2, w, y) < 0 else "+") + st.render(y)


def _blob_rho3() -> str:
    p = blob_pipeline(3)
    fin = p.stages[-2]
    arr = tuple((k, fin.matrix.find(k, k, ("B", j), 1)) for k, j in [(1, 0), (2, 3), (3, 0)])
    w, y = p.involutions[-1].apply(0, arr)
    return ("-" if p.difference_sign(len(p.stages) - 2, w, y) < 0 else "+") + p.stages[-1].render(y)


def _stats_table() -> dict[str, int]:
    t = code_stats(parse_weighted("b0,a1_3,b2,b0,a4_5"))
    return {
        "I_D(0)": t.in_descent[0],
        "O_A(1)": t.out_ascent[1],
        "I_D(2)": t.in_descent[2],
        "I_A(3)": t.in_ascent[3],
        "O_A(4)": t.out_ascent[4],
        "I_A(5)": t.in_ascent[5],
    }


def _bs(*js: int) -> MultiPoly:
    return poly_sum(MultiPoly.var(b(j)) for j in js)


def golden_vectors() -> list[tuple[str, Callable[[], Any], Any]]:
    walk_g1 = lambda: any(  # noqa: E731
        x.stage == "G1" and x.rendering == "tree 3 0 | gamma 1"
        for x in matrix_encode_walk(RootedTree((3, 1, 0)), "blob", trace=True)[1].trace
    )
    return [
        # trees and digraphs
        ("naive (3,2,0,5,4) rejected", lambda: _raises(lambda: validate_tree((3, 2, 0, 5, 4)), CycleFound), "CycleFound"),
        ("figure tree valid", lambda: validate_tree(FIG).succ, FIG),
        ("path 1 in 1->3->4->2->0", lambda: path(RootedTree((3, 0, 4, 2)), 1), (1, 3, 4, 2, 0)),
        ("path 1 in fast-dandelion tree", lambda: path(RootedTree((9, 4, 7, 0, 4, 9, 0, 1, 3)), 1), (1, 9, 3, 7, 0)),
        ("naive code of fast-happy tree", lambda: naive_code(RootedTree((7, 4, 9, 0, 4, 7, 3, 1, 0))), (7, 4, 9, 0, 4, 7, 3, 1, 0)),
        ("cycles of (3,2,0,5,4)", lambda: _rotations(cycles_of(FunctionalDigraph((3, 2, 0, 5, 4)))), {(2,), (4, 5)}),
        (
            "cycles of code digraph (5,2,9,7,4,3,8,6)",
            lambda: _rotations(cycles_of(FunctionalDigraph((0, 5, 2, 9, 7, 4, 3, 8, 6)))),
            _rotations([(6, 4, 9), (8,), (3, 2, 5, 7)]),
        ),
        ("n=2 trees", lambda: {t.succ for t in enumerate_trees(2)}, {(0, 0), (0, 1), (2, 0)}),
        ("path reversal", lambda: reverse_path(PATH_TREE).succ, (7, 3, 8, 6, 2, 0, 5, 9, 4)),
        # Prüfer
        ("prufer encode figure tree", lambda: prufer_encode(RootedTree(FIG)), (6, 2, 4, 2, 4, 4)),
        ("prufer decode (6,2,4,2,4,4)", lambda: prufer_decode((6, 2, 4, 2, 4, 4)).succ, FIG),
        # Blob
        ("blob 2->1->3->0", lambda: blob_encode(RootedTree((3, 1, 0))), (3, 1)),
        ("blob (3,3,0,0)", lambda: blob_encode(RootedTree((3, 3, 0, 0))), (3, 3, 0)),
        ("blob figure tree", lambda: blob_encode(RootedTree(FIG)), (6, 4, 2, 4, 2, 4)),
        ("blob decode (3,1)", lambda: blob_decode((3, 1)).succ, (3, 1, 0)),
        ("weighted blob", lambda: format_weighted(blob_encode_weighted(RootedTree((3, 0, 2, 5, 0)))), "b0,a1_3,b2,b0,a4_5"),
        ("weighted blob decode", lambda: blob_decode_weighted(parse_weighted("b0,a1_3,b2,b0,a4_5")).succ, (3, 0, 2, 5, 0)),
        (
            "weighted stats table",
            _stats_table,
            {"I_D(0)": 2, "O_A(1)": 1, "I_D(2)": 1, "I_A(3)": 1, "O_A(4)": 1, "I_A(5)": 1},
        ),
        # Happy
        ("happy 1->3->2->4->0", lambda: happy_encode(RootedTree((3, 4, 2, 0))), (3, 2, 4)),
        ("happy 1->2->0", lambda: happy_encode(RootedTree((2, 0))), (2,)),
        ("happy figure tree", lambda: happy_encode(RootedTree(FIG)), (6, 2, 2, 4, 4, 4)),
        ("happy fast", lambda: happy_encode_fast((7, 4, 9, 0, 4, 7, 3, 1, 0)), (4, 7, 0, 4, 7, 3, 1, 9)),
        ("happy fast, succ(1)=0", lambda: happy_encode_fast((0, 4, 9, 0, 4, 7, 3, 1, 0)), (4, 9, 0, 4, 7, 3, 1, 0)),
        ("happy fast reversed tree", lambda: happy_encode_fast((7, 3, 8, 6, 2, 0, 5, 9, 4)), (5, 2, 9, 7, 4, 3, 8, 6)),
        ("happy decode (3,2,4)", lambda: happy_decode((3, 2, 4)).succ, (3, 4, 2, 0)),
        ("escher worked cycle", lambda: escher_insert_trace(4, (9, 2, 3, 6, 8, 7)), ((9, 4, 2, 3, 6, 8, 7), 7)),
        ("escher base case", lambda: escher_insert_trace(3, (7,)), ((7, 3), 1)),
        # Dandelion
        ("dandelion (2,3,0,2,1)", lambda: dandelion_encode(RootedTree((2, 3, 0, 2, 1))), (3, 2, 2, 1)),
        ("dandelion 1->3->4->2->0", lambda: dandelion_encode(RootedTree((3, 0, 4, 2))), (2, 4, 3)),
        ("dandelion figure tree", lambda: dandelion_encode(RootedTree(FIG)), (4, 2, 2, 4, 6, 4)),
        ("dandelion fast", lambda: dandelion_encode_fast(RootedTree((9, 4, 7, 0, 4, 9, 0, 1, 3))), (4, 7, 0, 4, 9, 3, 1, 9)),
        ("dandelion path tree", lambda: dandelion_encode_fast(PATH_TREE), (5, 2, 9, 7, 4, 3, 8, 6)),
        ("dandelion decode (4,7,0,4,9,3,1,9)", lambda: dandelion_decode((4, 7, 0, 4, 9, 3, 1, 9)).succ, (9, 4, 7, 0, 4, 9, 0, 1, 3)),
        ("dandelion decode (3,2,2,1)", lambda: dandelion_decode((3, 2, 2, 1)).succ, (2, 3, 0, 2, 1)),
        ("dandelion decode (2,4,3)", lambda: dandelion_decode((2, 4, 3)).succ, (3, 0, 4, 2)),
        # involution walks
        ("happy walk 1->2->0", lambda: matrix_encode(RootedTree((2, 0)), "happy"), (2,)),
        ("blob walk 2->1->3->0", lambda: matrix_encode(RootedTree((3, 1, 0)), "blob"), (3, 1)),
        ("blob walk visits G1", walk_g1, True),
        ("dandelion walk 1->3->4->2->0", lambda: matrix_encode(RootedTree((3, 0, 4, 2)), "dandelion"), (2, 4, 3)),
        ("happy stage count n=6", lambda: len(happy_pipeline(6).stages), 16),
        ("happy last involution", lambda: _happy_last(6, (3, 4, 6, 0, 2, 0)), "-B6 B4 b3 B0 B2 B0"),
        ("happy last involution, j1=0", lambda: _happy_last(3, (0, 2, 1)), "-b0 B2 B1"),
        ("blob rho3", _blob_rho3, "-b0 b3 b0"),
        # matrices
        (
            "n=3 reduced laplacian",
            lambda: reduced_laplacian(3).rows,
            [
                [_bs(0, 2, 3), -_bs(2), -_bs(3)],
                [-_bs(1), _bs(0, 1, 3), -_bs(3)],
                [-_bs(1), -_bs(2), _bs(0, 1, 2)],
            ],
        ),
        ("det of reduced matrix M", lambda: det(blob_reduction(3)), _bs(0) * _bs(0, 1, 2, 3) ** 2),
        ("mtt n=3 uniform", lambda: mtt_check(3), True),
        ("ucsd n=4 triangular product", lambda: poly_prod(blob_reduction(4, "ucsd").diagonal()) == ucsd_product(4), True),
        # CLI
        ("cli encode prufer", lambda: _cli("encode", "--codec", "prufer", "--tree", "6 4 2 0 4 2 4"), "6,2,4,2,4,4\n"),
        (
            "cli compare",
            lambda: _cli("compare", "--tree", "6 4 2 0 4 2 4"),
            "method     code\nblob       6,4,2,4,2,4\nhappy      6,2,2,4,4,4\n"
            "dandelion  4,2,2,4,6,4\nprufer     6,2,4,2,4,4\n",
        ),
    ]


def test_criterion_1_golden_vectors():
    start = time.perf_counter()
    failures = []
    vectors = golden_vectors()
    for name, fn, want in vectors:
        got = fn()
        if got != want:
            failures.append(f"{name}: got {got!r}, want {want!r}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 1.0
    report(1, ok, f"golden vectors: {len(vectors) - len(failures)}/{len(vectors)} exact", start)
    assert not failures, failures
    assert elapsed < 1.0


# ---------------------------------------------------------------- 2. counting


def test_criterion_2_counting():
    start = time.perf_counter()
    counts = {}
    for name, c in CODECS.items():
        for n in range(1, 7):
            seen = set()
            buf = np.empty(n - 1, dtype=np.int64)
            for code in enumerate_codes(n):
                buf[:] = code
                s = c.decode_array(buf)
                assert _kernels.first_cycle_vertex(s) < 0, (name, code)
                seen.add(s.tobytes())
            counts[(name, n)] = len(seen)
    elapsed = time.perf_counter() - start
    ok = all(counts[(name, n)] == (n + 1) ** (n - 1) for name in CODECS for n in range(1, 7)) and elapsed < 30
    report(2, ok, "counting: 1, 3, 16, 125, 1296, 16807 distinct trees per codec", start)
    assert ok, counts


# ---------------------------------------------------------------- 3. round trips


def test_criterion_3_round_trips():
    start = time.perf_counter()
    for name, c in CODECS.items():
        for n in range(1, 6):
            for t in enumerate_trees(n):
                assert c.decode(c.encode(t), n) == t, (name, t)
            for code in enumerate_codes(n):
                assert c.encode(c.decode(code, n)) == code, (name, code)
    rng = np.random.default_rng(2024)
    n = 10**4
    bad = 0
    for name, c in CODECS.items():
        for _ in range(10**4):
            code = random_code(n, rng)
            s = c.decode_array(code)
            if _kernels.first_cycle_vertex(s) >= 0 or not np.array_equal(c.encode_array(s), code):
                bad += 1
        t = random_tree(n, rng)
        assert c.decode(c.encode(t), n) == t
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 60
    report(3, ok, f"round trips: exhaustive n<=5, 10^4 trials at n=10^4 per codec, {bad} mismatches", start)
    assert bad == 0
    assert elapsed < 60


# ---------------------------------------------------------------- 4. walk = surgery


def test_criterion_4_equivalence():
    start = time.perf_counter()
    mismatches = []
    for codec in ("blob", "happy", "dandelion"):
        surgery = CODECS[codec].encode_surgery
        for n in range(1, 5):
            for t in enumerate_trees(n):
                if matrix_encode(t, codec) != surgery(t):
                    mismatches.append((codec, t.succ))
        rng = np.random.default_rng(5)
        for _ in range(500):
            t = random_tree(5, rng)
            if matrix_encode(t, codec) != surgery(t):
                mismatches.append((codec, t.succ))
    report(4, not mismatches, f"walk = surgery: exhaustive n<=4 + 500 random n=5 x 3 codecs, {len(mismatches)} mismatches", start)
    assert not mismatches


# ---------------------------------------------------------------- 5. fast = surgery


def test_criterion_5_fast_equivalence():
    start = time.perf_counter()
    mismatches = 0
    for n in range(1, 6):
        for t in enumerate_trees(n):
            mismatches += happy_encode_fast(t.succ) != happy_encode(t)
            mismatches += happy_encode(t) != CODECS["happy"].encode_surgery(t)
            mismatches += dandelion_encode_fast(t) != dandelion_encode(t)
    report(5, mismatches == 0, f"fast = surgery: exhaustive n<=5, {mismatches} mismatches", start)
    assert mismatches == 0


# ---------------------------------------------------------------- 6. path reversal


def test_criterion_6_path_reversal():
    start = time.perf_counter()
    mismatches = 0
    for n in range(1, 6):
        for t in enumerate_trees(n):
            mismatches += happy_encode(reverse_path(t)) != dandelion_encode(t)
    rng = np.random.default_rng(6)
    for _ in range(10**4):
        t = random_tree(int(rng.integers(1, 501)), rng)
        mismatches += happy_encode(reverse_path(t)) != dandelion_encode_fast(t)
    pair = happy_encode(reverse_path(PATH_TREE)) == dandelion_encode_fast(PATH_TREE) == (5, 2, 9, 7, 4, 3, 8, 6)
    ok = mismatches == 0 and pair
    report(6, ok, f"path reversal: exhaustive n<=5 + 10^4 random n<=500, {mismatches} mismatches, worked pair ok", start)
    assert ok


# ---------------------------------------------------------------- 7. symbolic identities


def test_criterion_7_symbolic_identities():
    start = time.perf_counter()
    results = {}
    for n in range(1, 7):
        d = det(reduced_laplacian(n))
        results[f"closed form n={n}"] = d == uniform_closed_form(n)
        results[f"term count n={n}"] = d.count_with_multiplicity() == (n + 1) ** (n - 1)
        for w in ("uniform", "ucsd"):
            results[f"mtt {w} n={n}"] = mtt_check(n, w)
    for n in range(1, 6):
        results[f"ucsd n={n}"] = ucsd_product(n) == tree_weight_sum(n, "ucsd")
    results["ucsd n=6 at 20 random points"] = random_point_check(6, points=20, seed=7)
    elapsed = time.perf_counter() - start
    failed = [k for k, v in results.items() if not v]
    ok = not failed and elapsed < 120
    report(7, ok, f"symbolic identities: {len(results) - len(failed)}/{len(results)} hold", start)
    assert not failed, failed
    assert elapsed < 120


# ---------------------------------------------------------------- 8. Escher cycles


def test_criterion_8_escher():
    start = time.perf_counter()
    counts = [escher_insert_trace(1, tuple(range(2, 2 + c)))[1] for c in range(1, 6)]
    ok = counts == [2**c - 1 for c in range(1, 6)]
    report(8, ok, f"escher iteration counts {counts}", start)
    assert ok


# ---------------------------------------------------------------- 9. forests


def test_criterion_9_forests():
    start = time.perf_counter()
    failures = []
    for n in range(1, 6):
        for k in range(1, n + 1):
            m = n - k + 1
            forests = set(brute_force_forests(k, m))
            if len(forests) != code_space_size(k, m):
                failures.append(f"count k={k} m={m}")
            for codec in FOREST_CODECS:
                decoded = {}
                for c in enumerate_forest_codes(k, m):
                    f = forest_decode(c, codec)
                    if f in decoded or forest_encode(f, codec) != c:
                        failures.append(f"{codec} k={k} m={m} {c}")
                    decoded[f] = c
                if set(decoded) != forests:
                    failures.append(f"{codec} k={k} m={m} not onto")
            if not forest_det_check(k, m):
                failures.append(f"determinant k={k} m={m}")
    report(9, not failures, f"forests: k+m-1<=5 bijective x 3 codecs, determinant substitution, {len(failures)} failures", start)
    assert not failures, failures


# ---------------------------------------------------------------- 10. performance


@pytest.mark.parametrize("codec", ["happy", "dandelion", "prufer", "blob"])
def test_criterion_10_performance(codec):
    warm_up()
    c = CODECS[codec]
    n = 10**6
    t = random_tree(n, 10)
    start = time.perf_counter()
    code = c.encode(t)
    back = c.decode(code, n)
    elapsed = time.perf_counter() - start
    ok = back == t and elapsed < 2.0
    report(10, ok, f"performance: {codec} encode+decode n=10^6 in {elapsed:.3f}s", start)
    assert back == t
    assert elapsed < 2.0

