"""Batch verification of the codec, pipeline and determinant invariants.

Each check is a pure function of ``max_n`` returning a :class:`CheckResult`;
:func:`verify_suite` runs a selection of them (optionally on worker threads)
and always reports them in the fixed order of :data:`CHECKS`.
"""

from __future__ import annotations

import time
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import dandelion, happy
from .codecs import CODECS, MATRIX_CODECS
from .core import enumerate_codes, enumerate_trees, format_code, format_tree, reverse_path
from .forests import (
    FOREST_CODECS,
    brute_force_forests,
    code_space_size,
    enumerate_forest_codes,
    forest_decode,
    forest_det_check,
    forest_encode,
)
from .matrix_verify import mtt_check, tree_weight_sum, ucsd_product
from .pipelines import matrix_encode

#: Exhaustive checks refuse larger sizes.
MAX_N = 6


@dataclass(frozen=True)
class CheckResult:
    name: str
    scope: str
    passed: bool
    elapsed_ms: float
    counterexample: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} {self.scope} {self.elapsed_ms:.0f}ms"


class _Fail(Exception):
    pass


def _expect(ok: bool, what: str) -> None:
    if not ok:
        raise _Fail(what)


def _roundtrip(max_n: int) -> str:
    total = 0
    for name, c in CODECS.items():
        for n in range(1, max_n + 1):
            for t in enumerate_trees(n):
                code = c.encode(t)
                _expect(c.decode(code, n) == t, f"{name}: tree {format_tree(t)}")
                total += 1
            for code in enumerate_codes(n):
                _expect(c.encode(c.decode(code, n)) == code, f"{name}: code {format_code(code)}")
    return f"({len(CODECS)} codecs, {total // len(CODECS)} trees each)"


def _bijectivity(max_n: int) -> str:
    for name, c in CODECS.items():
        for n in range(1, max_n + 1):
            seen = {c.decode(code, n) for code in enumerate_codes(n)}
            _expect(len(seen) == (n + 1) ** (n - 1), f"{name}: n={n} gave {len(seen)} trees")
    return f"({len(CODECS)} codecs)"


def _equivalence(max_n: int) -> str:
    for n in range(1, max_n + 1):
        for t in enumerate_trees(n):
            for name in MATRIX_CODECS:
                want = CODECS[name].encode_surgery(t)
                _expect(matrix_encode(t, name) == want, f"{name} walk: tree {format_tree(t)}")
            _expect(happy.happy_encode_fast(t.succ) == happy.happy_encode_surgery(t), f"happy fast: {format_tree(t)}")
            _expect(dandelion.dandelion_encode_fast(t) == dandelion.dandelion_encode(t), f"dandelion fast: {format_tree(t)}")
    return "(walk = surgery = fast, 3 codecs)"


def _mtt(max_n: int) -> str:
    for n in range(1, max_n + 1):
        for w in ("uniform", "ucsd"):
            _expect(mtt_check(n, w), f"n={n} {w}")
    return "(uniform, ucsd)"


def _ucsd(max_n: int) -> str:
    for n in range(1, max_n + 1):
        _expect(ucsd_product(n) == tree_weight_sum(n, "ucsd"), f"n={n}")
    return "(product = tree sum)"


def _reversal(max_n: int) -> str:
    for n in range(1, max_n + 1):
        for t in enumerate_trees(n):
            _expect(happy.happy_encode(reverse_path(t)) == dandelion.dandelion_encode_fast(t), format_tree(t))
    return "(happy(reverse t) = dandelion t)"


def _forest(max_n: int) -> str:
    for n in range(1, max_n + 1):
        for k in range(1, n + 1):
            m = n - k + 1
            forests = set(brute_force_forests(k, m))
            _expect(len(forests) == code_space_size(k, m), f"k={k} m={m}: forest count")
            for name in FOREST_CODECS:
                decoded = {forest_decode(c, name) for c in enumerate_forest_codes(k, m)}
                _expect(decoded == forests, f"{name} k={k} m={m}: decode not onto")
                for f in forests:
                    _expect(forest_decode(forest_encode(f, name), name) == f, f"{name}: {f}")
            _expect(forest_det_check(k, m), f"k={k} m={m}: determinant")
    return "(k+m-1<=n, 3 codecs + determinant)"


CHECKS: dict[str, Callable[[int], str]] = {
    "roundtrip": _roundtrip,
    "bijectivity": _bijectivity,
    "equivalence": _equivalence,
    "mtt": _mtt,
    "ucsd": _ucsd,
    "reversal": _reversal,
    "forest": _forest,
}


def run_check(name: str, max_n: int) -> CheckResult:
    if name not in CHECKS:
        raise ValueError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
    if not 1 <= max_n <= MAX_N:
        raise ValueError(f"max-n must lie in 1..{MAX_N} for exhaustive checks")
    start = time.perf_counter()
    try:
        detail = CHECKS[name](max_n)
        passed, counter = True, ""
    except _Fail as exc:
        detail, passed, counter = "", False, str(exc)
    ms = (time.perf_counter() - start) * 1000
    scope = f"n<={max_n}" + (f" {detail}" if detail else "")
    return CheckResult(name, scope, passed, ms, counter)


def verify_suite(max_n: int, checks: Sequence[str] | None = None, jobs: int = 1) -> list[CheckResult]:
    """Run the selected checks; results follow the order of :data:`CHECKS`."""
    selected = [c for c in CHECKS if checks is None or c in checks]
    for c in checks or ():
        if c not in CHECKS:
            raise ValueError(f"unknown check {c!r}; choose from {', '.join(CHECKS)}")
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda c: run_check(c, max_n), selected))
    return [run_check(c, max_n) for c in selected]
