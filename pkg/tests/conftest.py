"""Shared fixtures and hypothesis strategies."""

from __future__ import annotations

import pytest
from hypothesis import strategies as st

from treecodex import dandelion_decode, warm_up


@pytest.fixture(scope="session", autouse=True)
def _compiled_kernels() -> None:
    warm_up()


def codes(min_n: int = 1, max_n: int = 60) -> st.SearchStrategy[tuple[int, ...]]:
    """Uniform-ish code vectors of a random size."""
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(st.integers(0, n), min_size=n - 1, max_size=n - 1).map(tuple)
    )


def code_and_n(min_n: int = 1, max_n: int = 60):
    return codes(min_n, max_n).map(lambda c: (c, len(c) + 1))


def trees(min_n: int = 1, max_n: int = 60):
    return code_and_n(min_n, max_n).map(lambda cn: dandelion_decode(cn[0], cn[1]))


#: ``PASS|FAIL criterion N ...`` lines collected by the acceptance tests.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter) -> None:
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
