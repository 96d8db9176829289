"""Codes for rooted forests with roots ``-1, ..., -k``.

A forest has non-root vertices ``1..m`` and ``k`` roots labelled ``-1..-k``;
every non-root has one outgoing edge and every vertex reaches a root.  The
surgery encoders of the Blob, Happy and Dandelion Codes only ever compare
labels with 0 to detect a root, so they run on forests unchanged: the only
place a tree code implicitly uses the root 0 is the final edge of the blob
(or of vertex 1), and for a forest that edge may end in any of the ``k``
roots.  A :class:`ForestCode` therefore records that root choice next to the
usual ``m - 1`` entries, giving ``k * (m + k)^(m - 1)`` codes — the number of
such forests.

At the level of determinants this is the substitution
``b0 -> b_{-1} + ... + b_{-k}`` in the reduced Laplacian of a tree.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from collections.abc import Iterator
from dataclasses import dataclass

from . import blob, dandelion, happy
from .errors import InvalidForest, MalformedCode
from .matrix_verify import reduced_laplacian
from .poly import MultiPoly, Var, b, det, poly_sum

FOREST_CODECS = ("blob", "happy", "dandelion")

_SURGERY = {
    "blob": (blob.surgery_encode, blob.surgery_decode),
    "happy": (happy.surgery_encode, happy.surgery_decode),
    "dandelion": (dandelion.surgery_encode, dandelion.surgery_decode),
}


def _codec(name: str):
    try:
        return _SURGERY[name]
    except KeyError:
        raise ValueError(f"unknown forest codec {name!r}; choose from {', '.join(FOREST_CODECS)}") from None


@dataclass(frozen=True)
class RootedForest:
    """``succ[v-1]`` is the successor of non-root ``v``; roots are ``-1..-k``."""

    k: int
    succ: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "succ", tuple(int(x) for x in self.succ))
        k, m = self.k, len(self.succ)
        if k < 1:
            raise InvalidForest(f"a forest needs at least one root, got k={k}")
        if m < 1:
            raise InvalidForest("a forest needs at least one non-root vertex")
        for v, t in enumerate(self.succ, start=1):
            if not (-k <= t <= -1 or 1 <= t <= m):
                raise InvalidForest(f"succ({v}) = {t} is not a label in -{k}..-1 or 1..{m}")
        for v in range(1, m + 1):
            x, steps = v, 0
            while x > 0:
                x = self.succ[x - 1]
                steps += 1
                if steps > m:
                    raise InvalidForest(f"vertex {v} never reaches a root")

    @property
    def m(self) -> int:
        return len(self.succ)

    def __str__(self) -> str:
        return f"k={self.k}; " + " ".join(map(str, self.succ))


@dataclass(frozen=True)
class ForestCode:
    """Root choice plus ``m - 1`` entries over ``-k..-1`` and ``1..m``."""

    k: int
    root_choice: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        k, m = self.k, len(self.entries) + 1
        if k < 1:
            raise MalformedCode(f"k must be positive, got {k}")
        if not -k <= self.root_choice <= -1:
            raise MalformedCode(f"root choice {self.root_choice} is not in -{k}..-1")
        for x in self.entries:
            if not (-k <= x <= -1 or 1 <= x <= m):
                raise MalformedCode(f"code entry {x} is not a label in -{k}..-1 or 1..{m}")

    def __str__(self) -> str:
        body = ",".join(map(str, self.entries))
        return f"{self.root_choice} | {body}" if body else f"{self.root_choice} |"


def forest_encode(f: RootedForest, codec: str) -> ForestCode:
    enc, _ = _codec(codec)
    code, root = enc([0, *f.succ])
    return ForestCode(f.k, root, tuple(code))


def forest_decode(c: ForestCode, codec: str) -> RootedForest:
    _, dec = _codec(codec)
    s = dec(list(c.entries), c.root_choice)
    return RootedForest(c.k, tuple(s[1:]))


# ------------------------------------------------------------------ text formats


def parse_forest(text: str) -> RootedForest:
    """Parse ``"k=K; s1 s2 ... sm"``."""
    try:
        head, body = text.split(";", 1)
        key, val = head.split("=")
        if key.strip() != "k":
            raise ValueError(key)
        return RootedForest(int(val), tuple(int(x) for x in body.replace(",", " ").split()))
    except ValueError as exc:
        if isinstance(exc, InvalidForest):
            raise
        raise InvalidForest(f"cannot parse forest {text!r}; expected 'k=K; s1 ... sm'") from exc


def parse_forest_code(text: str, k: int) -> ForestCode:
    """Parse ``"r | c1,c2,..."`` for a forest with ``k`` roots."""
    try:
        head, body = text.split("|", 1)
        entries = tuple(int(x) for x in body.replace(",", " ").split())
        return ForestCode(k, int(head), entries)
    except ValueError as exc:
        if isinstance(exc, MalformedCode):
            raise
        raise MalformedCode(f"cannot parse forest code {text!r}; expected 'r | c1,c2,...'") from exc


# ------------------------------------------------------------------ enumeration


def _labels(k: int, m: int) -> list[int]:
    return [*range(-k, 0), *range(1, m + 1)]


def brute_force_forests(k: int, m: int) -> Iterator[RootedForest]:
    """Every forest, by filtering all successor maps for acyclicity."""
    for succ in itertools.product(_labels(k, m), repeat=m):
        try:
            yield RootedForest(k, succ)
        except InvalidForest:
            continue


def enumerate_forest_codes(k: int, m: int) -> Iterator[ForestCode]:
    for r in range(-1, -k - 1, -1):
        for entries in itertools.product(_labels(k, m), repeat=m - 1):
            yield ForestCode(k, r, entries)


def code_space_size(k: int, m: int) -> int:
    return k * (m + k) ** (m - 1)


# ------------------------------------------------------------------ determinants


def root_sum(k: int) -> MultiPoly:
    """``b_{-1} + ... + b_{-k}``."""
    return poly_sum(MultiPoly.var(b(-r)) for r in range(1, k + 1))


def forest_weight_sum(k: int, m: int) -> MultiPoly:
    """Sum of ``prod_v b_{succ(v)}`` over all forests, by enumeration."""
    acc: dict = defaultdict(int)
    for f in brute_force_forests(k, m):
        exps: dict[Var, int] = defaultdict(int)
        for t in f.succ:
            exps[b(t)] += 1
        acc[tuple(sorted(exps.items()))] += 1
    return MultiPoly(acc)


def forest_determinant(k: int, m: int) -> MultiPoly:
    """Reduced tree determinant on ``0..m`` with ``b0`` replaced by the root sum."""
    return det(reduced_laplacian(m)).substitute(b(0), root_sum(k))


def forest_det_check(k: int, m: int) -> bool:
    return forest_determinant(k, m) == forest_weight_sum(k, m)

