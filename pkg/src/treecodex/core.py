"""Labelled rooted trees and functional digraphs on the vertex set ``{0, ..., n}``.

Every object here is a *successor map*: vertex ``v`` in ``1..n`` has exactly one
outgoing edge ``v -> succ(v)`` with ``succ(v)`` in ``0..n``, and vertex 0 has
none.  A :class:`RootedTree` is such a map in which every vertex reaches 0.

Internally the map lives in a read-only, 1-indexed ``int64`` numpy array
(``array[0]`` is an unused placeholder) so the compiled codecs can consume it
without copying.  Codes are plain tuples of length ``n - 1``.

Text formats
------------
* tree: ``"s1 s2 ... sn"`` — single spaces, ``succ(i) = si``;
* code: ``"c1,c2,...,c(n-1)"`` — the empty code is the empty string.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from typing import TypeVar

import numpy as np

from . import _kernels
from .errors import BoundExceeded, CycleFound, InvalidLabel, MalformedCode, NoPathToRoot

Code = tuple[int, ...]

#: Default size limit for exhaustive enumeration.
ENUMERATION_BOUND = 8

_D = TypeVar("_D", bound="FunctionalDigraph")


def _as_succ_array(succ: Sequence[int] | np.ndarray) -> np.ndarray:
    """Copy ``(s1, ..., sn)`` into a fresh 1-indexed ``int64`` array, checking labels."""
    raw = np.asarray(succ)
    if raw.ndim != 1 or raw.size == 0:
        raise InvalidLabel("a successor map needs at least one vertex")
    if raw.dtype.kind not in "iu":
        if raw.dtype.kind == "f" and np.all(np.mod(raw, 1) == 0):
            raw = raw.astype(np.int64)
        else:
            raise InvalidLabel(f"successor labels must be integers, got dtype {raw.dtype}")
    n = raw.size
    lo, hi = int(raw.min()), int(raw.max())
    if lo < 0 or hi > n:
        bad = lo if lo < 0 else hi
        raise InvalidLabel(f"successor label {bad} outside 0..{n}")
    s = np.empty(n + 1, dtype=np.int64)
    s[0] = 0
    s[1:] = raw
    return s


class FunctionalDigraph:
    """Total successor map ``{1..n} -> {0..n}``; vertex 0 is a sink."""

    __slots__ = ("_s",)

    def __init__(self, succ: Sequence[int] | np.ndarray):
        s = _as_succ_array(succ)
        self._check(s)
        s.flags.writeable = False
        self._s = s

    def _check(self, s: np.ndarray) -> None:
        """Hook for subclasses to add invariants."""

    @classmethod
    def _trusted(cls: type[_D], s: np.ndarray) -> _D:
        """Wrap a 1-indexed array known to satisfy the class invariants (no copy)."""
        obj = cls.__new__(cls)
        s.flags.writeable = False
        obj._s = s
        return obj

    @property
    def n(self) -> int:
        return self._s.shape[0] - 1

    @property
    def succ(self) -> tuple[int, ...]:
        """``(succ(1), ..., succ(n))``."""
        return tuple(self._s[1:].tolist())

    @property
    def array(self) -> np.ndarray:
        """Read-only 1-indexed successor array (index 0 is a placeholder)."""
        return self._s

    def __getitem__(self, v: int) -> int:
        if not 1 <= v <= self.n:
            raise InvalidLabel(f"vertex {v} has no successor (valid: 1..{self.n})")
        return int(self._s[v])

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FunctionalDigraph):
            return NotImplemented
        return np.array_equal(self._s, other._s)

    def __hash__(self) -> int:
        return hash(self._s.tobytes())

    def __repr__(self) -> str:
        body = format_tree(self) if self.n <= 40 else f"n={self.n}"
        return f"{type(self).__name__}({body})"


class HappyFunctionalDigraph(FunctionalDigraph):
    """Functional digraph in which vertex 1 lies in the component of 0."""

    __slots__ = ()

    def _check(self, s: np.ndarray) -> None:
        n = s.shape[0] - 1
        x, steps = 1, 0
        while x != 0:
            x = int(s[x])
            steps += 1
            if steps > n:
                raise NoPathToRoot("vertex 1 does not reach 0")


class RootedTree(HappyFunctionalDigraph):
    """Successor map in which every vertex reaches the root 0."""

    __slots__ = ()

    def _check(self, s: np.ndarray) -> None:
        if _kernels.first_cycle_vertex(s) >= 0:
            raise CycleFound(_cycles(s))


def validate_tree(d: FunctionalDigraph | Sequence[int]) -> RootedTree:
    """Return ``d`` typed as a :class:`RootedTree`, or raise :class:`CycleFound`."""
    if isinstance(d, RootedTree):
        return d
    if isinstance(d, FunctionalDigraph):
        s = d.array.copy()
        if _kernels.first_cycle_vertex(s) >= 0:
            raise CycleFound(_cycles(s))
        return RootedTree._trusted(s)
    return RootedTree(d)


def naive_code(d: FunctionalDigraph) -> tuple[int, ...]:
    """The raw successor sequence ``(succ(1), ..., succ(n))``."""
    return d.succ


def path(d: FunctionalDigraph, x: int) -> tuple[int, ...]:
    """Vertices ``(x, succ(x), ..., 0)``; raises :class:`NoPathToRoot` on a cycle."""
    n = d.n
    if not 0 <= x <= n:
        raise InvalidLabel(f"vertex {x} outside 0..{n}")
    s = d.array
    out = [x]
    while x != 0:
        x = int(s[x])
        out.append(x)
        if len(out) > n + 1:
            raise NoPathToRoot(f"vertex {out[0]} does not reach 0")
    return tuple(out)


def _cycles(s: np.ndarray) -> list[tuple[int, ...]]:
    """Cycles of a 1-indexed successor array, each starting at its smallest vertex."""
    n = s.shape[0] - 1
    seen = [0] * (n + 1)
    found: list[tuple[int, ...]] = []
    succ = s.tolist()
    for v in range(1, n + 1):
        if seen[v]:
            continue
        x = v
        while x != 0 and not seen[x]:
            seen[x] = v
            x = succ[x]
        if x != 0 and seen[x] == v:
            cyc = [x]
            y = succ[x]
            while y != x:
                cyc.append(y)
                y = succ[y]
            k = cyc.index(min(cyc))
            found.append(tuple(cyc[k:] + cyc[:k]))
    found.sort()
    return found


def cycles_of(d: FunctionalDigraph) -> list[tuple[int, ...]]:
    """Every cycle of ``d`` (loops included), rotated to start at its minimum, sorted."""
    return _cycles(d.array)


def is_escher(cycle: Sequence[int]) -> bool:
    """True when exactly one edge of the cycle is not an ascent (loops qualify)."""
    k = len(cycle)
    if k == 0 or len(set(cycle)) != k:
        raise InvalidLabel("a cycle needs distinct vertices")
    non_ascents = sum(1 for i in range(k) if cycle[(i + 1) % k] <= cycle[i])
    return non_ascents == 1


def code_array(code: Sequence[int] | np.ndarray, n: int | None = None) -> np.ndarray:
    """Validate a code (length ``n - 1`` over ``0..n``) and return it as ``int64``."""
    c = np.asarray(code, dtype=np.int64).reshape(-1)
    size = c.shape[0] + 1
    if n is not None and n != size:
        raise MalformedCode(f"code of length {c.shape[0]} cannot describe n={n}")
    if c.size and (int(c.min()) < 0 or int(c.max()) > size):
        bad = int(c.min()) if int(c.min()) < 0 else int(c.max())
        raise MalformedCode(f"code entry {bad} outside 0..{size}")
    return c


def tree_array(t: FunctionalDigraph | Sequence[int]) -> np.ndarray:
    """1-indexed successor array of a tree, validating raw sequences."""
    if isinstance(t, RootedTree):
        return t.array
    return validate_tree(t).array


def enumerate_trees(n: int, bound: int = ENUMERATION_BOUND) -> Iterator[RootedTree]:
    """Yield each of the ``(n+1)^(n-1)`` rooted trees on ``{0..n}`` exactly once.

    Trees come out in lexicographic order of their Dandelion codes.
    """
    if n < 1:
        raise InvalidLabel("n must be at least 1")
    if n > bound:
        raise BoundExceeded(f"enumeration of n={n} exceeds the bound {bound}")
    decode = _kernels.dandelion_decode
    buf = np.empty(n - 1, dtype=np.int64)
    for code in itertools.product(range(n + 1), repeat=n - 1):
        buf[:] = code
        yield RootedTree._trusted(decode(buf))


def enumerate_codes(n: int) -> Iterator[Code]:
    """All ``(n+1)^(n-1)`` code vectors in lexicographic order."""
    return itertools.product(range(n + 1), repeat=n - 1)


def brute_force_trees(n: int) -> Iterator[RootedTree]:
    """Independent enumeration: filter all ``(n+1)^n`` successor maps for acyclicity."""
    for succ in itertools.product(range(n + 1), repeat=n):
        s = np.array((0, *succ), dtype=np.int64)
        if _kernels.first_cycle_vertex(s) < 0:
            yield RootedTree._trusted(s)


def random_code(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform code vector of length ``n - 1`` drawn from ``rng``."""
    return rng.integers(0, n + 1, size=n - 1, dtype=np.int64)


def random_tree(n: int, seed: int | np.random.Generator | None = None) -> RootedTree:
    """Uniformly random rooted tree on ``{0..n}``.

    Draws a uniform code with ``numpy.random.default_rng(seed).integers(0, n+1,
    n-1)`` and decodes it with the (bijective) Dandelion decoder, so a fixed
    integer seed always gives the same tree.
    """
    if n < 1:
        raise InvalidLabel("n must be at least 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return RootedTree._trusted(_kernels.dandelion_decode(random_code(n, rng)))


def reverse_path(t: RootedTree) -> RootedTree:
    """Reverse the order of the vertices strictly between 1 and 0 on ``path(t, 1)``."""
    s = tree_array(t).copy()
    inner = path(t, 1)[1:-1]
    if len(inner) > 1:
        rev = inner[::-1]
        s[1] = rev[0]
        for a, b in zip(rev, rev[1:]):
            s[a] = b
        s[rev[-1]] = 0
    return RootedTree._trusted(s)


# ------------------------------------------------------------------ text formats


def format_tree(d: FunctionalDigraph | Sequence[int]) -> str:
    succ = d.succ if isinstance(d, FunctionalDigraph) else d
    return " ".join(map(str, succ))


def parse_succ(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split())
    except ValueError as exc:
        raise InvalidLabel(f"cannot parse successor list {text!r}") from exc


def parse_tree(text: str) -> RootedTree:
    return RootedTree(parse_succ(text))


def format_code(code: Sequence[int] | np.ndarray) -> str:
    return ",".join(str(int(c)) for c in code)


def parse_code(text: str) -> Code:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise MalformedCode(f"cannot parse code {text!r}") from exc
