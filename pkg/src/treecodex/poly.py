"""Sparse multivariate integer polynomials and exact determinants.

Variables are small tuples ordered ``b_j`` < ``B_j`` < ``λ`` < ``a_{i,j}``
(each family by subscript), which fixes a canonical rendering such as
``3*b0^2*b1 + b0*B2``.  Monomials are stored sparsely as sorted
``((variable, exponent), ...)`` tuples, so the ``O(n^2)`` ascent variables
cost nothing when absent.

Determinants are computed by cofactor expansion memoised over column subsets
(exact for any entries) and, for integer matrices, by fraction-free Bareiss
elimination.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Callable, Iterable, Mapping, Sequence
from functools import reduce
from typing import Union

from .errors import BoundExceeded

Var = tuple  # (0, j) = b_j, (1, j) = B_j, (2,) = λ, (3, i, j) = a_{i,j}
Monomial = tuple[tuple[Var, int], ...]

DET_BOUND = 9


def b(j: int) -> Var:
    return (0, j)


def B(j: int) -> Var:
    return (1, j)


LAM: Var = (2,)


def a(i: int, j: int) -> Var:
    return (3, i, j)


def var_name(v: Var) -> str:
    if v[0] == 0:
        return f"b{v[1]}"
    if v[0] == 1:
        return f"B{v[1]}"
    if v[0] == 2:
        return "lam"
    return f"a{v[1]}_{v[2]}"


def _mono_mul(x: Monomial, y: Monomial) -> Monomial:
    if not x:
        return y
    if not y:
        return x
    acc = dict(x)
    for v, e in y:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items()))


_END = ((9,), 0)


def _render_key(m: Monomial) -> tuple:
    # lexicographically decreasing exponent vectors under the variable order
    return tuple((v, -e) for v, e in m) + (_END,)


class MultiPoly:
    """Polynomial with integer coefficients; no zero terms are ever stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self.terms: dict[Monomial, int] = {m: c for m, c in (terms or {}).items() if c}

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: int) -> MultiPoly:
        return cls({(): c})

    @classmethod
    def var(cls, v: Var) -> MultiPoly:
        return cls({((v, 1),): 1})

    @staticmethod
    def _lift(x: PolyLike) -> MultiPoly:
        return x if isinstance(x, MultiPoly) else MultiPoly.const(int(x))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: PolyLike) -> MultiPoly:
        o = self._lift(other)
        acc = dict(self.terms)
        for m, c in o.terms.items():
            acc[m] = acc.get(m, 0) + c
        return MultiPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: PolyLike) -> MultiPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other: PolyLike) -> MultiPoly:
        return self._lift(other) - self

    def __mul__(self, other: PolyLike) -> MultiPoly:
        o = self._lift(other)
        acc: dict[Monomial, int] = defaultdict(int)
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                acc[_mono_mul(m1, m2)] += c1 * c2
        return MultiPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        out = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = MultiPoly.const(other)
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries ------------------------------------------------------------

    def variables(self) -> set[Var]:
        return {v for m in self.terms for v, _ in m}

    def num_terms(self) -> int:
        """Number of distinct monomials."""
        return len(self.terms)

    def count_with_multiplicity(self) -> int:
        """Sum of coefficients (the value at the all-ones point)."""
        return sum(self.terms.values())

    def evaluate(self, point: Mapping[Var, int] | Callable[[Var], int]) -> int:
        get = point if callable(point) else point.__getitem__
        total = 0
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                val *= get(v) ** e
            total += val
        return total

    def substitute(self, v: Var, repl: PolyLike) -> MultiPoly:
        """Replace variable ``v`` by a polynomial everywhere."""
        r = self._lift(repl)
        out = MultiPoly()
        for m, c in self.terms.items():
            rest = tuple((w, e) for w, e in m if w != v)
            e = dict(m).get(v, 0)
            out = out + MultiPoly({rest: c}) * (r**e)
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_render_key):
            c = self.terms[m]
            body = "*".join(var_name(v) + (f"^{e}" if e > 1 else "") for v, e in m)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


PolyLike = Union[MultiPoly, int]


def poly_sum(items: Iterable[PolyLike]) -> MultiPoly:
    acc: dict[Monomial, int] = defaultdict(int)
    for p in items:
        for m, c in MultiPoly._lift(p).terms.items():
            acc[m] += c
    return MultiPoly(acc)


def poly_prod(items: Iterable[PolyLike]) -> MultiPoly:
    return reduce(lambda x, y: x * y, items, MultiPoly.const(1))


class SymMatrix:
    """Square matrix of polynomial entries with a declared index origin."""

    __slots__ = ("rows", "origin")

    def __init__(self, rows: Sequence[Sequence[PolyLike]], origin: int = 0):
        size = len(rows)
        if any(len(r) != size for r in rows):
            raise ValueError("matrix must be square")
        self.rows = [[MultiPoly._lift(x) for x in r] for r in rows]
        self.origin = origin

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, rc: tuple[int, int]) -> MultiPoly:
        r, c = rc
        return self.rows[r - self.origin][c - self.origin]

    def __setitem__(self, rc: tuple[int, int], value: PolyLike) -> None:
        r, c = rc
        self.rows[r - self.origin][c - self.origin] = MultiPoly._lift(value)

    def copy(self) -> SymMatrix:
        return SymMatrix([list(r) for r in self.rows], self.origin)

    def minor(self, drop: int) -> SymMatrix:
        """Delete row and column ``drop``; indices above it keep their labels' order."""
        k = drop - self.origin
        rows = [r[:k] + r[k + 1 :] for i, r in enumerate(self.rows) if i != k]
        return SymMatrix(rows, self.origin + 1 if k == 0 else self.origin)

    def row_subtract(self, target: int, source: int) -> None:
        t, s = target - self.origin, source - self.origin
        self.rows[t] = [x - y for x, y in zip(self.rows[t], self.rows[s])]

    def column_add(self, target: int, source: int) -> None:
        t, s = target - self.origin, source - self.origin
        for r in self.rows:
            r[t] = r[t] + r[s]

    def is_upper_triangular(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.size) for j in range(i))

    def diagonal(self) -> list[MultiPoly]:
        return [self.rows[i][i] for i in range(self.size)]

    def evaluate(self, point: Mapping[Var, int] | Callable[[Var], int]) -> list[list[int]]:
        return [[x.evaluate(point) for x in r] for r in self.rows]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)


def det(m: SymMatrix, bound: int = DET_BOUND) -> MultiPoly:
    """Exact determinant by first-row cofactor expansion memoised on column sets."""
    size = m.size
    if size > bound:
        raise BoundExceeded(f"determinant of size {size} exceeds the bound {bound}")
    if size == 0:
        return MultiPoly.const(1)
    rows = m.rows
    memo: dict[int, MultiPoly] = {}

    def minor(cols: int) -> MultiPoly:
        # rows k.. with the column set ``cols`` (bitmask), k = size - popcount
        if cols == 0:
            return MultiPoly.const(1)
        hit = memo.get(cols)
        if hit is not None:
            return hit
        k = size - bin(cols).count("1")
        acc: dict[Monomial, int] = defaultdict(int)
        sign = 1
        for c in range(size):
            if cols >> c & 1:
                entry = rows[k][c]
                if entry:
                    sub = minor(cols & ~(1 << c))
                    for mm, cc in (entry * sub).terms.items():
                        acc[mm] += sign * cc
                sign = -sign
        out = MultiPoly(acc)
        memo[cols] = out
        return out

    return minor((1 << size) - 1)


def det_bareiss(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free Gaussian elimination."""
    a = [list(map(int, r)) for r in rows]
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]
