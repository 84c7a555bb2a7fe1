"""Small finite models: enumerate idempotent tables satisfying the axioms.

Axioms checked (with their left-right mirrors)::

    x^x = x
    (x^y)^(x^z) = (x^y)^z
    ((x^y)^(x^z))^(x^w) = (x^y)^((x^z)^(x^w))

Partial tables are pruned with numpy: undetermined cells hold a sentinel value
that propagates through products, and an axiom instance is only judged once
both of its sides are determined.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional

import numpy as np

from .errors import SizeTooLarge
from .terms import Leaf, Term, content, sorted_letters

MAX_SIZE = 5


@dataclass(frozen=True)
class FiniteBinaryAlgebra:
    size: int
    table: tuple  # tuple of row tuples

    def __post_init__(self):
        rows = tuple(tuple(int(c) for c in row) for row in self.table)
        if self.size < 1 or len(rows) != self.size or any(len(r) != self.size for r in rows):
            raise ValueError("table must be size x size")
        if any(not 0 <= c < self.size for r in rows for c in r):
            raise ValueError("table entries must lie in 0..size-1")
        object.__setattr__(self, "table", rows)

    @classmethod
    def from_rows(cls, rows) -> FiniteBinaryAlgebra:
        return cls(len(rows), tuple(tuple(r) for r in rows))

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def to_json(self) -> str:
        return json.dumps([list(r) for r in self.table], separators=(",", ":"))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(c) for c in row) for row in self.table)


def _grids(s: int, arity: int) -> list[np.ndarray]:
    return list(np.indices((s,) * arity))


def _axiom_sides(T: np.ndarray, s: int):
    """Yield ``(lhs, rhs)`` arrays for each axiom over all variable tuples."""
    m = lambda a, b: T[a, b]  # noqa: E731
    x, y, z = _grids(s, 3)
    yield m(m(x, y), m(x, z)), m(m(x, y), z)
    yield m(m(z, x), m(y, x)), m(z, m(y, x))
    x, y, z, w = _grids(s, 4)
    xy, xz, xw = m(x, y), m(x, z), m(x, w)
    yield m(m(xy, xz), xw), m(xy, m(xz, xw))
    wx, zx, yx = m(w, x), m(z, x), m(y, x)
    yield m(wx, m(zx, yx)), m(m(wx, zx), yx)


def _consistent(T: np.ndarray, s: int) -> bool:
    for lhs, rhs in _axiom_sides(T, s):
        known = (lhs != s) & (rhs != s)
        if np.any(lhs[known] != rhs[known]):
            return False
    return True


def _extended(table: np.ndarray, s: int) -> np.ndarray:
    """Pad with a sentinel row/column so unknown values absorb products."""
    T = np.full((s + 1, s + 1), s, dtype=np.int64)
    T[:s, :s] = table
    return T


def is_pseudosemilattice(a: FiniteBinaryAlgebra) -> bool:
    s = a.size
    if any(a.table[v][v] != v for v in range(s)):
        return False
    return _consistent(_extended(a.array, s), s)


def is_associative(a: FiniteBinaryAlgebra) -> bool:
    T = a.array
    x, y, z = _grids(a.size, 3)
    return bool(np.all(T[T[x, y], z] == T[x, T[y, z]]))


def is_normal_band(a: FiniteBinaryAlgebra) -> bool:
    """Associative, idempotent, and ``xyzx = xzyx``."""
    if not is_associative(a) or any(a.table[v][v] != v for v in range(a.size)):
        return False
    T = a.array
    x, y, z = _grids(a.size, 3)
    return bool(np.all(T[T[T[x, y], z], x] == T[T[T[x, z], y], x]))


def _guard(size: int) -> None:
    if size > MAX_SIZE:
        raise SizeTooLarge(f"enumeration is limited to size {MAX_SIZE}")
    if size < 1:
        raise ValueError("size must be positive")


def _search(s: int) -> Iterator[np.ndarray]:
    T = _extended(np.full((s, s), s, dtype=np.int64), s)
    for v in range(s):
        T[v, v] = v
    cells = [(r, c) for r in range(s) for c in range(s) if r != c]

    def go(pos: int):
        if pos == len(cells):
            yield T[:s, :s].copy()
            return
        r, c = cells[pos]
        for val in range(s):
            T[r, c] = val
            if _consistent(T, s):
                yield from go(pos + 1)
        T[r, c] = s

    yield from go(0)


def _canonical(table: np.ndarray) -> tuple:
    s = table.shape[0]
    best = None
    for perm in itertools.permutations(range(s)):
        p = np.array(perm)
        inv = np.argsort(p)
        # relabel value v as p[v]: new[p[a], p[b]] = p[old[a, b]]
        new = p[table[inv][:, inv]]
        key = tuple(map(tuple, new.tolist()))
        if best is None or key < best:
            best = key
    return best


def enumerate_algebras(size: int, up_to_iso: bool = False) -> list[FiniteBinaryAlgebra]:
    """All pseudosemilattice tables on ``0..size-1`` in lexicographic order."""
    _guard(size)
    out = []
    for table in _search(size):
        key = tuple(map(tuple, table.tolist()))
        if up_to_iso and _canonical(table) != key:
            continue
        out.append(FiniteBinaryAlgebra(size, key))
    return out


def _evaluate(t: Term, T: np.ndarray, env: dict[str, np.ndarray]) -> np.ndarray:
    if isinstance(t, Leaf):
        return env[t.letter]
    return T[_evaluate(t.left, T, env), _evaluate(t.right, T, env)]


def _assignments(a: FiniteBinaryAlgebra, names: list[str]) -> dict[str, np.ndarray]:
    if not names:
        return {}
    grids = np.indices((a.size,) * len(names)).reshape(len(names), -1)
    return dict(zip(names, grids))


def satisfies(a: FiniteBinaryAlgebra, u: Term, v: Term) -> bool:
    names = sorted_letters(content(u) | content(v))
    env = _assignments(a, names)
    return bool(np.all(_evaluate(u, a.array, env) == _evaluate(v, a.array, env)))


def separating_assignment(a: FiniteBinaryAlgebra, u: Term, v: Term) -> Optional[dict[str, int]]:
    names = sorted_letters(content(u) | content(v))
    env = _assignments(a, names)
    diff = np.nonzero(_evaluate(u, a.array, env) != _evaluate(v, a.array, env))[0]
    if diff.size == 0:
        return None
    j = int(diff[0])
    return {x: int(env[x][j]) for x in names}


def find_witness(u: Term, v: Term, max_size: int) -> Optional[tuple[FiniteBinaryAlgebra, dict[str, int]]]:
    """The first model (by size, then table order) refuting ``u = v``."""
    _guard(max_size)
    for s in range(1, max_size + 1):
        for a in enumerate_algebras(s):
            hit = separating_assignment(a, u, v)
            if hit is not None:
                return a, hit
    return None


def smallest_non_normal_band(max_size: int = 4) -> Optional[FiniteBinaryAlgebra]:
    """First enumerated model that is not a normal band, searching up to ``max_size``."""
    _guard(max_size)
    for s in range(1, max_size + 1):
        for a in enumerate_algebras(s):
            if not is_normal_band(a):
                return a
    return None
