"""The zig-zag families indexed by ``(n, k, i)`` and their starred mirrors.

For ``m = 2nk + i`` the graph ``alpha(n, k, i)`` is a path ``v1 - ... - vm``
whose ``p``-th vertex carries ``x_{((p-1) mod 2n) + 1}``; odd positions sit on
the left and the roots are ``(v1, v2)``.  ``beta`` hangs one more vertex
labeled ``x_{2n}`` on ``v1``.  The starred (dual) graphs are the left-right
mirrors of these.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadParam, DegreeTooHigh, NoSuchVertex, NotElementary, OutOfRange, UnsupportedShape
from .graphs import BiTree, L, R, Vertex, mirror, path_between
from .order import GraphPair, extra_vertices, is_elementary
from .terms import Leaf, Meet, Term


def x(p: int) -> str:
    return f"x{p}"


@dataclass(frozen=True)
class FamilyIndex:
    n: int
    k: int
    i: int
    dual: bool = False

    def __post_init__(self):
        if self.n < 2:
            raise BadParam(f"n must be at least 2, got {self.n}")
        if self.k < 1:
            raise BadParam(f"k must be at least 1, got {self.k}")
        if not 1 <= self.i <= 2 * self.n:
            raise BadParam(f"i must lie in 1..{2 * self.n}, got {self.i}")

    @property
    def m(self) -> int:
        return 2 * self.n * self.k + self.i

    def with_dual(self, dual: bool) -> FamilyIndex:
        return FamilyIndex(self.n, self.k, self.i, dual)

    def __str__(self) -> str:
        return f"({self.n},{self.k},{self.i}{',*' if self.dual else ''})"


def index_for_size(n: int, m: int, dual: bool = False) -> FamilyIndex:
    """The index whose alpha has ``m`` vertices."""
    k, i = divmod(m - 1, 2 * n)
    return FamilyIndex(n, k, i + 1, dual)


def next_index(idx: FamilyIndex) -> FamilyIndex:
    if idx.i < 2 * idx.n:
        return FamilyIndex(idx.n, idx.k, idx.i + 1, idx.dual)
    return FamilyIndex(idx.n, idx.k + 1, 1, idx.dual)


def prev_index(idx: FamilyIndex) -> FamilyIndex:
    if idx.i > 1:
        return FamilyIndex(idx.n, idx.k, idx.i - 1, idx.dual)
    return FamilyIndex(idx.n, idx.k - 1, 2 * idx.n, idx.dual)


def d_content(n: int, dual: bool = False) -> frozenset:
    """The cyclic 2-content on ``x1..x_{2n}`` together with the diagonal."""
    if n < 2:
        raise BadParam(f"n must be at least 2, got {n}")
    pairs = set()
    for j in range(1, n):
        pairs.add((x(2 * j - 1), x(2 * j)))
        pairs.add((x(2 * j + 1), x(2 * j)))
    pairs.add((x(1), x(2 * n)))
    pairs.add((x(2 * n - 1), x(2 * n)))
    if dual:
        pairs = {(b, a) for a, b in pairs}
    return frozenset(pairs | {(x(j), x(j)) for j in range(1, 2 * n + 1)})


def path_label(n: int, p: int) -> str:
    return x((p - 1) % (2 * n) + 1)


def _plain_alpha(n: int, m: int) -> BiTree:
    vs = tuple(Vertex(p - 1, L if p % 2 else R, path_label(n, p)) for p in range(1, m + 1))
    es = set()
    for p in range(1, m):
        a, b = p - 1, p
        es.add((a, b) if p % 2 else (b, a))
    return BiTree(vs, frozenset(es), 0, 1)


def alpha(idx: FamilyIndex) -> BiTree:
    g = _plain_alpha(idx.n, idx.m)
    return mirror(g) if idx.dual else g


def beta(idx: FamilyIndex) -> BiTree:
    g = _plain_alpha(idx.n, idx.m)
    extra = Vertex(idx.m, R, x(2 * idx.n))
    g = BiTree(g.vertices + (extra,), g.edges | {(0, idx.m)}, 0, 1)
    return mirror(g) if idx.dual else g


def pair(idx: FamilyIndex) -> GraphPair:
    return GraphPair(alpha(idx), beta(idx))


def word_of_path(g: BiTree) -> Term:
    """The unique term whose delta is ``g``, for graphs of maximum degree 2."""
    if any(g.degree(v) > 2 for v in g.ids):
        raise DegreeTooHigh("word_of_path needs every vertex to have degree at most 2")
    return _word(g)


def _component(g: BiTree, start: int, cut: tuple[int, int]) -> list[int]:
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for w in g.adj[v]:
            if {v, w} == set(cut) or w in seen:
                continue
            seen.add(w)
            todo.append(w)
    return sorted(seen)


def _word(g: BiTree) -> Term:
    if g.is_singleton:
        return Leaf(g.label(g.iota))
    cut = (g.iota, g.tau)
    left = _component(g, g.iota, cut)
    right = _component(g, g.tau, cut)
    if len(left) == 1:
        lt: Term = Leaf(g.label(g.iota))
    else:
        (nb,) = [w for w in g.adj[g.iota] if w != g.tau]
        lt = _word(g.induced(left, g.iota, nb))
    if len(right) == 1:
        rt: Term = Leaf(g.label(g.tau))
    else:
        (nb,) = [w for w in g.adj[g.tau] if w != g.iota]
        rt = _word(g.induced(right, nb, g.tau))
    return Meet(lt, rt)


def word_u(idx: FamilyIndex) -> Term:
    return word_of_path(alpha(idx))


def word_v(idx: FamilyIndex) -> Term:
    return word_of_path(beta(idx))


def geodesic_count(g: BiTree, a: int, b: int) -> int:
    for v in (a, b):
        if v not in g:
            raise NoSuchVertex(v)
    return len(path_between(g, a, b))


def classify_elementary(p: GraphPair) -> tuple[FamilyIndex, dict[str, str]]:
    """Find the family pair equivalent to an elementary zig-zag pair.

    Returns the index and the letter bijection that, after re-rooting at the
    end of the path carrying the extra vertex, turns ``p`` into the family pair.
    """
    a, b = p.alpha, p.beta
    if any(a.degree(v) > 2 for v in a.ids):
        raise UnsupportedShape("alpha is not a zig-zag path")
    if not is_elementary(p):
        raise NotElementary("pair is not elementary")
    (e,) = extra_vertices(p)
    anchor = b.adj[e][0]
    ends = [v for v in a.ids if a.degree(v) <= 1]
    if anchor not in ends:
        raise UnsupportedShape("extra vertex is not attached at an end of the path")
    other = ends[1] if ends[0] == anchor else ends[0]
    walk = path_between(a, anchor, other)
    letters = {a.label(v) for v in walk}
    if len(letters) % 2 or len(letters) < 4:
        raise UnsupportedShape("alpha does not use 2n >= 4 letters")
    n = len(letters) // 2
    m = len(walk)
    if m <= 2 * n:
        raise UnsupportedShape("alpha is too short for a family member")
    relabel: dict[str, str] = {}
    for pos, v in enumerate(walk, start=1):
        want = path_label(n, pos)
        if relabel.setdefault(a.label(v), want) != want:
            raise UnsupportedShape("labels along alpha are not 2n-periodic")
    if len(set(relabel.values())) != len(relabel):
        raise UnsupportedShape("labels along alpha are not 2n-periodic")
    idx = index_for_size(n, m, dual=b.side(e) == L)
    first, second = walk[0], walk[1]
    iota, tau = (first, second) if a.side(first) == L else (second, first)
    a2 = a.reroot(iota, tau).relabel(relabel)
    b2 = b.reroot(iota, tau).relabel(relabel)
    if a2 != alpha(idx) or b2 != beta(idx):
        raise UnsupportedShape("2-content is not of the cyclic D_n form")
    return idx, relabel


def meet_identity(n: int, k: int, i: int) -> tuple[Term, Term]:
    """The single identity defining the intersection of a plain and a starred variety."""
    if i % 2 == 0:
        raise BadParam("the meet identity needs i odd")
    if i == 1 and k == 1:
        raise OutOfRange("the meet identity at k = 1, i = 1 would need v(n, 0, 2n)")
    u = word_u(FamilyIndex(n, k, i))
    if i == 1:
        return u, word_v(FamilyIndex(n, k - 1, 2 * n))
    return u, word_v(FamilyIndex(n, k, i - 1))


def all_indices(ns=(2, 3, 4), max_k: int = 3, duals=(False, True)):
    for n in ns:
        for k in range(1, max_k + 1):
            for i in range(1, 2 * n + 1):
                for d in duals:
                    yield FamilyIndex(n, k, i, d)
