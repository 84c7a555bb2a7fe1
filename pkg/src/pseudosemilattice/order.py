"""Order structure of the free model: embeddings, covers, elementary pairs.

Conventions: ``leq(b, a)`` means ``b <= a``, which holds when ``a`` sits
inside ``b`` as a bi-rooted subtree.  Larger graphs are therefore *lower*.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import NoSuchEdge, NotComparable, NotElementary
from .graphs import (
    BiTree,
    L,
    RootedTree,
    _Tree,
    hat,
    is_reduced,
    is_thorn_leaf,
    l_reduct,
    r_reduct,
    require_reduced,
)


@dataclass(frozen=True)
class GraphPair:
    alpha: BiTree
    beta: BiTree

    def __post_init__(self):
        require_reduced(self.alpha, self.beta)


def _embed(small: _Tree, big: _Tree, anchors: dict[int, int]) -> Optional[dict[int, int]]:
    """Extend ``anchors`` to a label- and side-preserving embedding, or give up.

    ``big`` must be folded, so every step of the extension is forced.
    """
    f = {}
    for v, w in anchors.items():
        if w not in big or small.label(v) != big.label(w) or small.side(v) != big.side(w):
            return None
        f[v] = w
    todo = deque(anchors)
    while todo:
        v = todo.popleft()
        wanted = {big.label(w): w for w in big.adj[f[v]]}
        for nv in small.adj[v]:
            if nv in f:
                if not big.has_edge(f[v], f[nv]):
                    return None
                continue
            target = wanted.get(small.label(nv))
            if target is None:
                return None
            f[nv] = target
            todo.append(nv)
    return f


def embed(b: BiTree, a: BiTree) -> Optional[dict[int, int]]:
    """The root-preserving embedding of ``a`` into ``b`` (unique when it exists)."""
    require_reduced(a, b)
    return _embed(a, b, {a.iota: b.iota, a.tau: b.tau})


def _rooted_embed(big: RootedTree, small: RootedTree) -> Optional[dict[int, int]]:
    return _embed(small, big, {small.root: big.root})


def leq(b: BiTree, a: BiTree) -> bool:
    return embed(b, a) is not None


def leq_R(b: BiTree, a: BiTree) -> bool:
    return _rooted_embed(l_reduct(b), l_reduct(a)) is not None


def leq_L(b: BiTree, a: BiTree) -> bool:
    return _rooted_embed(r_reduct(b), r_reduct(a)) is not None


def rel_R(a: BiTree, b: BiTree) -> bool:
    return l_reduct(a) == l_reduct(b)


def rel_L(a: BiTree, b: BiTree) -> bool:
    return r_reduct(a) == r_reduct(b)


def rel_D(a: BiTree, b: BiTree) -> bool:
    return hat(a) == hat(b)


def _connected_supersets(g: BiTree, core: frozenset):
    """Every vertex set that contains ``core``, induces a subtree, and is not all of ``g``."""
    seen = {core}
    todo = [core]
    everything = frozenset(g.ids)
    while todo:
        s = todo.pop()
        if s != core and s != everything:
            yield s
        boundary = {w for v in s for w in g.adj[v]} - s
        for w in boundary:
            t = s | {w}
            if t not in seen:
                seen.add(t)
                todo.append(t)


def covers(a: BiTree, b: BiTree) -> bool:
    """``a`` covers ``b``: ``b < a`` with nothing reduced strictly in between."""
    f = embed(b, a)
    if f is None:
        raise NotComparable("covers(a, b) needs b <= a")
    extra = len(b) - len(a)
    if extra == 0:
        return False
    if extra == 1:
        return True
    image = frozenset(f.values())
    for s in _connected_supersets(b, image):
        if is_reduced(b.induced(s)):
            return False
    return True


def extra_vertices(p: GraphPair) -> list[int]:
    f = embed(p.beta, p.alpha)
    if f is None:
        return []
    image = set(f.values())
    return [v for v in p.beta.ids if v not in image]


def is_elementary(p: GraphPair) -> bool:
    a, b = p.alpha, p.beta
    if a.invariants().triple() != b.invariants().triple():
        return False
    inv = b.invariants()
    if inv.cl & inv.cr:
        return False
    if not leq(b, a) or not covers(a, b):
        return False
    extra = extra_vertices(p)
    if len(extra) != 1:
        return False
    (v,) = extra
    return b.degree(v) == 1 and b.adj[v][0] in (b.iota, b.tau)


def root_shift(p: GraphPair, edge: tuple[int, int]) -> GraphPair:
    """Re-root both graphs at ``edge`` of ``alpha`` (either orientation).

    The left endpoint becomes iota; the matching edge of ``beta`` is found via
    the embedding.
    """
    if not is_elementary(p):
        raise NotElementary("root_shift is defined for elementary pairs")
    u, v = edge
    a = p.alpha
    if u not in a or v not in a or not a.has_edge(u, v):
        raise NoSuchEdge(edge)
    iota, tau = (u, v) if a.side(u) == L else (v, u)
    f = embed(p.beta, a)
    return GraphPair(a.reroot(iota, tau), p.beta.reroot(f[iota], f[tau]))


def is_essential_thorn_free(g: BiTree) -> bool:
    return not any(is_thorn_leaf(g, v) for v in (g.iota, g.tau))
