"""Reduction of bi-rooted trees to normal form, and the operations built on it.

Two local rules act on a :class:`~pseudosemilattice.graphs.BiTree`:

* *fold*: two neighbours of one vertex carrying the same label are merged;
* *thorn deletion*: a non-distinguished leaf whose only neighbour has the same
  label is removed.

Folding to a fixpoint and then deleting thorns yields the reduced graph, which
is the normal form for words modulo the pseudosemilattice axioms.
"""

from __future__ import annotations

import heapq
import json
import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import BadParam, NotFolded
from .graphs import (
    BiTree,
    L,
    R,
    Vertex,
    delta,
    require_reduced,
)
from .terms import Leaf, Substitution, Term, leftmost, rightmost, substitute
from .terms import letter_sort_key

FOLD, THORN = "Fold", "ThornDelete"


@dataclass(frozen=True)
class Step:
    kind: str
    survivor: int
    removed: int


@dataclass(frozen=True)
class ReductionTrace:
    """Rule applications in order, plus where each input vertex ended up.

    Vertices removed by thorn deletion are absent from ``vertex_map``.
    """

    steps: tuple = ()
    vertex_map: dict = field(default_factory=dict)

    def then(self, later: ReductionTrace) -> ReductionTrace:
        vm = {v: later.vertex_map[w] for v, w in self.vertex_map.items() if w in later.vertex_map}
        return ReductionTrace(self.steps + later.steps, vm)

    def to_dict(self) -> dict:
        return {
            "steps": [{"kind": s.kind, "survivor": s.survivor, "removed": s.removed} for s in self.steps],
            "vertexMap": {str(k): v for k, v in sorted(self.vertex_map.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


class _Work:
    """Private mutable copy of a graph that the rules edit in place."""

    def __init__(self, g: BiTree):
        self.side = {v.id: v.side for v in g.vertices}
        self.label = {v.id: v.label for v in g.vertices}
        self.adj = {v: set(ns) for v, ns in g.adj.items()}
        self.iota, self.tau = g.iota, g.tau
        self.steps: list[Step] = []
        self.merged_into: dict[int, int] = {}
        self.deleted: set[int] = set()
        self.original = list(self.label)

    def fold_at(self, c: int) -> Optional[tuple[int, int]]:
        groups: dict[str, list[int]] = {}
        for w in self.adj[c]:
            groups.setdefault(self.label[w], []).append(w)
        for lab in sorted(groups, key=letter_sort_key):
            if len(groups[lab]) > 1:
                a, b = sorted(groups[lab])[:2]
                return a, b
        return None

    def fold_candidates(self) -> list[tuple[int, int, int]]:
        out = []
        for c in sorted(self.adj):
            groups: dict[str, list[int]] = {}
            for w in self.adj[c]:
                groups.setdefault(self.label[w], []).append(w)
            for group in groups.values():
                group.sort()
                out.extend((c, a, b) for i, a in enumerate(group) for b in group[i + 1:])
        return out

    def fold(self, c: int, a: int, b: int) -> int:
        keep, gone = min(a, b), max(a, b)
        for w in self.adj.pop(gone):
            self.adj[w].discard(gone)
            if w != c:
                self.adj[w].add(keep)
                self.adj[keep].add(w)
        if self.iota == gone:
            self.iota = keep
        if self.tau == gone:
            self.tau = keep
        self.merged_into[gone] = keep
        self.steps.append(Step(FOLD, keep, gone))
        return keep

    def is_thorn(self, v: int) -> bool:
        if v in (self.iota, self.tau) or len(self.adj[v]) != 1:
            return False
        (c,) = self.adj[v]
        return self.label[c] == self.label[v]

    def delete(self, v: int) -> int:
        (c,) = self.adj.pop(v)
        self.adj[c].discard(v)
        self.deleted.add(v)
        self.steps.append(Step(THORN, c, v))
        return c

    def find(self, v: int) -> Optional[int]:
        while v in self.merged_into:
            v = self.merged_into[v]
        return None if v in self.deleted else v

    def result(self) -> tuple[BiTree, ReductionTrace]:
        vs = tuple(Vertex(v, self.side[v], self.label[v]) for v in sorted(self.adj))
        es = frozenset((v, w) for v in self.adj if self.side[v] == L for w in self.adj[v])
        vm = {}
        for v in self.original:
            w = self.find(v)
            if w is not None:
                vm[v] = w
        return BiTree(vs, es, self.iota, self.tau), ReductionTrace(tuple(self.steps), vm)


def _lift_singleton(g: BiTree) -> BiTree:
    x = g.label(g.iota)
    return BiTree((Vertex(0, L, x), Vertex(1, R, x)), frozenset({(0, 1)}), 0, 1)


def fold_edges(g: BiTree, rng: Optional[random.Random] = None) -> tuple[BiTree, ReductionTrace]:
    """Fold to a fixpoint.  With ``rng`` the next fold is drawn at random."""
    if g.is_singleton:
        return g, ReductionTrace((), {g.iota: g.iota})
    w = _Work(g)
    if rng is not None:
        while True:
            cands = w.fold_candidates()
            if not cands:
                break
            w.fold(*rng.choice(cands))
        return w.result()
    heap = sorted(w.adj)
    queued = set(heap)
    while heap:
        c = heapq.heappop(heap)
        queued.discard(c)
        if c not in w.adj:
            continue
        pair = w.fold_at(c)
        if pair is None:
            continue
        keep = w.fold(c, *pair)
        for v in (c, keep):
            if v not in queued:
                queued.add(v)
                heapq.heappush(heap, v)
    return w.result()


def delete_thorns(g: BiTree, rng: Optional[random.Random] = None) -> tuple[BiTree, ReductionTrace]:
    """Remove every non-essential thorn; the input must already be folded."""
    if g.is_singleton:
        return g, ReductionTrace((), {g.iota: g.iota})
    w = _Work(g)
    if w.fold_candidates():
        raise NotFolded("delete_thorns needs an edge-folded graph")
    while True:
        thorns = [v for v in sorted(w.adj) if w.is_thorn(v)]
        if not thorns:
            break
        if rng is not None:
            w.delete(rng.choice(thorns))
        else:
            for v in thorns:
                if v in w.adj and w.is_thorn(v):
                    w.delete(v)
    return w.result()


def reduce_with_trace(g: BiTree, rng: Optional[random.Random] = None) -> tuple[BiTree, ReductionTrace]:
    if g.is_singleton:
        return _lift_singleton(g), ReductionTrace((), {g.iota: 0})
    folded, t1 = fold_edges(g, rng)
    out, t2 = delete_thorns(folded, rng)
    return out, t1.then(t2)


def reduce(g: BiTree, rng: Optional[random.Random] = None) -> BiTree:
    return reduce_with_trace(g, rng)[0]


def reduce_interleaved(g: BiTree, rng: random.Random) -> BiTree:
    """Apply folds and thorn deletions in one random stream until neither applies."""
    if g.is_singleton:
        return _lift_singleton(g)
    w = _Work(g)
    while True:
        moves = [("f", c) for c in w.fold_candidates()]
        moves += [("t", v) for v in sorted(w.adj) if w.is_thorn(v)]
        if not moves:
            return w.result()[0]
        kind, arg = rng.choice(moves)
        if kind == "f":
            w.fold(*arg)
        else:
            w.delete(arg)


def theta(t: Term) -> BiTree:
    return reduce(delta(t))


def words_equal(u: Term, v: Term) -> bool:
    """Decide whether ``u = v`` holds in every pseudosemilattice."""
    return theta(u) == theta(v)


def meet(a: BiTree, b: BiTree) -> BiTree:
    """The operation of the free model: join, then reduce."""
    from .graphs import join

    require_reduced(a, b)
    return reduce(join(a, b))


def blow_up(g: BiTree, s: Substitution) -> BiTree:
    """Replace each vertex by the tree of its label's image, unreduced."""
    cache: dict[str, BiTree] = {}
    vertices: list[Vertex] = []
    edges: set[tuple[int, int]] = set()
    anchor: dict[int, int] = {}
    for v in g.vertices:
        if v.label not in cache:
            cache[v.label] = delta(s.get(v.label, Leaf(v.label)))
        piece = cache[v.label]
        side = v.side or L
        offset = len(vertices)
        renum = {vid: offset + n for n, vid in enumerate(piece.ids)}
        for pv in piece.vertices:
            vertices.append(Vertex(renum[pv.id], pv.side or side, pv.label))
        edges.update((renum[a], renum[b]) for a, b in piece.edges)
        anchor[v.id] = renum[piece.iota if side == L else piece.tau]
    edges.update((anchor[a], anchor[b]) for a, b in g.edges)
    return BiTree(tuple(vertices), frozenset(edges), anchor[g.iota], anchor[g.tau])


def apply_endo(g: BiTree, s: Substitution) -> BiTree:
    """Image of a reduced graph under the endomorphism induced by ``s``."""
    require_reduced(g)
    return reduce(blow_up(g, s))


def relabel_reduce(g: BiTree, mapping: dict[str, str]) -> BiTree:
    """Letter-to-letter substitution: relabel, then reduce."""
    return reduce(g.relabel(mapping))


def skeleton(u: Term, s: Substitution) -> BiTree:
    """Delta of ``u`` with left labels ``x -> l(x s)`` and right labels ``x -> r(x s)``."""
    if isinstance(u, Leaf):
        raise BadParam("skeleton needs a compound term")
    g = delta(u)
    vs = []
    for v in g.vertices:
        img = s.get(v.label, Leaf(v.label))
        vs.append(Vertex(v.id, v.side, leftmost(img) if v.side == L else rightmost(img)))
    return BiTree(tuple(vs), g.edges, g.iota, g.tau)


def theta_subst(u: Term, s: Substitution) -> BiTree:
    return theta(substitute(u, s))
