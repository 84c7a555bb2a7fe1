"""Labeled bipartite trees with distinguished vertices.

Three flavours share one representation (a vertex tuple plus an edge set):

* :class:`BiTree`: an ordered adjacent root pair ``(iota, tau)``; these are
  the elements of the free model.  The singleton ``*_x`` is the only BiTree
  with a side-less vertex.
* :class:`RootedTree`: a single distinguished vertex, flagged left or right.
* :class:`FreeTree`: no distinguished vertex.

Edges are stored as ``(left_id, right_id)`` pairs.  Equality and hashing are
isomorphism-invariant: two graphs compare equal iff their
:func:`canonical_key` values agree.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Union

from .errors import InvariantViolation, NotReduced, SchemaError
from .terms import Invariants, Leaf, Term, is_letter, sorted_letters

L, R = "L", "R"


@dataclass(frozen=True)
class Vertex:
    id: int
    side: Optional[str]
    label: str


class _Tree:
    """Shared vertex/edge bookkeeping; subclasses add the distinguished structure."""

    vertices: tuple
    edges: frozenset

    def _check_tree(self) -> None:
        ids = [v.id for v in self.vertices]
        if not ids:
            raise InvariantViolation("a tree needs at least one vertex")
        if len(set(ids)) != len(ids):
            raise InvariantViolation("duplicate vertex ids")
        for v in self.vertices:
            if not is_letter(v.label):
                raise InvariantViolation(f"bad label {v.label!r}")
            if v.side not in (L, R, None):
                raise InvariantViolation(f"bad side {v.side!r}")
        if any(v.side is None for v in self.vertices) and len(ids) > 1:
            raise InvariantViolation("side-less vertex in a graph with more than one vertex")
        known = set(ids)
        for a, b in self.edges:
            if a not in known or b not in known:
                raise InvariantViolation(f"edge ({a}, {b}) names an unknown vertex")
            if self.side(a) != L or self.side(b) != R:
                raise InvariantViolation(f"edge ({a}, {b}) does not join a left to a right vertex")
        if len(self.edges) != len(ids) - 1:
            raise InvariantViolation("edge count is not |V| - 1")
        seen = {ids[0]}
        todo = [ids[0]]
        while todo:
            for w in self.adj[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != len(ids):
            raise InvariantViolation("graph is not connected")

    @cached_property
    def _by_id(self) -> dict:
        return {v.id: v for v in self.vertices}

    @cached_property
    def adj(self) -> dict:
        out: dict[int, list[int]] = {v.id: [] for v in self.vertices}
        for a, b in self.edges:
            out[a].append(b)
            out[b].append(a)
        return {k: tuple(sorted(v)) for k, v in out.items()}

    @property
    def ids(self) -> list[int]:
        return sorted(self._by_id)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, vid: int) -> bool:
        return vid in self._by_id

    def label(self, vid: int) -> str:
        return self._by_id[vid].label

    def side(self, vid: int) -> Optional[str]:
        return self._by_id[vid].side

    def degree(self, vid: int) -> int:
        return len(self.adj[vid])

    def has_edge(self, a: int, b: int) -> bool:
        return (a, b) in self.edges or (b, a) in self.edges

    def labels(self, side: Optional[str] = None) -> frozenset:
        return frozenset(v.label for v in self.vertices if side is None or v.side == side)

    def two_content(self) -> frozenset:
        pairs = {(v.label, v.label) for v in self.vertices}
        pairs.update((self.label(a), self.label(b)) for a, b in self.edges)
        return frozenset(pairs)

    @cached_property
    def key(self) -> str:
        return self._key()

    def __eq__(self, other) -> bool:
        if not isinstance(other, _Tree):
            return NotImplemented
        return type(self) is type(other) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)


@dataclass(frozen=True, eq=False)
class BiTree(_Tree):
    vertices: tuple
    edges: frozenset
    iota: int
    tau: int

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices, key=lambda v: v.id)))
        object.__setattr__(self, "edges", frozenset(self.edges))
        self._check_tree()
        if len(self.vertices) == 1:
            only = self.vertices[0].id
            if self.iota != only or self.tau != only:
                raise InvariantViolation("the singleton graph has iota = tau = its vertex")
            if self.vertices[0].side is not None:
                raise InvariantViolation("the singleton graph carries no side")
            return
        if self.iota not in self or self.tau not in self:
            raise InvariantViolation("roots must be vertices")
        if self.side(self.iota) != L or self.side(self.tau) != R:
            raise InvariantViolation("iota must be a left vertex and tau a right vertex")
        if (self.iota, self.tau) not in self.edges:
            raise InvariantViolation("roots must be joined by an edge")

    @property
    def is_singleton(self) -> bool:
        return len(self.vertices) == 1

    def _key(self) -> str:
        return "B" + _encode(self, self.iota, {self.tau})

    def invariants(self) -> Invariants:
        if self.is_singleton:
            x = self.vertices[0].label
            return Invariants(x, x, frozenset([x]), frozenset([(x, x)]), frozenset(), frozenset())
        return Invariants(
            l=self.label(self.iota),
            r=self.label(self.tau),
            c=self.labels(),
            c2=self.two_content(),
            cl=self.labels(L),
            cr=self.labels(R),
        )

    def reroot(self, iota: int, tau: int) -> BiTree:
        return BiTree(self.vertices, self.edges, iota, tau)

    def relabel(self, mapping: Mapping[str, str]) -> BiTree:
        """Change each label ``x`` to ``mapping.get(x, x)`` (no reduction)."""
        vs = tuple(Vertex(v.id, v.side, mapping.get(v.label, v.label)) for v in self.vertices)
        return BiTree(vs, self.edges, self.iota, self.tau)

    def induced(self, ids: Iterable[int], iota: Optional[int] = None, tau: Optional[int] = None) -> BiTree:
        keep = set(ids)
        vs = tuple(v for v in self.vertices if v.id in keep)
        es = frozenset(e for e in self.edges if e[0] in keep and e[1] in keep)
        return BiTree(vs, es, self.iota if iota is None else iota, self.tau if tau is None else tau)

    def __repr__(self) -> str:
        return f"BiTree({describe(self)})"


@dataclass(frozen=True, eq=False)
class RootedTree(_Tree):
    vertices: tuple
    edges: frozenset
    root: int
    kind: str  # "left" or "right"

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices, key=lambda v: v.id)))
        object.__setattr__(self, "edges", frozenset(self.edges))
        if self.kind not in ("left", "right"):
            raise InvariantViolation(f"bad rooted-tree kind {self.kind!r}")
        self._check_tree()
        want = L if self.kind == "left" else R
        if any(v.side is None for v in self.vertices):
            raise InvariantViolation("rooted trees carry sides on every vertex")
        if self.root not in self or self.side(self.root) != want:
            raise InvariantViolation(f"a {self.kind}-rooted tree needs a {want} root")

    def _key(self) -> str:
        return ("Rl" if self.kind == "left" else "Rr") + _encode(self, self.root, ())

    def __repr__(self) -> str:
        return f"RootedTree({self.kind}, root={self.root}, {_describe_edges(self)})"


@dataclass(frozen=True, eq=False)
class FreeTree(_Tree):
    vertices: tuple
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices, key=lambda v: v.id)))
        object.__setattr__(self, "edges", frozenset(self.edges))
        self._check_tree()

    def _key(self) -> str:
        return "F" + min(_encode(self, c, ()) for c in tree_centers(self))

    def __repr__(self) -> str:
        return f"FreeTree({_describe_edges(self)})"


AnyTree = Union[BiTree, RootedTree, FreeTree]


def _encode(g: _Tree, root: int, marked) -> str:
    # AHU-style code with children sorted; iterative post-order
    order = []
    parent = {root: None}
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        for w in g.adj[v]:
            if w != parent[v]:
                parent[w] = v
                stack.append(w)
    children: dict[int, list[str]] = {v: [] for v in order}
    code = ""
    for v in reversed(order):
        side = g.side(v) or "-"
        mark = "*" if v in marked else ""
        code = "(" + side + g.label(v) + mark + "".join(sorted(children[v])) + ")"
        if parent[v] is not None:
            children[parent[v]].append(code)
    return code


def tree_centers(g: _Tree) -> list[int]:
    degree = {v: g.degree(v) for v in g.ids}
    remaining = len(degree)
    layer = [v for v, d in degree.items() if d <= 1]
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in g.adj[v]:
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def canonical_key(g: AnyTree) -> str:
    return g.key


def isomorphic(a: AnyTree, b: AnyTree) -> bool:
    return a == b


# -- construction ------------------------------------------------------------

def make_bitree(spec: Iterable[tuple[str, Optional[str]]], edges: Iterable[tuple[int, int]],
                iota: int = 0, tau: int = 1) -> BiTree:
    """Build a BiTree from ``(label, side)`` pairs indexed from 0."""
    vs = tuple(Vertex(i, side, label) for i, (label, side) in enumerate(spec))
    if len(vs) == 1:
        iota = tau = 0
    return BiTree(vs, frozenset(edges), iota, tau)


def singleton(x: str) -> BiTree:
    return BiTree((Vertex(0, None, x),), frozenset(), 0, 0)


def delta_with_map(t: Term) -> tuple[BiTree, dict[str, int]]:
    """Delta of a term plus the leaf correspondence ``path -> vertex id``.

    Vertex ids follow the left-to-right order of the leaves.
    """
    if isinstance(t, Leaf):
        return singleton(t.letter), {"": 0}
    vertices: list[Vertex] = []
    edges: set[tuple[int, int]] = set()
    leaf_map: dict[str, int] = {}

    def walk(node: Term, path: str) -> tuple[int, int]:
        if isinstance(node, Leaf):
            vid = len(vertices)
            vertices.append(Vertex(vid, path[-1], node.letter))
            leaf_map[path] = vid
            return vid, vid
        first, _ = walk(node.left, path + L)
        _, last = walk(node.right, path + R)
        edges.add((first, last))
        return first, last

    iota, tau = walk(t, "")
    return BiTree(tuple(vertices), frozenset(edges), iota, tau), leaf_map


def delta(t: Term) -> BiTree:
    return delta_with_map(t)[0]


def _shifted(g: BiTree, offset: int, lone_side: str) -> tuple[list[Vertex], set]:
    renum = {vid: offset + n for n, vid in enumerate(g.ids)}
    vs = [Vertex(renum[v.id], v.side or lone_side, v.label) for v in g.vertices]
    es = {(renum[a], renum[b]) for a, b in g.edges}
    return vs, es


def join(a: BiTree, b: BiTree) -> BiTree:
    """Disjoint union of ``a`` and ``b`` plus the edge ``(iota_a, tau_b)``."""
    va, ea = _shifted(a, 0, L)
    vb, eb = _shifted(b, len(a), R)
    iota = a.ids.index(a.iota)
    tau = len(a) + b.ids.index(b.tau)
    return BiTree(tuple(va + vb), frozenset(ea | eb | {(iota, tau)}), iota, tau)


def left_rooted(g: BiTree) -> RootedTree:
    if g.is_singleton:
        v = g.vertices[0]
        return RootedTree((Vertex(v.id, L, v.label),), frozenset(), v.id, "left")
    return RootedTree(g.vertices, g.edges, g.iota, "left")


def right_rooted(g: BiTree) -> RootedTree:
    if g.is_singleton:
        v = g.vertices[0]
        return RootedTree((Vertex(v.id, R, v.label),), frozenset(), v.id, "right")
    return RootedTree(g.vertices, g.edges, g.tau, "right")


def mirror(g: BiTree) -> BiTree:
    """Left-right dual: swap sides and swap the two roots."""
    if g.is_singleton:
        return g
    flip = {L: R, R: L}
    vs = tuple(Vertex(v.id, flip[v.side], v.label) for v in g.vertices)
    es = frozenset((b, a) for a, b in g.edges)
    return BiTree(vs, es, g.tau, g.iota)


# -- reducedness -------------------------------------------------------------

def fold_candidates(g: _Tree) -> list[tuple[int, int, int]]:
    """All ``(center, a, b)`` with ``a < b`` neighbours of ``center`` sharing a label."""
    out = []
    for c in g.ids:
        by_label: dict[str, list[int]] = {}
        for w in g.adj[c]:
            by_label.setdefault(g.label(w), []).append(w)
        for group in by_label.values():
            out.extend((c, a, b) for i, a in enumerate(group) for b in group[i + 1:])
    return out


def is_thorn_leaf(g: _Tree, vid: int) -> bool:
    if g.degree(vid) != 1:
        return False
    return g.label(g.adj[vid][0]) == g.label(vid)


def distinguished(g: AnyTree) -> set:
    if isinstance(g, BiTree):
        return {g.iota, g.tau}
    if isinstance(g, RootedTree):
        return {g.root}
    return set()


def nonessential_thorns(g: AnyTree) -> list[int]:
    keep = distinguished(g)
    return [v for v in g.ids if v not in keep and is_thorn_leaf(g, v)]


def is_folded(g: _Tree) -> bool:
    return not fold_candidates(g)


def is_reduced(g: BiTree) -> bool:
    """Member of the free model: at least two vertices and neither rule applies."""
    return not g.is_singleton and is_folded(g) and not nonessential_thorns(g)


def require_reduced(*graphs: BiTree) -> None:
    for g in graphs:
        if not is_reduced(g):
            raise NotReduced(f"graph is not reduced: {describe(g)}")


def l_reduct(g: BiTree) -> RootedTree:
    """The left-rooted graph that decides R-classes; drops tau when it forms a thorn."""
    require_reduced(g)
    if g.degree(g.tau) == 1 and g.label(g.tau) == g.label(g.iota):
        rest = [v for v in g.vertices if v.id != g.tau]
        return RootedTree(tuple(rest), g.edges - {(g.iota, g.tau)}, g.iota, "left")
    return left_rooted(g)


def r_reduct(g: BiTree) -> RootedTree:
    require_reduced(g)
    if g.degree(g.iota) == 1 and g.label(g.tau) == g.label(g.iota):
        rest = [v for v in g.vertices if v.id != g.iota]
        return RootedTree(tuple(rest), g.edges - {(g.iota, g.tau)}, g.tau, "right")
    return right_rooted(g)


def hat(g: BiTree) -> FreeTree:
    """Forget the roots and delete the thorns that were essential."""
    require_reduced(g)
    if len(g) == 2 and g.label(g.iota) == g.label(g.tau):
        return FreeTree((Vertex(g.iota, None, g.label(g.iota)),), frozenset())
    drop = {v for v in (g.iota, g.tau) if is_thorn_leaf(g, v)}
    vs = tuple(v for v in g.vertices if v.id not in drop)
    es = frozenset(e for e in g.edges if e[0] not in drop and e[1] not in drop)
    return FreeTree(vs, es)


def graph_invariants(g: BiTree) -> Invariants:
    return g.invariants()


def path_between(g: _Tree, a: int, b: int) -> list[int]:
    """The unique a-b path as a vertex list (inclusive)."""
    parent = {a: None}
    todo = deque([a])
    while todo:
        v = todo.popleft()
        if v == b:
            break
        for w in g.adj[v]:
            if w not in parent:
                parent[w] = v
                todo.append(w)
    out = [b]
    while out[-1] != a:
        out.append(parent[out[-1]])
    return out[::-1]


# -- rendering and serialization ---------------------------------------------

def _vtext(g: _Tree, vid: int) -> str:
    return f"{vid}:{g.label(vid)}({g.side(vid) or '-'})"


def _describe_edges(g: _Tree) -> str:
    if len(g) == 1:
        return _vtext(g, g.ids[0])
    return ", ".join(f"{_vtext(g, a)}--{_vtext(g, b)}" for a, b in sorted(g.edges))


def describe(g: BiTree) -> str:
    """Compact one-line text form; the root edge is written with ``==``."""
    if g.is_singleton:
        return f"*{g.label(g.iota)}"
    parts = [f"{_vtext(g, g.iota)}=={_vtext(g, g.tau)}"]
    parts += [f"{_vtext(g, a)}--{_vtext(g, b)}" for a, b in sorted(g.edges) if (a, b) != (g.iota, g.tau)]
    return ", ".join(parts)


def to_dict(g: BiTree) -> dict:
    return {
        "vertices": [{"id": v.id, "side": v.side, "label": v.label} for v in g.vertices],
        "edges": [[a, b] for a, b in sorted(g.edges)],
        "iota": g.iota,
        "tau": g.tau,
    }


def to_json(g: BiTree) -> str:
    return json.dumps(to_dict(g), separators=(",", ":"))


def from_dict(data) -> BiTree:
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object")
    missing = {"vertices", "edges", "iota", "tau"} - set(data)
    if missing:
        raise SchemaError(f"missing keys: {sorted(missing)}")
    if not isinstance(data["vertices"], list) or not isinstance(data["edges"], list):
        raise SchemaError("'vertices' and 'edges' must be arrays")
    vs = []
    for item in data["vertices"]:
        if not isinstance(item, dict) or set(item) != {"id", "side", "label"}:
            raise SchemaError(f"bad vertex record {item!r}")
        if not _is_int(item["id"]) or item["side"] not in (L, R, None) or not isinstance(item["label"], str):
            raise SchemaError(f"bad vertex record {item!r}")
        vs.append(Vertex(item["id"], item["side"], item["label"]))
    es = []
    for item in data["edges"]:
        if not isinstance(item, list) or len(item) != 2 or not all(_is_int(x) for x in item):
            raise SchemaError(f"bad edge record {item!r}")
        es.append((item[0], item[1]))
    if len(set(es)) != len(es):
        raise InvariantViolation("duplicate edges")
    if not _is_int(data["iota"]) or not _is_int(data["tau"]):
        raise SchemaError("'iota' and 'tau' must be integers")
    return BiTree(tuple(vs), frozenset(es), data["iota"], data["tau"])


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def from_json(text: str) -> BiTree:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return from_dict(data)


def to_dot(g: BiTree, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        shape = {L: "circle", R: "square", None: "doublecircle"}[v.side]
        lines.append(f'  {v.id} [label="{v.label}", shape={shape}];')
    for a, b in sorted(g.edges):
        if (a, b) == (g.iota, g.tau):
            lines.append(f'  {a} -- {b} [penwidth=2, root="true"];')
        else:
            lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def letters_of(g: _Tree) -> list[str]:
    return sorted_letters(g.labels())
