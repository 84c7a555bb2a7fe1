"""Varieties defined by the family identities, and how they compare.

A :class:`VarietyId` names ``V(n,k,i)`` (kind ``P``), its starred twin
``V*(n,k,i)`` (kind ``D``) or their intersection (kind ``M``).  Each is
generated by one or two family pairs (:class:`PairId`); inclusion is decided
pair-by-pair with a closed-form criterion.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Optional

from . import proofs
from .errors import BadParam, ConsequenceFalse
from .family import FamilyIndex, meet_identity, next_index, word_u, word_v
from .terms import Term, invariants

KINDS = ("P", "D", "M")


def _check_range(n: int, k: int, i: int) -> None:
    if n < 2 or k < 1 or not 1 <= i <= 2 * n:
        raise BadParam(f"index ({n},{k},{i}) out of range")


@dataclass(frozen=True, order=True)
class PairId:
    n: int
    k: int
    i: int
    flavor: str = "P"

    def __post_init__(self):
        _check_range(self.n, self.k, self.i)
        if self.flavor not in ("P", "D"):
            raise BadParam(f"pair flavor must be P or D, got {self.flavor!r}")

    def normalized(self) -> PairId:
        if self.flavor == "D" and self.i % 2 == 0:
            return PairId(self.n, self.k, self.i, "P")
        return self

    def family_index(self) -> FamilyIndex:
        return FamilyIndex(self.n, self.k, self.i, self.flavor == "D")

    @property
    def size(self) -> int:
        return 2 * self.n * self.k + self.i


@dataclass(frozen=True, order=True)
class VarietyId:
    n: int
    k: int
    i: int
    kind: str = "P"

    def __post_init__(self):
        _check_range(self.n, self.k, self.i)
        if self.kind not in KINDS:
            raise BadParam(f"variety kind must be one of P, D, M, got {self.kind!r}")

    @property
    def size(self) -> int:
        return 2 * self.n * self.k + self.i

    def label(self) -> str:
        stem = {"P": "V", "D": "V*", "M": "V∩V*"}[self.kind]
        return f"{stem}({self.n},{self.k},{self.i})"

    def __str__(self) -> str:
        return f"{self.n},{self.k},{self.i},{self.kind.lower()}"


def parse_variety(text: str) -> VarietyId:
    """Parse ``n,k,i[,p|d|m]``."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (3, 4):
        raise BadParam(f"expected n,k,i[,p|d|m], got {text!r}")
    try:
        n, k, i = (int(p) for p in parts[:3])
    except ValueError as exc:
        raise BadParam(f"expected integers in {text!r}") from exc
    kind = parts[3].upper() if len(parts) == 4 else "P"
    return VarietyId(n, k, i, kind)


def normalize(v: VarietyId) -> VarietyId:
    """Even positions have a single variety, reported with kind ``P``."""
    if v.kind != "P" and v.i % 2 == 0:
        return VarietyId(v.n, v.k, v.i, "P")
    return v


def generators(v: VarietyId) -> list[PairId]:
    v = normalize(v)
    if v.kind == "M":
        return [PairId(v.n, v.k, v.i, "P"), PairId(v.n, v.k, v.i, "D")]
    return [PairId(v.n, v.k, v.i, v.kind)]


def pair_consequence(src: PairId, dst: PairId) -> bool:
    """Whether the identity of ``dst`` follows from that of ``src``."""
    src, dst = src.normalized(), dst.normalized()
    if src.n < dst.n:
        return False
    if dst.k != src.k:
        return dst.k > src.k
    shifted = src.i + 2 * dst.n - 2 * src.n
    return dst.i >= shifted if src.flavor == dst.flavor else dst.i > shifted


def includes(a: VarietyId, b: VarietyId) -> bool:
    """``a`` is a subvariety of ``b``."""
    ga = generators(a)
    return all(any(pair_consequence(s, d) for s in ga) for d in generators(b))


class Relation(enum.Enum):
    EQUAL = "equal"
    SUB = "sub"
    SUPER = "super"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Comparison:
    relation: Relation
    derived: bool = False  # intersection against intersection across different n


def compare_detail(a: VarietyId, b: VarietyId) -> Comparison:
    a, b = normalize(a), normalize(b)
    down, up = includes(a, b), includes(b, a)
    if down and up:
        rel = Relation.EQUAL
    elif down:
        rel = Relation.SUB
    elif up:
        rel = Relation.SUPER
    else:
        rel = Relation.INCOMPARABLE
    return Comparison(rel, derived=a.kind == "M" and b.kind == "M" and a.n != b.n)


def compare(a: VarietyId, b: VarietyId) -> Relation:
    return compare_detail(a, b).relation


# -- identities ---------------------------------------------------------------

@dataclass(frozen=True)
class Identity:
    left: Term
    right: Term
    role: str = "generator"  # or "alternate"

    def as_pair(self) -> tuple[Term, Term]:
        return self.left, self.right


def defining_identities(v: VarietyId) -> list[Identity]:
    v = normalize(v)
    out = []
    for p in generators(v):
        idx = p.family_index()
        out.append(Identity(word_u(idx), word_v(idx)))
    if v.kind == "M" and (v.i > 1 or v.k > 1):
        out.append(Identity(*meet_identity(v.n, v.k, v.i), role="alternate"))
    return out


def is_sps_identity(u: Term, v: Term) -> bool:
    return invariants(u).triple() == invariants(v).triple()


# -- the diagram ---------------------------------------------------------------

@dataclass(frozen=True)
class DiagramGraph:
    nodes: tuple
    cover_edges: tuple  # (lower, upper) pairs
    derived: bool = False

    def to_dot(self) -> str:
        names = {v: f"n{j}" for j, v in enumerate(self.nodes)}
        lines = ["digraph Hasse {", "  rankdir=BT;"]
        for v in self.nodes:
            lines.append(f'  {names[v]} [label="{v.label()}"];')
        for lo, hi in self.cover_edges:
            lines.append(f"  {names[lo]} -> {names[hi]};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "nodes": [{"id": str(v), "label": v.label()} for v in self.nodes],
            "coverEdges": [[str(lo), str(hi)] for lo, hi in self.cover_edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)


def _level_of(n: int, t: int) -> tuple[int, int]:
    k, r = divmod(t - 1, 2 * n)
    return k, r + 1


def hasse(n: int, size_from: int, size_to: int) -> DiagramGraph:
    """Cover relation among the varieties at odd sizes ``size_from..size_to``."""
    if n < 2:
        raise BadParam("n must be at least 2")
    if size_from > size_to:
        raise BadParam("size_from must not exceed size_to")
    for t in (size_from, size_to):
        k, i = _level_of(n, t)
        if k < 1 or i % 2 == 0:
            raise BadParam(f"{t} is not 2nk + i with k >= 1 and i odd for n = {n}")
    nodes = []
    for t in range(size_from, size_to + 1, 2):
        k, i = _level_of(n, t)
        nodes += [VarietyId(n, k, i, "M"), VarietyId(n, k, i, "P"),
                  VarietyId(n, k, i, "D"), VarietyId(n, k, i + 1, "P")]
    below = {(a, b) for a in nodes for b in nodes if a != b and compare(a, b) is Relation.SUB}
    covers = []
    for a, b in sorted(below):
        if not any((a, c) in below and (c, b) in below for c in nodes):
            covers.append((a, b))
    return DiagramGraph(tuple(nodes), tuple(covers))


# -- constructive witnesses ---------------------------------------------------

@dataclass(frozen=True)
class WitnessStep:
    kind: str
    source: FamilyIndex
    target: FamilyIndex
    checks: tuple = ()

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def line(self) -> str:
        return f"{'ok' if self.ok else 'FAILED'} {self.kind}: {self.source} -> {self.target}"


@dataclass(frozen=True)
class WitnessReport:
    source: PairId
    target: PairId
    steps: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.steps)


def _flip(idx: FamilyIndex) -> FamilyIndex:
    return next_index(idx).with_dual(not idx.dual)


def verify_pair_consequence_witness(src: PairId, dst: PairId) -> Optional[WitnessReport]:
    """Replay a chain of explicit endomorphisms from ``src`` to ``dst``.

    The route collapses ``n`` first (switching flavour beforehand when the
    target flavour differs), then steps along the family, switching flavour
    once if still needed.
    """
    src, dst = src.normalized(), dst.normalized()
    if not pair_consequence(src, dst):
        raise ConsequenceFalse(f"({dst}) is not a consequence of ({src})")
    cur = src.family_index()
    want_dual = dst.flavor == "D"
    steps: list[WitnessStep] = []

    def goal_size() -> int:
        return dst.size

    if src.n > dst.n:
        if cur.dual != want_dual:
            nxt = _flip(cur)
            steps.append(WitnessStep("switch", cur, nxt, tuple(proofs.step_switch(cur))))
            cur = nxt
        tgt = proofs.collapse_target(cur, dst.n)
        steps.append(WitnessStep("collapse", cur, tgt, tuple(proofs.step_collapse(cur, dst.n))))
        cur = tgt
    end_dual = want_dual
    if not want_dual and dst.i % 2 == 0 and cur.dual:
        end_dual = True  # even target: finish in the starred family, then identify
    if cur.dual != end_dual:
        if cur.m >= goal_size():
            return None
        nxt = _flip(cur)
        steps.append(WitnessStep("switch", cur, nxt, tuple(proofs.step_switch(cur))))
        cur = nxt
    while cur.m < goal_size():
        nxt = next_index(cur)
        steps.append(WitnessStep("step", cur, nxt, tuple(proofs.step_forward(cur))))
        cur = nxt
    if cur.m != goal_size():
        return None
    if cur.dual and not want_dual:
        plain = cur.with_dual(False)
        steps.append(WitnessStep("identify", cur, plain, tuple(proofs.step_even_identify(plain))))
        cur = plain
    return WitnessReport(src, dst, tuple(steps))
