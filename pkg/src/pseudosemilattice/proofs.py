"""Constructive replays: every graph equation used to relate family pairs.

Each ``step_*`` function checks the equations for one index and returns a
list of :class:`Check` records; ``replay(selector)`` runs a whole suite over
the bounded grid ``n <= 4``, ``k <= 3``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .errors import BadParam
from .family import (
    FamilyIndex,
    alpha,
    beta,
    d_content,
    next_index,
    prev_index,
    word_u,
    word_v,
    x,
)
from .graphs import BiTree, is_reduced
from .order import GraphPair, embed, is_elementary, leq, root_shift
from .rewrite import apply_endo, meet, skeleton, theta, words_equal
from .terms import Leaf, Meet, Term, mirror, substitute, two_content

SELECTORS = ("prop3.3", "prop3.5", "lemma3.6", "prop4.9", "prop5.1", "lemma4.4", "all")


@dataclass(frozen=True)
class Check:
    suite: str
    label: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tail = f" ({self.detail})" if self.detail else ""
        return f"{'PASS' if self.ok else 'FAIL'} {self.suite}: {self.label}{tail}"


def _img(t: Term, dual: bool) -> Term:
    return mirror(t) if dual else t


def _cyc(n: int, q: int) -> str:
    """``x_q`` with the index taken modulo ``2n`` in ``1..2n``."""
    return x((q - 1) % (2 * n) + 1)


def _letter_map(n: int, f: Callable[[int], int]) -> dict[str, str]:
    return {x(p): _cyc(n, f(p)) for p in range(1, 2 * n + 1)}


# -- stepping within one family ---------------------------------------------

def stepping_endo(n: int, j: int, dual: bool = False) -> dict[str, Term]:
    """Substitution taking the pair at position ``j`` to the next one; only ``x_j`` moves."""
    if j % 2 == 1:
        img = Meet(Leaf(x(j)), Leaf(x(j + 1)))
    elif j == 2 * n:
        img = Meet(Leaf(x(1)), Leaf(x(2 * n)))
    else:
        img = Meet(Leaf(x(j + 1)), Leaf(x(j)))
    return {x(j): _img(img, dual)}


def step_forward(idx: FamilyIndex) -> list[Check]:
    s = stepping_endo(idx.n, idx.i, idx.dual)
    nxt = next_index(idx)
    return [
        Check("prop3.3", f"alpha{idx} -> alpha{nxt}", apply_endo(alpha(idx), s) == alpha(nxt)),
        Check("prop3.3", f"beta{idx} -> beta{nxt}", apply_endo(beta(idx), s) == beta(nxt)),
    ]


# -- switching to the starred family ----------------------------------------

def shift_endo(n: int, dual: bool = False) -> dict[str, Term]:
    s: dict[str, Term] = {x(j): Leaf(x(j + 1)) for j in range(1, 2 * n)}
    s[x(2 * n)] = _img(Meet(Leaf(x(2 * n)), Leaf(x(1))), dual)
    return s


def step_switch(idx: FamilyIndex) -> list[Check]:
    """Pair at ``idx`` yields the opposite-flavour pair at the next index."""
    target = next_index(idx).with_dual(not idx.dual)
    top, bottom = alpha(target), beta(target)
    a, b = top.iota, top.tau
    if idx.dual:
        # mirrored picture: the roles of the two roots swap
        a, b = top.tau, top.iota
    (c,) = [w for w in top.adj[a] if w != b]
    f = embed(bottom, top)
    iota, tau = (a, c) if top.side(a) == "L" else (c, a)
    a_prime = top.reroot(iota, tau)
    b_new = bottom.reroot(f[iota], f[tau])
    a_small = a_prime.induced([v for v in top.ids if v != b], iota, tau)
    s = shift_endo(idx.n, idx.dual)
    tag = f"{idx} -> {target}"
    return [
        Check("switch", f"{tag}: alpha image", apply_endo(alpha(idx), s) == a_small),
        Check("switch", f"{tag}: beta image", apply_endo(beta(idx), s) == b_new),
        Check("switch", f"{tag}: beta <= alpha' <= alpha", leq(b_new, a_prime) and leq(a_prime, a_small)),
        Check("switch", f"{tag}: re-rooting is sound",
              root_shift(GraphPair(top, bottom), (a, c)) == GraphPair(a_prime, b_new)),
    ]


# -- even positions: the two flavours agree ----------------------------------

def _tail(idx: FamilyIndex) -> tuple[int, int, int]:
    """Ids of the last three path vertices ``v_m, v_{m-1}, v_{m-2}``."""
    m = idx.m
    return m - 1, m - 2, m - 3


def _rerooted(g: BiTree, u: int, v: int) -> BiTree:
    return g.reroot(u, v) if g.side(u) == "L" else g.reroot(v, u)


def step_even_identify(idx: FamilyIndex) -> list[Check]:
    if idx.i % 2 or idx.dual:
        raise BadParam("prop3.5 replays plain pairs with i even")
    n, i = idx.n, idx.i
    a, b, _ = _tail(idx)
    p = GraphPair(alpha(idx), beta(idx))
    shifted = root_shift(p, (b, a))
    sigma = _letter_map(n, lambda q: i + 1 - q)
    star, star_next = idx.with_dual(True), next_index(idx).with_dual(True)
    tag = str(idx)
    return [
        Check("prop3.5", f"{tag}: shifted alpha relabels to alpha*", shifted.alpha.relabel(sigma) == alpha(star)),
        Check("prop3.5", f"{tag}: shifted beta relabels to alpha* next",
              shifted.beta.relabel(sigma) == alpha(star_next)),
        Check("prop3.5", f"{tag}: beta* next <= beta* <= alpha*",
              leq(beta(star_next), beta(star)) and leq(beta(star), alpha(star))),
    ] + step_switch(idx)


def step_reshift(idx: FamilyIndex) -> list[Check]:
    if idx.dual:
        raise BadParam("lemma3.6 replays plain pairs")
    n, i = idx.n, idx.i
    a, b, _ = _tail(idx)
    nxt = next_index(idx)
    sigma = _letter_map(n, lambda q: i + 1 - q)
    tag = str(idx)
    if i % 2 == 0:
        big = alpha(nxt)
        f = embed(big, alpha(idx))
        p = GraphPair(_rerooted(alpha(idx), a, b), _rerooted(big, f[a], f[b]))
        star = idx.with_dual(True)
        out = [
            Check("lemma3.6", f"{tag}: re-rooted (alpha, alpha next) is elementary", is_elementary(p)),
            Check("lemma3.6", f"{tag}: relabels to (alpha*, beta*)",
                  p.alpha.relabel(sigma) == alpha(star) and p.beta.relabel(sigma) == beta(star)),
        ]
        if out[0].ok:
            back = root_shift(p, (alpha(idx).iota, alpha(idx).tau))
            out.append(Check("lemma3.6", f"{tag}: shifting back gives (alpha, alpha next)",
                             back == GraphPair(alpha(idx), big)))
        return out
    p = root_shift(GraphPair(alpha(idx), beta(idx)), (a, b))
    return [
        Check("lemma3.6", f"{tag}: shifted pair relabels to (alpha, alpha next)",
              p.alpha.relabel(sigma) == alpha(idx) and p.beta.relabel(sigma) == alpha(nxt)),
    ]


# -- the meet law -----------------------------------------------------------

def step_meet_law(idx: FamilyIndex) -> list[Check]:
    if idx.i % 2 == 0 or idx.dual:
        raise BadParam("prop4.9 replays plain pairs with i odd")
    prev = prev_index(idx)  # raises BadParam at k = 1, i = 1
    tag = f"{idx} with beta{prev}"
    checks = [Check("prop4.9", f"{tag}: alpha ^ beta(prev) = beta",
                    meet(alpha(idx), beta(prev)) == beta(idx))]
    _, b, c = _tail(idx)
    small, big = beta(prev), beta(idx)
    f = embed(big, small)
    p = GraphPair(_rerooted(small, c, b), _rerooted(big, f[c], f[b]))
    sigma = _letter_map(idx.n, lambda q: idx.i - q)
    star = idx.with_dual(True)
    checks.append(Check("prop4.9", f"{tag}: re-rooted pair is elementary", is_elementary(p)))
    checks.append(Check("prop4.9", f"{tag}: relabels to (alpha*, beta*)",
                        p.alpha.relabel(sigma) == alpha(star) and p.beta.relabel(sigma) == beta(star)))
    if checks[1].ok:
        back = root_shift(p, (small.iota, small.tau))
        checks.append(Check("prop4.9", f"{tag}: shifting back gives (beta prev, beta)",
                            back == GraphPair(small, big)))
    return checks


# -- collapsing n to a smaller m ---------------------------------------------

def collapse_endo(n: int, m: int) -> dict[str, Term]:
    cut = 2 * n - 2 * m
    return {x(p): Leaf(x(1) if p <= cut else x(p - cut)) for p in range(1, 2 * n + 1)}


def collapse_target(idx: FamilyIndex, m: int) -> FamilyIndex:
    j1 = max(1, idx.i + 2 * m - 2 * idx.n)
    return FamilyIndex(m, idx.k, j1, idx.dual)


def collapse_repaired(g: BiTree, idx: FamilyIndex, m: int) -> BiTree:
    """Image under the collapse, multiplied by ``x2`` to cut off the essential thorn."""
    img = apply_endo(g, collapse_endo(idx.n, m))
    x2 = theta(Leaf(x(2)))
    return meet(x2, img) if idx.dual else meet(img, x2)


def step_collapse_literal(idx: FamilyIndex, m: int) -> list[Check]:
    s = collapse_endo(idx.n, m)
    tgt = collapse_target(idx, m)
    return [
        Check("prop5.1", f"{idx} -> {tgt}: alpha image (as stated)", apply_endo(alpha(idx), s) == alpha(tgt)),
        Check("prop5.1", f"{idx} -> {tgt}: beta image (as stated)", apply_endo(beta(idx), s) == beta(tgt)),
    ]


def step_collapse(idx: FamilyIndex, m: int) -> list[Check]:
    tgt = collapse_target(idx, m)
    return [
        Check("prop5.1", f"{idx} -> {tgt}: alpha image times x2", collapse_repaired(alpha(idx), idx, m) == alpha(tgt)),
        Check("prop5.1", f"{idx} -> {tgt}: beta image times x2", collapse_repaired(beta(idx), idx, m) == beta(tgt)),
    ]


# -- the dichotomy for substitution instances --------------------------------

def _small_terms(letters: list[str], max_leaves: int) -> list[Term]:
    by_size: dict[int, list[Term]] = {1: [Leaf(a) for a in letters]}
    for s in range(2, max_leaves + 1):
        by_size[s] = [Meet(l, r) for k in range(1, s) for l in by_size[k] for r in by_size[s - k]]
    return [t for s in sorted(by_size) for t in by_size[s]]


def dichotomy_pool(n: int = 2, max_leaves: int = 3) -> list[Term]:
    allowed = d_content(n, dual=True)
    letters = [x(p) for p in range(1, 2 * n + 1)]
    return [t for t in _small_terms(letters, max_leaves) if two_content(t) <= allowed]


@dataclass(frozen=True)
class DichotomySample:
    substitution: dict
    trivial: bool
    skeleton_ok: bool

    @property
    def ok(self) -> bool:
        return self.trivial or self.skeleton_ok


def dichotomy_samples(count: int, seed: int = 0, n: int = 2) -> tuple[list[DichotomySample], int]:
    """Draw substitutions with ``c2(u s)`` inside the starred content; returns samples and draws."""
    rng = random.Random(seed)
    idx = FamilyIndex(n, 1, 1)
    u, v = word_u(idx), word_v(idx)
    allowed = d_content(n, dual=True)
    pool = dichotomy_pool(n)
    names = [x(p) for p in range(1, 2 * n + 1)]
    out = []
    draws = 0
    while len(out) < count:
        draws += 1
        s = {a: rng.choice(pool) for a in names}
        us = substitute(u, s)
        if not two_content(us) <= allowed:
            continue
        trivial = words_equal(us, substitute(v, s))
        sk = skeleton(u, s)
        sk_ok = is_reduced(sk) and sk.invariants().c2 == allowed
        out.append(DichotomySample(s, trivial, sk_ok))
    return out, draws


def replay_dichotomy(count: int = 500, seed: int = 0) -> list[Check]:
    samples, draws = dichotomy_samples(count, seed)
    bad = sum(not s.ok for s in samples)
    trivial = sum(s.trivial for s in samples)
    detail = f"{trivial} trivial, {len(samples) - trivial - bad} skeleton, {bad} neither, {draws} draws"
    return [Check("lemma4.4", f"{count} substitutions", bad == 0, detail)]


# -- suites -----------------------------------------------------------------

def _grid(ns=(2, 3, 4), max_k: int = 3):
    for n in ns:
        for k in range(1, max_k + 1):
            for i in range(1, 2 * n + 1):
                yield n, k, i


def replay(selector: str, seed: int = 0, samples: int = 500,
           ns=(2, 3, 4), max_k: int = 3) -> list[Check]:
    if selector not in SELECTORS:
        raise BadParam(f"unknown selector {selector!r}; choose from {', '.join(SELECTORS)}")
    if selector == "all":
        out: list[Check] = []
        for sel in SELECTORS[:-1]:
            out += replay(sel, seed, samples, ns, max_k)
        return out
    out = []
    if selector == "prop3.3":
        for n, k, i in _grid(ns, max_k):
            for d in (False, True):
                out += step_forward(FamilyIndex(n, k, i, d))
    elif selector == "prop3.5":
        for n, k, i in _grid(ns, max_k):
            if i % 2 == 0:
                out += step_even_identify(FamilyIndex(n, k, i))
    elif selector == "lemma3.6":
        for n, k, i in _grid(ns, max_k):
            out += step_reshift(FamilyIndex(n, k, i))
    elif selector == "prop4.9":
        for n, k, i in _grid(ns, max_k):
            if i % 2 == 1 and (i > 1 or k > 1):
                out += step_meet_law(FamilyIndex(n, k, i))
    elif selector == "prop5.1":
        for n, m in ((3, 2), (4, 2), (4, 3)):
            for k in range(1, max_k + 1):
                for i in range(1, 2 * n + 1):
                    for d in (False, True):
                        idx = FamilyIndex(n, k, i, d)
                        out += step_collapse_literal(idx, m)
                        out += step_collapse(idx, m)
    elif selector == "lemma4.4":
        out += replay_dichotomy(samples, seed)
    return out
