import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ALPHABET, compound_terms, substitutions, terms
from pseudosemilattice.errors import BadParam, NotFolded, NotReduced
from pseudosemilattice.family import FamilyIndex, alpha, beta, word_u, word_v
from pseudosemilattice.graphs import L, R, delta, is_reduced, make_bitree, singleton
from pseudosemilattice.proofs import collapse_endo, stepping_endo
from pseudosemilattice.rewrite import (
    FOLD,
    THORN,
    apply_endo,
    delete_thorns,
    fold_edges,
    meet,
    reduce,
    reduce_interleaved,
    reduce_with_trace,
    skeleton,
    theta,
    words_equal,
)
from pseudosemilattice.terms import Leaf, parse_term, substitute

p = parse_term
x, y, z, w = (Leaf(c) for c in "xyzw")


def edge_labels(g):
    return {(g.label(a), g.label(b)) for a, b in g.edges}


def root_labels(g):
    return g.label(g.iota), g.label(g.tau)


def test_one_fold_merges_the_two_x_leaves():
    g, trace = fold_edges(delta(p("(x^y)^(x^z)")))
    assert len(g) == 3
    assert edge_labels(g) == {("x", "y"), ("x", "z")}
    assert root_labels(g) == ("x", "z")
    assert [s.kind for s in trace.steps] == [FOLD]


def test_folded_input_is_a_fixpoint():
    g = delta(p("x^y"))
    assert fold_edges(g)[0] == g


def test_two_folds_collapse_a_square():
    g, trace = fold_edges(delta(p("(x^y)^(x^y)")))
    assert len(g) == 2 and root_labels(g) == ("x", "y")
    assert len(trace.steps) == 2


def test_thorn_after_folding_is_removed():
    folded, _ = fold_edges(delta(p("(x^x)^y")))
    g, trace = delete_thorns(folded)
    assert len(g) == 2 and root_labels(g) == ("x", "y")
    assert [s.kind for s in trace.steps] == [THORN]


def test_essential_thorn_stays():
    g = delta(p("(x^y)^x"))
    assert delete_thorns(g)[0] == g


def test_no_thorn_between_different_labels():
    g = theta(p("x^y"))
    assert delete_thorns(g)[0] == g


def test_thorn_deletion_needs_a_folded_graph():
    with pytest.raises(NotFolded):
        delete_thorns(delta(p("(x^y)^(x^z)")))


def test_reduce_examples():
    assert reduce(delta(p("(x^y)^(x^z)"))) == reduce(delta(p("(x^y)^z")))
    assert reduce(delta(p("x^x"))) == make_bitree([("x", L), ("x", R)], [(0, 1)])
    b = beta(FamilyIndex(2, 1, 1))
    assert reduce(b) == b


def test_theta_examples():
    assert theta(x) == make_bitree([("x", L), ("x", R)], [(0, 1)])
    assert theta(p("x^(x^y)")) == theta(p("x^y"))
    assert theta(word_u(FamilyIndex(2, 1, 1))) == alpha(FamilyIndex(2, 1, 1))


def test_words_equal_examples():
    assert words_equal(p("x^x"), x)
    assert not words_equal(p("(x^y)^z"), p("x^(y^z)"))
    idx = FamilyIndex(2, 1, 1)
    assert not words_equal(word_u(idx), word_v(idx))


def test_meet_examples():
    assert meet(theta(x), theta(y)) == theta(x ^ y)
    assert meet(alpha(FamilyIndex(2, 1, 3)), beta(FamilyIndex(2, 1, 2))) == beta(FamilyIndex(2, 1, 3))


def test_meet_requires_reduced_arguments():
    with pytest.raises(NotReduced):
        meet(singleton("x"), theta(y))


def test_apply_endo_examples():
    a = alpha(FamilyIndex(2, 1, 1))
    assert apply_endo(a, {}) == a
    assert apply_endo(a, stepping_endo(2, 1)) == alpha(FamilyIndex(2, 1, 2))


def test_apply_endo_requires_reduced_input():
    with pytest.raises(NotReduced):
        apply_endo(delta(p("(x^y)^(x^z)")), {})


def test_skeleton_examples():
    assert skeleton(p("x^y"), {}) == delta(p("x^y"))
    sk = skeleton(p("x^y"), {"x": p("a^b"), "y": p("c^d")})
    assert sk == make_bitree([("a", L), ("d", R)], [(0, 1)])


def test_skeleton_with_letter_images_relabels_the_zigzag():
    u = word_u(FamilyIndex(2, 1, 1))
    s = collapse_endo(2, 2)
    sk = skeleton(u, s)
    base = delta(u)
    assert sk.edges == base.edges and (sk.iota, sk.tau) == (base.iota, base.tau)
    assert all(sk.label(v) == substitute(Leaf(base.label(v)), s).letter for v in base.ids)


def test_skeleton_rejects_letters():
    with pytest.raises(BadParam):
        skeleton(x, {})


def test_singleton_reduces_to_the_two_vertex_graph():
    assert reduce(singleton("x")) == theta(x)


# properties

big_terms = terms(ALPHABET + ["u", "v"], max_leaves=30)


@given(big_terms, st.integers(0, 2**32))
def test_random_rule_orders_agree(t, seed):
    g = delta(t)
    expected = reduce(g)
    rng = random.Random(seed)
    assert reduce(g, rng) == expected
    assert reduce_interleaved(g, rng) == expected


def _reduced_shape_ok(g):
    for v in g.ids:
        labs = [g.label(n) for n in g.adj[v]]
        if len(labs) != len(set(labs)):
            return False
        if g.degree(v) == 1 and g.label(g.adj[v][0]) == g.label(v) and v not in (g.iota, g.tau):
            return False
    return True


@given(big_terms)
def test_reduce_output_is_reduced(t):
    g = theta(t)
    assert is_reduced(g) and _reduced_shape_ok(g)


@given(terms(max_leaves=20))
def test_reduce_keeps_graph_invariants(t):
    g = delta(t)
    before, after = g.invariants(), reduce(g).invariants()
    assert (before.l, before.r, before.c2) == (after.l, after.r, after.c2)


@given(terms(max_leaves=4), terms(max_leaves=4), terms(max_leaves=4), terms(max_leaves=4))
def test_axioms_hold_in_the_free_model(a, b, c, d):
    assert words_equal(a ^ a, a)
    assert words_equal((a ^ b) ^ (a ^ c), (a ^ b) ^ c)
    assert words_equal((b ^ a) ^ (c ^ a), b ^ (c ^ a))
    assert words_equal(((a ^ b) ^ (a ^ c)) ^ (a ^ d), (a ^ b) ^ ((a ^ c) ^ (a ^ d)))
    assert words_equal((d ^ a) ^ ((c ^ a) ^ (b ^ a)), ((d ^ a) ^ (c ^ a)) ^ (b ^ a))


@given(terms(), terms())
def test_theta_is_a_homomorphism(u, v):
    assert meet(theta(u), theta(v)) == theta(u ^ v)


@given(terms())
def test_meet_is_idempotent(u):
    g = theta(u)
    assert meet(g, g) == g


@given(terms(max_leaves=8), substitutions())
def test_apply_endo_matches_substitution(u, s):
    assert apply_endo(theta(u), s) == theta(substitute(u, s))


def _replay(g, steps):
    """Apply trace steps to a plain adjacency copy and return (labels, edges)."""
    adj = {v: set(g.adj[v]) for v in g.ids}
    for step in steps:
        keep, gone = step.survivor, step.removed
        for n in adj.pop(gone):
            adj[n].discard(gone)
            if step.kind == FOLD and n != keep:
                adj[n].add(keep)
                adj[keep].add(n)
    labels = {v: g.label(v) for v in adj}
    edges = {frozenset((a, b)) for a in adj for b in adj[a]}
    return labels, edges


@given(compound_terms(max_leaves=16))
def test_trace_replays_to_the_output(t):
    g = delta(t)
    out, trace = reduce_with_trace(g)
    labels, edges = _replay(g, trace.steps)
    assert labels == {v.id: v.label for v in out.vertices}
    assert edges == {frozenset(e) for e in out.edges}
    assert set(trace.vertex_map.values()) == set(out.ids)
    for v, image in trace.vertex_map.items():
        assert g.label(v) == out.label(image)
    for a, b in g.edges:
        if a in trace.vertex_map and b in trace.vertex_map:
            assert out.has_edge(trace.vertex_map[a], trace.vertex_map[b])
    assert trace.vertex_map[g.iota] == out.iota and trace.vertex_map[g.tau] == out.tau


def test_trace_json_shape():
    _, trace = reduce_with_trace(delta(p("(x^y)^(x^z)")))
    assert trace.to_dict() == {
        "steps": [{"kind": "Fold", "survivor": 0, "removed": 2}],
        "vertexMap": {"0": 0, "1": 1, "2": 0, "3": 3},
    }
