import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pseudosemilattice.errors import BadParam, DegreeTooHigh, NoSuchVertex, OutOfRange, UnsupportedShape
from pseudosemilattice.family import (
    FamilyIndex,
    all_indices,
    alpha,
    beta,
    classify_elementary,
    d_content,
    geodesic_count,
    index_for_size,
    meet_identity,
    next_index,
    pair,
    prev_index,
    word_of_path,
    word_u,
    word_v,
)
from pseudosemilattice.graphs import L, R, delta, is_reduced
from pseudosemilattice.order import GraphPair, is_elementary
from pseudosemilattice.rewrite import meet, reduce, theta, words_equal
from pseudosemilattice.terms import parse_term, print_term

p = parse_term
GRID = list(all_indices((2, 3, 4), 3))
I211 = FamilyIndex(2, 1, 1)

indices = st.builds(
    lambda n, k, i, d: FamilyIndex(n, k, (i % (2 * n)) + 1, d),
    st.integers(2, 4), st.integers(1, 3), st.integers(0, 7), st.booleans(),
)


def diag(n):
    return {(f"x{q}", f"x{q}") for q in range(1, 2 * n + 1)}


def test_d_content_examples():
    cycle = {("x1", "x2"), ("x3", "x2"), ("x3", "x4"), ("x1", "x4")}
    assert d_content(2, False) == cycle | diag(2)
    assert d_content(2, True) == {(b, a) for a, b in cycle} | diag(2)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_d_content_size(n):
    assert len(d_content(n, False)) == 4 * n


def test_d_content_needs_n_at_least_two():
    with pytest.raises(BadParam):
        d_content(1, False)


def test_alpha_211_is_the_five_vertex_path():
    g = alpha(I211)
    assert [g.label(v) for v in range(5)] == ["x1", "x2", "x3", "x4", "x1"]
    assert [g.side(v) for v in range(5)] == [L, R, L, R, L]
    assert (g.iota, g.tau) == (0, 1)
    assert all(g.degree(v) <= 2 for v in g.ids)


def test_beta_211_hangs_x4_on_the_first_vertex():
    b = beta(I211)
    assert b.label(5) == "x4" and b.side(5) == R and b.adj[5] == (0,)
    assert b.induced(range(5), 0, 1) == alpha(I211)


def test_dual_roots_are_swapped():
    g = alpha(FamilyIndex(2, 1, 1, True))
    assert g.side(0) == R and (g.iota, g.tau) == (1, 0)


def test_index_errors():
    for args in [(1, 1, 1), (2, 0, 1), (2, 1, 5), (2, 1, 0)]:
        with pytest.raises(BadParam):
            FamilyIndex(*args)


def test_index_arithmetic():
    assert next_index(FamilyIndex(2, 1, 4)) == FamilyIndex(2, 2, 1)
    assert prev_index(FamilyIndex(2, 2, 1)) == FamilyIndex(2, 1, 4)
    assert index_for_size(2, 9) == FamilyIndex(2, 2, 1)
    with pytest.raises(BadParam):
        prev_index(FamilyIndex(2, 1, 1))


def test_word_examples():
    assert word_of_path(theta(p("x^y"))) == p("x^y")
    assert word_of_path(alpha(I211)) == p("x1^((x3^(x1^x4))^x2)")
    assert word_of_path(beta(I211)) == p("(x1^x4)^((x3^(x1^x4))^x2)")
    assert word_u(I211) == p("x1^((x3^(x1^x4))^x2)")
    assert print_term(word_u(I211)) == "x1^(x3^(x1^x4)^x2)"


def test_word_of_path_rejects_branching():
    with pytest.raises(DegreeTooHigh):
        word_of_path(theta(p("((x^y)^z)^w")))


def test_classify_the_basic_pair():
    idx, relabel = classify_elementary(pair(I211))
    assert idx == I211
    assert all(a == b for a, b in relabel.items())


def test_classify_a_cyclically_relabeled_pair():
    sigma = {"x1": "x2", "x2": "x3", "x3": "x4", "x4": "x1"}
    q = GraphPair(alpha(I211).relabel(sigma), beta(I211).relabel(sigma))
    idx, relabel = classify_elementary(q)
    assert idx == I211
    assert relabel == {b: a for a, b in sigma.items()}


@pytest.mark.parametrize("idx", [FamilyIndex(2, 1, 3, True), FamilyIndex(3, 2, 2)])
def test_classify_recovers_every_index(idx):
    assert classify_elementary(pair(idx))[0] == idx


def test_classify_rejects_branching_alpha():
    g = theta(p("((x^y)^z)^w"))
    with pytest.raises(UnsupportedShape):
        classify_elementary(GraphPair(g, g))


def test_geodesic_examples():
    g = alpha(I211)
    assert geodesic_count(g, 2, 2) == 1
    assert geodesic_count(g, 0, 4) == 5
    assert geodesic_count(alpha(FamilyIndex(2, 2, 1)), 0, 8) == 9
    with pytest.raises(NoSuchVertex):
        geodesic_count(g, 0, 99)


def test_meet_identity_examples():
    assert meet_identity(2, 1, 3) == (word_u(FamilyIndex(2, 1, 3)), word_v(FamilyIndex(2, 1, 2)))
    assert meet_identity(2, 2, 1) == (word_u(FamilyIndex(2, 2, 1)), word_v(FamilyIndex(2, 1, 4)))
    with pytest.raises(BadParam):
        meet_identity(2, 1, 2)
    with pytest.raises(OutOfRange):
        meet_identity(2, 1, 1)


# invariants over the grid

@pytest.mark.parametrize("idx", GRID, ids=str)
def test_family_pair_is_well_formed(idx):
    a, b = alpha(idx), beta(idx)
    assert is_reduced(a) and is_reduced(b)
    assert reduce(a) == a and reduce(b) == b
    assert len(b) == len(a) + 1 == idx.m + 1
    assert a.invariants().triple() == b.invariants().triple()
    assert a.invariants().c2 == d_content(idx.n, idx.dual)
    assert is_elementary(GraphPair(a, b))
    assert delta(word_u(idx)) == a and delta(word_v(idx)) == b
    assert not words_equal(word_u(idx), word_v(idx))


@given(indices)
def test_labels_are_periodic(idx):
    g = alpha(idx)
    two_n = 2 * idx.n
    assert all(g.label(q) == g.label(q + two_n) for q in range(idx.m - two_n))


@given(indices)
def test_equal_labels_sit_at_distances_one_mod_2n(idx):
    g = alpha(idx)
    for a, b in itertools.combinations(g.ids, 2):
        if g.label(a) == g.label(b) and not g.has_edge(a, b):
            assert geodesic_count(g, a, b) % (2 * idx.n) == 1


@given(indices)
def test_word_of_delta_roundtrip(idx):
    u = word_u(idx)
    assert word_of_path(delta(u)) == u


@pytest.mark.parametrize("idx", [i for i in all_indices((2, 3), 3, (False,)) if i.i % 2 == 1 and i.i > 1], ids=str)
def test_meet_law(idx):
    prev = FamilyIndex(idx.n, idx.k, idx.i - 1)
    assert meet(alpha(idx), beta(prev)) == beta(idx)


@pytest.mark.parametrize("idx", [FamilyIndex(n, k, 1) for n in (2, 3) for k in (2, 3)], ids=str)
def test_meet_law_across_the_rollover(idx):
    assert meet(alpha(idx), beta(prev_index(idx))) == beta(idx)
