import pytest

from pseudosemilattice.errors import BadParam
from pseudosemilattice.family import FamilyIndex, alpha, all_indices, beta
from pseudosemilattice.graphs import describe
from pseudosemilattice.proofs import (
    SELECTORS,
    collapse_endo,
    collapse_repaired,
    collapse_target,
    dichotomy_pool,
    dichotomy_samples,
    replay,
    step_collapse,
    step_collapse_literal,
    step_even_identify,
    step_forward,
    step_meet_law,
    step_reshift,
    step_switch,
    stepping_endo,
)
from pseudosemilattice.rewrite import apply_endo
from pseudosemilattice.terms import Leaf, Meet, two_content
from pseudosemilattice.family import d_content

GRID = list(all_indices((2, 3), 2))


def failures(checks):
    return [c.line() for c in checks if not c.ok]


def test_stepping_substitution_moves_one_letter():
    assert stepping_endo(2, 1) == {"x1": Meet(Leaf("x1"), Leaf("x2"))}
    assert stepping_endo(2, 2) == {"x2": Meet(Leaf("x3"), Leaf("x2"))}
    assert stepping_endo(2, 4) == {"x4": Meet(Leaf("x1"), Leaf("x4"))}
    assert stepping_endo(2, 1, dual=True) == {"x1": Meet(Leaf("x2"), Leaf("x1"))}


@pytest.mark.parametrize("idx", GRID, ids=str)
def test_forward_step(idx):
    assert not failures(step_forward(idx))


def test_forward_step_across_the_rollover():
    checks = step_forward(FamilyIndex(2, 1, 4))
    assert checks and all(c.ok for c in checks)
    assert "(2,2,1)" in checks[0].label


@pytest.mark.parametrize("idx", GRID, ids=str)
def test_switch_to_the_other_flavour(idx):
    assert not failures(step_switch(idx))


@pytest.mark.parametrize("idx", [i for i in GRID if not i.dual and i.i % 2 == 0], ids=str)
def test_even_positions_identify_the_flavours(idx):
    assert not failures(step_even_identify(idx))


def test_even_identification_rejects_odd_or_starred_input():
    with pytest.raises(BadParam):
        step_even_identify(FamilyIndex(2, 1, 1))
    with pytest.raises(BadParam):
        step_even_identify(FamilyIndex(2, 1, 2, True))


@pytest.mark.parametrize("idx", [i for i in GRID if not i.dual], ids=str)
def test_reshift(idx):
    assert not failures(step_reshift(idx))


@pytest.mark.parametrize("idx", [i for i in GRID if not i.dual and i.i % 2 and (i.i > 1 or i.k > 1)], ids=str)
def test_meet_law_replay(idx):
    assert not failures(step_meet_law(idx))


def test_meet_law_has_no_predecessor_at_the_start():
    with pytest.raises(BadParam):
        step_meet_law(FamilyIndex(2, 1, 1))


def test_collapse_substitution():
    assert collapse_endo(3, 2) == {"x1": Leaf("x1"), "x2": Leaf("x1"), "x3": Leaf("x1"),
                                   "x4": Leaf("x2"), "x5": Leaf("x3"), "x6": Leaf("x4")}
    assert collapse_target(FamilyIndex(3, 1, 1), 2) == FamilyIndex(2, 1, 1)
    assert collapse_target(FamilyIndex(3, 1, 5), 2) == FamilyIndex(2, 1, 3)


def test_literal_collapse_keeps_an_extra_thorn():
    idx = FamilyIndex(3, 1, 1)
    img = apply_endo(alpha(idx), collapse_endo(3, 2))
    target = alpha(collapse_target(idx, 2))
    # both roots end up labeled x1, so an essential thorn survives
    assert img.label(img.iota) == img.label(img.tau) == "x1"
    assert img.invariants().r == "x1" and target.invariants().r == "x2"
    assert len(img) == len(target) + 1, describe(img)
    assert not any(c.ok for c in step_collapse_literal(idx, 2))


@pytest.mark.parametrize("n, m", [(3, 2), (4, 2), (4, 3)])
@pytest.mark.parametrize("dual", [False, True])
def test_repaired_collapse(n, m, dual):
    for k in (1, 2):
        for i in range(1, 2 * n + 1):
            assert not failures(step_collapse(FamilyIndex(n, k, i, dual), m))


def test_repaired_collapse_on_beta():
    idx = FamilyIndex(4, 1, 3)
    assert collapse_repaired(beta(idx), idx, 2) == beta(collapse_target(idx, 2))


def test_dichotomy_pool_respects_the_content_bound():
    pool = dichotomy_pool(2)
    assert pool and all(two_content(t) <= d_content(2, True) for t in pool)


def test_dichotomy_samples_are_reproducible():
    first, draws = dichotomy_samples(40, seed=3)
    again, draws_again = dichotomy_samples(40, seed=3)
    assert [s.substitution for s in first] == [s.substitution for s in again]
    assert draws == draws_again >= 40
    assert all(s.ok for s in first)


def test_replay_reports_one_line_per_check():
    checks = replay("prop3.3", ns=(2,), max_k=1)
    assert len(checks) == 2 * 4 * 2
    assert all(c.line().startswith("PASS prop3.3: ") for c in checks)


def test_replay_rejects_unknown_selectors():
    with pytest.raises(BadParam):
        replay("nope")


def test_selectors_cover_every_suite():
    assert set(SELECTORS) == {"prop3.3", "prop3.5", "lemma3.6", "prop4.9", "prop5.1", "lemma4.4", "all"}
