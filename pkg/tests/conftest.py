from __future__ import annotations

import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pseudosemilattice.terms import Leaf, Meet

settings.register_profile(
    "default", deadline=None, max_examples=120, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ALPHABET = ["x", "y", "z", "w"]


def terms(alphabet=ALPHABET, max_leaves: int = 10):
    return st.recursive(
        st.sampled_from(alphabet).map(Leaf),
        lambda inner: st.builds(Meet, inner, inner),
        max_leaves=max_leaves,
    )


def compound_terms(alphabet=ALPHABET, max_leaves: int = 10):
    return st.builds(Meet, terms(alphabet, max_leaves // 2), terms(alphabet, max_leaves // 2))


def substitutions(alphabet=ALPHABET, max_leaves: int = 4):
    return st.dictionaries(st.sampled_from(alphabet), terms(alphabet, max_leaves), max_size=len(alphabet))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(module.RESULTS, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
