"""Decision procedures for free pseudosemilattices and the varieties cut out by
the zig-zag identity families."""

from .errors import PseudosemilatticeError
from .family import FamilyIndex, alpha, beta, word_u, word_v
from .graphs import BiTree, canonical_key, delta, join
from .order import GraphPair, covers, is_elementary, leq
from .rewrite import apply_endo, meet, reduce, theta, words_equal
from .terms import Leaf, Meet, parse_term, print_term
from .varieties import PairId, Relation, VarietyId, compare, pair_consequence

__all__ = [
    "BiTree", "FamilyIndex", "GraphPair", "Leaf", "Meet", "PairId", "PseudosemilatticeError",
    "Relation", "VarietyId", "alpha", "apply_endo", "beta", "canonical_key", "compare", "covers",
    "delta", "is_elementary", "join", "leq", "meet", "pair_consequence", "parse_term",
    "print_term", "reduce", "theta", "word_u", "word_v", "words_equal",
]
