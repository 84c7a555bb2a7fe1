"""Words of the absolutely free binary algebra over a set of letters.

A term is either a :class:`Leaf` carrying a letter or a :class:`Meet` of two
terms.  The surface syntax uses ``^`` for the operation, left-associative::

    >>> print_term(parse_term("a^(b^c)^d"))
    'a^(b^c)^d'

Subterm occurrences are addressed by root-to-leaf paths over ``"L"``/``"R"``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence, Union

from .errors import BadParam, TermSyntaxError

LETTER_RE = re.compile(r"[a-z][a-z0-9_]*")


def is_letter(text: str) -> bool:
    return LETTER_RE.fullmatch(text) is not None


def letter_sort_key(letter: str) -> tuple:
    """Sort key that orders numeric runs by value, so ``x2 < x10``."""
    return tuple(int(p) if p.isdigit() else p for p in re.split(r"(\d+)", letter) if p)


def sorted_letters(letters) -> list[str]:
    return sorted(letters, key=letter_sort_key)


@dataclass(frozen=True)
class Leaf:
    letter: str

    def __post_init__(self):
        if not is_letter(self.letter):
            raise BadParam(f"invalid letter {self.letter!r}")

    def __xor__(self, other: Term) -> Meet:
        return Meet(self, other)

    def __str__(self) -> str:
        return self.letter


@dataclass(frozen=True)
class Meet:
    left: Term
    right: Term

    def __xor__(self, other: Term) -> Meet:
        return Meet(self, other)

    def __str__(self) -> str:
        return print_term(self)


Term = Union[Leaf, Meet]
Substitution = Mapping[str, Term]


def letter(name: str) -> Leaf:
    return Leaf(name)


def letters(names: str) -> list[Leaf]:
    """``letters("x y z")`` -> three leaves."""
    return [Leaf(n) for n in names.split()]


# -- parsing and printing ----------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:([a-z][a-z0-9_]*)|(\^)|(\()|(\)))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        kind = ("letter", "meet", "lparen", "rparen")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    return tokens


def parse_term(text: str) -> Term:
    """Parse the ``^``-syntax; ``^`` associates to the left."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else ("end", "", len(text))

    def expr() -> Term:
        nonlocal pos
        t = atom()
        while peek()[0] == "meet":
            pos += 1
            t = Meet(t, atom())
        return t

    def atom() -> Term:
        nonlocal pos
        kind, value, at = peek()
        if kind == "letter":
            pos += 1
            return Leaf(value)
        if kind == "lparen":
            pos += 1
            t = expr()
            kind, _, at = peek()
            if kind != "rparen":
                raise TermSyntaxError("expected ')'", at)
            pos += 1
            return t
        if kind == "end":
            raise TermSyntaxError("unexpected end of input", at)
        raise TermSyntaxError(f"unexpected {value!r}", at)

    result = expr()
    if pos != len(tokens):
        raise TermSyntaxError(f"unexpected {tokens[pos][1]!r}", tokens[pos][2])
    return result


def print_term(t: Term) -> str:
    if isinstance(t, Leaf):
        return t.letter
    right = print_term(t.right)
    if isinstance(t.right, Meet):
        right = f"({right})"
    return f"{print_term(t.left)}^{right}"


# -- structure ---------------------------------------------------------------

def leaves(t: Term) -> list[tuple[str, str]]:
    """Leaves in left-to-right order as ``(path, letter)`` pairs."""
    out = []
    stack: list[tuple[Term, str]] = [(t, "")]
    while stack:
        node, path = stack.pop()
        if isinstance(node, Leaf):
            out.append((path, node.letter))
        else:
            stack.append((node.right, path + "R"))
            stack.append((node.left, path + "L"))
    return out


def size(t: Term) -> int:
    """Number of leaves."""
    return len(leaves(t))


def subterms(t: Term) -> Iterator[tuple[str, Term]]:
    """All subterm occurrences in pre-order, with their paths."""
    stack: list[tuple[Term, str]] = [(t, "")]
    while stack:
        node, path = stack.pop()
        yield path, node
        if isinstance(node, Meet):
            stack.append((node.right, path + "R"))
            stack.append((node.left, path + "L"))


def subterm_at(t: Term, path: str) -> Term:
    for step in path:
        if not isinstance(t, Meet):
            raise KeyError(path)
        t = t.left if step == "L" else t.right
    return t


def replace_at(t: Term, path: str, new: Term) -> Term:
    if not path:
        return new
    if not isinstance(t, Meet):
        raise KeyError(path)
    if path[0] == "L":
        return Meet(replace_at(t.left, path[1:], new), t.right)
    return Meet(t.left, replace_at(t.right, path[1:], new))


def mirror(t: Term) -> Term:
    """Left-right dual: reverse the order of every product."""
    if isinstance(t, Leaf):
        return t
    return Meet(mirror(t.right), mirror(t.left))


# -- invariants --------------------------------------------------------------

@dataclass(frozen=True)
class Invariants:
    l: str
    r: str
    c: frozenset
    c2: frozenset
    cl: frozenset
    cr: frozenset

    def triple(self) -> tuple:
        return (self.l, self.c2, self.r)


def leftmost(t: Term) -> str:
    while isinstance(t, Meet):
        t = t.left
    return t.letter


def rightmost(t: Term) -> str:
    while isinstance(t, Meet):
        t = t.right
    return t.letter


def content(t: Term) -> frozenset:
    return frozenset(x for _, x in leaves(t))


def two_content(t: Term) -> frozenset:
    pairs = set()
    for _, node in subterms(t):
        if isinstance(node, Leaf):
            pairs.add((node.letter, node.letter))
        else:
            pairs.add((leftmost(node.left), rightmost(node.right)))
    return frozenset(pairs)


def invariants(t: Term) -> Invariants:
    cl, cr = set(), set()
    for path, x in leaves(t):
        if path:
            (cl if path[-1] == "L" else cr).add(x)
    return Invariants(
        l=leftmost(t),
        r=rightmost(t),
        c=content(t),
        c2=two_content(t),
        cl=frozenset(cl),
        cr=frozenset(cr),
    )


# -- substitutions -----------------------------------------------------------

def substitute(t: Term, s: Substitution) -> Term:
    if isinstance(t, Leaf):
        return s.get(t.letter, t)
    return Meet(substitute(t.left, s), substitute(t.right, s))


def compose(first: Substitution, then: Substitution) -> dict[str, Term]:
    """The substitution ``x -> substitute(first(x), then)``."""
    out = {x: substitute(img, then) for x, img in first.items()}
    for y, img in then.items():
        out.setdefault(y, img)
    return out


def parse_substitution(spec: str) -> dict[str, Term]:
    """Parse ``"x=a^b, y=c"`` into a substitution."""
    out: dict[str, Term] = {}
    for part in filter(None, (p.strip() for p in spec.split(","))):
        name, sep, image = part.partition("=")
        name = name.strip()
        if not sep or not is_letter(name):
            raise TermSyntaxError(f"bad binding {part!r}", spec.find(part))
        out[name] = parse_term(image)
    return out


def match(pattern: Term, t: Term) -> Optional[dict[str, Term]]:
    """First-order matching: a substitution ``s`` with ``substitute(pattern, s) == t``."""
    binding: dict[str, Term] = {}
    stack = [(pattern, t)]
    while stack:
        p, u = stack.pop()
        if isinstance(p, Leaf):
            bound = binding.setdefault(p.letter, u)
            if bound != u:
                return None
        elif isinstance(u, Meet):
            stack.append((p.right, u.right))
            stack.append((p.left, u.left))
        else:
            return None
    return binding


def random_term(rng: random.Random, n_leaves: int, alphabet: Sequence[str]) -> Term:
    """Uniform split of ``n_leaves`` into a random binary shape with random letters."""
    if n_leaves < 1:
        raise BadParam("a term needs at least one leaf")
    if n_leaves == 1:
        return Leaf(rng.choice(alphabet))
    k = rng.randint(1, n_leaves - 1)
    return Meet(random_term(rng, k, alphabet), random_term(rng, n_leaves - k, alphabet))
