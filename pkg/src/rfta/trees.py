"""Finite ranked trees: term parsing, node addressing, labeled paths, enumeration.

Positions are 1-based direction tuples; the root is ``()``.  A labeled path
is the alternating word of labels and directions from the root down to a
leaf, ending with the leaf's rank-0 label.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .alphabet import RankedAlphabet, Token, valid_name
from .errors import AlphabetError, AlphabetMismatch, ParseError

Position = tuple[int, ...]
PathWord = tuple[Token, ...]


@dataclass(frozen=True)
class Tree:
    """Immutable ranked term: a label and an ordered tuple of subtrees."""

    label: str
    children: tuple["Tree", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def __str__(self):
        return format_tree(self)

    def __repr__(self):
        return f"Tree({format_tree(self)!r})"


def node_count(t: Tree) -> int:
    return 1 + sum(node_count(c) for c in t.children)


def height(t: Tree) -> int:
    """Edges on a longest root-to-leaf path; a single node has height 0."""
    if not t.children:
        return 0
    return 1 + max(height(c) for c in t.children)


def dom(t: Tree) -> frozenset[Position]:
    """All node positions of ``t``."""
    out = {()}
    for i, child in enumerate(t.children, start=1):
        out.update((i,) + p for p in dom(child))
    return frozenset(out)


def fr(t: Tree) -> frozenset[Position]:
    """Leaf positions."""
    if not t.children:
        return frozenset({()})
    out = set()
    for i, child in enumerate(t.children, start=1):
        out.update((i,) + p for p in fr(child))
    return frozenset(out)


def fr_plus(t: Tree) -> frozenset[Position]:
    """Outer-frontier positions: the (nonexistent) first child under each leaf."""
    return frozenset(p + (1,) for p in fr(t))


def dom_plus(t: Tree) -> frozenset[Position]:
    return dom(t) | fr_plus(t)


def subtree_at(t: Tree, pos: Position) -> Tree:
    node = t
    for d in pos:
        node = node.children[d - 1]
    return node


def check_tree(t: Tree, alphabet: RankedAlphabet):
    """Raise AlphabetMismatch unless every node's arity matches its symbol's rank."""
    if t.label not in alphabet:
        raise AlphabetMismatch(f"symbol {t.label!r} not in alphabet")
    if len(t.children) != alphabet.rank(t.label):
        raise AlphabetMismatch(
            f"symbol {t.label!r} has rank {alphabet.rank(t.label)}, "
            f"node has {len(t.children)} children"
        )
    for child in t.children:
        check_tree(child, alphabet)


def infer_alphabet(trees) -> RankedAlphabet:
    """Ranked alphabet of all symbols occurring in ``trees`` (first-seen order)."""
    ranks: dict[str, int] = {}

    def visit(t: Tree):
        r = len(t.children)
        if ranks.setdefault(t.label, r) != r:
            raise AlphabetError(f"symbol {t.label!r} used with ranks {ranks[t.label]} and {r}")
        for c in t.children:
            visit(c)

    for t in trees:
        visit(t)
    return RankedAlphabet(tuple(ranks.items()))


# ---------------------------------------------------------------------------
# term syntax:  tree := sym | sym '(' tree (',' tree)* ')'


def format_tree(t: Tree) -> str:
    if not t.children:
        return t.label
    return f"{t.label}({','.join(format_tree(c) for c in t.children)})"


print_tree = format_tree


def parse_tree(text: str, alphabet) -> Tree:
    """Parse a term over ``alphabet``; rejects unknown symbols and arity errors."""
    alphabet = RankedAlphabet.of(alphabet)
    tokens = _lex_term(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else ("end", "", len(text) + 1)

    def node() -> Tree:
        nonlocal pos
        kind, value, at = peek()
        if kind != "name":
            raise ParseError(f"expected a symbol, got {value or 'end of input'!r}", at)
        pos += 1
        if value not in alphabet:
            raise ParseError(f"unknown symbol {value!r}", at)
        children = []
        if peek()[0] == "(":
            pos += 1
            children.append(node())
            while peek()[0] == ",":
                pos += 1
                children.append(node())
            kind2, value2, at2 = peek()
            if kind2 != ")":
                raise ParseError(f"expected ')' or ',', got {value2 or 'end of input'!r}", at2)
            pos += 1
        rank = alphabet.rank(value)
        if len(children) != rank:
            raise ParseError(
                f"symbol {value!r} has rank {rank} but got {len(children)} children", at
            )
        return Tree(value, tuple(children))

    result = node()
    kind, value, at = peek()
    if kind != "end":
        raise ParseError(f"unexpected trailing input {value!r}", at)
    return result


def _lex_term(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "(),":
            tokens.append((ch, ch, i + 1))
            i += 1
        elif ch.isalnum() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            name = text[i:j]
            if not valid_name(name):
                raise ParseError(f"bad symbol name {name!r}", i + 1)
            tokens.append(("name", name, i + 1))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", i + 1)
    return tokens


# ---------------------------------------------------------------------------
# labeled paths


def pot_tree(t: Tree) -> frozenset[PathWord]:
    """The set of labeled root-to-leaf paths of ``t``, one per leaf."""
    if not t.children:
        return frozenset({(t.label,)})
    words = set()
    for d, child in enumerate(t.children, start=1):
        for w in pot_tree(child):
            words.add((t.label, d) + w)
    return frozenset(words)


def check_path_word(word: PathWord, alphabet: RankedAlphabet):
    """Validate label/direction alternation, direction bounds, rank-0 ending."""
    alphabet = RankedAlphabet.of(alphabet)
    if len(word) % 2 != 1:
        raise ParseError("path word must alternate label/direction and end with a label")
    for i, tok in enumerate(word):
        if i % 2 == 0:
            if not isinstance(tok, str) or tok not in alphabet:
                raise ParseError(f"unknown symbol {tok!r} in path word")
        else:
            prev = word[i - 1]
            if not isinstance(tok, int) or not 1 <= tok <= alphabet.rank(prev):
                raise ParseError(f"direction {tok!r} exceeds rank of {prev!r}")
    last = word[-1]
    if alphabet.rank(last) != 0:
        raise ParseError(f"path word must end with a rank-0 symbol, got {last!r}")


def parse_path_word(text: str, alphabet) -> PathWord:
    """Parse 'a 1 b 2 d'; the compact 'a1b2d' form needs single-char symbol names."""
    alphabet = RankedAlphabet.of(alphabet)
    text = text.strip()
    if not text:
        raise ParseError("empty path word")
    if any(ch.isspace() for ch in text):
        parts = text.split()
    else:
        if len(text) > 1 and not all(len(n) == 1 for n in alphabet.names):
            raise ParseError(
                "compact path words need single-character symbol names; "
                "use whitespace-separated tokens"
            )
        parts = []
        i = 0
        while i < len(text):
            if text[i].isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                parts.append(text[i:j])
                i = j
            else:
                parts.append(text[i])
                i += 1
    word = tuple(int(p) if p.isdigit() else p for p in parts)
    check_path_word(word, alphabet)
    return word


def format_path_word(word: PathWord) -> str:
    """Compact form when all symbols are single characters, else spaced tokens."""
    if all(len(tok) == 1 for tok in word if isinstance(tok, str)):
        return "".join(str(tok) for tok in word)
    return " ".join(str(tok) for tok in word)


# ---------------------------------------------------------------------------
# exhaustive enumeration (the brute-force oracle backbone)


def enumerate_trees(alphabet, max_nodes: int) -> list[Tree]:
    """All trees with at most ``max_nodes`` nodes, ordered by node count and
    then lexicographically by preorder labels (declaration order)."""
    if max_nodes < 1:
        raise ValueError("max_nodes must be >= 1")
    alphabet = RankedAlphabet.of(alphabet)
    out = []
    for n in range(1, max_nodes + 1):
        out.extend(trees_of_size(alphabet, n))
    return out


def count_trees_of_size(alphabet, n: int) -> int:
    return _count_trees(RankedAlphabet.of(alphabet), n)


def trees_of_size(alphabet, n: int) -> tuple[Tree, ...]:
    """All trees with exactly ``n`` nodes, lexicographic by preorder labels."""
    return _trees_of_size(RankedAlphabet.of(alphabet), n)


@lru_cache(maxsize=None)
def _trees_of_size(alphabet: RankedAlphabet, n: int) -> tuple[Tree, ...]:
    if n < 1:
        return ()
    found = []
    for name, rank in alphabet.symbols:
        if rank == 0:
            if n == 1:
                found.append(Tree(name))
        elif n >= rank + 1:
            for parts in _compositions(n - 1, rank):
                for kids in itertools.product(*(_trees_of_size(alphabet, p) for p in parts)):
                    found.append(Tree(name, kids))
    index = {name: i for i, (name, _) in enumerate(alphabet.symbols)}
    found.sort(key=lambda t: _preorder_key(t, index))
    return tuple(found)


@lru_cache(maxsize=None)
def _count_trees(alphabet: RankedAlphabet, n: int) -> int:
    if n < 1:
        return 0
    total = 0
    for _, rank in alphabet.symbols:
        if rank == 0:
            total += 1 if n == 1 else 0
        elif n >= rank + 1:
            for parts in _compositions(n - 1, rank):
                prod = 1
                for p in parts:
                    prod *= _count_trees(alphabet, p)
                total += prod
    return total


def _compositions(total: int, k: int):
    """Ordered k-tuples of positive integers summing to ``total``."""
    if k == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - k + 2):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


def _preorder_key(t: Tree, index: dict) -> tuple[int, ...]:
    out = []
    stack = [t]
    while stack:
        node = stack.pop()
        out.append(index[node.label])
        stack.extend(reversed(node.children))
    return tuple(out)
