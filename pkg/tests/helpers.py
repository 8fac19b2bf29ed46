"""Seeded random instance generators and brute-force oracles.

The oracles stay independent of the constructions they check: membership is
evaluated straight from the defining run semantics, and languages are
compared by exhaustive enumeration of small trees and words.
"""

import itertools
import random

from rfta import (
    BottomUpTA,
    DTDA,
    DTDASet,
    RankedAlphabet,
    WordAutomaton,
    accept_dtda,
    accept_dtda_set,
    accepts_bu,
    accepts_word,
    enumerate_trees,
)

# ---------------------------------------------------------------------------
# random instances


def rand_alphabet(rng: random.Random) -> RankedAlphabet:
    pairs = [("f", 2), ("g", 2)][: rng.randint(1, 2)]
    pairs += [("a", 0), ("b", 0), ("c", 0)][: rng.randint(1, 3)]
    return RankedAlphabet.of(pairs)


def rand_nta(rng: random.Random, alphabet, max_states=4) -> BottomUpTA:
    """Random nondeterministic bottom-up automaton; rules may be missing."""
    n = rng.randint(1, max_states)
    states = tuple(f"q{i}" for i in range(n))
    rules = {}
    for sym, rank in alphabet.symbols:
        for combo in itertools.product(states, repeat=rank):
            width = rng.choice([0, 1, 1, 1, 2])
            if width:
                rules[(sym, combo)] = frozenset(rng.sample(states, min(width, n)))
    final = frozenset(q for q in states if rng.random() < 0.4)
    return BottomUpTA(alphabet, states, rules, final)


def rand_dbuta(rng: random.Random, alphabet, max_states=4) -> BottomUpTA:
    """Random deterministic complete bottom-up automaton."""
    n = rng.randint(1, max_states)
    states = tuple(f"q{i}" for i in range(n))
    rules = {}
    for sym, rank in alphabet.symbols:
        for combo in itertools.product(states, repeat=rank):
            rules[(sym, combo)] = frozenset({rng.choice(states)})
    final = frozenset(q for q in states if rng.random() < 0.4)
    return BottomUpTA(alphabet, states, rules, final)


def _rand_core(rng: random.Random, alphabet, states):
    delta = {}
    for q in states:
        for sym, rank in alphabet.symbols:
            delta[(q, sym)] = tuple(rng.choice(states) for _ in range(max(rank, 1)))
    return delta


def rand_dtda(rng: random.Random, alphabet, max_states=4) -> DTDA:
    n = rng.randint(1, max_states)
    states = tuple(f"q{i}" for i in range(n))
    delta = _rand_core(rng, alphabet, states)
    final = frozenset(q for q in states if rng.random() < 0.5)
    return DTDA(alphabet, states, states[0], delta, final)


def rand_dtdaset(rng: random.Random, alphabet, max_states=4, member_p=0.3) -> DTDASet:
    n = rng.randint(1, max_states)
    states = tuple(f"q{i}" for i in range(n))
    delta = _rand_core(rng, alphabet, states)
    family = []
    for mask in range(1 << n):
        if rng.random() < member_p:
            family.append(frozenset(states[i] for i in range(n) if (mask >> i) & 1))
    return DTDASet(alphabet, states, states[0], delta, tuple(family))


def rand_word_nfa(rng: random.Random, alphabet, max_states=5) -> WordAutomaton:
    n = rng.randint(1, max_states)
    states = tuple(f"p{i}" for i in range(n))
    trans = {}
    for q in states:
        for tok in alphabet.gamma:
            width = rng.choice([0, 1, 1, 2])
            if width:
                trans[(q, tok)] = frozenset(rng.sample(states, min(width, n)))
    initial = frozenset(rng.sample(states, rng.randint(1, n)))
    accepting = frozenset(q for q in states if rng.random() < 0.4)
    return WordAutomaton(states, initial, accepting, trans, alphabet=alphabet)


# ---------------------------------------------------------------------------
# brute-force oracles


def nta_member(a: BottomUpTA, t) -> bool:
    """Membership straight from the run relation, memoized per subtree."""
    cache = {}

    def values(node):
        if node not in cache:
            child_values = [values(c) for c in node.children]
            out = set()
            for (sym, children), results in a.rules.items():
                if sym == node.label and all(
                    children[j] in child_values[j] for j in range(len(children))
                ):
                    out |= results
            cache[node] = frozenset(out)
        return cache[node]

    return bool(values(t) & a.final)


def lang_upto(a: BottomUpTA, max_nodes: int) -> frozenset:
    return frozenset(t for t in enumerate_trees(a.alphabet, max_nodes) if accepts_bu(a, t))


def set_lang_upto(a: DTDASet, max_nodes: int) -> frozenset:
    return frozenset(
        t for t in enumerate_trees(a.alphabet, max_nodes) if accept_dtda_set(a, t)[0]
    )


def dtda_lang_upto(a: DTDA, max_nodes: int) -> frozenset:
    return frozenset(t for t in enumerate_trees(a.alphabet, max_nodes) if accept_dtda(a, t))


def words_upto(tokens, max_len: int):
    for length in range(max_len + 1):
        yield from itertools.product(tokens, repeat=length)


def word_lang_upto(a: WordAutomaton, max_len: int) -> frozenset:
    return frozenset(w for w in words_upto(a.tokens, max_len) if accepts_word(a, w))
