"""Right-comb refutations: languages beyond set acceptance.

Counting occurrences and comparing left-right order of leaves both escape
set acceptance.  On a long right-comb the spine states repeat periodically,
so moving a marked leaf by one period changes the language membership but
not the set of frontier states: the automaton cannot tell the trees apart.
"""

import random

from rfta import (
    DTDASet,
    RankedAlphabet,
    accept_frontier_check,
    accepts_bu,
    comb_refutation,
    enumerate_trees,
    t1_automaton,
    t1_frontier_check,
    t2_automaton,
    t2_frontier_check,
)

alpha = RankedAlphabet.of({"a": 2, "c": 0, "d": 0, "e": 0})

# A random 3-state automaton with set acceptance over the comb alphabet.
rng = random.Random(11)
states = ("q0", "q1", "q2")
delta = {}
for q in states:
    for sym, rank in alpha.symbols:
        delta[(q, sym)] = tuple(rng.choice(states) for _ in range(max(rank, 1)))
family = (frozenset({"q0"}), frozenset({"q0", "q2"}))
automaton = DTDASet(alpha, states, "q0", delta, family)

# t1: d occurs exactly once.  t2: d occurs left of e.
for target in ("t1", "t2"):
    print(comb_refutation(automaton, target))
    print()

# Both languages are still recognizable when acceptance reads the frontier
# state sequence with a word automaton instead of a set check.
for name, fcheck, fixture in (
    ("t1", t1_frontier_check(), t1_automaton()),
    ("t2", t2_frontier_check(), t2_automaton()),
):
    agree = all(
        accept_frontier_check(fcheck, t) == accepts_bu(fixture, t)
        for t in enumerate_trees(alpha, 7)
    )
    print(f"frontier-check recognizer for {name} agrees on all trees up to 7 nodes?", agree)
