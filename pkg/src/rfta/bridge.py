"""The bridge between regular tree languages and regular path languages.

A tree language determines its set of labeled root-to-leaf paths; a path
language determines the largest tree language whose paths all lie in it.
A regular tree language is recognizable top-down deterministically exactly
when that round trip is the identity, which this module decides, and a
given tuple of candidate path languages spans a Boolean combination for a
tree language exactly when the induced sign-vector cells are homogeneous,
which this module verifies or refutes with a witness pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .bottomup import (
    BottomUpTA,
    _bottom_up_closure,
    _build_min_tree,
    _min_costs,
    _normalize,
    _sorted_rules,
    equiv_bu,
    productive_states,
)
from .errors import AlphabetMismatch, ResourceLimit
from .topdown import DTDA, dtda_to_bottomup
from .trees import Tree, format_tree, pot_tree
from .wordauto import (
    WordAutomaton,
    accepts_word,
    determinize_complete,
    minimize_dfa,
)


def pot_language(a: BottomUpTA) -> WordAutomaton:
    """Path automaton for the labeled paths of all trees in ``a``'s language.

    Reads the automaton top-down: walk states carry the bottom-up value at
    the current node, symbol reads move into an intermediate child-tuple
    state, direction reads descend into one component provided all off-path
    components are realizable (precomputed fixpoint).
    """
    productive = productive_states(a)
    sidx = {q: i for i, q in enumerate(a.states)}
    trans: dict[tuple, dict] = {}

    def edge(src, token, dst):
        trans.setdefault(src, {}).setdefault(token, []).append(dst)

    for (sym, children), results in _sorted_rules(a):
        if not children:
            for q in sorted(results, key=sidx.get):
                edge(("q", q), sym, ("acc",))
        else:
            middle = ("u", children)
            for q in sorted(results, key=sidx.get):
                edge(("q", q), sym, middle)
            for d in range(1, len(children) + 1):
                if all(children[j] in productive for j in range(len(children)) if j != d - 1):
                    edge(middle, d, ("q", children[d - 1]))

    start = [("q", q) for q in sorted(a.final, key=sidx.get)]
    order = list(start)
    index = {s: i for i, s in enumerate(order)}
    i = 0
    while i < len(order):
        src = order[i]
        i += 1
        for token in a.alphabet.gamma:
            for dst in trans.get(src, {}).get(token, []):
                if dst not in index:
                    index[dst] = len(order)
                    order.append(dst)
    names = {s: f"s{i}" for s, i in index.items()}
    transitions = {}
    for src in order:
        for token, dsts in trans.get(src, {}).items():
            transitions[(names[src], token)] = frozenset(names[d] for d in dsts)
    states = tuple(names[s] for s in order)
    accepting = frozenset({names[("acc",)]}) if ("acc",) in index else frozenset()
    initial = frozenset(names[s] for s in start)
    return WordAutomaton(states, initial, accepting, transitions, alphabet=a.alphabet)


def tfp_dtda(p: WordAutomaton) -> DTDA:
    """Top-down automaton for the trees all of whose paths lie in ``p``.

    The word automaton is determinized and completed; its states become the
    tree automaton's states, a symbol read followed by each direction read
    gives the successor tuple, and the word automaton's accepting states
    are final, so a run accepts exactly when every root-to-leaf path is in
    the path language.
    """
    if p.alphabet is None:
        raise AlphabetMismatch("path automaton carries no ranked alphabet")
    d = p if p.deterministic_complete else determinize_complete(p)
    alpha = d.alphabet
    delta = {}
    for q in d.states:
        for sym, rank in alpha.symbols:
            after = d.successor(q, sym)
            if rank == 0:
                delta[(q, sym)] = (after,)
            else:
                delta[(q, sym)] = tuple(d.successor(after, direction) for direction in range(1, rank + 1))
    (init,) = d.initial
    return DTDA(alpha, d.states, init, delta, d.accepting)


@dataclass(frozen=True)
class RecognizabilityVerdict:
    """Outcome of the top-down recognizability decision for a regular tree
    language: the language's path automaton, the candidate top-down
    automaton built from it, and a counterexample tree accepted by the
    candidate but not in the language whenever the decision is negative."""

    recognizable: bool
    path_language: WordAutomaton
    candidate: DTDA
    counterexample: Tree | None

    def to_kv(self):
        out = [("recognizable", "yes" if self.recognizable else "no")]
        if self.counterexample is not None:
            out.append(("counterexample", format_tree(self.counterexample)))
        out.append(("path_dfa_states", str(len(self.path_language.states))))
        out.append(("candidate_states", str(len(self.candidate.states))))
        return out


def is_dtda_recognizable(a: BottomUpTA) -> RecognizabilityVerdict:
    """Decide whether the language is recognizable by a deterministic
    top-down automaton: it is exactly when trees-from-paths of its path
    language gives the language back."""
    paths = minimize_dfa(determinize_complete(pot_language(a)))
    candidate = tfp_dtda(paths)
    equal, counterexample = equiv_bu(a, dtda_to_bottomup(candidate))
    return RecognizabilityVerdict(equal, paths, candidate, counterexample)


@dataclass(frozen=True)
class DNFFormula:
    """Disjunctive normal form over path-language atoms: a tree matches a
    clause when, per atom, path containment holds exactly where the clause
    carries '+'."""

    k: int
    clauses: tuple[str, ...]
    atoms: tuple[WordAutomaton, ...]

    def sign_vector(self, t: Tree) -> str:
        paths = pot_tree(t)
        return "".join(
            "+" if all(accepts_word(atom, w) for w in paths) else "-" for atom in self.atoms
        )

    def evaluate(self, t: Tree) -> bool:
        return self.sign_vector(t) in set(self.clauses)

    def to_kv(self):
        return [
            ("formula", "found"),
            ("k", str(self.k)),
            ("clauses", " ".join(self.clauses) if self.clauses else "(none)"),
        ]


@dataclass(frozen=True)
class BoolCombinationVerdict:
    """Either a DNF over the candidate path languages that defines the tree
    language, or a witness pair (in the language / outside it) with equal
    sign vectors showing no Boolean combination of these candidates works."""

    formula: DNFFormula | None
    witness_in: Tree | None = None
    witness_out: Tree | None = None

    def to_kv(self):
        if self.formula is not None:
            return self.formula.to_kv()
        return [
            ("formula", "none"),
            ("witness_in", format_tree(self.witness_in)),
            ("witness_out", format_tree(self.witness_out)),
        ]


def verify_bool_combination(
    a: BottomUpTA, candidates, max_arity: int = 12
) -> BoolCombinationVerdict:
    """Check whether the language is a Boolean combination of the
    trees-from-paths languages of the given path automata.

    Every sign vector over the candidates cuts a cell; the combination
    exists exactly when no cell meets both the language and its complement.
    On success the returned DNF keeps the cells that meet the language; on
    failure a minimal witness pair from an inhomogeneous cell is reported.
    """
    candidates = tuple(candidates)
    k = len(candidates)
    if k > max_arity:
        raise ResourceLimit(f"{k} candidate path languages exceed the cap of {max_arity}")
    for p in candidates:
        if p.alphabet is None:
            raise AlphabetMismatch("candidate path automaton carries no ranked alphabet")
        p.alphabet.require_same(a.alphabet)
    atoms = tuple(minimize_dfa(determinize_complete(p)) for p in candidates)
    parts = [dtda_to_bottomup(tfp_dtda(p)) for p in atoms] + [_normalize(a)]

    def leaf_image(sym):
        return tuple(part.step(sym, ()) for part in parts)

    def combine(sym, tuples):
        return tuple(
            part.step(sym, tuple(tp[i] for tp in tuples)) for i, part in enumerate(parts)
        )

    objs, trans = _bottom_up_closure(a.alphabet, leaf_image, combine)
    bits = [
        tuple(state in parts[i].final for i, state in enumerate(obj)) for obj in objs
    ]

    rule_items = sorted(trans.items(), key=lambda kv: (a.alphabet.symbol_index(kv[0][0]), kv[0][1]))
    cost = pick = None
    clauses = []
    worst = None
    for vector in itertools.product("+-", repeat=k):
        vector = "".join(vector)
        matching = [
            i for i, b in enumerate(bits) if all((vector[j] == "+") == b[j] for j in range(k))
        ]
        inside = [i for i in matching if bits[i][k]]
        outside = [i for i in matching if not bits[i][k]]
        if inside:
            clauses.append(vector)
        if inside and outside:
            if cost is None:
                cost, pick = _min_costs(rule_items)
            best_in = min(inside, key=lambda i: (cost[i], i))
            best_out = min(outside, key=lambda i: (cost[i], i))
            score = (cost[best_in] + cost[best_out], vector)
            if worst is None or score < worst[0]:
                worst = (score, best_in, best_out)
    if worst is not None:
        _, best_in, best_out = worst
        return BoolCombinationVerdict(
            None, _build_min_tree(pick, best_in), _build_min_tree(pick, best_out)
        )
    return BoolCombinationVerdict(DNFFormula(k, tuple(clauses), atoms))
