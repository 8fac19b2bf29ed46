"""Finite word automata over path tokens.

These represent regular sets of labeled paths; the same class doubles as the
frontier checker, whose input tokens are tree-automaton state names.  All
operations are pure and return fresh automata with canonical state names
``s0, s1, ...`` in discovery order, so equal inputs give byte-equal outputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .alphabet import RankedAlphabet, Token
from .errors import AlphabetMismatch, NotDeterministic


@dataclass(frozen=True, eq=False)
class WordAutomaton:
    """Nondeterministic finite automaton over an explicit token tuple.

    ``deterministic_complete`` is derived at construction: a single initial
    state and exactly one successor per (state, token) pair.
    """

    states: tuple[str, ...]
    initial: frozenset[str]
    accepting: frozenset[str]
    transitions: dict[tuple[str, Token], frozenset[str]]
    tokens: tuple[Token, ...] | None = None
    alphabet: RankedAlphabet | None = None
    deterministic_complete: bool = field(init=False, default=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        if self.tokens is None:
            if self.alphabet is None:
                raise ValueError("need tokens or a ranked alphabet")
            object.__setattr__(self, "tokens", self.alphabet.gamma)
        else:
            object.__setattr__(self, "tokens", tuple(self.tokens))
        trans = {}
        for (p, tok), qs in dict(self.transitions).items():
            qs = frozenset({qs} if isinstance(qs, str) else qs)
            if not qs:
                continue
            if p not in self.states or not qs <= set(self.states):
                raise ValueError(f"transition {p!r} --{tok!r}--> {sorted(qs)} uses unknown states")
            if tok not in self.tokens:
                raise ValueError(f"transition on token {tok!r} outside the token alphabet")
            trans[(p, tok)] = qs
        object.__setattr__(self, "transitions", trans)
        if not self.initial <= set(self.states) or not self.accepting <= set(self.states):
            raise ValueError("initial/accepting states must be listed states")
        det = (
            len(self.initial) == 1
            and all(len(qs) == 1 for qs in trans.values())
            and len(trans) == len(self.states) * len(self.tokens)
        )
        object.__setattr__(self, "deterministic_complete", det)

    def __repr__(self):
        kind = "dfa" if self.deterministic_complete else "nfa"
        return f"<WordAutomaton {kind} {len(self.states)} states, {len(self.tokens)} tokens>"

    def successor(self, state: str, token: Token) -> str:
        """Single successor; only meaningful on deterministic-complete automata."""
        (q,) = self.transitions[(state, token)]
        return q


PathAutomaton = WordAutomaton


def _require_same_tokens(a: WordAutomaton, b: WordAutomaton):
    if set(a.tokens) != set(b.tokens):
        raise AlphabetMismatch("word automata over different token alphabets")
    if a.alphabet is not None and b.alphabet is not None:
        a.alphabet.require_same(b.alphabet)


def accepts_word(a: WordAutomaton, word) -> bool:
    current = set(a.initial)
    for tok in word:
        current = set().union(*(a.transitions.get((q, tok), frozenset()) for q in current)) if current else set()
    return bool(current & a.accepting)


def from_words(words, *, alphabet=None, tokens=None) -> WordAutomaton:
    """Automaton for a finite word set: one disjoint state chain per word."""
    if alphabet is not None:
        alphabet = RankedAlphabet.of(alphabet)
    states, initial, accepting, trans = [], set(), set(), {}
    for i, word in enumerate(words):
        chain = [f"w{i}_{j}" for j in range(len(word) + 1)]
        states.extend(chain)
        initial.add(chain[0])
        accepting.add(chain[-1])
        for j, tok in enumerate(word):
            trans[(chain[j], tok)] = frozenset({chain[j + 1]})
    if not states:
        states, initial = ["s0"], {"s0"}
    return WordAutomaton(tuple(states), initial, accepting, trans, tokens=tokens, alphabet=alphabet)


def all_paths_automaton(alphabet) -> WordAutomaton:
    """Complete DFA accepting exactly the well-formed path words over the alphabet."""
    alphabet = RankedAlphabet.of(alphabet)
    ranks = sorted({r for _, r in alphabet.symbols if r >= 1})
    states = ["want_sym", "done", "dead"] + [f"after{r}" for r in ranks]
    trans = {}
    for tok in alphabet.gamma:
        trans[("dead", tok)] = "dead"
        trans[("done", tok)] = "dead"
        if isinstance(tok, int):
            trans[("want_sym", tok)] = "dead"
            for r in ranks:
                trans[(f"after{r}", tok)] = "want_sym" if tok <= r else "dead"
        else:
            r = alphabet.rank(tok)
            trans[("want_sym", tok)] = "done" if r == 0 else f"after{r}"
            for rr in ranks:
                trans[(f"after{rr}", tok)] = "dead"
    return WordAutomaton(tuple(states), {"want_sym"}, {"done"}, trans, alphabet=alphabet)


def determinize_complete(a: WordAutomaton) -> WordAutomaton:
    """Subset construction over reachable subsets; the empty subset is the sink."""
    start = frozenset(a.initial)
    names = {start: "s0"}
    order = [start]
    trans = {}
    i = 0
    while i < len(order):
        subset = order[i]
        i += 1
        for tok in a.tokens:
            succ = frozenset().union(
                *(a.transitions.get((q, tok), frozenset()) for q in subset)
            ) if subset else frozenset()
            if succ not in names:
                names[succ] = f"s{len(names)}"
                order.append(succ)
            trans[(names[subset], tok)] = frozenset({names[succ]})
    states = tuple(names[s] for s in order)
    accepting = frozenset(names[s] for s in order if s & a.accepting)
    return WordAutomaton(states, {"s0"}, accepting, trans, tokens=a.tokens, alphabet=a.alphabet)


def _product(a: WordAutomaton, b: WordAutomaton, keep) -> WordAutomaton:
    da, db = determinize_complete(a), determinize_complete(b)
    (ia,) = da.initial
    (ib,) = db.initial
    names = {(ia, ib): "s0"}
    order = [(ia, ib)]
    trans = {}
    i = 0
    while i < len(order):
        pa, pb = order[i]
        i += 1
        for tok in da.tokens:
            pair = (da.successor(pa, tok), db.successor(pb, tok))
            if pair not in names:
                names[pair] = f"s{len(names)}"
                order.append(pair)
            trans[(names[(pa, pb)], tok)] = frozenset({names[pair]})
    accepting = frozenset(
        names[p] for p in order if keep(p[0] in da.accepting, p[1] in db.accepting)
    )
    states = tuple(names[p] for p in order)
    return WordAutomaton(states, {"s0"}, accepting, trans, tokens=da.tokens, alphabet=da.alphabet)


def bool_ops(a: WordAutomaton, b: WordAutomaton | None, op: str) -> WordAutomaton:
    """Language union/intersection/complement; complement takes one argument."""
    if op == "complement":
        if b is not None:
            raise ValueError("complement takes a single automaton")
        d = determinize_complete(a)
        return WordAutomaton(
            d.states, d.initial, frozenset(d.states) - d.accepting, d.transitions,
            tokens=d.tokens, alphabet=d.alphabet,
        )
    if b is None:
        raise ValueError(f"{op} needs two automata")
    _require_same_tokens(a, b)
    if op == "union":
        return _product(a, b, lambda x, y: x or y)
    if op == "intersection":
        return _product(a, b, lambda x, y: x and y)
    raise ValueError(f"unknown operation {op!r}")


def equiv_words(a: WordAutomaton, b: WordAutomaton):
    """Language equality; on failure also the shortest separating word
    (ties broken lexicographically in canonical token order)."""
    _require_same_tokens(a, b)
    da, db = determinize_complete(a), determinize_complete(b)
    (ia,) = da.initial
    (ib,) = db.initial
    queue = [((ia, ib), ())]
    seen = {(ia, ib)}
    i = 0
    while i < len(queue):
        (pa, pb), word = queue[i]
        i += 1
        if (pa in da.accepting) != (pb in db.accepting):
            return False, word
        for tok in da.tokens:
            pair = (da.successor(pa, tok), db.successor(pb, tok))
            if pair not in seen:
                seen.add(pair)
                queue.append((pair, word + (tok,)))
    return True, None


def minimize_dfa(a: WordAutomaton) -> WordAutomaton:
    """Minimal complete DFA via partition refinement.  Output blocks are
    named in order of their smallest original state index."""
    if not a.deterministic_complete:
        raise NotDeterministic("minimize_dfa needs a deterministic complete automaton")
    index = {q: i for i, q in enumerate(a.states)}
    (init,) = a.initial
    reachable = [init]
    seen = {init}
    i = 0
    while i < len(reachable):
        q = reachable[i]
        i += 1
        for tok in a.tokens:
            succ = a.successor(q, tok)
            if succ not in seen:
                seen.add(succ)
                reachable.append(succ)
    reachable.sort(key=index.get)

    block = {q: (q in a.accepting) for q in reachable}
    while True:
        sigs = {q: (block[q], tuple(block[a.successor(q, t)] for t in a.tokens)) for q in reachable}
        ids = {}
        new = {}
        for q in reachable:  # scan in original order: stable block ids
            new[q] = ids.setdefault(sigs[q], len(ids))
        if len(set(new.values())) == len(set(block.values())):
            block = new
            break
        block = new

    members: dict[int, list[str]] = {}
    for q in reachable:
        members.setdefault(block[q], []).append(q)
    ordered = sorted(members.values(), key=lambda qs: min(index[q] for q in qs))
    name = {}
    for i, qs in enumerate(ordered):
        for q in qs:
            name[q] = f"s{i}"
    trans = {}
    for qs in ordered:
        rep = qs[0]
        for tok in a.tokens:
            trans[(name[rep], tok)] = frozenset({name[a.successor(rep, tok)]})
    states = tuple(f"s{i}" for i in range(len(ordered)))
    accepting = frozenset(name[qs[0]] for qs in ordered if qs[0] in a.accepting)
    return WordAutomaton(states, {name[init]}, accepting, trans, tokens=a.tokens, alphabet=a.alphabet)
