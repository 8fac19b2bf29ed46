"""Bottom-up (frontier-to-root) tree automata and their decision toolbox.

The regular-language workhorse: membership, subset-construction
determinization, Boolean operations, emptiness with witness, equivalence
with counterexample, and Nerode minimization.  Constructions name fresh
states ``s0, s1, ...`` in a deterministic discovery order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .alphabet import RankedAlphabet
from .errors import NotDeterministic, ResourceLimit
from .trees import (
    Tree,
    check_tree,
    count_trees_of_size,
    infer_alphabet,
    parse_tree,
    trees_of_size,
)


@dataclass(frozen=True, eq=False)
class BottomUpTA:
    """Frontier-to-root tree automaton; deterministic when every rule has a
    unique result and the rule function is total."""

    alphabet: RankedAlphabet
    states: tuple[str, ...]
    rules: dict[tuple[str, tuple[str, ...]], frozenset[str]]
    final: frozenset[str]
    deterministic_complete: bool = field(init=False, default=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", RankedAlphabet.of(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "final", frozenset(self.final))
        known = set(self.states)
        rules = {}
        per_symbol = {name: 0 for name, _ in self.alphabet.symbols}
        for (sym, children), results in dict(self.rules).items():
            children = tuple(children)
            results = frozenset({results} if isinstance(results, str) else results)
            if sym not in self.alphabet:
                raise ValueError(f"rule on unknown symbol {sym!r}")
            if len(children) != self.alphabet.rank(sym):
                raise ValueError(f"rule {sym!r}{children} does not match rank")
            if not set(children) <= known or not results <= known:
                raise ValueError(f"rule {sym!r}{children} uses unknown states")
            if not results:
                continue
            rules[(sym, children)] = results
            per_symbol[sym] += 1
        object.__setattr__(self, "rules", rules)
        if not self.final <= known:
            raise ValueError("final states must be listed states")
        n = len(self.states)
        det = all(len(r) == 1 for r in rules.values()) and all(
            per_symbol[name] == n**rank for name, rank in self.alphabet.symbols
        )
        object.__setattr__(self, "deterministic_complete", det)

    def __repr__(self):
        kind = "det" if self.deterministic_complete else "nondet"
        return f"<BottomUpTA {kind} {len(self.states)} states, {len(self.rules)} rules>"

    def step(self, sym: str, children: tuple[str, ...]) -> str:
        (q,) = self.rules[(sym, children)]
        return q


def _state_index(a: BottomUpTA) -> dict[str, int]:
    return {q: i for i, q in enumerate(a.states)}


def _sorted_rules(a: BottomUpTA):
    sidx = _state_index(a)
    return sorted(
        a.rules.items(),
        key=lambda kv: (a.alphabet.symbol_index(kv[0][0]), tuple(sidx[c] for c in kv[0][1])),
    )


def value_set(a: BottomUpTA, t: Tree) -> frozenset[str]:
    """All states the (possibly nondeterministic) automaton can reach on ``t``."""
    child_sets = [value_set(a, c) for c in t.children]
    out = set()
    for (sym, children), results in a.rules.items():
        if sym == t.label and all(children[j] in child_sets[j] for j in range(len(children))):
            out |= results
    return frozenset(out)


def run_bottomup(a: BottomUpTA, t: Tree) -> tuple[str, bool]:
    """State reached on ``t`` and whether it is accepting."""
    if not a.deterministic_complete:
        raise NotDeterministic("run_bottomup needs a deterministic complete automaton")
    check_tree(t, a.alphabet)

    def walk(node: Tree) -> str:
        return a.step(node.label, tuple(walk(c) for c in node.children))

    q = walk(t)
    return q, q in a.final


def accepts_bu(a: BottomUpTA, t: Tree) -> bool:
    check_tree(t, a.alphabet)
    if a.deterministic_complete:
        return run_bottomup(a, t)[1]
    return bool(value_set(a, t) & a.final)


# ---------------------------------------------------------------------------
# generic bottom-up closure: saturate objects under the alphabet's rules


def _new_combos(old: int, total: int, rank: int):
    """Index tuples from range(total)^rank with at least one index >= old."""
    ranges = (range(old), range(old, total))
    for pattern in itertools.product((0, 1), repeat=rank):
        if 1 not in pattern:
            continue
        yield from itertools.product(*(ranges[b] for b in pattern))


def _bottom_up_closure(alphabet: RankedAlphabet, leaf_image, combine, cap=None):
    """Smallest object set containing every leaf image and closed under
    ``combine``; returns the objects in discovery order plus the transition
    table in index space (total over the discovered objects).  Each
    combination is evaluated exactly once."""
    objs: list = []
    index: dict = {}
    trans: dict[tuple[str, tuple[int, ...]], int] = {}

    def add(obj) -> int:
        if obj not in index:
            if cap is not None and len(objs) >= cap:
                raise ResourceLimit(f"construction exceeded {cap} states")
            index[obj] = len(objs)
            objs.append(obj)
        return index[obj]

    for name, rank in alphabet.symbols:
        if rank == 0:
            trans[(name, ())] = add(leaf_image(name))
    done = 0
    while done < len(objs):
        total = len(objs)
        for name, rank in alphabet.symbols:
            if rank == 0:
                continue
            for combo in _new_combos(done, total, rank):
                trans[(name, combo)] = add(combine(name, tuple(objs[i] for i in combo)))
        done = total
    return objs, trans


def _closure_to_buta(alphabet, objs, trans, is_final) -> BottomUpTA:
    states = tuple(f"s{i}" for i in range(len(objs)))
    rules = {
        (sym, tuple(states[i] for i in combo)): frozenset({states[target]})
        for (sym, combo), target in trans.items()
    }
    final = frozenset(states[i] for i, obj in enumerate(objs) if is_final(obj))
    return BottomUpTA(alphabet, states, rules, final)


def determinize_bu(a: BottomUpTA) -> BottomUpTA:
    """Subset construction; reachable subsets only, with the empty subset as sink."""
    by_symbol: dict[str, list] = {}
    for (sym, children), results in _sorted_rules(a):
        by_symbol.setdefault(sym, []).append((children, results))

    def leaf_image(sym):
        out = set()
        for children, results in by_symbol.get(sym, []):
            out |= results
        return frozenset(out)

    def combine(sym, subsets):
        out = set()
        for children, results in by_symbol.get(sym, []):
            if all(children[j] in subsets[j] for j in range(len(children))):
                out |= results
        return frozenset(out)

    objs, trans = _bottom_up_closure(a.alphabet, leaf_image, combine)
    return _closure_to_buta(a.alphabet, objs, trans, lambda s: bool(s & a.final))


def _normalize(a: BottomUpTA) -> BottomUpTA:
    return a if a.deterministic_complete else determinize_bu(a)


def _product_bu(a: BottomUpTA, b: BottomUpTA, keep) -> BottomUpTA:
    da, db = _normalize(a), _normalize(b)

    def leaf_image(sym):
        return (da.step(sym, ()), db.step(sym, ()))

    def combine(sym, pairs):
        return (
            da.step(sym, tuple(p[0] for p in pairs)),
            db.step(sym, tuple(p[1] for p in pairs)),
        )

    objs, trans = _bottom_up_closure(a.alphabet, leaf_image, combine)
    return _closure_to_buta(
        a.alphabet, objs, trans, lambda p: keep(p[0] in da.final, p[1] in db.final)
    )


def bool_ops_bu(a: BottomUpTA, b: BottomUpTA | None, op: str) -> BottomUpTA:
    """Language union/intersection/complement on bottom-up automata."""
    if op == "complement":
        if b is not None:
            raise ValueError("complement takes a single automaton")
        d = _normalize(a)
        return BottomUpTA(d.alphabet, d.states, d.rules, frozenset(d.states) - d.final)
    if b is None:
        raise ValueError(f"{op} needs two automata")
    a.alphabet.require_same(b.alphabet)
    if op == "union":
        return _product_bu(a, b, lambda x, y: x or y)
    if op == "intersection":
        return _product_bu(a, b, lambda x, y: x and y)
    raise ValueError(f"unknown operation {op!r}")


def empty_bu(a: BottomUpTA):
    """Emptiness test; on a nonempty language also a minimal-height witness."""
    rules = _sorted_rules(a)
    sidx = _state_index(a)
    heights: dict[str, int] = {}
    choice: dict[str, tuple[str, tuple[str, ...]]] = {}
    discovery: list[str] = []
    for h in range(len(a.states) + 1):
        new = {}
        for (sym, children), results in rules:
            if children and not all(c in heights for c in children):
                continue
            hh = 0 if not children else 1 + max(heights[c] for c in children)
            if hh != h:
                continue
            for q in sorted(results, key=sidx.get):
                if q not in heights and q not in new:
                    new[q] = (sym, children)
        for q, rule in new.items():
            heights[q] = h
            choice[q] = rule
            discovery.append(q)
        if len(heights) == len(a.states):
            break

    witness_state = next((q for q in discovery if q in a.final), None)
    if witness_state is None:
        return True, None

    def build(q: str) -> Tree:
        sym, children = choice[q]
        return Tree(sym, tuple(build(c) for c in children))

    return False, build(witness_state)


def productive_states(a: BottomUpTA) -> frozenset[str]:
    """States realized by at least one tree."""
    rules = _sorted_rules(a)
    known: set[str] = set()
    while True:
        before = len(known)
        for (sym, children), results in rules:
            if all(c in known for c in children):
                known |= results
        if len(known) == before:
            return frozenset(known)


# ---------------------------------------------------------------------------
# minimal accepted trees (node count) for counterexample reporting

_SCAN_CAP = 200_000


def _min_costs(rule_items):
    """Minimal node count of a tree reaching each index-space state."""
    cost: dict[int, int] = {}
    pick: dict[int, tuple[str, tuple[int, ...]]] = {}
    changed = True
    while changed:
        changed = False
        for (sym, combo), target in rule_items:
            if not all(c in cost for c in combo):
                continue
            c = 1 + sum(cost[i] for i in combo)
            if target not in cost or c < cost[target]:
                cost[target] = c
                pick[target] = (sym, combo)
                changed = True
    return cost, pick


def _build_min_tree(pick, target) -> Tree:
    sym, combo = pick[target]
    return Tree(sym, tuple(_build_min_tree(pick, c) for c in combo))


def equiv_bu(a: BottomUpTA, b: BottomUpTA):
    """Language equality; on failure also a minimal-node-count tree accepted
    by exactly one side (ties broken in enumeration order)."""
    a.alphabet.require_same(b.alphabet)
    da, db = _normalize(a), _normalize(b)

    def leaf_image(sym):
        return (da.step(sym, ()), db.step(sym, ()))

    def combine(sym, pairs):
        return (
            da.step(sym, tuple(p[0] for p in pairs)),
            db.step(sym, tuple(p[1] for p in pairs)),
        )

    objs, trans = _bottom_up_closure(a.alphabet, leaf_image, combine)
    diff = [
        i for i, (pa, pb) in enumerate(objs) if (pa in da.final) != (pb in db.final)
    ]
    if not diff:
        return True, None
    rule_items = sorted(trans.items(), key=lambda kv: (a.alphabet.symbol_index(kv[0][0]), kv[0][1]))
    cost, pick = _min_costs(rule_items)
    best = min(cost[i] for i in diff)
    if count_trees_of_size(a.alphabet, best) <= _SCAN_CAP:
        for t in trees_of_size(a.alphabet, best):
            if accepts_bu(da, t) != accepts_bu(db, t):
                return False, t
    target = min((i for i in diff if cost[i] == best), key=lambda i: i)
    return False, _build_min_tree(pick, target)


def minimize_bu(a: BottomUpTA) -> BottomUpTA:
    """Minimal complete deterministic automaton: drop unrealizable states,
    then merge context-equivalent ones."""
    if not a.deterministic_complete:
        raise NotDeterministic("minimize_bu needs a deterministic complete automaton")
    sidx = _state_index(a)
    reach = sorted(productive_states(a), key=sidx.get)
    if not reach:
        return BottomUpTA(a.alphabet, (), {}, frozenset())

    block = {q: (q in a.final) for q in reach}
    while True:
        sigs = {}
        for q in reach:
            entries = [block[q]]
            for name, rank in a.alphabet.symbols:
                if rank == 0:
                    continue
                for j in range(rank):
                    for others in itertools.product(reach, repeat=rank - 1):
                        children = others[:j] + (q,) + others[j:]
                        entries.append(block[a.step(name, children)])
            sigs[q] = tuple(entries)
        ids: dict = {}
        new = {q: ids.setdefault(sigs[q], len(ids)) for q in reach}
        if len(set(new.values())) == len(set(block.values())):
            block = new
            break
        block = new

    members: dict = {}
    for q in reach:
        members.setdefault(block[q], []).append(q)
    ordered = sorted(members.values(), key=lambda qs: min(sidx[q] for q in qs))
    name_of = {}
    for i, qs in enumerate(ordered):
        for q in qs:
            name_of[q] = f"s{i}"
    reps = [qs[0] for qs in ordered]
    rules = {}
    for name, rank in a.alphabet.symbols:
        for combo in itertools.product(reps, repeat=rank):
            rules[(name, tuple(name_of[c] for c in combo))] = frozenset(
                {name_of[a.step(name, combo)]}
            )
    states = tuple(f"s{i}" for i in range(len(ordered)))
    final = frozenset(name_of[r] for r in reps if r in a.final)
    return BottomUpTA(a.alphabet, states, rules, final)


def from_finite_language(trees, alphabet=None) -> BottomUpTA:
    """Deterministic automaton recognizing exactly the given finite tree set.

    States are the distinct subtrees plus a sink; the alphabet is inferred
    from the trees when not supplied.
    """
    trees = tuple(trees)
    alpha = RankedAlphabet.of(alphabet) if alphabet is not None else infer_alphabet(trees)
    for t in trees:
        check_tree(t, alpha)
    subtrees: list[Tree] = []
    seen = set()

    def visit(t: Tree):
        if t not in seen:
            seen.add(t)
            subtrees.append(t)
        for c in t.children:
            visit(c)

    for t in trees:
        visit(t)
    name = {t: f"t{i}" for i, t in enumerate(subtrees)}
    sink = "sink"
    states = tuple(name[t] for t in subtrees) + (sink,)
    by_name = {name[t]: t for t in subtrees}
    rules = {}
    for sym, rank in alpha.symbols:
        for combo in itertools.product(states, repeat=rank):
            if sink in combo:
                target = sink
            else:
                candidate = Tree(sym, tuple(by_name[c] for c in combo))
                target = name.get(candidate, sink)
            rules[(sym, combo)] = frozenset({target})
    final = frozenset(name[t] for t in trees)
    return BottomUpTA(alpha, states, rules, final)


# ---------------------------------------------------------------------------
# built-in example languages (shipped as fixture files as well)

COMB_ALPHABET = RankedAlphabet.of({"a": 2, "c": 0, "d": 0, "e": 0})


def t0_automaton() -> BottomUpTA:
    """The two-tree language {f(a,b), f(b,a)}."""
    alpha = RankedAlphabet.of({"f": 2, "a": 0, "b": 0})
    return from_finite_language(
        [parse_tree("f(a,b)", alpha), parse_tree("f(b,a)", alpha)], alpha
    )


def t1_automaton() -> BottomUpTA:
    """Trees over {a:2, c, d, e} in which d occurs exactly once."""
    states = ("zero", "one", "many")
    cap = {0: "zero", 1: "one", 2: "many"}
    count = {"zero": 0, "one": 1, "many": 2}
    rules = {("c", ()): "zero", ("e", ()): "zero", ("d", ()): "one"}
    for left, right in itertools.product(states, repeat=2):
        rules[("a", (left, right))] = cap[min(2, count[left] + count[right])]
    return BottomUpTA(COMB_ALPHABET, states, {k: frozenset({v}) for k, v in rules.items()}, {"one"})


def t2_automaton() -> BottomUpTA:
    """Trees over {a:2, c, d, e} in which some d occurs left of some e.

    Needs five states: subtree presence of d and of e must both be tracked
    until the witnessing branch point, plus an absorbing established state.
    """
    states = ("none", "donly", "eonly", "both", "est")
    has_d = {"donly", "both", "est"}
    has_e = {"eonly", "both", "est"}
    rules = {("c", ()): "none", ("d", ()): "donly", ("e", ()): "eonly"}
    for left, right in itertools.product(states, repeat=2):
        if left == "est" or right == "est" or (left in has_d and right in has_e):
            out = "est"
        else:
            d = left in has_d or right in has_d
            e = left in has_e or right in has_e
            out = "both" if d and e else "donly" if d else "eonly" if e else "none"
        rules[("a", (left, right))] = out
    return BottomUpTA(COMB_ALPHABET, states, {k: frozenset({v}) for k, v in rules.items()}, {"est"})
