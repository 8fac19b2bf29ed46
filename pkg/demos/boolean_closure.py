"""Set acceptance: Boolean closure and decomposition.

A top-down automaton with set acceptance checks the exact set of states
reached at the outer frontier against a family of state sets.  These
automata recognize exactly the Boolean combinations of deterministic
top-down languages: they complement by flipping the family, they union by
a product, and they decompose back into plain top-down components.
"""

from rfta import (
    RankedAlphabet,
    accept_dtda_set,
    decompose_set,
    enumerate_trees,
    equiv_bu,
    from_finite_language,
    intersection_set,
    parse_tree,
    set_to_bottomup,
    singleton_dtda,
    union_set,
)

alpha = RankedAlphabet.of({"f": 2, "a": 0, "b": 0})
left = parse_tree("f(a,b)", alpha)
right = parse_tree("f(b,a)", alpha)

# Single trees are recognized with a one-member family.
_, s_left = singleton_dtda(left, alpha)
_, s_right = singleton_dtda(right, alpha)
print("family of the singleton automaton:", [sorted(m) for m in s_left.family])

# The union product recognizes {f(a,b), f(b,a)}, which no plain
# deterministic top-down automaton can.
pair = union_set(s_left, s_right)
members = [t for t in enumerate_trees(alpha, 5) if accept_dtda_set(pair, t)[0]]
print("union recognizes:", ", ".join(map(str, members)))

# The bottom-up view enables the standard decisions.
ok, _ = equiv_bu(set_to_bottomup(pair), from_finite_language([left, right], alpha))
print("equals {f(a,b), f(b,a)} as a bottom-up language?", ok)

# Intersection runs through complements of the union of complements.
inter = intersection_set(s_left, s_right)
print("intersection of the two singletons is empty?",
      not any(accept_dtda_set(inter, t)[0] for t in enumerate_trees(alpha, 5)))

# Decomposition: one positive subset check per family member plus one
# negated avoids-state check per state in the member.
decomposition = decompose_set(pair)
print("decomposition has", decomposition.component_count, "plain components")
agree = all(
    decomposition.evaluate(t) == accept_dtda_set(pair, t)[0]
    for t in enumerate_trees(alpha, 7)
)
print("decomposition agrees with set acceptance on all trees up to 7 nodes?", agree)
