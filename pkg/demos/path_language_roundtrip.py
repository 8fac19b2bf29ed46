"""Paths of trees, trees from paths, and the recognizability decision.

Every tree determines its set of labeled root-to-leaf paths; every path
language determines the largest tree language built from it.  A regular
tree language has a deterministic root-to-frontier recognizer exactly when
that round trip gives the language back.
"""

from rfta import (
    RankedAlphabet,
    accept_dtda,
    enumerate_trees,
    format_path_word,
    from_finite_language,
    is_dtda_recognizable,
    parse_tree,
    pot_tree,
    tfp_dtda,
)
from rfta.fixtures import FIG1_PATHS, fig1_paths_dfa

alpha = RankedAlphabet.of({"a": 2, "b": 2, "c": 0, "d": 0})

# The paths of a single tree, one per leaf.
t = parse_tree("a(b(c,d),c)", alpha)
print("tree:", t)
print("paths:", sorted(format_path_word(w) for w in pot_tree(t)))

# A seven-word path language and the trees it builds.  Note that a path in
# the language need not occur in any tree: b2c demands a tree with root b,
# but no b-rooted tree can complete all of its paths inside the language.
print("\npath language:", ", ".join(FIG1_PATHS))
dtda = tfp_dtda(fig1_paths_dfa())
trees = [t for t in enumerate_trees(alpha, 7) if accept_dtda(dtda, t)]
print("trees from these paths (up to 7 nodes):")
for t in trees:
    print("  ", t)

# The two-tree language {f(a,b), f(b,a)} has no deterministic top-down
# recognizer: its paths also build f(a,a) and f(b,b).
fab = RankedAlphabet.of({"f": 2, "a": 0, "b": 0})
pair = from_finite_language([parse_tree("f(a,b)", fab), parse_tree("f(b,a)", fab)], fab)
verdict = is_dtda_recognizable(pair)
print("\n{f(a,b), f(b,a)} recognizable top-down?", verdict.recognizable)
print("counterexample built from its paths:", verdict.counterexample)
