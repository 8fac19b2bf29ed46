"""Built-in example automata, shipped both as constructors and as data files.

``t0``: the two-tree language {f(a,b), f(b,a)}.  ``t1``/``t2``: the comb
languages (d occurs exactly once / d occurs left of e) as bottom-up
recognizers and as frontier-check recognizers.  ``fig1-paths``: the
seven-word path DFA whose trees-from-paths language has exactly four trees.
"""

from importlib import resources

from ..bottomup import t0_automaton, t1_automaton, t2_automaton
from ..fileformat import load_file, loads
from ..topdown import t1_frontier_check, t2_frontier_check
from ..trees import parse_path_word
from ..wordauto import WordAutomaton, determinize_complete, from_words, minimize_dfa

FIG1_ALPHABET = {"a": 2, "b": 2, "c": 0, "d": 0}
FIG1_PATHS = ("a1b1c", "a1b2d", "a1a1d", "a1a2c", "a2c", "a2d", "b2c")


def fig1_paths_dfa() -> WordAutomaton:
    words = [parse_path_word(w, FIG1_ALPHABET) for w in FIG1_PATHS]
    return minimize_dfa(determinize_complete(from_words(words, alphabet=FIG1_ALPHABET)))


BUILDERS = {
    "t0.buta": t0_automaton,
    "t1.buta": t1_automaton,
    "t2.buta": t2_automaton,
    "t1.fcheck": t1_frontier_check,
    "t2.fcheck": t2_frontier_check,
    "fig1-paths.pathdfa": fig1_paths_dfa,
}


def fixture_names():
    return tuple(BUILDERS)


def fixture_text(name: str) -> str:
    return resources.files(__package__).joinpath(name).read_text(encoding="utf-8")


def fixture_path(name: str) -> str:
    if name not in BUILDERS:
        raise KeyError(f"unknown fixture {name!r}")
    return str(resources.files(__package__).joinpath(name))


def load_fixture(name: str):
    return loads(fixture_text(name))
