import random

import pytest

from rfta import (
    AlphabetMismatch,
    NotDeterministic,
    RankedAlphabet,
    WordAutomaton,
    accepts_word,
    all_paths_automaton,
    bool_ops,
    determinize_complete,
    equiv_words,
    from_words,
    minimize_dfa,
    parse_path_word,
)
from helpers import rand_word_nfa, word_lang_upto

FIG = RankedAlphabet.of({"a": 2, "b": 2, "c": 0, "d": 0})
FAB = RankedAlphabet.of({"f": 2, "a": 0, "b": 0})


def words(alpha, *texts):
    return [parse_path_word(w, alpha) for w in texts]


def test_determinize_two_word_language():
    nfa = from_words(words(FAB, "f1a", "f2b"), alphabet=FAB)
    dfa = determinize_complete(nfa)
    assert dfa.deterministic_complete
    # six reachable subsets plus the empty sink
    assert len(dfa.states) == 7
    assert equiv_words(nfa, dfa) == (True, None)


def test_determinize_idempotent_up_to_renaming():
    dfa = determinize_complete(from_words(words(FAB, "f1a"), alphabet=FAB))
    again = determinize_complete(dfa)
    assert len(again.states) == len(dfa.states)
    assert equiv_words(dfa, again) == (True, None)


def test_determinize_no_accepting():
    auto = WordAutomaton(("p",), {"p"}, frozenset(), {}, alphabet=FAB)
    dfa = determinize_complete(auto)
    assert dfa.deterministic_complete and not word_lang_upto(dfa, 4)


def test_complement_involution():
    a = from_words(words(FIG, "a1b1c", "a2c"), alphabet=FIG)
    cc = bool_ops(bool_ops(a, None, "complement"), None, "complement")
    assert equiv_words(a, cc) == (True, None)


def test_union_identity():
    a = from_words(words(FIG, "a1b1c"), alphabet=FIG)
    empty = from_words([], alphabet=FIG)
    assert equiv_words(bool_ops(a, empty, "union"), a) == (True, None)


def test_intersection_of_finite_languages():
    a = from_words(words(FIG, "a1b1c", "a2c"), alphabet=FIG)
    b = from_words(words(FIG, "a2c", "a2d"), alphabet=FIG)
    inter = bool_ops(a, b, "intersection")
    assert equiv_words(inter, from_words(words(FIG, "a2c"), alphabet=FIG)) == (True, None)


def test_bool_ops_rejects_mixed_alphabets():
    a = from_words(words(FIG, "a2c"), alphabet=FIG)
    b = from_words(words(FAB, "f1a"), alphabet=FAB)
    with pytest.raises(AlphabetMismatch):
        bool_ops(a, b, "union")


def test_equiv_self():
    a = from_words(words(FIG, "a1b1c", "a2c"), alphabet=FIG)
    assert equiv_words(a, a) == (True, None)


def test_equiv_counterexample_is_shortest():
    small = from_words(words(FAB, "f1a"), alphabet=FAB)
    big = from_words(words(FAB, "f1a", "f2b"), alphabet=FAB)
    equal, witness = equiv_words(small, big)
    assert not equal and witness == ("f", 2, "b")


def test_equiv_after_minimize():
    a = from_words(words(FIG, "a1b1c", "a1b2d", "a2c"), alphabet=FIG)
    dfa = determinize_complete(a)
    assert equiv_words(minimize_dfa(dfa), dfa) == (True, None)


def test_minimize_requires_dfa():
    with pytest.raises(NotDeterministic):
        minimize_dfa(from_words(words(FAB, "f1a"), alphabet=FAB))


def test_minimize_merges_bisimilar_accepting_states():
    # two accepting states with identical behavior collapse into one
    toks = FAB.gamma
    states = ("s", "x", "y", "dead")
    trans = {}
    for q in states:
        for tok in toks:
            trans[(q, tok)] = frozenset({"dead"})
    trans[("s", "f")] = frozenset({"x"})
    trans[("s", "a")] = frozenset({"y"})
    dfa = WordAutomaton(states, {"s"}, {"x", "y"}, trans, alphabet=FAB)
    assert dfa.deterministic_complete
    small = minimize_dfa(dfa)
    assert len(small.states) == 3
    assert equiv_words(small, dfa) == (True, None)


def test_minimize_empty_language():
    dfa = determinize_complete(from_words([], alphabet=FAB))
    small = minimize_dfa(dfa)
    assert len(small.states) == 1
    assert not word_lang_upto(small, 3)


def test_minimize_minimal_input_is_isomorphic():
    dfa = minimize_dfa(determinize_complete(from_words(words(FAB, "f1a"), alphabet=FAB)))
    again = minimize_dfa(dfa)
    assert len(again.states) == len(dfa.states)


def test_all_paths_automaton():
    auto = all_paths_automaton(FIG)
    assert auto.deterministic_complete
    assert accepts_word(auto, parse_path_word("a1b2d", FIG))
    assert accepts_word(auto, ("c",))
    assert not accepts_word(auto, ("a", 1))
    assert not accepts_word(auto, ("a", 1, "a"))
    assert not accepts_word(auto, ("c", 1, "c"))
    assert not accepts_word(auto, (1, "c"))


SMALL = RankedAlphabet.of({"f": 2, "a": 0})  # four tokens keeps enumeration cheap


def test_random_nfa_constructions_agree_with_enumeration():
    rng = random.Random(0)
    for i in range(40):
        length = 6 if i < 20 else 5
        a = rand_word_nfa(rng, SMALL, max_states=4)
        b = rand_word_nfa(rng, SMALL, max_states=4)
        la, lb = word_lang_upto(a, length), word_lang_upto(b, length)
        assert word_lang_upto(determinize_complete(a), length) == la
        assert word_lang_upto(bool_ops(a, b, "union"), length) == la | lb
        assert word_lang_upto(bool_ops(a, b, "intersection"), length) == la & lb
        comp = bool_ops(a, None, "complement")
        assert word_lang_upto(comp, length) == word_lang_upto(all_words(), length) - la
        assert word_lang_upto(minimize_dfa(determinize_complete(a)), length) == la


def all_words():
    # universal automaton over SMALL's tokens
    trans = {("u", tok): frozenset({"u"}) for tok in SMALL.gamma}
    return WordAutomaton(("u",), {"u"}, {"u"}, trans, alphabet=SMALL)


def test_random_equiv_agrees_with_enumeration():
    rng = random.Random(1)
    for _ in range(40):
        a = rand_word_nfa(rng, SMALL, max_states=4)
        b = rand_word_nfa(rng, SMALL, max_states=4)
        equal, witness = equiv_words(a, b)
        if equal:
            assert word_lang_upto(a, 6) == word_lang_upto(b, 6)
        else:
            assert accepts_word(a, witness) != accepts_word(b, witness)
            # shortest: no strictly shorter word separates
            for length in range(len(witness)):
                assert word_lang_upto_len(a, length) == word_lang_upto_len(b, length)


def word_lang_upto_len(auto, length):
    import itertools

    return frozenset(
        w for w in itertools.product(auto.tokens, repeat=length) if accepts_word(auto, w)
    )
