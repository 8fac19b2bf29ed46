import random

import pytest

from rfta import (
    AlphabetMismatch,
    DTDA,
    DTDASet,
    FrontierCheckDTDA,
    RankedAlphabet,
    ResourceLimit,
    WordAutomaton,
    accept_dtda,
    accept_dtda_set,
    accept_frontier_check,
    accepts_bu,
    comb_refutation,
    complement_set,
    decompose_set,
    dtda_to_bottomup,
    dtda_to_set,
    enumerate_trees,
    equiv_bu,
    from_finite_language,
    intersection_set,
    parse_tree,
    run_dtda_states,
    set_to_bottomup,
    singleton_dtda,
    t0_automaton,
    t1_automaton,
    t1_frontier_check,
    t2_automaton,
    t2_frontier_check,
    union_set,
)
from helpers import (
    rand_alphabet,
    rand_dtda,
    rand_dtdaset,
    set_lang_upto,
)

COMB = RankedAlphabet.of({"a": 2, "c": 0, "d": 0, "e": 0})
FAB = RankedAlphabet.of({"f": 2, "a": 0, "b": 0})


def one_state_core(alpha):
    delta = {}
    for sym, rank in alpha.symbols:
        delta[("q", sym)] = ("q",) * max(rank, 1)
    return ("q",), "q", delta


def test_run_states_constant_core():
    states, init, delta = one_state_core(COMB)
    a = DTDA(COMB, states, init, delta, frozenset({"q"}))
    t = parse_tree("a(a(c,d),e)", COMB)
    positions, sequence = run_dtda_states(a, t)
    assert set(positions.values()) == {"q"}
    assert sequence == ("q", "q", "q")
    assert set(positions) == {(1, 1, 1), (1, 2, 1), (2, 1)}


def test_run_states_singleton_core():
    t = parse_tree("f(a,b)", FAB)
    dtda, _ = singleton_dtda(t, FAB)
    _, seq = run_dtda_states(dtda, t)
    assert set(seq) == {"acc"}
    _, seq2 = run_dtda_states(dtda, parse_tree("f(b,a)", FAB))
    assert "rej" in set(seq2)


def test_accept_dtda_full_and_empty_final():
    states, init, delta = one_state_core(FAB)
    everything = DTDA(FAB, states, init, delta, frozenset({"q"}))
    nothing = DTDA(FAB, states, init, delta, frozenset())
    for t in enumerate_trees(FAB, 5):
        assert accept_dtda(everything, t)
        assert not accept_dtda(nothing, t)


def test_accept_dtda_set_trivial_families():
    states, init, delta = one_state_core(FAB)
    never = DTDASet(FAB, states, init, delta, ())
    always = DTDASet(FAB, states, init, delta, (frozenset(), frozenset({"q"})))
    for t in enumerate_trees(FAB, 5):
        ok, reached = accept_dtda_set(never, t)
        assert not ok and reached == {"q"}
        assert accept_dtda_set(always, t)[0]


def test_family_is_canonicalized():
    states, init, delta = one_state_core(FAB)
    a = DTDASet(FAB, states, init, delta, (frozenset({"q"}), frozenset({"q"}), frozenset()))
    assert a.family == (frozenset(), frozenset({"q"}))


def test_dtda_to_set_powerset_sizes():
    alpha = FAB
    states = ("q0", "q1")
    delta = {}
    for q in states:
        for sym, rank in alpha.symbols:
            delta[(q, sym)] = (states[0],) * max(rank, 1)
    full = DTDA(alpha, states, "q0", delta, frozenset(states))
    assert len(dtda_to_set(full).family) == 4
    none = DTDA(alpha, states, "q0", delta, frozenset())
    assert dtda_to_set(none).family == (frozenset(),)


def test_dtda_to_set_preserves_membership():
    rng = random.Random(21)
    for _ in range(50):
        alpha = rand_alphabet(rng)
        a = rand_dtda(rng, alpha, max_states=3)
        converted = dtda_to_set(a)
        for t in enumerate_trees(alpha, 5):
            assert accept_dtda(a, t) == accept_dtda_set(converted, t)[0]


def test_singleton_smallest_case():
    alpha = RankedAlphabet.of({"c": 0})
    dtda, dtda_set = singleton_dtda(parse_tree("c", alpha), alpha)
    assert len(dtda.states) == 3  # one occurrence plus accept/reject
    assert accept_dtda(dtda, parse_tree("c", alpha))
    assert accept_dtda_set(dtda_set, parse_tree("c", alpha))[0]


def test_singleton_f_a_b():
    dtda, dtda_set = singleton_dtda(parse_tree("f(a,b)", FAB), FAB)
    outcomes = {s: accept_dtda(dtda, parse_tree(s, FAB)) for s in
                ("f(a,b)", "f(b,a)", "f(a,a)", "f(b,b)")}
    assert outcomes == {"f(a,b)": True, "f(b,a)": False, "f(a,a)": False, "f(b,b)": False}
    for t in enumerate_trees(FAB, 5):
        assert accept_dtda_set(dtda_set, t)[0] == (str(t) == "f(a,b)")


def test_singleton_bigger_tree_exact():
    alpha = RankedAlphabet.of({"a": 2, "b": 2, "c": 0, "d": 0})
    target = parse_tree("a(b(c,d),c)", alpha)
    dtda, _ = singleton_dtda(target, alpha)
    for t in enumerate_trees(alpha, 7):
        assert accept_dtda(dtda, t) == (t == target)


def test_complement_set_involution():
    rng = random.Random(22)
    a = rand_dtdaset(rng, FAB, max_states=3)
    cc = complement_set(complement_set(a))
    assert cc.family == a.family


def test_complement_of_empty_family_accepts_all():
    states, init, delta = one_state_core(FAB)
    never = DTDASet(FAB, states, init, delta, ())
    comp = complement_set(never)
    assert all(accept_dtda_set(comp, t)[0] for t in enumerate_trees(FAB, 5))


def test_complement_singleton():
    _, s = singleton_dtda(parse_tree("f(a,b)", FAB), FAB)
    comp = complement_set(s)
    assert accept_dtda_set(comp, parse_tree("f(b,a)", FAB))[0]
    assert not accept_dtda_set(comp, parse_tree("f(a,b)", FAB))[0]


def test_union_of_singletons_is_pair_language():
    _, s1 = singleton_dtda(parse_tree("f(a,b)", FAB), FAB)
    _, s2 = singleton_dtda(parse_tree("f(b,a)", FAB), FAB)
    u = union_set(s1, s2)
    members = {t for t in enumerate_trees(FAB, 3) if accept_dtda_set(u, t)[0]}
    assert members == {parse_tree("f(a,b)", FAB), parse_tree("f(b,a)", FAB)}


def test_union_with_never_is_identity():
    rng = random.Random(23)
    a = rand_dtdaset(rng, FAB, max_states=3)
    states, init, delta = one_state_core(FAB)
    never = DTDASet(FAB, states, init, delta, ())
    u = union_set(a, never)
    assert set_lang_upto(u, 5) == set_lang_upto(a, 5)


def test_union_self_is_identity():
    rng = random.Random(24)
    a = rand_dtdaset(rng, FAB, max_states=3)
    assert set_lang_upto(union_set(a, a), 5) == set_lang_upto(a, 5)


def test_union_rejects_alphabet_mismatch():
    rng = random.Random(25)
    a = rand_dtdaset(rng, FAB, max_states=2)
    b = rand_dtdaset(rng, COMB, max_states=2)
    with pytest.raises(AlphabetMismatch):
        union_set(a, b)


def test_intersection_with_always_is_identity():
    rng = random.Random(26)
    a = rand_dtdaset(rng, FAB, max_states=3)
    states, init, delta = one_state_core(FAB)
    always = DTDASet(FAB, states, init, delta, (frozenset(), frozenset({"q"})))
    assert set_lang_upto(intersection_set(a, always), 5) == set_lang_upto(a, 5)


def test_intersection_of_disjoint_singletons_is_empty():
    _, s1 = singleton_dtda(parse_tree("f(a,b)", FAB), FAB)
    _, s2 = singleton_dtda(parse_tree("f(b,a)", FAB), FAB)
    inter = intersection_set(s1, s2)
    assert not set_lang_upto(inter, 5)


def test_de_morgan_on_random_pairs():
    rng = random.Random(27)
    for _ in range(25):
        a = rand_dtdaset(rng, FAB, max_states=2)
        b = rand_dtdaset(rng, FAB, max_states=2)
        lhs = set_lang_upto(intersection_set(a, b), 5)
        rhs = set_lang_upto(a, 5) & set_lang_upto(b, 5)
        assert lhs == rhs


def test_set_to_bottomup_one_state():
    states, init, delta = one_state_core(FAB)
    a = DTDASet(FAB, states, init, delta, (frozenset({"q"}),))
    bu = set_to_bottomup(a)
    assert bu.deterministic_complete
    assert len(bu.states) <= 2


def test_set_to_bottomup_singleton():
    tree = parse_tree("f(a,b)", FAB)
    _, s = singleton_dtda(tree, FAB)
    bu = set_to_bottomup(s)
    assert equiv_bu(bu, from_finite_language([tree], FAB)) == (True, None)


def test_set_to_bottomup_union_t0():
    _, s1 = singleton_dtda(parse_tree("f(a,b)", FAB), FAB)
    _, s2 = singleton_dtda(parse_tree("f(b,a)", FAB), FAB)
    bu = set_to_bottomup(union_set(s1, s2))
    assert equiv_bu(bu, t0_automaton()) == (True, None)


def test_set_to_bottomup_respects_cap():
    _, a = singleton_dtda(parse_tree("f(a,b)", FAB), FAB)
    with pytest.raises(ResourceLimit):
        set_to_bottomup(a, max_states=1)


def test_set_to_bottomup_random_agreement():
    rng = random.Random(29)
    for _ in range(30):
        alpha = rand_alphabet(rng)
        a = rand_dtdaset(rng, alpha, max_states=3)
        bu = set_to_bottomup(a)
        for t in enumerate_trees(alpha, 5):
            assert accepts_bu(bu, t) == accept_dtda_set(a, t)[0]


def test_set_to_bottomup_equiv_agrees_with_enumeration():
    from helpers import nta_member, rand_nta

    rng = random.Random(35)
    for _ in range(100):
        alpha = rand_alphabet(rng)
        a = rand_dtdaset(rng, alpha, max_states=3)
        x = rand_nta(rng, alpha, max_states=3)
        equal, witness = equiv_bu(set_to_bottomup(a), x)
        if equal:
            assert set_lang_upto(a, 6) == {
                t for t in enumerate_trees(alpha, 6) if nta_member(x, t)
            }
        else:
            assert accept_dtda_set(a, witness)[0] != nta_member(x, witness)


def test_dtda_to_bottomup_agreement():
    rng = random.Random(30)
    for _ in range(30):
        alpha = rand_alphabet(rng)
        a = rand_dtda(rng, alpha, max_states=3)
        bu = dtda_to_bottomup(a)
        assert bu.deterministic_complete
        for t in enumerate_trees(alpha, 5):
            assert accepts_bu(bu, t) == accept_dtda(a, t)


def test_decompose_empty_member_family():
    states, init, delta = one_state_core(FAB)
    a = DTDASet(FAB, states, init, delta, (frozenset(),))
    decomposition = decompose_set(a)
    assert decomposition.component_count == 1
    assert not any(decomposition.evaluate(t) for t in enumerate_trees(FAB, 5))


def test_decompose_singleton_family():
    _, s = singleton_dtda(parse_tree("f(a,b)", FAB), FAB)
    decomposition = decompose_set(s)
    assert decomposition.component_count == 2
    (positive, negated), = decomposition.clauses
    assert decomposition.components[positive].final == frozenset({"acc"})
    assert len(negated) == 1


def test_decompose_random_agreement():
    rng = random.Random(31)
    for _ in range(30):
        alpha = rand_alphabet(rng)
        a = rand_dtdaset(rng, alpha, max_states=3)
        decomposition = decompose_set(a)
        assert decomposition.component_count == sum(1 + len(m) for m in a.family)
        for t in enumerate_trees(alpha, 5):
            assert decomposition.evaluate(t) == accept_dtda_set(a, t)[0]


def test_frontier_check_trivial_checker():
    states, init, delta = one_state_core(COMB)
    trans = {("b", q): frozenset({"b"}) for q in states}
    checker = WordAutomaton(("b",), {"b"}, {"b"}, trans, tokens=states)
    a = FrontierCheckDTDA(COMB, states, init, delta, checker)
    assert all(accept_frontier_check(a, t) for t in enumerate_trees(COMB, 5))


def test_frontier_check_fixtures():
    fc1, fc2 = t1_frontier_check(), t2_frontier_check()
    assert accept_frontier_check(fc1, parse_tree("a(d,c)", COMB))
    assert not accept_frontier_check(fc1, parse_tree("a(d,d)", COMB))
    assert accept_frontier_check(fc2, parse_tree("a(d,e)", COMB))
    assert not accept_frontier_check(fc2, parse_tree("a(e,d)", COMB))


def test_frontier_check_checker_alphabet_validated():
    states, init, delta = one_state_core(COMB)
    trans = {("b", "zzz"): frozenset({"b"})}
    with pytest.raises(ValueError):
        checker = WordAutomaton(("b",), {"b"}, {"b"}, trans, tokens=("zzz",))
        FrontierCheckDTDA(COMB, states, init, delta, checker)


def test_comb_refutation_one_state():
    states, init, delta = one_state_core(COMB)
    a = DTDASet(COMB, states, init, delta, (frozenset({"q"}),))
    for target in ("t1", "t2"):
        report = comb_refutation(a, target)
        assert (report.k, report.p, report.comb_size) == (0, 1, 3)
        assert report.frontier_states == {"q"}
        assert report.automaton_accepts_both


def test_comb_refutation_membership_split():
    rng = random.Random(32)
    t1, t2 = t1_automaton(), t2_automaton()
    for _ in range(20):
        a = rand_dtdaset(rng, COMB, max_states=3)
        for target, fixture in (("t1", t1), ("t2", t2)):
            report = comb_refutation(a, target)
            assert accepts_bu(fixture, report.tree_in_target)
            assert not accepts_bu(fixture, report.tree_outside)
            ok_in, set_in = accept_dtda_set(a, report.tree_in_target)
            ok_out, set_out = accept_dtda_set(a, report.tree_outside)
            assert set_in == set_out == report.frontier_states
            assert ok_in == ok_out == report.automaton_accepts_both


def test_comb_refutation_wrong_alphabet():
    rng = random.Random(33)
    a = rand_dtdaset(rng, FAB, max_states=2)
    with pytest.raises(AlphabetMismatch):
        comb_refutation(a, "t1")


def test_comb_refutation_rejects_unknown_target():
    states, init, delta = one_state_core(COMB)
    a = DTDASet(COMB, states, init, delta, ())
    with pytest.raises(ValueError):
        comb_refutation(a, "t3")


def test_frontier_image_matches_recursive_definition():
    rng = random.Random(34)
    for _ in range(30):
        alpha = rand_alphabet(rng)
        a = rand_dtda(rng, alpha, max_states=3)
        for t in enumerate_trees(alpha, 5):
            positions, sequence = run_dtda_states(a, t)
            assert frozenset(sequence) == recursive_reach(a, a.initial, t)


def recursive_reach(core, q, t):
    succ = core.delta[(q, t.label)]
    if not t.children:
        return frozenset({succ[0]})
    out = frozenset()
    for j, child in enumerate(t.children):
        out |= recursive_reach(core, succ[j], child)
    return out
