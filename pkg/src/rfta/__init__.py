"""Deterministic root-to-frontier tree automata, set acceptance, and the
regular path-language bridge, with the full desk-scale decision toolbox."""

from .alphabet import RankedAlphabet, Token, format_alphabet, parse_alphabet
from .bottomup import (
    BottomUpTA,
    accepts_bu,
    bool_ops_bu,
    determinize_bu,
    empty_bu,
    equiv_bu,
    from_finite_language,
    minimize_bu,
    run_bottomup,
    t0_automaton,
    t1_automaton,
    t2_automaton,
    value_set,
)
from .bridge import (
    BoolCombinationVerdict,
    DNFFormula,
    RecognizabilityVerdict,
    is_dtda_recognizable,
    pot_language,
    tfp_dtda,
    verify_bool_combination,
)
from .errors import (
    AlphabetError,
    AlphabetMismatch,
    FormatError,
    NotDeterministic,
    ParseError,
    ResourceLimit,
)
from .fileformat import dumps, load_file, loads, save_file
from .topdown import (
    DTDA,
    DTDADecomposition,
    DTDASet,
    CombRefutation,
    FrontierCheckDTDA,
    accept_dtda,
    accept_dtda_set,
    accept_frontier_check,
    comb_refutation,
    complement_set,
    decompose_set,
    dtda_to_bottomup,
    dtda_to_set,
    intersection_set,
    run_dtda_states,
    set_to_bottomup,
    singleton_dtda,
    t1_frontier_check,
    t2_frontier_check,
    union_set,
)
from .trees import (
    PathWord,
    Position,
    Tree,
    check_path_word,
    check_tree,
    dom,
    dom_plus,
    enumerate_trees,
    format_path_word,
    format_tree,
    fr,
    fr_plus,
    infer_alphabet,
    node_count,
    parse_path_word,
    parse_tree,
    pot_tree,
    print_tree,
    subtree_at,
    trees_of_size,
)
from .wordauto import (
    PathAutomaton,
    WordAutomaton,
    accepts_word,
    all_paths_automaton,
    bool_ops,
    determinize_complete,
    equiv_words,
    from_words,
    minimize_dfa,
)

__version__ = "0.1.0"
