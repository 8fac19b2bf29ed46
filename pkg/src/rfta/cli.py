"""Command-line front end.

Subcommands: run, decide, convert, refute, enumerate.  Exit codes follow a
0/1/2 contract: 0 for accept/positive verdicts, 1 for reject/negative
verdicts, 2 for any error (bad files, alphabet mismatches, resource caps).
"""

from __future__ import annotations

import argparse
import os
import sys

from .bottomup import (
    BottomUpTA,
    accepts_bu,
    determinize_bu,
    empty_bu,
    equiv_bu,
    from_finite_language,
    minimize_bu,
)
from .errors import (
    AlphabetError,
    AlphabetMismatch,
    FormatError,
    NotDeterministic,
    ParseError,
    ResourceLimit,
)
from .fileformat import dumps, load_alphabet_file, load_file
from .topdown import (
    DTDA,
    DTDASet,
    FrontierCheckDTDA,
    accept_dtda,
    accept_dtda_set,
    accept_frontier_check,
    comb_refutation,
    decompose_set,
    dtda_to_bottomup,
    dtda_to_set,
    set_to_bottomup,
    singleton_dtda,
)
from .trees import enumerate_trees, format_path_word, format_tree, parse_tree
from .wordauto import WordAutomaton, determinize_complete, equiv_words, minimize_dfa
from .bridge import is_dtda_recognizable, pot_language, tfp_dtda, verify_bool_combination

_ERRORS = (
    AlphabetError,
    AlphabetMismatch,
    FormatError,
    NotDeterministic,
    ParseError,
    ResourceLimit,
    OSError,
    ValueError,
    TypeError,
    KeyError,
)


def _emit_kv(pairs):
    for key, value in pairs:
        print(f"{key}: {value}")


def _as_bottomup(obj) -> BottomUpTA:
    if isinstance(obj, BottomUpTA):
        return obj
    if isinstance(obj, DTDA):
        return dtda_to_bottomup(obj)
    if isinstance(obj, DTDASet):
        return set_to_bottomup(obj)
    raise ValueError(f"need a tree automaton, got a {type(obj).__name__}")


def _cmd_run(args) -> int:
    obj = load_file(args.automaton)
    detail = []
    if isinstance(obj, BottomUpTA):
        tree = parse_tree(args.tree, obj.alphabet)
        accepted = accepts_bu(obj, tree)
    elif isinstance(obj, DTDA):
        tree = parse_tree(args.tree, obj.alphabet)
        accepted = accept_dtda(obj, tree)
    elif isinstance(obj, DTDASet):
        tree = parse_tree(args.tree, obj.alphabet)
        accepted, reached = accept_dtda_set(obj, tree)
        detail.append(("frontier_states", "{" + " ".join(sorted(reached)) + "}"))
    elif isinstance(obj, FrontierCheckDTDA):
        tree = parse_tree(args.tree, obj.alphabet)
        accepted = accept_frontier_check(obj, tree)
    else:
        raise ValueError("run needs a tree automaton file (buta, dtda, dtdaset, or fcheck)")
    if args.structured:
        _emit_kv([("verdict", "accept" if accepted else "reject")] + detail)
    else:
        print("ACCEPT" if accepted else "REJECT", *(f"{v}" for _, v in detail))
    return 0 if accepted else 1


def _cmd_decide(args) -> int:
    question = args.question
    if question == "dtda-recognizable":
        (path,) = _need_files(args, 1)
        verdict = is_dtda_recognizable(_as_bottomup(load_file(path)))
        if args.structured:
            _emit_kv(verdict.to_kv())
        elif verdict.recognizable:
            print("YES: the language is recognizable top-down deterministically")
        else:
            print("NO: not recognizable top-down deterministically")
            print(f"counterexample (built from paths, outside the language): "
                  f"{format_tree(verdict.counterexample)}")
        return 0 if verdict.recognizable else 1

    if question == "equiv":
        a_path, b_path = _need_files(args, 2)
        a, b = load_file(a_path), load_file(b_path)
        if isinstance(a, WordAutomaton) and isinstance(b, WordAutomaton):
            equal, witness = equiv_words(a, b)
            witness_text = None if witness is None else format_path_word(witness)
        else:
            equal, witness = equiv_bu(_as_bottomup(a), _as_bottomup(b))
            witness_text = None if witness is None else format_tree(witness)
        if args.structured:
            pairs = [("equivalent", "yes" if equal else "no")]
            if witness_text is not None:
                pairs.append(("counterexample", witness_text))
            _emit_kv(pairs)
        else:
            print("YES: equivalent" if equal else f"NO: differs on {witness_text}")
        return 0 if equal else 1

    if question == "empty":
        (path,) = _need_files(args, 1)
        is_empty, witness = empty_bu(_as_bottomup(load_file(path)))
        if args.structured:
            pairs = [("empty", "yes" if is_empty else "no")]
            if witness is not None:
                pairs.append(("witness", format_tree(witness)))
            _emit_kv(pairs)
        else:
            print("YES: empty" if is_empty else f"NO: accepts {format_tree(witness)}")
        return 0 if is_empty else 1

    if question == "boolcomb":
        if len(args.files) < 2:
            raise ValueError("boolcomb needs a tree automaton and at least one path automaton")
        tree_lang = _as_bottomup(load_file(args.files[0]))
        candidates = []
        for path in args.files[1:]:
            obj = load_file(path)
            if not isinstance(obj, WordAutomaton):
                raise ValueError(f"{path} is not a path automaton")
            candidates.append(obj)
        verdict = verify_bool_combination(tree_lang, candidates)
        if args.structured:
            _emit_kv(verdict.to_kv())
        elif verdict.formula is not None:
            print("YES: Boolean combination found")
            print("clauses:", " ".join(verdict.formula.clauses) or "(none)")
        else:
            print("NO: no Boolean combination of these path languages")
            print(f"witness in language:  {format_tree(verdict.witness_in)}")
            print(f"witness outside:      {format_tree(verdict.witness_out)}")
        return 0 if verdict.formula is not None else 1

    raise ValueError(f"unknown question {question!r}")


def _need_files(args, n):
    if len(args.files) != n:
        raise ValueError(f"{args.question} needs exactly {n} file argument(s)")
    return args.files


def _cmd_convert(args) -> int:
    obj = load_file(args.input)
    to = args.to
    result = None

    if isinstance(obj, list):  # trees file
        if to == "buta":
            result = from_finite_language(obj)
        elif to in ("dtda", "dtdaset"):
            if len(obj) != 1:
                raise ValueError(f"singleton conversion needs exactly one tree, got {len(obj)}")
            dtda, dtda_set = singleton_dtda(obj[0])
            result = dtda if to == "dtda" else dtda_set
    elif isinstance(obj, BottomUpTA):
        if to == "buta":
            result = determinize_bu(obj)
            if args.minimize:
                result = minimize_bu(result)
        elif to == "pathnfa":
            result = pot_language(obj)
        elif to == "pathdfa":
            result = determinize_complete(pot_language(obj))
            if args.minimize:
                result = minimize_dfa(result)
    elif isinstance(obj, WordAutomaton):
        if to == "pathdfa":
            result = determinize_complete(obj)
            if args.minimize:
                result = minimize_dfa(result)
        elif to == "dtda":
            result = tfp_dtda(obj)
    elif isinstance(obj, DTDA):
        if to == "dtdaset":
            result = dtda_to_set(obj)
        elif to == "buta":
            result = dtda_to_bottomup(obj)
    elif isinstance(obj, DTDASet):
        if to == "buta":
            result = set_to_bottomup(obj)
        elif to == "dnf":
            return _convert_decompose(obj, args)

    if result is None:
        raise ValueError(f"unsupported conversion to {to!r} from this file kind")
    text = dumps(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


def _convert_decompose(obj: DTDASet, args) -> int:
    if not args.out_dir:
        raise ValueError("--to dnf needs --out-dir for the component files")
    os.makedirs(args.out_dir, exist_ok=True)
    decomposition = decompose_set(obj)
    written = []
    for name, component in decomposition.components.items():
        path = os.path.join(args.out_dir, f"{name}.dtda")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps(component))
        written.append(path)
    formula_path = os.path.join(args.out_dir, "formula.txt")
    with open(formula_path, "w", encoding="utf-8") as fh:
        fh.write("@kind dnf\n@clauses\n")
        for positive, negated in decomposition.clauses:
            terms = [positive] + [f"~{n}" for n in negated]
            fh.write(" & ".join(terms) + "\n")
    written.append(formula_path)
    for path in written:
        print(path)
    return 0


def _cmd_refute(args) -> int:
    obj = load_file(args.automaton)
    if not isinstance(obj, DTDASet):
        raise ValueError("refute needs a dtdaset file")
    report = comb_refutation(obj, args.target)
    if args.structured:
        _emit_kv(report.to_kv())
    else:
        print(report)
    return 0


def _cmd_enumerate(args) -> int:
    alphabet = load_alphabet_file(args.alphabet)
    for tree in enumerate_trees(alphabet, args.max_nodes):
        print(format_tree(tree))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rfta",
        description="Run, convert, combine, decide, and refute tree automata "
        "over ranked alphabets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an automaton on a tree")
    p_run.add_argument("automaton", help="automaton file (buta, dtda, dtdaset, fcheck)")
    p_run.add_argument("tree", help="tree in term syntax, e.g. 'a(b(c,d),c)'")
    p_run.add_argument("--structured", action="store_true", help="key: value output")
    p_run.set_defaults(func=_cmd_run)

    p_decide = sub.add_parser("decide", help="decision procedures")
    p_decide.add_argument(
        "question", choices=["dtda-recognizable", "equiv", "empty", "boolcomb"]
    )
    p_decide.add_argument("files", nargs="+", help="input automaton files")
    p_decide.add_argument("--structured", action="store_true")
    p_decide.set_defaults(func=_cmd_decide)

    p_convert = sub.add_parser("convert", help="convert between automaton kinds")
    p_convert.add_argument("input")
    p_convert.add_argument(
        "--to",
        required=True,
        choices=["buta", "dtda", "dtdaset", "pathnfa", "pathdfa", "dnf"],
    )
    p_convert.add_argument("-o", "--output", help="output file (default: stdout)")
    p_convert.add_argument("--minimize", action="store_true", help="minimize the result")
    p_convert.add_argument("--out-dir", help="directory for --to dnf component files")
    p_convert.set_defaults(func=_cmd_convert)

    p_refute = sub.add_parser(
        "refute", help="build the right-comb refutation for a set-acceptance automaton"
    )
    p_refute.add_argument("automaton", help="dtdaset file over the alphabet a:2,c:0,d:0,e:0")
    p_refute.add_argument("--target", required=True, choices=["t1", "t2"])
    p_refute.add_argument("--structured", action="store_true")
    p_refute.set_defaults(func=_cmd_refute)

    p_enum = sub.add_parser("enumerate", help="list all trees up to a node count")
    p_enum.add_argument("alphabet", help="alphabet file with name:rank lines")
    p_enum.add_argument("max_nodes", type=int)
    p_enum.set_defaults(func=_cmd_enumerate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
