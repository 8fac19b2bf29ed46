"""Line-oriented text formats for automata, alphabets, and tree lists.

Every file starts with ``@kind`` (buta, dtda, dtdaset, fcheck, pathnfa,
pathdfa, or trees) and embeds its ranked alphabet.  '#' starts a comment.
Serialization is canonical: equal automata produce byte-equal files.
Partial top-down transition tables are completed with a fresh rejecting
sink state on load.
"""

from __future__ import annotations

import re

from .alphabet import RankedAlphabet, format_alphabet, parse_alphabet, valid_name
from .bottomup import BottomUpTA
from .errors import FormatError, ParseError
from .topdown import DTDA, DTDASet, FrontierCheckDTDA
from .trees import Tree, format_tree, infer_alphabet, parse_tree
from .wordauto import WordAutomaton

KINDS = ("buta", "dtda", "dtdaset", "fcheck", "pathnfa", "pathdfa", "trees")

_BUTA_LHS = re.compile(r"([A-Za-z_]\w*)\s*(?:\(([^()]*)\))?\Z")


def _split_sections(text: str):
    sections: dict[str, tuple[str | None, list]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("@"):
            parts = line[1:].split(None, 1)
            name = parts[0]
            inline = parts[1].strip() if len(parts) > 1 else None
            if name in sections:
                raise FormatError(f"duplicate section @{name}", lineno)
            sections[name] = (inline, [])
            current = name
        else:
            if current is None:
                raise FormatError("content before any @section", lineno)
            sections[current][1].append((lineno, line))
    return sections


def _body(sections, name, required=True):
    if name not in sections:
        if required:
            raise FormatError(f"missing section @{name}")
        return []
    return sections[name][1]


def _tokens(sections, name, required=True):
    out = []
    for lineno, line in _body(sections, name, required):
        for tok in line.split():
            if not valid_name(tok):
                raise FormatError(f"bad name {tok!r}", lineno)
            out.append(tok)
    return out


def _alphabet(sections) -> RankedAlphabet:
    lines = _body(sections, "alphabet")
    return parse_alphabet("\n".join(line for _, line in lines))


def _arrow(line, lineno):
    if "->" not in line:
        raise FormatError("expected '->'", lineno)
    lhs, _, rhs = line.partition("->")
    return lhs.strip(), rhs.split()


def _parse_buta(sections) -> BottomUpTA:
    alpha = _alphabet(sections)
    states = tuple(_tokens(sections, "states"))
    final = _tokens(sections, "accept", required=True)
    rules: dict = {}
    for lineno, line in _body(sections, "trans"):
        lhs, rhs = _arrow(line, lineno)
        m = _BUTA_LHS.match(lhs)
        if not m:
            raise FormatError(f"bad rule left-hand side {lhs!r}", lineno)
        sym = m.group(1)
        args = tuple(s.strip() for s in m.group(2).split(",")) if m.group(2) else ()
        if not rhs:
            raise FormatError("rule without result state", lineno)
        key = (sym, args)
        rules[key] = rules.get(key, frozenset()) | frozenset(rhs)
    try:
        return BottomUpTA(alpha, states, rules, frozenset(final))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def _parse_core(sections, alpha, states):
    """Top-down transition lines; partial tables get a fresh sink state."""
    delta: dict = {}
    for lineno, line in _body(sections, "trans"):
        lhs, rhs = _arrow(line, lineno)
        parts = lhs.split()
        if len(parts) != 2:
            raise FormatError(f"expected 'state symbol -> ...', got {line!r}", lineno)
        q, sym = parts
        if sym not in alpha:
            raise FormatError(f"unknown symbol {sym!r}", lineno)
        want = max(alpha.rank(sym), 1)
        if len(rhs) != want:
            raise FormatError(
                f"transition for rank-{alpha.rank(sym)} symbol {sym!r} needs "
                f"{want} successor state(s), got {len(rhs)}",
                lineno,
            )
        delta[(q, sym)] = tuple(rhs)
    missing = [(q, sym) for q in states for sym in alpha.names if (q, sym) not in delta]
    if missing:
        sink = "_sink"
        while sink in states:
            sink += "_"
        states = states + (sink,)
        for q, sym in missing:
            delta[(q, sym)] = (sink,) * max(alpha.rank(sym), 1)
        for sym in alpha.names:
            delta[(sink, sym)] = (sink,) * max(alpha.rank(sym), 1)
    return states, delta


def _initial(sections) -> str:
    toks = _tokens(sections, "initial")
    if len(toks) != 1:
        raise FormatError("@initial must name exactly one state")
    return toks[0]


def _parse_dtda(sections) -> DTDA:
    alpha = _alphabet(sections)
    states = tuple(_tokens(sections, "states"))
    initial = _initial(sections)
    final = frozenset(_tokens(sections, "accept"))
    states, delta = _parse_core(sections, alpha, states)
    try:
        return DTDA(alpha, states, initial, delta, final)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def _parse_accept_sets(sections):
    family = []
    for lineno, line in _body(sections, "accept-sets"):
        rest = line
        while rest:
            rest = rest.lstrip()
            if not rest:
                break
            if not rest.startswith("{"):
                raise FormatError(f"expected '{{', got {rest!r}", lineno)
            end = rest.find("}")
            if end < 0:
                raise FormatError("unterminated state set", lineno)
            family.append(frozenset(rest[1:end].split()))
            rest = rest[end + 1 :]
    return tuple(family)


def _parse_dtdaset(sections) -> DTDASet:
    alpha = _alphabet(sections)
    states = tuple(_tokens(sections, "states"))
    initial = _initial(sections)
    family = _parse_accept_sets(sections)
    states, delta = _parse_core(sections, alpha, states)
    try:
        return DTDASet(alpha, states, initial, delta, family)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def _parse_word_lines(sections, name, tokenize):
    trans: dict = {}
    for lineno, line in _body(sections, name):
        lhs, rhs = _arrow(line, lineno)
        parts = lhs.split()
        if len(parts) != 2:
            raise FormatError(f"expected 'state token -> state...', got {line!r}", lineno)
        p, tok = parts[0], tokenize(parts[1], lineno)
        if not rhs:
            raise FormatError("transition without target state", lineno)
        key = (p, tok)
        trans[key] = trans.get(key, frozenset()) | frozenset(rhs)
    return trans


def _parse_path(sections, kind) -> WordAutomaton:
    alpha = _alphabet(sections)
    states = tuple(_tokens(sections, "states"))
    initial = frozenset(_tokens(sections, "initial"))
    accepting = frozenset(_tokens(sections, "accept", required=True))

    def tokenize(text, lineno):
        if text.isdigit():
            d = int(text)
            if not 1 <= d <= alpha.max_rank:
                raise FormatError(f"direction {d} out of range", lineno)
            return d
        if text not in alpha:
            raise FormatError(f"unknown symbol {text!r}", lineno)
        return text

    trans = _parse_word_lines(sections, "trans", tokenize)
    try:
        auto = WordAutomaton(states, initial, accepting, trans, alphabet=alpha)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if kind == "pathdfa" and not auto.deterministic_complete:
        raise FormatError("@kind pathdfa requires a deterministic complete automaton")
    return auto


def _parse_fcheck(sections) -> FrontierCheckDTDA:
    alpha = _alphabet(sections)
    states = tuple(_tokens(sections, "states"))
    initial = _initial(sections)
    states, delta = _parse_core(sections, alpha, states)
    check_states = tuple(_tokens(sections, "check-states"))
    check_initial = frozenset(_tokens(sections, "check-initial"))
    check_accept = frozenset(_tokens(sections, "check-accept", required=True))

    def tokenize(text, lineno):
        if text not in states:
            raise FormatError(f"checker token {text!r} is not a core state", lineno)
        return text

    trans = _parse_word_lines(sections, "check-trans", tokenize)
    try:
        checker = WordAutomaton(check_states, check_initial, check_accept, trans, tokens=states)
        return FrontierCheckDTDA(alpha, states, initial, delta, checker)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def _parse_trees(sections) -> list[Tree]:
    alpha = _alphabet(sections)
    out = []
    for lineno, line in _body(sections, "trees"):
        try:
            out.append(parse_tree(line, alpha))
        except ParseError as exc:
            raise FormatError(str(exc), lineno) from exc
    return out


def loads(text: str):
    """Parse a single automaton or tree-list file."""
    sections = _split_sections(text)
    if "kind" not in sections or not sections["kind"][0]:
        raise FormatError("file must start with '@kind <kind>'")
    kind = sections["kind"][0]
    if kind == "buta":
        return _parse_buta(sections)
    if kind == "dtda":
        return _parse_dtda(sections)
    if kind == "dtdaset":
        return _parse_dtdaset(sections)
    if kind == "fcheck":
        return _parse_fcheck(sections)
    if kind in ("pathnfa", "pathdfa"):
        return _parse_path(sections, kind)
    if kind == "trees":
        return _parse_trees(sections)
    raise FormatError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


def kind_of(obj) -> str:
    if isinstance(obj, BottomUpTA):
        return "buta"
    if isinstance(obj, DTDA):
        return "dtda"
    if isinstance(obj, DTDASet):
        return "dtdaset"
    if isinstance(obj, FrontierCheckDTDA):
        return "fcheck"
    if isinstance(obj, WordAutomaton):
        return "pathdfa" if obj.deterministic_complete else "pathnfa"
    if isinstance(obj, (list, tuple)) and all(isinstance(t, Tree) for t in obj):
        return "trees"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit_alphabet(alpha, out):
    out.append("@alphabet")
    out.append(format_alphabet(alpha).rstrip("\n"))


def _emit_states(states, out, header="@states"):
    out.append(header)
    if states:
        out.append(" ".join(states))


def _dump_buta(a: BottomUpTA, out):
    _emit_alphabet(a.alphabet, out)
    _emit_states(a.states, out)
    out.append("@accept")
    if a.final:
        out.append(" ".join(sorted(a.final, key=a.states.index)))
    out.append("@trans")
    sidx = {q: i for i, q in enumerate(a.states)}
    for (sym, children), results in sorted(
        a.rules.items(),
        key=lambda kv: (a.alphabet.symbol_index(kv[0][0]), tuple(sidx[c] for c in kv[0][1])),
    ):
        lhs = sym if not children else f"{sym}({','.join(children)})"
        for q in sorted(results, key=sidx.get):
            out.append(f"{lhs} -> {q}")


def _dump_core(alphabet, states, initial, delta, out):
    _emit_states(states, out)
    out.append("@initial")
    out.append(initial)
    sidx = {q: i for i, q in enumerate(states)}
    lines = []
    for (q, sym), succ in delta.items():
        lines.append((sidx[q], alphabet.symbol_index(sym), f"{q} {sym} -> {' '.join(succ)}"))
    return lines


def _dump_dtda(a: DTDA, out):
    _emit_alphabet(a.alphabet, out)
    lines = _dump_core(a.alphabet, a.states, a.initial, a.delta, out)
    out.append("@accept")
    if a.final:
        out.append(" ".join(sorted(a.final, key=a.states.index)))
    out.append("@trans")
    out.extend(line for _, _, line in sorted(lines))


def _dump_dtdaset(a: DTDASet, out):
    _emit_alphabet(a.alphabet, out)
    lines = _dump_core(a.alphabet, a.states, a.initial, a.delta, out)
    out.append("@accept-sets")
    for member in a.family:
        out.append("{" + " ".join(sorted(member)) + "}")
    out.append("@trans")
    out.extend(line for _, _, line in sorted(lines))


def _dump_word(a: WordAutomaton, out, prefix=""):
    sidx = {q: i for i, q in enumerate(a.states)}
    _emit_states(a.states, out, header=f"@{prefix}states")
    out.append(f"@{prefix}initial")
    if a.initial:
        out.append(" ".join(sorted(a.initial, key=sidx.get)))
    out.append(f"@{prefix}accept")
    if a.accepting:
        out.append(" ".join(sorted(a.accepting, key=sidx.get)))
    out.append(f"@{prefix}trans")
    tidx = {tok: i for i, tok in enumerate(a.tokens)}
    for (p, tok), qs in sorted(
        a.transitions.items(), key=lambda kv: (sidx[kv[0][0]], tidx[kv[0][1]])
    ):
        for q in sorted(qs, key=sidx.get):
            out.append(f"{p} {tok} -> {q}")


def _dump_fcheck(a: FrontierCheckDTDA, out):
    _emit_alphabet(a.alphabet, out)
    lines = _dump_core(a.alphabet, a.states, a.initial, a.delta, out)
    out.append("@trans")
    out.extend(line for _, _, line in sorted(lines))
    _dump_word(a.checker, out, prefix="check-")


def dumps(obj) -> str:
    """Serialize to the canonical text format."""
    kind = kind_of(obj)
    out = [f"@kind {kind}"]
    if kind == "buta":
        _dump_buta(obj, out)
    elif kind == "dtda":
        _dump_dtda(obj, out)
    elif kind == "dtdaset":
        _dump_dtdaset(obj, out)
    elif kind == "fcheck":
        _dump_fcheck(obj, out)
    elif kind in ("pathnfa", "pathdfa"):
        if obj.alphabet is None:
            raise TypeError("standalone word automata need a ranked alphabet to serialize")
        _emit_alphabet(obj.alphabet, out)
        _dump_word(obj, out)
    elif kind == "trees":
        _emit_alphabet(infer_alphabet(obj), out)
        out.append("@trees")
        out.extend(format_tree(t) for t in obj)
    return "\n".join(out) + "\n"


def load_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def save_file(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def load_alphabet_file(path) -> RankedAlphabet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_alphabet(fh.read())
