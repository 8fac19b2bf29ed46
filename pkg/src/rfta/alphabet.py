"""Ranked alphabets and the token alphabet of labeled paths.

A ranked alphabet assigns every symbol a fixed arity.  From it we derive
the direction set ``{1, ..., r}`` (``r`` the maximal rank) and the path
token alphabet: symbol names interleaved with directions.  Directions are
plain integers and symbols are strings, so the two token kinds can never
collide; symbol names made of digits only are rejected outright.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import AlphabetError, AlphabetMismatch, FormatError

# A path token: either a symbol name or a child direction.
Token = str | int

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def valid_name(name: str) -> bool:
    return bool(_NAME.match(name))


@dataclass(frozen=True)
class RankedAlphabet:
    """Finite symbol set with fixed ranks, in declaration order.

    Declaration order is the canonical symbol order used everywhere a
    reproducible ordering is needed (tree enumeration, counterexample
    tie-breaking, serialization).
    """

    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple((str(n), int(r)) for n, r in self.symbols))
        seen = set()
        for name, rank in self.symbols:
            if not valid_name(name):
                raise AlphabetError(f"bad symbol name {name!r}")
            if name in seen:
                raise AlphabetError(f"duplicate symbol {name!r}")
            if rank < 0:
                raise AlphabetError(f"negative rank for symbol {name!r}")
            seen.add(name)

    @classmethod
    def of(cls, spec) -> "RankedAlphabet":
        """Build from a dict, an iterable of (name, rank) pairs, or pass through."""
        if isinstance(spec, RankedAlphabet):
            return spec
        if isinstance(spec, dict):
            return cls(tuple(spec.items()))
        return cls(tuple(spec))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.symbols)

    @property
    def max_rank(self) -> int:
        return max((r for _, r in self.symbols), default=0)

    @property
    def directions(self) -> tuple[int, ...]:
        return tuple(range(1, self.max_rank + 1))

    @property
    def gamma(self) -> tuple[Token, ...]:
        """Path tokens: symbols in declaration order, then directions ascending."""
        return self.names + self.directions

    def __contains__(self, name) -> bool:
        return any(n == name for n, _ in self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def rank(self, name: str) -> int:
        for n, r in self.symbols:
            if n == name:
                return r
        raise AlphabetError(f"unknown symbol {name!r}")

    def symbol_index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.symbols):
            if n == name:
                return i
        raise AlphabetError(f"unknown symbol {name!r}")

    def token_index(self, token: Token) -> int:
        """Position of a token in the canonical path-token order."""
        if isinstance(token, int):
            if not 1 <= token <= self.max_rank:
                raise AlphabetError(f"direction {token} out of range")
            return len(self.symbols) + token - 1
        return self.symbol_index(token)

    def symbols_of_rank(self, rank: int) -> tuple[str, ...]:
        return tuple(n for n, r in self.symbols if r == rank)

    def nullary(self) -> tuple[str, ...]:
        return self.symbols_of_rank(0)

    def same_symbols(self, other: "RankedAlphabet") -> bool:
        """Equality as symbol sets; declaration order is ignored."""
        return set(self.symbols) == set(other.symbols)

    def require_same(self, other: "RankedAlphabet"):
        if not self.same_symbols(other):
            raise AlphabetMismatch(
                f"alphabet mismatch: {dict(self.symbols)} vs {dict(other.symbols)}"
            )


def parse_alphabet(text: str) -> RankedAlphabet:
    """Parse the ``name:rank`` line format ('#' comments, blank lines ignored)."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise FormatError(f"expected 'name:rank', got {line!r}", lineno)
        name, _, rank = line.partition(":")
        name, rank = name.strip(), rank.strip()
        if not rank.isdigit():
            raise FormatError(f"bad rank {rank!r} for symbol {name!r}", lineno)
        pairs.append((name, int(rank)))
    try:
        return RankedAlphabet(tuple(pairs))
    except AlphabetError as exc:
        raise FormatError(str(exc)) from exc


def format_alphabet(alphabet: RankedAlphabet) -> str:
    return "\n".join(f"{n}:{r}" for n, r in alphabet.symbols) + "\n"
