"""Regular-expression syntax trees, concrete syntax, and a brute-force matcher.

The pattern language is deliberately small: literals, ``.`` (any symbol),
``|`` (union), ``*`` (repetition), parentheses, and ``\\`` escapes.
Precedence is star > concatenation > union. Everything here is pure and
immutable; the automaton lives in :mod:`boundsearch.nfa`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
METACHARACTERS = frozenset(".|*()\\")

MAX_PATTERN_WORDS = 4


@dataclass(frozen=True)
class Epsilon:
    """Matches exactly the empty string."""


@dataclass(frozen=True)
class Literal:
    """Matches exactly one symbol (a Unicode scalar)."""

    symbol: str

    def __post_init__(self) -> None:
        if len(self.symbol) != 1:
            raise ValueError(f"Literal carries one symbol, got {self.symbol!r}")


@dataclass(frozen=True)
class AnySymbol:
    """Matches any single symbol (the alphabet wildcard)."""


@dataclass(frozen=True)
class Concat:
    left: "PatternAst"
    right: "PatternAst"


@dataclass(frozen=True)
class Union:
    left: "PatternAst"
    right: "PatternAst"


@dataclass(frozen=True)
class Star:
    inner: "PatternAst"


PatternAst = Epsilon | Literal | AnySymbol | Concat | Union | Star


class PatternSyntaxError(ValueError):
    """Pattern text is not valid under the pattern grammar."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnbalancedParenthesisError(PatternSyntaxError):
    pass


class DanglingStarError(PatternSyntaxError):
    pass


class TrailingEscapeError(PatternSyntaxError):
    pass


class WordListError(ValueError):
    """Word list cannot be translated into a pattern."""


class EmptyWordListError(WordListError):
    pass


class TooManyWordsError(WordListError):
    pass


class EmptyWordError(WordListError):
    pass


def parse_pattern(text: str) -> PatternAst:
    """Parse pattern text into a syntax tree.

    Grammar: any non-metacharacter is a literal; ``\\`` escapes the next
    character; ``.`` matches any symbol; ``*`` repeats the preceding factor;
    ``|`` alternates; parentheses group. An empty pattern (or empty group,
    or empty union branch) is Epsilon.

    Raises :class:`UnbalancedParenthesisError`, :class:`DanglingStarError`
    or :class:`TrailingEscapeError`, each carrying the offending offset.
    """
    parser = _Parser(text)
    ast = parser.parse_union()
    if parser.pos < len(text):
        # parse_union only stops early on an unmatched ')'
        raise UnbalancedParenthesisError("unmatched ')'", parser.pos)
    return ast


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str | None:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse_union(self) -> PatternAst:
        node = self.parse_concat()
        while self.peek() == "|":
            self.pos += 1
            node = Union(node, self.parse_concat())
        return node

    def parse_concat(self) -> PatternAst:
        parts: list[PatternAst] = []
        while True:
            ch = self.peek()
            if ch is None or ch in "|)":
                break
            if ch == "*":
                if not parts:
                    raise DanglingStarError("'*' has no operand", self.pos)
                self.pos += 1
                parts[-1] = Star(parts[-1])
                continue
            parts.append(self.parse_atom())
        if not parts:
            return Epsilon()
        return reduce(Concat, parts)

    def parse_atom(self) -> PatternAst:
        ch = self.text[self.pos]
        if ch == "(":
            open_pos = self.pos
            self.pos += 1
            node = self.parse_union()
            if self.peek() != ")":
                raise UnbalancedParenthesisError("unmatched '('", open_pos)
            self.pos += 1
            return node
        if ch == "\\":
            if self.pos + 1 >= len(self.text):
                raise TrailingEscapeError("escape at end of pattern", self.pos)
            self.pos += 2
            return Literal(self.text[self.pos - 1])
        if ch == ".":
            self.pos += 1
            return AnySymbol()
        self.pos += 1
        return Literal(ch)


def pattern_to_text(ast: PatternAst) -> str:
    """Render a tree back to pattern text; ``parse_pattern`` of the result
    is language-equivalent to ``ast``."""
    if isinstance(ast, Epsilon):
        return "()"
    if isinstance(ast, Literal):
        if ast.symbol in METACHARACTERS:
            return "\\" + ast.symbol
        return ast.symbol
    if isinstance(ast, AnySymbol):
        return "."
    if isinstance(ast, Star):
        inner = pattern_to_text(ast.inner)
        if isinstance(ast.inner, (Concat, Union)):
            inner = f"({inner})"
        return inner + "*"
    if isinstance(ast, Concat):
        parts = []
        for child in (ast.left, ast.right):
            text = pattern_to_text(child)
            if isinstance(child, Union):
                text = f"({text})"
            parts.append(text)
        return "".join(parts)
    if isinstance(ast, Union):
        return f"{pattern_to_text(ast.left)}|{pattern_to_text(ast.right)}"
    raise TypeError(f"not a pattern node: {ast!r}")


def literal_pattern(text: str) -> PatternAst:
    """Pattern matching exactly ``text`` (metacharacters carry no meaning)."""
    if not text:
        return Epsilon()
    return reduce(lambda rest, ch: Concat(Literal(ch), rest), reversed(text[:-1]), Literal(text[-1]))


def fold_pattern_ascii(ast: PatternAst) -> PatternAst:
    """Lowercase every ASCII letter literal, for case-insensitive matching
    against text folded the same way."""
    if isinstance(ast, Literal):
        folded = fold_text_ascii(ast.symbol)
        return ast if folded == ast.symbol else Literal(folded)
    if isinstance(ast, Concat):
        return Concat(fold_pattern_ascii(ast.left), fold_pattern_ascii(ast.right))
    if isinstance(ast, Union):
        return Union(fold_pattern_ascii(ast.left), fold_pattern_ascii(ast.right))
    if isinstance(ast, Star):
        return Star(fold_pattern_ascii(ast.inner))
    return ast


_ASCII_FOLD = str.maketrans(
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ", "abcdefghijklmnopqrstuvwxyz"
)


def fold_text_ascii(text: str) -> str:
    """ASCII-only lowercasing; leaves every non-ASCII scalar alone, so
    offsets are preserved one-for-one."""
    return text.translate(_ASCII_FOLD)


def words_to_pattern(words: list[str]) -> PatternAst:
    """Translate a word list into a pattern accepting every string that
    contains all the words as substrings, in any order.

    Builds the union over all orderings of ``.* w1 .* w2 ... .*``. The
    ordering count is factorial, so the word count is capped at
    ``MAX_PATTERN_WORDS``.
    """
    if not words:
        raise EmptyWordListError("word list is empty")
    if len(words) > MAX_PATTERN_WORDS:
        raise TooManyWordsError(
            f"{len(words)} words exceeds the {MAX_PATTERN_WORDS}-word cap"
        )
    for word in words:
        if not word:
            raise EmptyWordError("words must be non-empty")

    def branch(ordering: tuple[str, ...]) -> PatternAst:
        parts: list[PatternAst] = [Star(AnySymbol())]
        for word in ordering:
            parts.append(literal_pattern(word))
            parts.append(Star(AnySymbol()))
        return reduce(Concat, parts)

    branches = [branch(p) for p in itertools.permutations(words)]
    return reduce(Union, branches)


def oracle_match(ast: PatternAst, text: str) -> bool:
    """Set-based membership check by structural recursion over the tree.

    Ground truth for the automaton: given ``text`` of length n, computes
    for each start index the set of end indices the node can reach.
    Intended for short inputs only (cost grows quickly with n).
    """
    ends = _reachable_ends(ast, text, 0, {})
    return len(text) in ends


def _reachable_ends(
    ast: PatternAst,
    text: str,
    start: int,
    memo: dict[tuple[int, int], frozenset[int]],
) -> frozenset[int]:
    key = (id(ast), start)
    cached = memo.get(key)
    if cached is not None:
        return cached

    result: frozenset[int]
    if isinstance(ast, Epsilon):
        result = frozenset((start,))
    elif isinstance(ast, Literal):
        if start < len(text) and text[start] == ast.symbol:
            result = frozenset((start + 1,))
        else:
            result = frozenset()
    elif isinstance(ast, AnySymbol):
        result = frozenset((start + 1,)) if start < len(text) else frozenset()
    elif isinstance(ast, Concat):
        ends: set[int] = set()
        for mid in _reachable_ends(ast.left, text, start, memo):
            ends.update(_reachable_ends(ast.right, text, mid, memo))
        result = frozenset(ends)
    elif isinstance(ast, Union):
        result = _reachable_ends(ast.left, text, start, memo) | _reachable_ends(
            ast.right, text, start, memo
        )
    elif isinstance(ast, Star):
        # fixpoint of: start, plus everything reachable by one more inner match
        reached = {start}
        frontier = [start]
        while frontier:
            pos = frontier.pop()
            for nxt in _reachable_ends(ast.inner, text, pos, memo):
                if nxt not in reached:
                    reached.add(nxt)
                    frontier.append(nxt)
        result = frozenset(reached)
    else:
        raise TypeError(f"not a pattern node: {ast!r}")

    memo[key] = result
    return result
