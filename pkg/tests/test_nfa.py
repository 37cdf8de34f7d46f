"""Automaton compilation and simulation against the brute-force oracle."""

import itertools

import pytest
from hypothesis import given, settings

from boundsearch.nfa import (
    MatchSpan,
    compile_nfa,
    find_first,
    match_full,
    nfa_out_degrees,
    scan_trace,
)
from boundsearch.patterns import Epsilon, Literal, oracle_match, parse_pattern

from strategies import patterns, strings_over


def all_strings(alphabet, max_len):
    for n in range(max_len + 1):
        for combo in itertools.product(alphabet, repeat=n):
            yield "".join(combo)


def brute_force_first(ast, text):
    """Leftmost start, longest end, straight from the oracle."""
    for start in range(len(text) + 1):
        longest = None
        for end in range(start, len(text) + 1):
            if oracle_match(ast, text[start:end]):
                longest = end
        if longest is not None:
            return MatchSpan(start, longest)
    return None


class TestCompile:
    def test_epsilon_accepts_only_empty(self):
        nfa = compile_nfa(Epsilon())
        assert nfa.state_count == 2
        assert match_full(nfa, "")
        assert not match_full(nfa, "a")

    def test_single_literal(self):
        nfa = compile_nfa(Literal("a"))
        for s in all_strings("ab", 3):
            assert match_full(nfa, s) == (s == "a")

    def test_word_rejects_whole_longer_string(self):
        nfa = compile_nfa(parse_pattern("XYZ"))
        assert match_full(nfa, "XYZ")
        assert not match_full(nfa, "ZXYXYZ")

    @settings(max_examples=300, deadline=None)
    @given(patterns(max_depth=4))
    def test_thompson_shape(self, ast):
        nfa = compile_nfa(ast)
        degrees = nfa_out_degrees(nfa)
        assert degrees[nfa.accept] == 0
        assert max(degrees) <= 2


class TestMatchFull:
    def test_any_star_accepts_everything(self):
        nfa = compile_nfa(parse_pattern(".*"))
        for s in ["", "a", "xyz", "a b\nc", "αβγ"]:
            assert match_full(nfa, s)

    def test_exhaustive_small_patterns_agree_with_oracle(self):
        # every tree of depth <= 2 over {a,b} x every string of length <= 4
        leaves = [Epsilon(), Literal("a"), Literal("b")]
        depth2 = list(leaves)
        from boundsearch.patterns import AnySymbol, Concat, Star, Union

        leaves.append(AnySymbol())
        depth2 = list(leaves)
        for x in leaves:
            depth2.append(Star(x))
        for x in leaves:
            for y in leaves:
                depth2.append(Concat(x, y))
                depth2.append(Union(x, y))
        strings = list(all_strings("ab", 4))
        for ast in depth2:
            nfa = compile_nfa(ast)
            for s in strings:
                assert match_full(nfa, s) == oracle_match(ast, s), (ast, s)

    @settings(max_examples=500, deadline=None)
    @given(patterns(max_depth=4), strings_over("ab", max_len=6))
    def test_random_patterns_agree_with_oracle(self, ast, s):
        assert match_full(compile_nfa(ast), s) == oracle_match(ast, s)


class TestFindFirst:
    def test_scan_restarts_until_suffix_matches(self):
        nfa = compile_nfa(parse_pattern("XYZ"))
        assert find_first(nfa, "ZXYXYZ") == MatchSpan(3, 6)

    def test_no_substring_matches(self):
        nfa = compile_nfa(parse_pattern("XYZ"))
        assert find_first(nfa, "ZXYXY") is None
        # independent check over every substring
        ast = parse_pattern("XYZ")
        assert brute_force_first(ast, "ZXYXY") is None

    def test_epsilon_matches_at_position_zero(self):
        assert find_first(compile_nfa(parse_pattern("")), "abc") == MatchSpan(0, 0)

    def test_longest_at_leftmost_start(self):
        nfa = compile_nfa(parse_pattern("ab*"))
        assert find_first(nfa, "xabbbz") == MatchSpan(1, 5)

    def test_leftmost_start_wins_over_longer_later_match(self):
        nfa = compile_nfa(parse_pattern("ab|bcd"))
        assert find_first(nfa, "xabcd") == MatchSpan(1, 3)

    @settings(max_examples=400, deadline=None)
    @given(patterns(max_depth=4), strings_over("ab", max_len=6))
    def test_agrees_with_substring_oracle(self, ast, s):
        assert find_first(compile_nfa(ast), s) == brute_force_first(ast, s)


class TestScanTrace:
    def test_walkthrough_restarts_and_acceptance(self):
        nfa = compile_nfa(parse_pattern("XYZ"))
        traces = scan_trace(nfa, "ZXYXYZ")
        assert [t.start for t in traces] == [0, 1, 2, 3]
        assert [t.accepted for t in traces] == [False, False, False, True]
        assert traces[3].matched_end == 6
        # the first restart dies on the very first symbol
        assert traces[0].steps[0].symbol == "Z"
        assert traces[0].steps[0].states == ()
        # the second survives X and Y, then dies
        assert [s.symbol for s in traces[1].steps] == ["X", "Y", "X"]
        assert traces[1].steps[-1].states == ()

    def test_single_symbol_accept(self):
        nfa = compile_nfa(parse_pattern("X"))
        traces = scan_trace(nfa, "X")
        assert len(traces) == 1
        assert traces[0].accepted and traces[0].matched_end == 1

    def test_empty_input_no_steps(self):
        nfa = compile_nfa(parse_pattern("XYZ"))
        traces = scan_trace(nfa, "")
        assert len(traces) == 1
        assert traces[0].steps == ()
        assert not traces[0].accepted

    @settings(max_examples=200, deadline=None)
    @given(patterns(max_depth=3), strings_over("ab", max_len=5))
    def test_verdict_agrees_with_find_first(self, ast, s):
        nfa = compile_nfa(ast)
        traces = scan_trace(nfa, s)
        span = find_first(nfa, s)
        if span is None:
            assert all(not t.accepted for t in traces)
            assert len(traces) == len(s) + 1
        else:
            assert traces[-1].start == span.start
            assert traces[-1].matched_end == span.end


class TestSpanType:
    def test_rejects_inverted_span(self):
        with pytest.raises(ValueError):
            MatchSpan(3, 2)
