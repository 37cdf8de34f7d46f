"""Faceted listing search: keyword facets bound the candidate set, a
pattern state machine filters and locates matches inside it."""

from .corpus import (
    Corpus,
    CorpusLoadError,
    FacetSchema,
    Listing,
    dump_corpus,
    field_text,
    get_listing,
    load_corpus,
)
from .index import BoundaryIndex, apply_boundaries, build_index
from .nfa import MatchSpan, Nfa, compile_nfa, find_first, match_full, scan_trace
from .patterns import (
    AnySymbol,
    Concat,
    Epsilon,
    Literal,
    PatternAst,
    PatternSyntaxError,
    Star,
    Union,
    literal_pattern,
    oracle_match,
    parse_pattern,
    pattern_to_text,
    words_to_pattern,
)
from .search import (
    ResultPage,
    SearchHit,
    SearchQuery,
    build_field_pattern,
    execute_search,
    highlight_snippet,
)

__version__ = "0.1.0"

__all__ = [
    "AnySymbol",
    "BoundaryIndex",
    "Concat",
    "Corpus",
    "CorpusLoadError",
    "Epsilon",
    "FacetSchema",
    "Listing",
    "Literal",
    "MatchSpan",
    "Nfa",
    "PatternAst",
    "PatternSyntaxError",
    "ResultPage",
    "SearchHit",
    "SearchQuery",
    "Star",
    "Union",
    "apply_boundaries",
    "build_field_pattern",
    "build_index",
    "compile_nfa",
    "dump_corpus",
    "execute_search",
    "field_text",
    "find_first",
    "get_listing",
    "highlight_snippet",
    "literal_pattern",
    "load_corpus",
    "match_full",
    "oracle_match",
    "parse_pattern",
    "pattern_to_text",
    "scan_trace",
    "words_to_pattern",
]
