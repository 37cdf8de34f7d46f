"""The combined search: boundary filtering, then pattern matching.

A query carries a facet selection (the boundary), pattern text with a
mode, and paging. Execution bounds the candidate set through the index,
scans each candidate's searchable fields with the compiled state machine,
keeps one hit per listing (first matching field, leftmost-longest span),
and ranks deterministically by (field rank, span start, corpus order).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .corpus import SEARCHABLE_FIELDS, Corpus, Listing, field_text
from .index import BoundaryIndex, FacetSelection, apply_boundaries
from .nfa import MatchSpan, compile_nfa, find_first, match_full
from .patterns import (
    PatternAst,
    fold_pattern_ascii,
    fold_text_ascii,
    literal_pattern,
    parse_pattern,
    words_to_pattern,
)

MODES = ("literal", "regex", "keywords")


class InvalidQueryError(ValueError):
    """Query field is structurally invalid (mode, fields, limit, offset)."""

    def __init__(self, message: str, parameter: str):
        super().__init__(message)
        self.parameter = parameter


class EmptyPatternError(ValueError):
    """Keywords mode needs at least one word."""


class SpanOutOfRangeError(ValueError):
    """Hit span does not fit the listing's current field text."""


@dataclass(frozen=True)
class SearchQuery:
    boundaries: FacetSelection = field(default_factory=dict)
    pattern_text: str = ""
    mode: str = "literal"
    case_sensitive: bool = False
    fields: tuple[str, ...] = SEARCHABLE_FIELDS
    limit: int = 20
    offset: int = 0


@dataclass(frozen=True)
class SearchHit:
    listing_id: str
    matched_field: str
    span: MatchSpan
    field_rank: int


@dataclass(frozen=True)
class ResultPage:
    hits: tuple[SearchHit, ...]
    total: int
    query_echo: SearchQuery


@dataclass(frozen=True)
class Snippet:
    text: str
    span: MatchSpan


def validate_query(query: SearchQuery) -> SearchQuery:
    """Check the structural invariants; returns the query unchanged."""
    if query.mode not in MODES:
        raise InvalidQueryError(f"unknown mode {query.mode!r}", "mode")
    if not query.fields:
        raise InvalidQueryError("fields must not be empty", "fields")
    for name in query.fields:
        if name not in SEARCHABLE_FIELDS:
            raise InvalidQueryError(f"unknown field {name!r}", "fields")
    if query.limit < 1:
        raise InvalidQueryError("limit must be >= 1", "limit")
    if query.offset < 0:
        raise InvalidQueryError("offset must be >= 0", "offset")
    return query


def build_field_pattern(query: SearchQuery) -> PatternAst:
    """Pattern tree for the query's text under its mode.

    literal: the text matches itself, metacharacters carry no meaning;
    an empty text matches everything. regex: full pattern grammar.
    keywords: whitespace-split words, matched against the whole field in
    any order. Case-insensitive queries get their literals folded;
    callers fold field text the same way at match time.
    """
    if query.mode == "literal":
        ast = literal_pattern(query.pattern_text)
    elif query.mode == "regex":
        ast = parse_pattern(query.pattern_text)
    elif query.mode == "keywords":
        words = query.pattern_text.split()
        if not words:
            raise EmptyPatternError("keywords mode needs at least one word")
        ast = words_to_pattern(words)
    else:
        raise InvalidQueryError(f"unknown mode {query.mode!r}", "mode")
    if not query.case_sensitive:
        ast = fold_pattern_ascii(ast)
    return ast


def execute_search(
    corpus: Corpus, index: BoundaryIndex, query: SearchQuery
) -> ResultPage:
    """Run the combined boundary + pattern search and page the ranked hits."""
    validate_query(query)
    nfa = compile_nfa(build_field_pattern(query))
    whole_field = query.mode == "keywords"

    candidates = apply_boundaries(index, query.boundaries)
    hits: list[tuple[tuple[int, int, int], SearchHit]] = []
    for listing_id in candidates:
        listing = corpus.by_id[listing_id]
        for rank, name in enumerate(query.fields):
            text = field_text(listing, name)
            if not query.case_sensitive:
                text = fold_text_ascii(text)
            if whole_field:
                span = MatchSpan(0, len(text)) if match_full(nfa, text) else None
            else:
                span = find_first(nfa, text)
            if span is not None:
                hit = SearchHit(
                    listing_id=listing_id,
                    matched_field=name,
                    span=span,
                    field_rank=rank,
                )
                hits.append(((rank, span.start, index.positions[listing_id]), hit))
                break

    hits.sort(key=lambda pair: pair[0])
    ranked = tuple(hit for _, hit in hits)
    page = ranked[query.offset : query.offset + query.limit]
    return ResultPage(hits=page, total=len(ranked), query_echo=query)


def hit_payload(corpus: Corpus, hit: SearchHit, snippet_context: int = 40) -> dict:
    """Wire shape of one hit, shared by the service and the record-format
    command output so the two stay field-for-field identical."""
    listing = corpus.by_id[hit.listing_id]
    snippet = highlight_snippet(listing, hit, snippet_context)
    return {
        "id": hit.listing_id,
        "title": listing.title,
        "matched_field": hit.matched_field,
        "span": {"start": hit.span.start, "end": hit.span.end},
        "snippet": snippet.text,
        "snippet_span": {"start": snippet.span.start, "end": snippet.span.end},
    }


def query_payload(query: SearchQuery) -> dict:
    """Wire shape of the normalized query echoed back with results."""
    return {
        "q": query.pattern_text,
        "mode": query.mode,
        "case_sensitive": query.case_sensitive,
        "facets": dict(query.boundaries),
        "fields": list(query.fields),
        "limit": query.limit,
        "offset": query.offset,
    }


def highlight_snippet(listing: Listing, hit: SearchHit, context: int) -> Snippet:
    """Clip the matched field to `context` characters around the span and
    re-base the span onto the clipped text."""
    text = field_text(listing, hit.matched_field)
    span = hit.span
    if span.end > len(text):
        raise SpanOutOfRangeError(
            f"span [{span.start},{span.end}) exceeds field of length {len(text)}"
        )
    lo = max(0, span.start - context)
    hi = min(len(text), span.end + context)
    return Snippet(
        text=text[lo:hi], span=MatchSpan(span.start - lo, span.end - lo)
    )
