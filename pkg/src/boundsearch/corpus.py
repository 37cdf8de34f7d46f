"""Listing records, their facet schema, and the line-delimited corpus format.

A corpus file is UTF-8 JSON lines: the first line holds the facet schema,
every following non-empty line one listing. Loading validates everything
and reports all problems at once, so operators see the full damage in a
single pass.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import IO, Iterable, Mapping

FACET_NAMES = ("property_type", "transaction_type", "location_state")

SEARCHABLE_FIELDS = (
    "location_street",
    "location_locality",
    "location_state",
    "title",
    "description",
)

LISTING_KEYS = (
    "id",
    "title",
    "description",
    "location_state",
    "location_locality",
    "location_street",
    "property_type",
    "transaction_type",
    "price",
)


class CorpusError(Exception):
    """Base for corpus-format problems; carries the 1-based file line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MalformedRecordError(CorpusError):
    pass


class MissingFieldError(CorpusError):
    def __init__(self, field: str, line: int):
        super().__init__(f"missing field {field!r}", line)
        self.field = field


class UnknownFacetValueError(CorpusError):
    def __init__(self, facet: str, value: str, line: int):
        super().__init__(f"unknown {facet} value {value!r}", line)
        self.facet = facet
        self.value = value


class DuplicateIdError(CorpusError):
    def __init__(self, listing_id: str, line: int):
        super().__init__(f"duplicate id {listing_id!r}", line)
        self.listing_id = listing_id


class CorpusLoadError(Exception):
    """Aggregate of every problem found in one load pass."""

    def __init__(self, errors: list[CorpusError]):
        super().__init__(
            f"{len(errors)} corpus error(s): " + "; ".join(str(e) for e in errors)
        )
        self.errors = errors


class UnknownFieldError(KeyError):
    pass


@dataclass(frozen=True)
class Listing:
    id: str
    title: str
    description: str
    location_state: str
    location_locality: str
    location_street: str
    property_type: str
    transaction_type: str
    price: int | None = None


@dataclass(frozen=True)
class FacetSchema:
    """Facet name -> ordered, duplicate-free tuple of allowed values."""

    values: Mapping[str, tuple[str, ...]]

    def allowed(self, facet: str) -> tuple[str, ...]:
        return self.values[facet]

    def __iter__(self):
        return iter(self.values)


@dataclass(frozen=True)
class Corpus:
    schema: FacetSchema
    listings: tuple[Listing, ...]

    @cached_property
    def by_id(self) -> Mapping[str, Listing]:
        return {listing.id: listing for listing in self.listings}


def load_corpus(source: str | Path | IO[str] | IO[bytes]) -> Corpus:
    """Load and validate a corpus from a path or an open stream.

    Raises :class:`CorpusLoadError` carrying every
    :class:`CorpusError` found; listing order equals file order.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as handle:
            return _load_lines(handle)
    return _load_lines(source)


def _decode(line: str | bytes) -> str:
    return line.decode("utf-8") if isinstance(line, bytes) else line


def _load_lines(lines: Iterable[str | bytes]) -> Corpus:
    errors: list[CorpusError] = []
    schema: FacetSchema | None = None
    listings: list[Listing] = []
    seen_ids: dict[str, int] = {}
    line_no = 0

    for raw in lines:
        line_no += 1
        text = _decode(raw).strip()
        if line_no == 1:
            try:
                schema = _parse_schema(text, line_no)
            except CorpusError as err:
                errors.append(err)
            continue
        if not text:
            continue
        if schema is None:
            continue  # schema line was bad; record errors for it only once
        try:
            listing = _parse_listing(text, line_no, schema)
        except CorpusError as err:
            errors.append(err)
            continue
        if listing.id in seen_ids:
            errors.append(DuplicateIdError(listing.id, line_no))
            continue
        seen_ids[listing.id] = line_no
        listings.append(listing)

    if line_no == 0:
        errors.append(MalformedRecordError("empty file, schema line required", 1))
    if errors:
        raise CorpusLoadError(errors)
    assert schema is not None
    return Corpus(schema=schema, listings=tuple(listings))


def _parse_schema(text: str, line: int) -> FacetSchema:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as err:
        raise MalformedRecordError(f"schema line is not valid JSON: {err.msg}", line)
    if not isinstance(payload, dict) or set(payload) != {"schema"}:
        raise MalformedRecordError('schema line must be {"schema": {...}}', line)
    body = payload["schema"]
    if not isinstance(body, dict) or set(body) != set(FACET_NAMES):
        raise MalformedRecordError(
            f"schema must define exactly the facets {', '.join(FACET_NAMES)}", line
        )
    values: dict[str, tuple[str, ...]] = {}
    for facet in FACET_NAMES:
        allowed = body[facet]
        if (
            not isinstance(allowed, list)
            or not allowed
            or not all(isinstance(v, str) for v in allowed)
        ):
            raise MalformedRecordError(
                f"facet {facet!r} needs a non-empty list of string values", line
            )
        if len(set(allowed)) != len(allowed):
            raise MalformedRecordError(f"facet {facet!r} has duplicate values", line)
        values[facet] = tuple(allowed)
    return FacetSchema(values=values)


def _parse_listing(text: str, line: int, schema: FacetSchema) -> Listing:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as err:
        raise MalformedRecordError(f"not valid JSON: {err.msg}", line)
    if not isinstance(payload, dict):
        raise MalformedRecordError("listing record must be a JSON object", line)

    unknown = set(payload) - set(LISTING_KEYS)
    if unknown:
        raise MalformedRecordError(
            f"unknown field(s): {', '.join(sorted(unknown))}", line
        )

    for key in ("id", "title"):
        if not payload.get(key):
            raise MissingFieldError(key, line)
    for key in LISTING_KEYS[:-1]:  # all but price
        if key not in payload:
            raise MissingFieldError(key, line)
        if not isinstance(payload[key], str):
            raise MalformedRecordError(f"field {key!r} must be a string", line)

    price = payload.get("price")
    if price is not None and (not isinstance(price, int) or isinstance(price, bool) or price < 0):
        raise MalformedRecordError("price must be a non-negative integer", line)

    for facet in FACET_NAMES:
        value = payload[facet]
        if value not in schema.allowed(facet):
            raise UnknownFacetValueError(facet, value, line)

    return Listing(
        id=payload["id"],
        title=payload["title"],
        description=payload["description"],
        location_state=payload["location_state"],
        location_locality=payload["location_locality"],
        location_street=payload["location_street"],
        property_type=payload["property_type"],
        transaction_type=payload["transaction_type"],
        price=price,
    )


def dump_corpus(corpus: Corpus) -> str:
    """Serialize back to the corpus file format; loading the result yields
    an identical corpus."""
    lines = [json.dumps({"schema": {f: list(v) for f, v in corpus.schema.values.items()}})]
    for listing in corpus.listings:
        record = {key: getattr(listing, key) for key in LISTING_KEYS}
        lines.append(json.dumps(record))
    return "\n".join(lines) + "\n"


def get_listing(corpus: Corpus, listing_id: str) -> Listing | None:
    """The unique listing with that id, or None."""
    return corpus.by_id.get(listing_id)


def field_text(listing: Listing, field: str) -> str:
    """Text of one searchable field; raises UnknownFieldError otherwise."""
    if field not in SEARCHABLE_FIELDS:
        raise UnknownFieldError(field)
    return getattr(listing, field)
