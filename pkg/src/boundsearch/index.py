"""Search boundaries: facet posting lists and their conjunction.

The index maps every (facet, value) pair to the ids of the listings
carrying that value, in corpus order. A selection of at most one value
per facet intersects those lists to bound the candidate set before any
pattern matching happens.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .corpus import FACET_NAMES, Corpus

# at most one required value per facet; conjunction across facets
FacetSelection = Mapping[str, str]


class UnknownFacetError(KeyError):
    def __init__(self, facet: str):
        super().__init__(facet)
        self.facet = facet


class UnknownValueError(KeyError):
    def __init__(self, facet: str, value: str):
        super().__init__(f"{facet}={value}")
        self.facet = facet
        self.value = value


@dataclass(frozen=True)
class BoundaryIndex:
    # (facet, value) -> listing ids in corpus order
    postings: Mapping[tuple[str, str], tuple[str, ...]]
    # listing id -> corpus position
    positions: Mapping[str, int]
    facet_values: Mapping[str, tuple[str, ...]]

    @property
    def all_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.positions, key=self.positions.__getitem__))


def build_index(corpus: Corpus) -> BoundaryIndex:
    """Index every schema (facet, value) pair over the corpus."""
    postings: dict[tuple[str, str], list[str]] = {
        (facet, value): []
        for facet in FACET_NAMES
        for value in corpus.schema.allowed(facet)
    }
    positions: dict[str, int] = {}
    for position, listing in enumerate(corpus.listings):
        positions[listing.id] = position
        for facet in FACET_NAMES:
            postings[(facet, getattr(listing, facet))].append(listing.id)
    return BoundaryIndex(
        postings={key: tuple(ids) for key, ids in postings.items()},
        positions=positions,
        facet_values={f: corpus.schema.allowed(f) for f in FACET_NAMES},
    )


def apply_boundaries(index: BoundaryIndex, selection: FacetSelection) -> list[str]:
    """Ids satisfying every selected (facet, value), in corpus order.

    An empty selection bounds nothing and returns every id.
    """
    for facet, value in selection.items():
        if facet not in index.facet_values:
            raise UnknownFacetError(facet)
        if value not in index.facet_values[facet]:
            raise UnknownValueError(facet, value)

    if not selection:
        return list(index.all_ids)

    lists = sorted(
        (index.postings[(facet, value)] for facet, value in selection.items()),
        key=len,
    )
    result = list(lists[0])
    for other in lists[1:]:
        result = _intersect_sorted(result, other, index.positions)
        if not result:
            break
    return result


def _intersect_sorted(
    left: list[str] | tuple[str, ...],
    right: list[str] | tuple[str, ...],
    positions: Mapping[str, int],
) -> list[str]:
    """Merge-intersect two id lists already sorted by corpus position."""
    out: list[str] = []
    i = j = 0
    while i < len(left) and j < len(right):
        a, b = positions[left[i]], positions[right[j]]
        if a == b:
            out.append(left[i])
            i += 1
            j += 1
        elif a < b:
            i += 1
        else:
            j += 1
    return out
