"""Citation-standardization baselines.

Citation counts are divided by the median count of all publications sharing
the same year and subject category; medians are preferred over means because
citation distributions are heavily skewed. A publication carrying several
categories is scored as the arithmetic mean of its per-category values.
"""

from __future__ import annotations

import statistics
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .corpus import Corpus, Publication
from .fileio import read_records, write_records

__all__ = [
    "BaselineCell",
    "BaselineTable",
    "MissingBaselineError",
    "build_baselines",
    "read_baselines",
    "standardize_publication",
    "write_baselines",
]


class MissingBaselineError(ValueError):
    """No baseline cell exists for a (year, category) pair."""


@dataclass(frozen=True)
class BaselineCell:
    year: int
    category: str
    median_citations: float
    mean_citations: float
    publication_count: int


class BaselineTable:
    """Immutable map (year, category) -> citation statistics."""

    def __init__(self, cells: Iterable[BaselineCell]):
        table: dict[tuple[int, str], BaselineCell] = {}
        for cell in cells:
            key = (cell.year, cell.category)
            if key in table:
                raise ValueError(f"duplicate baseline cell for {key}")
            table[key] = cell
        self._cells = table

    def get(self, year: int, category: str) -> BaselineCell:
        try:
            return self._cells[(year, category)]
        except KeyError:
            raise MissingBaselineError(f"no baseline cell for ({year}, '{category}')") from None

    def __contains__(self, key: tuple[int, str]) -> bool:
        return key in self._cells

    def __len__(self) -> int:
        return len(self._cells)

    @property
    def cells(self) -> tuple[BaselineCell, ...]:
        return tuple(self._cells[k] for k in sorted(self._cells))


def build_baselines(corpus: Corpus) -> BaselineTable:
    """Compute the median and mean citation count of every (year, category)
    cell occurring in the corpus.

    The reference population is the loaded corpus itself; even-sized cells use
    the mean of the two central values as median.
    """
    if not corpus.publications:
        raise ValueError("cannot build baselines from a corpus without publications")
    groups: dict[tuple[int, str], list[int]] = defaultdict(list)
    for pub in corpus.publications:
        for cat in pub.subject_categories:
            groups[(pub.year, cat)].append(pub.citation_count)
    cells = [
        BaselineCell(
            year=year,
            category=cat,
            median_citations=float(statistics.median(counts)),
            mean_citations=statistics.fmean(counts),
            publication_count=len(counts),
        )
        for (year, cat), counts in groups.items()
    ]
    return BaselineTable(cells)


def standardize_publication(pub: Publication, baselines: BaselineTable) -> float:
    """Standardized citation score of one publication.

    Per category the score is ``citation_count / median``; a zero median falls
    back to the cell mean, and a cell where both are zero scores 0 (every
    member is uncited). The publication score is the mean over its categories,
    so it is 0 exactly when the publication is uncited.
    """
    scores = []
    for cat in pub.subject_categories:
        cell = baselines.get(pub.year, cat)
        if cell.median_citations > 0:
            scores.append(pub.citation_count / cell.median_citations)
        elif cell.mean_citations > 0:
            scores.append(pub.citation_count / cell.mean_citations)
        else:
            scores.append(0.0)
    return statistics.fmean(scores)


def write_baselines(baselines: BaselineTable, path: str | Path) -> Path:
    rows = (
        {
            "year": c.year,
            "category": c.category,
            "median": repr(c.median_citations),
            "mean": repr(c.mean_citations),
            "count": c.publication_count,
        }
        for c in baselines.cells
    )
    return write_records(path, ["year", "category", "median", "mean", "count"], rows)


def read_baselines(path: str | Path) -> BaselineTable:
    cells = []
    for i, row in enumerate(read_records(path), start=1):
        try:
            cells.append(
                BaselineCell(
                    year=int(row["year"]),
                    category=str(row["category"]),
                    median_citations=float(row["median"]),
                    mean_citations=float(row["mean"]),
                    publication_count=int(row["count"]),
                )
            )
        except (KeyError, TypeError, ValueError):
            raise ValueError(f"baselines row {i}: malformed record {row!r}") from None
    return BaselineTable(cells)
