"""Scientist / publication / authorship data model.

Loading validates referential integrity up front; the resulting
:class:`Corpus` is immutable, so every operation here is a pure read and
:func:`filter_active_sds` returns a new corpus instead of mutating.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Mapping

from .fileio import read_records

if TYPE_CHECKING:
    from .indicators import IndicatorRecord

__all__ = [
    "ActivityCell",
    "ActivityTable",
    "Authorship",
    "Corpus",
    "CorpusError",
    "Publication",
    "RANKS",
    "Rank",
    "RosterCell",
    "RosterSummary",
    "Scientist",
    "activity_rates",
    "filter_active_sds",
    "load_corpus",
    "load_corpus_files",
    "roster_summary",
]


class CorpusError(ValueError):
    """Input rows violate the corpus schema or one of its invariants."""


class Rank(enum.Enum):
    FULL = "FULL"
    ASSOCIATE = "ASSOCIATE"
    ASSISTANT = "ASSISTANT"


#: Reporting order for tables: senior ranks first.
RANKS = (Rank.FULL, Rank.ASSOCIATE, Rank.ASSISTANT)


@dataclass(frozen=True)
class Scientist:
    scientist_id: str
    sds_code: str
    uda_code: str
    rank: Rank
    birth_year: int | None = None


@dataclass(frozen=True)
class Publication:
    pub_id: str
    year: int
    citation_count: int
    subject_categories: tuple[str, ...]
    author_count: int


@dataclass(frozen=True)
class Authorship:
    pub_id: str
    position: int
    scientist_id: str | None = None
    affiliation_id: str | None = None


class Corpus:
    """Validated, immutable collection of scientists, publications and authorships.

    Construction enforces the structural invariants (unique keys, resolvable
    references, byline positions covering ``1..author_count``); use
    :func:`load_corpus` to build one from raw rows with per-row error context.
    """

    __slots__ = (
        "scientists",
        "publications",
        "authorships",
        "scientists_by_id",
        "publications_by_id",
        "authorships_by_pub",
        "authorships_by_scientist",
        "scientists_by_sds",
        "sds_to_uda",
        "udas",
    )

    def __init__(
        self,
        scientists: Iterable[Scientist],
        publications: Iterable[Publication],
        authorships: Iterable[Authorship],
    ):
        self.scientists = tuple(scientists)
        self.publications = tuple(publications)
        self.authorships = tuple(authorships)

        by_id: dict[str, Scientist] = {}
        for sci in self.scientists:
            if sci.scientist_id in by_id:
                raise CorpusError(f"duplicate scientist_id '{sci.scientist_id}'")
            by_id[sci.scientist_id] = sci
        self.scientists_by_id = by_id

        sds_to_uda: dict[str, str] = {}
        by_sds: dict[str, list[Scientist]] = defaultdict(list)
        for sci in self.scientists:
            uda = sds_to_uda.setdefault(sci.sds_code, sci.uda_code)
            if uda != sci.uda_code:
                raise CorpusError(
                    f"SDS '{sci.sds_code}' mapped to both UDA '{uda}' and '{sci.uda_code}'"
                )
            by_sds[sci.sds_code].append(sci)
        self.sds_to_uda = dict(sds_to_uda)
        self.scientists_by_sds = {sds: tuple(group) for sds, group in by_sds.items()}
        self.udas = tuple(sorted(set(sds_to_uda.values())))

        pubs_by_id: dict[str, Publication] = {}
        for pub in self.publications:
            if pub.pub_id in pubs_by_id:
                raise CorpusError(f"duplicate pub_id '{pub.pub_id}'")
            if pub.citation_count < 0:
                raise CorpusError(f"publication '{pub.pub_id}': citation_count must be >= 0")
            if pub.author_count < 1:
                raise CorpusError(f"publication '{pub.pub_id}': author_count must be >= 1")
            if not pub.subject_categories:
                raise CorpusError(f"publication '{pub.pub_id}': subject_categories must be non-empty")
            if len(set(pub.subject_categories)) != len(pub.subject_categories):
                raise CorpusError(f"publication '{pub.pub_id}': duplicate subject category")
            pubs_by_id[pub.pub_id] = pub
        self.publications_by_id = pubs_by_id

        by_pub: dict[str, list[Authorship]] = defaultdict(list)
        by_sci: dict[str, list[Authorship]] = defaultdict(list)
        seen_pos: set[tuple[str, int]] = set()
        seen_link: set[tuple[str, str]] = set()
        for auth in self.authorships:
            if auth.pub_id not in pubs_by_id:
                raise CorpusError(f"authorship references unknown pub_id '{auth.pub_id}'")
            if (auth.pub_id, auth.position) in seen_pos:
                raise CorpusError(
                    f"duplicate byline position {auth.position} for pub_id '{auth.pub_id}'"
                )
            seen_pos.add((auth.pub_id, auth.position))
            if auth.scientist_id is not None:
                if auth.scientist_id not in by_id:
                    raise CorpusError(
                        f"authorship references unknown scientist_id '{auth.scientist_id}'"
                    )
                if (auth.pub_id, auth.scientist_id) in seen_link:
                    raise CorpusError(
                        f"duplicate authorship ('{auth.pub_id}', '{auth.scientist_id}')"
                    )
                seen_link.add((auth.pub_id, auth.scientist_id))
                by_sci[auth.scientist_id].append(auth)
            by_pub[auth.pub_id].append(auth)

        for pub in self.publications:
            rows = sorted(by_pub.get(pub.pub_id, []), key=lambda a: a.position)
            positions = [a.position for a in rows]
            if positions != list(range(1, pub.author_count + 1)):
                raise CorpusError(
                    f"pub_id '{pub.pub_id}': byline positions {positions} do not cover "
                    f"1..{pub.author_count}"
                )
            by_pub[pub.pub_id] = rows
        self.authorships_by_pub = {pid: tuple(rows) for pid, rows in by_pub.items()}
        self.authorships_by_scientist = {sid: tuple(rows) for sid, rows in by_sci.items()}

    def sds_codes(self) -> tuple[str, ...]:
        return tuple(sorted(self.sds_to_uda))

    def publication_count(self, scientist_id: str) -> int:
        return len(self.authorships_by_scientist.get(scientist_id, ()))


# ---------------------------------------------------------------------------
# Row parsing

def _field(row: Mapping, key: str):
    value = row.get(key)
    if isinstance(value, str):
        value = value.strip()
    return None if value in (None, "") else value


def _req_str(row: Mapping, key: str, source: str, rownum: int) -> str:
    value = _field(row, key)
    if value is None:
        raise CorpusError(f"{source} row {rownum}: missing '{key}'")
    return str(value)


def _req_int(row: Mapping, key: str, source: str, rownum: int, minimum: int | None = None) -> int:
    raw = _field(row, key)
    if raw is None:
        raise CorpusError(f"{source} row {rownum}: missing '{key}'")
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise CorpusError(f"{source} row {rownum}: '{key}' must be an integer, got {raw!r}") from None
    if minimum is not None and value < minimum:
        raise CorpusError(f"{source} row {rownum}: '{key}' must be >= {minimum}, got {value}")
    return value


def _opt_int(row: Mapping, key: str, source: str, rownum: int) -> int | None:
    raw = _field(row, key)
    if raw is None:
        return None
    try:
        return int(raw)
    except (TypeError, ValueError):
        raise CorpusError(f"{source} row {rownum}: '{key}' must be an integer, got {raw!r}") from None


def _parse_scientist(row: Mapping, rownum: int) -> Scientist:
    raw_rank = _req_str(row, "rank", "scientists", rownum)
    try:
        rank = Rank[raw_rank.upper()]
    except KeyError:
        raise CorpusError(
            f"scientists row {rownum}: rank must be one of FULL/ASSOCIATE/ASSISTANT, got {raw_rank!r}"
        ) from None
    return Scientist(
        scientist_id=_req_str(row, "scientist_id", "scientists", rownum),
        sds_code=_req_str(row, "sds_code", "scientists", rownum),
        uda_code=_req_str(row, "uda_code", "scientists", rownum),
        rank=rank,
        birth_year=_opt_int(row, "birth_year", "scientists", rownum),
    )


def _parse_publication(row: Mapping, rownum: int) -> Publication:
    raw_cats = _field(row, "subject_categories")
    if raw_cats is None:
        raise CorpusError(f"publications row {rownum}: missing 'subject_categories'")
    if isinstance(raw_cats, str):
        cats = tuple(c.strip() for c in raw_cats.split(";") if c.strip())
    else:
        cats = tuple(str(c).strip() for c in raw_cats if str(c).strip())
    if not cats:
        raise CorpusError(f"publications row {rownum}: 'subject_categories' must be non-empty")
    return Publication(
        pub_id=_req_str(row, "pub_id", "publications", rownum),
        year=_req_int(row, "year", "publications", rownum),
        citation_count=_req_int(row, "citation_count", "publications", rownum, minimum=0),
        subject_categories=cats,
        author_count=_req_int(row, "author_count", "publications", rownum, minimum=1),
    )


def _parse_authorship(row: Mapping, rownum: int) -> Authorship:
    scientist_id = _field(row, "scientist_id")
    affiliation_id = _field(row, "affiliation_id")
    return Authorship(
        pub_id=_req_str(row, "pub_id", "authorships", rownum),
        position=_req_int(row, "position", "authorships", rownum, minimum=1),
        scientist_id=None if scientist_id is None else str(scientist_id),
        affiliation_id=None if affiliation_id is None else str(affiliation_id),
    )


def load_corpus(
    scientist_records: Iterable[Mapping],
    publication_records: Iterable[Mapping],
    authorship_records: Iterable[Mapping],
) -> Corpus:
    """Parse and validate raw rows into a :class:`Corpus`.

    Malformed rows are rejected with their 1-based record number; duplicate
    keys and dangling references are rejected naming the offending key.
    """
    scientists = [_parse_scientist(r, i) for i, r in enumerate(scientist_records, start=1)]
    publications = [_parse_publication(r, i) for i, r in enumerate(publication_records, start=1)]
    authorships = [_parse_authorship(r, i) for i, r in enumerate(authorship_records, start=1)]
    return Corpus(scientists, publications, authorships)


def load_corpus_files(scientists, publications, authorships) -> Corpus:
    """Load a corpus from three record files (CSV or JSON lines)."""
    return load_corpus(
        read_records(scientists), read_records(publications), read_records(authorships)
    )


# ---------------------------------------------------------------------------
# Roster summary

@dataclass(frozen=True)
class RosterCell:
    headcount: int = 0
    age_total: int = 0
    aged_count: int = 0

    def merged(self, other: "RosterCell") -> "RosterCell":
        return RosterCell(
            self.headcount + other.headcount,
            self.age_total + other.age_total,
            self.aged_count + other.aged_count,
        )


@dataclass(frozen=True)
class RosterSummary:
    """Headcounts, staff shares and mean ages per UDA and rank."""

    cells: Mapping[tuple[str, Rank], RosterCell]
    sds_counts: Mapping[str, int]
    reference_year: int | None

    @property
    def udas(self) -> tuple[str, ...]:
        return tuple(sorted(self.sds_counts))

    def cell(self, uda: str | None = None, rank: Rank | None = None) -> RosterCell:
        total = RosterCell()
        for (u, r), c in self.cells.items():
            if (uda is None or u == uda) and (rank is None or r == rank):
                total = total.merged(c)
        return total

    def headcount(self, uda: str | None = None, rank: Rank | None = None) -> int:
        return self.cell(uda, rank).headcount

    def share(self, uda: str | None, rank: Rank) -> float | None:
        """Percent of the UDA staff (or of the grand total when ``uda`` is None)."""
        denom = self.headcount(uda)
        if denom == 0:
            return None
        return 100.0 * self.headcount(uda, rank) / denom

    def mean_age(self, uda: str | None = None, rank: Rank | None = None) -> float | None:
        cell = self.cell(uda, rank)
        if cell.aged_count == 0:
            return None
        return cell.age_total / cell.aged_count


def roster_summary(corpus: Corpus, reference_year: int | None = None) -> RosterSummary:
    """Summarize the roster per UDA and rank.

    Ages are computed against ``reference_year``; when omitted it defaults to
    the year after the last observed publication year (the citation-snapshot
    convention). Scientists without a birth year only enter the headcounts.
    """
    if reference_year is None and corpus.publications:
        reference_year = max(p.year for p in corpus.publications) + 1

    counts: dict[tuple[str, Rank], list[int]] = defaultdict(lambda: [0, 0, 0])
    for sci in corpus.scientists:
        acc = counts[(sci.uda_code, sci.rank)]
        acc[0] += 1
        if sci.birth_year is not None and reference_year is not None:
            acc[1] += reference_year - sci.birth_year
            acc[2] += 1

    sds_counts: dict[str, int] = defaultdict(int)
    for sds, uda in corpus.sds_to_uda.items():
        sds_counts[uda] += 1

    return RosterSummary(
        cells={key: RosterCell(*acc) for key, acc in counts.items()},
        sds_counts=dict(sds_counts),
        reference_year=reference_year,
    )


# ---------------------------------------------------------------------------
# SDS activity filter

def filter_active_sds(corpus: Corpus, threshold: float = 0.5) -> Corpus:
    """Keep only SDSs where the publishing fraction reaches ``threshold``.

    The boundary is inclusive: an SDS with exactly ``threshold`` of its
    scientists holding at least one publication is retained. Publications are
    retained unless all their roster authors were removed; byline rows of
    retained publications that reference a removed scientist keep their
    position but lose the roster link (the author becomes external), which
    preserves both the byline and referential-integrity invariants.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {threshold}")

    kept_sds = set()
    for sds, group in corpus.scientists_by_sds.items():
        active = sum(1 for s in group if corpus.publication_count(s.scientist_id) > 0)
        if active >= threshold * len(group):
            kept_sds.add(sds)
    if len(kept_sds) == len(corpus.scientists_by_sds):
        return corpus

    kept_ids = {s.scientist_id for s in corpus.scientists if s.sds_code in kept_sds}
    kept_pubs = set()
    for pub in corpus.publications:
        roster = [a.scientist_id for a in corpus.authorships_by_pub[pub.pub_id] if a.scientist_id]
        if not roster or any(sid in kept_ids for sid in roster):
            kept_pubs.add(pub.pub_id)

    scientists = [s for s in corpus.scientists if s.scientist_id in kept_ids]
    publications = [p for p in corpus.publications if p.pub_id in kept_pubs]
    authorships = []
    for auth in corpus.authorships:
        if auth.pub_id not in kept_pubs:
            continue
        if auth.scientist_id is not None and auth.scientist_id not in kept_ids:
            auth = Authorship(auth.pub_id, auth.position, None, auth.affiliation_id)
        authorships.append(auth)
    return Corpus(scientists, publications, authorships)


# ---------------------------------------------------------------------------
# Activity rates

@dataclass(frozen=True)
class ActivityCell:
    headcount: int = 0
    publication_active: int = 0
    citation_active: int = 0

    def merged(self, other: "ActivityCell") -> "ActivityCell":
        return ActivityCell(
            self.headcount + other.headcount,
            self.publication_active + other.publication_active,
            self.citation_active + other.citation_active,
        )


@dataclass(frozen=True)
class ActivityTable:
    """Counts of scientists with any publication / any citation impact."""

    cells: Mapping[tuple[str, Rank], ActivityCell]

    @property
    def udas(self) -> tuple[str, ...]:
        return tuple(sorted({u for u, _ in self.cells}))

    def cell(self, uda: str | None = None, rank: Rank | None = None) -> ActivityCell:
        total = ActivityCell()
        for (u, r), c in self.cells.items():
            if (uda is None or u == uda) and (rank is None or r == rank):
                total = total.merged(c)
        return total


def activity_rates(corpus: Corpus, records: Iterable["IndicatorRecord"]) -> ActivityTable:
    """Per UDA and rank: how many scientists published at all, and how many
    accumulated any citation impact (positive fractional strength)."""
    by_id = {r.scientist_id: r for r in records}
    cells: dict[tuple[str, Rank], list[int]] = defaultdict(lambda: [0, 0, 0])
    for sci in corpus.scientists:
        rec = by_id.get(sci.scientist_id)
        if rec is None:
            raise ValueError(f"no indicator record for scientist '{sci.scientist_id}'")
        acc = cells[(sci.uda_code, sci.rank)]
        acc[0] += 1
        if rec.n_p >= 1:
            acc[1] += 1
        if rec.fss > 0:
            acc[2] += 1
    return ActivityTable({key: ActivityCell(*acc) for key, acc in cells.items()})
