"""Per-scientist output indicators.

Three indicators are computed over the observation window:

* ``n_p``   -- number of publications authored;
* ``qi``    -- mean standardized citation score of those publications
  (absent, not zero, for scientists without publications);
* ``fss``   -- total standardized impact, each publication weighted by the
  scientist's co-authorship fraction.

Co-author fractions are either uniform (1/n) or positional. The positional
scheme, used for disciplines where byline order carries meaning, recognizes
two byline patterns: when first and last authors share an affiliation, each
receives 40% and the middle authors split the remaining 20%; when the two
leading and two closing authors all come from different institutions, first
and last receive 30%, second and second-to-last 15%, and the rest split 10%.
Any other pattern, or missing boundary affiliations, falls back to uniform.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Collection, Iterable, Mapping, Sequence

from .baseline import BaselineTable, standardize_publication
from .corpus import Corpus
from .fileio import read_records, write_records

__all__ = [
    "IndicatorRecord",
    "WeightScheme",
    "byline_case_flags",
    "coauthor_weights",
    "compute_indicators",
    "read_indicators",
    "write_indicators",
]

logger = logging.getLogger(__name__)


class WeightScheme(enum.Enum):
    EQUAL = "EQUAL"
    POSITIONAL = "POSITIONAL"


@dataclass(frozen=True)
class IndicatorRecord:
    scientist_id: str
    n_p: int
    qi: float | None
    fss: float


def coauthor_weights(
    author_count: int,
    scheme: WeightScheme = WeightScheme.EQUAL,
    *,
    first_last_same: bool = False,
    boundary_pairs_differ: bool = False,
) -> list[float]:
    """Per-position credit fractions for a byline of ``author_count`` authors.

    Always sums to 1. Under the positional scheme the flags select the byline
    pattern (``first_last_same`` wins when both are set); neither flag means
    the pattern is unrecognized and credit is uniform. Short bylines where the
    named roles overlap accumulate their nominal weights per position and the
    vector is renormalized, which keeps the sum exact for every length.
    """
    if author_count < 1:
        raise ValueError(f"author_count must be >= 1, got {author_count}")
    n = author_count
    if (
        scheme is WeightScheme.EQUAL
        or n == 1
        or not (first_last_same or boundary_pairs_differ)
    ):
        return [1.0 / n] * n

    weights = [0.0] * n
    if first_last_same:
        weights[0] += 0.40
        weights[n - 1] += 0.40
        middle = range(1, n - 1)
        if len(middle):
            share = 0.20 / len(middle)
            for i in middle:
                weights[i] += share
    else:
        weights[0] += 0.30
        weights[n - 1] += 0.30
        weights[1] += 0.15
        weights[n - 2] += 0.15
        others = [i for i in range(n) if i not in {0, 1, n - 2, n - 1}]
        if others:
            share = 0.10 / len(others)
            for i in others:
                weights[i] += share
    total = math.fsum(weights)
    return [w / total for w in weights]


def byline_case_flags(affiliations: Sequence[str | None]) -> tuple[bool, bool]:
    """Derive the positional-scheme flags from a position-ordered affiliation list.

    Returns ``(first_last_same, boundary_pairs_differ)``. The second flag
    requires all four boundary affiliations (positions 1, 2, n-1, n) to be
    present and pairwise different wherever the positions themselves differ;
    a missing boundary affiliation makes the case undecidable and both flags
    come back False (uniform fallback).
    """
    n = len(affiliations)
    if n < 2:
        return (False, False)
    first, second = affiliations[0], affiliations[1]
    penult, last = affiliations[n - 2], affiliations[n - 1]
    if first is not None and last is not None and first == last:
        return (True, False)
    if None in (first, second, penult, last):
        return (False, False)
    front = ((0, first), (1, second))
    back = ((n - 2, penult), (n - 1, last))
    differ = all(fa != ba for fi, fa in front for bi, ba in back if fi != bi)
    return (False, differ)


def _publication_weights(corpus: Corpus, pub_id: str, scheme: WeightScheme) -> list[float]:
    byline = corpus.authorships_by_pub[pub_id]
    n = len(byline)
    if scheme is WeightScheme.EQUAL or n == 1:
        return [1.0 / n] * n
    same, differ = byline_case_flags([a.affiliation_id for a in byline])
    if not (same or differ):
        logger.debug("pub %s: byline pattern unrecognized, using uniform weights", pub_id)
    return coauthor_weights(n, scheme, first_last_same=same, boundary_pairs_differ=differ)


def compute_indicators(
    corpus: Corpus,
    baselines: BaselineTable,
    positional_udas: Collection[str] = (),
) -> dict[str, IndicatorRecord]:
    """Compute the three indicators for every roster scientist.

    ``positional_udas`` lists the disciplines whose scientists receive
    positional co-author weights; everyone else uses uniform weights. Each
    scientist's credit is read from the weight vector of their own
    discipline's scheme.
    """
    positional = frozenset(positional_udas)
    scores: dict[str, float] = {}
    weight_cache: dict[tuple[str, WeightScheme], list[float]] = {}
    records: dict[str, IndicatorRecord] = {}

    for sci in corpus.scientists:
        rows = corpus.authorships_by_scientist.get(sci.scientist_id, ())
        if not rows:
            records[sci.scientist_id] = IndicatorRecord(sci.scientist_id, 0, None, 0.0)
            continue
        scheme = WeightScheme.POSITIONAL if sci.uda_code in positional else WeightScheme.EQUAL
        score_sum = 0.0
        fss = 0.0
        for auth in rows:
            score = scores.get(auth.pub_id)
            if score is None:
                score = standardize_publication(corpus.publications_by_id[auth.pub_id], baselines)
                scores[auth.pub_id] = score
            key = (auth.pub_id, scheme)
            weights = weight_cache.get(key)
            if weights is None:
                weights = _publication_weights(corpus, auth.pub_id, scheme)
                weight_cache[key] = weights
            score_sum += score
            fss += score * weights[auth.position - 1]
        records[sci.scientist_id] = IndicatorRecord(
            sci.scientist_id, len(rows), score_sum / len(rows), fss
        )
    return records


def write_indicators(records: Iterable[IndicatorRecord] | Mapping[str, IndicatorRecord], path: str | Path) -> Path:
    if isinstance(records, Mapping):
        records = records.values()
    rows = (
        {
            "scientist_id": r.scientist_id,
            "n_p": r.n_p,
            "qi": "" if r.qi is None else repr(r.qi),
            "fss": repr(r.fss),
        }
        for r in sorted(records, key=lambda r: r.scientist_id)
    )
    return write_records(path, ["scientist_id", "n_p", "qi", "fss"], rows)


def read_indicators(path: str | Path) -> dict[str, IndicatorRecord]:
    records = {}
    for i, row in enumerate(read_records(path), start=1):
        try:
            qi_raw = row.get("qi")
            if isinstance(qi_raw, str):
                qi_raw = qi_raw.strip()
            rec = IndicatorRecord(
                scientist_id=str(row["scientist_id"]),
                n_p=int(row["n_p"]),
                qi=None if qi_raw in (None, "") else float(qi_raw),
                fss=float(row["fss"]),
            )
        except (KeyError, TypeError, ValueError):
            raise ValueError(f"indicators row {i}: malformed record {row!r}") from None
        records[rec.scientist_id] = rec
    return records
