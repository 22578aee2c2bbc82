"""Rank-group comparison and concentration analyses.

Covers the dominance comparison of two rank groups pooled within a field
(distance of each group's rank sum from the maximally separated
configuration), inequality of output (Gini coefficient, bottom-40%/top-20%
ratio), the over/under-representation index of a rank among top scientists,
and the Pearson chi-square association test between excellence and rank.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .corpus import Corpus, RANKS, Rank
from .indicators import IndicatorRecord
from .ranking import Indicator, indicator_value, midranks

__all__ = [
    "ChiSquareResult",
    "ConcentrationRow",
    "DominanceCounts",
    "DominanceResult",
    "TopDistribution",
    "TopShareCell",
    "bottom_top_ratio",
    "chi_square_independence",
    "concentration_index",
    "concentration_rows",
    "dominance_counts",
    "gini",
    "sequence_criterion",
    "top_distribution",
    "weighted_uda_gini",
]


# ---------------------------------------------------------------------------
# Dominance of one rank group over another

@dataclass(frozen=True)
class DominanceResult:
    """Rank-sum distance of two groups from their maximal-dominance layouts.

    Both groups are pooled and ranked ascending with midranks (best value gets
    rank N). ``r_max`` is the rank sum a group would hold if it occupied the
    top block outright; ``r_diff = r_max - r_eff`` is its distance from that
    ideal, so the group with the strictly smaller ``r_diff`` outranks the
    other. ``r_diff_a + r_diff_b`` always equals ``len(a) * len(b)``.
    """

    group_a: object
    group_b: object
    r_eff_a: float
    r_max_a: float
    r_eff_b: float
    r_max_b: float
    sds_code: str | None = None

    @property
    def r_diff_a(self) -> float:
        return self.r_max_a - self.r_eff_a

    @property
    def r_diff_b(self) -> float:
        return self.r_max_b - self.r_eff_b

    @property
    def winner(self):
        """Group label with the smaller distance, or None on a tie."""
        if self.r_diff_a < self.r_diff_b:
            return self.group_a
        if self.r_diff_b < self.r_diff_a:
            return self.group_b
        return None


def sequence_criterion(
    values_a: Sequence[float],
    values_b: Sequence[float],
    group_a: object = "A",
    group_b: object = "B",
    sds_code: str | None = None,
) -> DominanceResult:
    """Compare two groups of performance values by pooled rank sums."""
    n_a, n_b = len(values_a), len(values_b)
    if n_a == 0 or n_b == 0:
        raise ValueError("both groups must be non-empty")
    n = n_a + n_b
    ranks = midranks(list(values_a) + list(values_b))

    def r_max(size: int) -> float:
        # sum of the top `size` ranks: N + (N-1) + ... + (N-size+1)
        return size * n - size * (size - 1) / 2.0

    return DominanceResult(
        group_a=group_a,
        group_b=group_b,
        r_eff_a=float(ranks[:n_a].sum()),
        r_max_a=r_max(n_a),
        r_eff_b=float(ranks[n_a:].sum()),
        r_max_b=r_max(n_b),
        sds_code=sds_code,
    )


@dataclass(frozen=True)
class DominanceCounts:
    """Per-UDA counts of fields where ``group_b`` outranks ``group_a``."""

    indicator: Indicator
    group_a: Rank
    group_b: Rank
    per_uda: Mapping[str, tuple[int, int]]  # uda -> (b_wins, fields counted)
    sds_results: Mapping[str, DominanceResult]
    excluded_sds: int

    @property
    def total(self) -> tuple[int, int]:
        wins = sum(w for w, _ in self.per_uda.values())
        counted = sum(c for _, c in self.per_uda.values())
        return wins, counted


def dominance_counts(
    records: Mapping[str, IndicatorRecord] | Iterable[IndicatorRecord],
    corpus: Corpus,
    indicator: Indicator,
    group_a: Rank = Rank.FULL,
    group_b: Rank = Rank.ASSISTANT,
) -> DominanceCounts:
    """Count, per UDA, the fields where ``group_b`` outranks ``group_a``.

    Fields where either group has no ranked member are excluded from the
    denominator (and reported in ``excluded_sds``).
    """
    if isinstance(records, Mapping):
        records = records.values()
    by_sds: dict[str, dict[Rank, list[float]]] = defaultdict(lambda: defaultdict(list))
    for rec in records:
        sci = corpus.scientists_by_id.get(rec.scientist_id)
        if sci is None:
            raise ValueError(f"indicator record for unknown scientist '{rec.scientist_id}'")
        if sci.rank not in (group_a, group_b):
            continue
        value = indicator_value(rec, indicator)
        if value is None:
            continue
        by_sds[sci.sds_code][sci.rank].append(value)

    per_uda: dict[str, list[int]] = defaultdict(lambda: [0, 0])
    results: dict[str, DominanceResult] = {}
    excluded = 0
    for sds in sorted(corpus.scientists_by_sds):
        groups = by_sds.get(sds, {})
        values_a, values_b = groups.get(group_a), groups.get(group_b)
        if not values_a or not values_b:
            excluded += 1
            continue
        res = sequence_criterion(values_a, values_b, group_a, group_b, sds_code=sds)
        results[sds] = res
        acc = per_uda[corpus.sds_to_uda[sds]]
        acc[1] += 1
        if res.winner is group_b:
            acc[0] += 1
    return DominanceCounts(
        indicator=indicator,
        group_a=group_a,
        group_b=group_b,
        per_uda={uda: (w, c) for uda, (w, c) in per_uda.items()},
        sds_results=results,
        excluded_sds=excluded,
    )


# ---------------------------------------------------------------------------
# Inequality measures

def gini(values) -> float:
    """Population Gini coefficient: mean absolute difference over twice the mean.

    0 means every value is equal, 1 maximal inequality; an all-zero vector is
    defined as 0. Computed with the sorted-index identity, which matches the
    O(n^2) pairwise definition to float precision.
    """
    x = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=float)
    if x.size == 0:
        raise ValueError("gini requires at least one value")
    if np.any(x < 0):
        raise ValueError("gini requires non-negative values")
    total = float(x.sum())
    if total == 0.0:
        return 0.0
    xs = np.sort(x)
    if xs[0] == xs[-1]:
        return 0.0
    n = x.size
    i = np.arange(1, n + 1, dtype=float)
    g = float(((2.0 * i - n - 1.0) * xs).sum() / (n * total))
    return min(1.0, max(0.0, g))


def weighted_uda_gini(per_sds: Iterable[tuple[float, int]]) -> float:
    """Headcount-weighted mean of per-field Gini coefficients."""
    pairs = list(per_sds)
    if not pairs:
        raise ValueError("weighted_uda_gini requires at least one field")
    total = 0.0
    weight = 0
    for g, headcount in pairs:
        if headcount <= 0:
            raise ValueError(f"headcount must be positive, got {headcount}")
        total += g * headcount
        weight += headcount
    return total / weight


def bottom_top_ratio(
    values,
    bottom_fraction: float = 0.4,
    top_fraction: float = 0.2,
    per_capita: bool = True,
) -> float | None:
    """Per-capita output of the weakest block over that of the strongest block.

    Block sizes are ``max(1, floor(fraction * n))``. 1 means a perfectly
    uniform population, values toward 0 mean concentration at the top; None
    (undefined) when the top block has zero output. ``per_capita=False``
    compares raw block sums instead, for reference -- note that variant yields
    bottom_n/top_n (e.g. 2.0) on uniform populations.
    """
    x = sorted(values)
    n = len(x)
    if n == 0:
        raise ValueError("bottom_top_ratio requires at least one value")
    if x[0] < 0:
        raise ValueError("bottom_top_ratio requires non-negative values")
    if not (0.0 < bottom_fraction < 1.0 and 0.0 < top_fraction < 1.0):
        raise ValueError("fractions must be in (0, 1)")
    k_top = max(1, math.floor(top_fraction * n))
    k_bottom = max(1, math.floor(bottom_fraction * n))
    top = x[n - k_top:]
    bottom = x[:k_bottom]
    if per_capita:
        top_stat = math.fsum(top) / k_top
        bottom_stat = math.fsum(bottom) / k_bottom
    else:
        top_stat = math.fsum(top)
        bottom_stat = math.fsum(bottom)
    if top_stat == 0.0:
        return None
    return bottom_stat / top_stat


def concentration_index(top_share: float, staff_share: float) -> float:
    """Share among top scientists over share of staff; 1 is neutral."""
    if staff_share <= 0:
        raise ValueError(f"staff share must be positive, got {staff_share}")
    return top_share / staff_share


# ---------------------------------------------------------------------------
# Pearson chi-square test

@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    degrees_of_freedom: int
    p_value: float


def _regularized_upper_gamma(s: float, x: float) -> float:
    """Q(s, x), the upper regularized incomplete gamma, to ~1e-14 relative.

    Series expansion of P(s, x) below s+1, Lentz continued fraction above;
    no lookup tables.
    """
    if s <= 0:
        raise ValueError("shape must be positive")
    if x < 0:
        raise ValueError("argument must be non-negative")
    if x == 0.0:
        return 1.0
    log_prefix = -x + s * math.log(x) - math.lgamma(s)
    if x < s + 1.0:
        ap = s
        term = total = 1.0 / s
        for _ in range(1000):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * 1e-16:
                break
        p = total * math.exp(log_prefix)
        return min(1.0, max(0.0, 1.0 - p))
    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 1000):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-15:
            break
    q = math.exp(log_prefix) * h
    return min(1.0, max(0.0, q))


def chi_square_upper_tail(statistic: float, df: int) -> float:
    """P(X >= statistic) for a chi-square variable with ``df`` degrees of freedom."""
    if df < 1:
        raise ValueError("degrees of freedom must be >= 1")
    return _regularized_upper_gamma(df / 2.0, statistic / 2.0)


def chi_square_independence(contingency) -> ChiSquareResult:
    """Pearson chi-square test of independence on an r x k count table.

    Expected counts come from the row/column marginals; every marginal must be
    positive and both dimensions at least 2. For the 2 x k tables used in the
    excellence-vs-rank analysis the degrees of freedom reduce to k - 1.
    """
    obs = np.asarray(contingency, dtype=float)
    if obs.ndim != 2 or obs.shape[0] < 2 or obs.shape[1] < 2:
        raise ValueError("contingency table must be at least 2 x 2")
    if np.any(obs < 0):
        raise ValueError("counts must be non-negative")
    rows = obs.sum(axis=1)
    cols = obs.sum(axis=0)
    if np.any(rows == 0) or np.any(cols == 0):
        raise ValueError("every row and column marginal must be positive")
    expected = np.outer(rows, cols) / obs.sum()
    statistic = float(((obs - expected) ** 2 / expected).sum())
    df = (obs.shape[0] - 1) * (obs.shape[1] - 1)
    return ChiSquareResult(statistic, df, chi_square_upper_tail(statistic, df))


# ---------------------------------------------------------------------------
# UDA-level concentration and top-scientist distribution

@dataclass(frozen=True)
class ConcentrationRow:
    uda_code: str
    rank: Rank
    gini: float
    bottom_top_ratio: float | None


def concentration_rows(
    records: Mapping[str, IndicatorRecord] | Iterable[IndicatorRecord],
    corpus: Corpus,
    indicator: Indicator = Indicator.FSS,
    bottom_fraction: float = 0.4,
    top_fraction: float = 0.2,
) -> dict[tuple[str, Rank], ConcentrationRow]:
    """Inequality of output per UDA and rank.

    Gini and bottom/top ratios are computed per field, then weighted up to the
    UDA by each field's staff share of that rank. Fields whose ratio is
    undefined (zero top output) are left out of the ratio average; if every
    field's ratio is undefined the UDA ratio is None.
    """
    if isinstance(records, Mapping):
        records = records.values()
    values: dict[tuple[str, Rank], list[float]] = defaultdict(list)
    for rec in records:
        sci = corpus.scientists_by_id.get(rec.scientist_id)
        if sci is None:
            raise ValueError(f"indicator record for unknown scientist '{rec.scientist_id}'")
        value = indicator_value(rec, indicator)
        if value is not None:
            values[(sci.sds_code, sci.rank)].append(value)

    out: dict[tuple[str, Rank], ConcentrationRow] = {}
    for uda in corpus.udas:
        sds_list = sorted(s for s, u in corpus.sds_to_uda.items() if u == uda)
        for rank in RANKS:
            gini_cells: list[tuple[float, int]] = []
            ratio_cells: list[tuple[float, int]] = []
            for sds in sds_list:
                members = values.get((sds, rank))
                if not members:
                    continue
                gini_cells.append((gini(members), len(members)))
                ratio = bottom_top_ratio(members, bottom_fraction, top_fraction)
                if ratio is not None:
                    ratio_cells.append((ratio, len(members)))
            if not gini_cells:
                continue
            weighted_ratio = weighted_uda_gini(ratio_cells) if ratio_cells else None
            out[(uda, rank)] = ConcentrationRow(
                uda_code=uda,
                rank=rank,
                gini=weighted_uda_gini(gini_cells),
                bottom_top_ratio=weighted_ratio,
            )
    return out


@dataclass(frozen=True)
class TopShareCell:
    top_count: int = 0
    staff_count: int = 0

    def merged(self, other: "TopShareCell") -> "TopShareCell":
        return TopShareCell(
            self.top_count + other.top_count, self.staff_count + other.staff_count
        )


@dataclass(frozen=True)
class TopDistribution:
    """How top scientists distribute over ranks, per UDA and overall."""

    indicator: Indicator
    cells: Mapping[tuple[str, Rank], TopShareCell]
    chi_square_by_uda: Mapping[str, ChiSquareResult | None]
    chi_square_overall: ChiSquareResult | None

    @property
    def udas(self) -> tuple[str, ...]:
        return tuple(sorted({u for u, _ in self.cells}))

    def cell(self, uda: str | None = None, rank: Rank | None = None) -> TopShareCell:
        total = TopShareCell()
        for (u, r), c in self.cells.items():
            if (uda is None or u == uda) and (rank is None or r == rank):
                total = total.merged(c)
        return total

    def top_share(self, uda: str | None, rank: Rank) -> float | None:
        denom = self.cell(uda).top_count
        if denom == 0:
            return None
        return 100.0 * self.cell(uda, rank).top_count / denom

    def staff_share(self, uda: str | None, rank: Rank) -> float | None:
        denom = self.cell(uda).staff_count
        if denom == 0:
            return None
        return 100.0 * self.cell(uda, rank).staff_count / denom

    def index(self, uda: str | None, rank: Rank) -> float | None:
        top = self.top_share(uda, rank)
        staff = self.staff_share(uda, rank)
        if top is None or staff is None or staff == 0:
            return None
        return concentration_index(top, staff)


def _rank_chi_square(cells: Mapping[Rank, TopShareCell]) -> ChiSquareResult | None:
    columns = [c for c in (cells.get(r) for r in RANKS) if c and c.staff_count > 0]
    if len(columns) < 2:
        return None
    top = [c.top_count for c in columns]
    rest = [c.staff_count - c.top_count for c in columns]
    if sum(top) == 0 or sum(rest) == 0:
        return None
    return chi_square_independence([top, rest])


def top_distribution(
    flags,
    corpus: Corpus,
    indicator: Indicator = Indicator.FSS,
) -> TopDistribution:
    """Distribution of flagged top scientists over ranks, with the association
    test between excellence and rank (per UDA and for the whole population)."""
    top_ids = {f.scientist_id for f in flags if f.is_top and f.indicator is indicator}
    cells: dict[tuple[str, Rank], list[int]] = defaultdict(lambda: [0, 0])
    for sci in corpus.scientists:
        acc = cells[(sci.uda_code, sci.rank)]
        acc[1] += 1
        if sci.scientist_id in top_ids:
            acc[0] += 1
    dist_cells = {key: TopShareCell(*acc) for key, acc in cells.items()}

    chi_by_uda: dict[str, ChiSquareResult | None] = {}
    for uda in corpus.udas:
        chi_by_uda[uda] = _rank_chi_square(
            {r: dist_cells.get((uda, r), TopShareCell()) for r in RANKS}
        )
    overall_cells = {
        r: TopShareCell(
            sum(c.top_count for (u, rr), c in dist_cells.items() if rr is r),
            sum(c.staff_count for (u, rr), c in dist_cells.items() if rr is r),
        )
        for r in RANKS
    }
    return TopDistribution(
        indicator=indicator,
        cells=dist_cells,
        chi_square_by_uda=chi_by_uda,
        chi_square_overall=_rank_chi_square(overall_cells),
    )
