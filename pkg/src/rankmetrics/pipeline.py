"""End-to-end run: load, filter, standardize, rank, analyze, report.

The pipeline is deterministic: identical inputs and configuration produce
byte-identical report files (no timestamps in metadata, stable ordering
everywhere).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .analysis import dominance_counts, concentration_rows, top_distribution
from .baseline import build_baselines, read_baselines
from .corpus import Rank, activity_rates, filter_active_sds, load_corpus_files, roster_summary
from .indicators import compute_indicators
from .ranking import Indicator, sds_percentiles, top_scientists, uda_rank_average
from .tables import (
    Table,
    build_activity_table,
    build_age_table,
    build_chi_square_table,
    build_concentration_table,
    build_dominance_table,
    build_percentile_table,
    build_roster_table,
    build_top_distribution_table,
    write_table,
)

__all__ = ["ReportBundle", "RunConfig", "run_pipeline", "write_bundle"]

_FORMAT_EXT = {"text": "txt", "csv": "csv", "md": "md"}


@dataclass
class RunConfig:
    scientists: Path
    publications: Path
    authorships: Path
    baselines: Path | None = None
    positional_udas: tuple[str, ...] = ()
    sds_threshold: float = 0.5
    top_fraction: float = 0.2
    bottom_fraction: float = 0.4
    reference_year: int | None = None
    output_format: str = "text"

    def __post_init__(self):
        self.scientists = Path(self.scientists)
        self.publications = Path(self.publications)
        self.authorships = Path(self.authorships)
        if self.baselines is not None:
            self.baselines = Path(self.baselines)
        self.positional_udas = tuple(self.positional_udas)

    def validate(self) -> None:
        if not 0.0 <= self.sds_threshold <= 1.0:
            raise ValueError(f"sds_threshold must be in [0, 1], got {self.sds_threshold}")
        for name in ("top_fraction", "bottom_fraction"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must be in (0, 1), got {value}")
        if self.output_format not in _FORMAT_EXT:
            raise ValueError(f"output_format must be one of {sorted(_FORMAT_EXT)}")
        for name in ("scientists", "publications", "authorships", "baselines"):
            path = getattr(self, name)
            if path is not None and not Path(path).is_file():
                raise FileNotFoundError(f"{name} file not found: {path}")

    def digest(self) -> str:
        payload = {
            "scientists": str(self.scientists),
            "publications": str(self.publications),
            "authorships": str(self.authorships),
            "baselines": None if self.baselines is None else str(self.baselines),
            "positional_udas": list(self.positional_udas),
            "sds_threshold": self.sds_threshold,
            "top_fraction": self.top_fraction,
            "bottom_fraction": self.bottom_fraction,
            "reference_year": self.reference_year,
            "output_format": self.output_format,
        }
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:16]


@dataclass
class ReportBundle:
    tables: dict[str, Table] = field(default_factory=dict)
    metadata: dict[str, str] = field(default_factory=dict)


def run_pipeline(config: RunConfig) -> ReportBundle:
    """Run the full analysis and return every report table."""
    config.validate()
    corpus = load_corpus_files(config.scientists, config.publications, config.authorships)
    filtered = filter_active_sds(corpus, config.sds_threshold)

    if config.baselines is not None:
        baselines = read_baselines(config.baselines)
    else:
        baselines = build_baselines(filtered)
    records = compute_indicators(filtered, baselines, config.positional_udas)

    summary = roster_summary(filtered, config.reference_year)
    activity = activity_rates(filtered, records.values())

    metadata = {
        "tool": f"rankmetrics {__version__}",
        "config_sha256": config.digest(),
        "scientists": str(len(filtered.scientists)),
        "publications": str(len(filtered.publications)),
        "authorships": str(len(filtered.authorships)),
        "sds_loaded": str(len(corpus.scientists_by_sds)),
        "sds_retained": str(len(filtered.scientists_by_sds)),
    }
    if summary.reference_year is not None:
        metadata["reference_year"] = str(summary.reference_year)

    bundle = ReportBundle(metadata=metadata)

    def add(table: Table):
        bundle.tables[table.key] = table

    add(build_roster_table(summary, metadata))
    add(build_age_table(summary, metadata))
    add(build_activity_table(activity, "publication", metadata))
    add(build_activity_table(activity, "citation", metadata))

    dominance = {}
    for indicator in (Indicator.NP, Indicator.FSS, Indicator.QI):
        percentiles = sds_percentiles(records, indicator, filtered)
        add(build_percentile_table(uda_rank_average(percentiles, filtered), metadata))
        dominance[indicator] = dominance_counts(
            records, filtered, indicator, Rank.FULL, Rank.ASSISTANT
        )
    add(build_dominance_table(dominance, metadata))

    add(
        build_concentration_table(
            concentration_rows(
                records, filtered, Indicator.FSS, config.bottom_fraction, config.top_fraction
            ),
            metadata,
        )
    )
    flags = top_scientists(records, Indicator.FSS, filtered, config.top_fraction)
    dist = top_distribution(flags, filtered, Indicator.FSS)
    add(build_top_distribution_table(dist, metadata))
    add(build_chi_square_table(dist, metadata))

    order = [
        "T1_roster",
        "T2_mean_age",
        "T3_publication_active",
        "T4_citation_active",
        "T5_percentile_np",
        "T6_percentile_fss",
        "T7_percentile_qi",
        "T8_dominance",
        "T9_concentration",
        "T10_top_distribution",
        "chi_square",
    ]
    bundle.tables = {key: bundle.tables[key] for key in order}
    return bundle


def write_bundle(bundle: ReportBundle, out_dir: str | Path, fmt: str = "text") -> list[Path]:
    """Write one file per table; returns the written paths."""
    ext = _FORMAT_EXT[fmt]
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return [
        write_table(table, out_dir / f"{key}.{ext}", fmt) for key, table in bundle.tables.items()
    ]
