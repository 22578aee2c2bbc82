"""Deterministic generation and the planted statistical structure."""

import numpy as np
import pytest

from rankmetrics import Rank, build_baselines, load_corpus_files
from rankmetrics.synth import SynthConfig, generate, write_corpus_csv


def test_same_config_same_rows():
    cfg = SynthConfig(seed=101, n_uda=2, sds_per_uda=2)
    a = generate(cfg)
    b = generate(cfg)
    assert a.scientists == b.scientists
    assert a.publications == b.publications
    assert a.authorships == b.authorships


def test_same_config_identical_files(tmp_path):
    cfg = SynthConfig(seed=101, n_uda=2, sds_per_uda=1)
    first = write_corpus_csv(generate(cfg), tmp_path / "a")
    second = write_corpus_csv(generate(cfg), tmp_path / "b")
    for name in first:
        assert first[name].read_bytes() == second[name].read_bytes()


def test_different_seed_different_corpus():
    a = generate(SynthConfig(seed=1, n_uda=1, sds_per_uda=1))
    b = generate(SynthConfig(seed=2, n_uda=1, sds_per_uda=1))
    assert a.publications != b.publications


def test_generated_corpus_reloads(tmp_path):
    cfg = SynthConfig(seed=33, n_uda=2, sds_per_uda=2)
    corpus = generate(cfg)
    paths = write_corpus_csv(corpus, tmp_path)
    reloaded = load_corpus_files(paths["scientists"], paths["publications"], paths["authorships"])
    assert reloaded.scientists == corpus.scientists
    assert reloaded.publications == corpus.publications
    assert reloaded.authorships == corpus.authorships


def test_rank_effect_orders_mean_output():
    cfg = SynthConfig(
        seed=7,
        n_uda=1,
        sds_per_uda=1,
        scientists_per_sds={Rank.FULL: 500, Rank.ASSOCIATE: 1, Rank.ASSISTANT: 500},
        rank_effect={Rank.FULL: 1.3, Rank.ASSOCIATE: 1.0, Rank.ASSISTANT: 1.0},
        inactive_fraction={Rank.FULL: 0.0, Rank.ASSOCIATE: 0.0, Rank.ASSISTANT: 0.0},
    )
    corpus = generate(cfg)
    means = {}
    for rank in (Rank.FULL, Rank.ASSISTANT):
        group = [s for s in corpus.scientists if s.rank is rank]
        means[rank] = np.mean([corpus.publication_count(s.scientist_id) for s in group])
    assert means[Rank.FULL] > means[Rank.ASSISTANT]


def test_inactive_fraction_respected():
    cfg = SynthConfig(
        seed=22,
        n_uda=1,
        sds_per_uda=1,
        scientists_per_sds={Rank.FULL: 1, Rank.ASSOCIATE: 1, Rank.ASSISTANT: 500},
        inactive_fraction={Rank.FULL: 0.0, Rank.ASSOCIATE: 0.0, Rank.ASSISTANT: 0.2},
    )
    corpus = generate(cfg)
    assistants = [s for s in corpus.scientists if s.rank is Rank.ASSISTANT]
    inactive = sum(1 for s in assistants if corpus.publication_count(s.scientist_id) == 0)
    assert inactive / len(assistants) == pytest.approx(0.2, abs=0.03)


def test_citation_skew_median_at_most_mean():
    corpus = generate(SynthConfig(seed=19, n_uda=3, sds_per_uda=3))
    baselines = build_baselines(corpus)
    cells = baselines.cells
    ok = sum(1 for c in cells if c.median_citations <= c.mean_citations)
    assert ok / len(cells) >= 0.95


def test_invalid_config_names_field():
    with pytest.raises(ValueError, match="n_uda"):
        generate(SynthConfig(n_uda=0))
    with pytest.raises(ValueError, match="citation_dispersion"):
        generate(SynthConfig(citation_dispersion=0.0))
    with pytest.raises(ValueError, match="inactive_fraction"):
        generate(
            SynthConfig(
                inactive_fraction={Rank.FULL: 1.5, Rank.ASSOCIATE: 0.0, Rank.ASSISTANT: 0.0}
            )
        )
    with pytest.raises(ValueError, match="years"):
        generate(SynthConfig(years=(2008, 2004)))
