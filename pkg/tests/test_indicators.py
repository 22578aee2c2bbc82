"""Co-author weight vectors and per-scientist indicator computation."""

import math

import pytest
from hypothesis import given, strategies as st

from rankmetrics import (
    IndicatorRecord,
    WeightScheme,
    build_baselines,
    byline_case_flags,
    coauthor_weights,
    compute_indicators,
    load_corpus,
    read_indicators,
    write_indicators,
)

POSITIONAL = WeightScheme.POSITIONAL
EQUAL = WeightScheme.EQUAL


# ---------------------------------------------------------------------------
# Weight vectors

def test_case_a_five_authors():
    w = coauthor_weights(5, POSITIONAL, first_last_same=True)
    assert w[0] == pytest.approx(0.40, abs=1e-12)
    assert w[4] == pytest.approx(0.40, abs=1e-12)
    for i in (1, 2, 3):
        assert w[i] == pytest.approx(0.20 / 3, abs=1e-12)


def test_case_b_six_authors():
    w = coauthor_weights(6, POSITIONAL, boundary_pairs_differ=True)
    assert w == pytest.approx([0.30, 0.15, 0.05, 0.05, 0.15, 0.30], abs=1e-12)


def test_sole_author():
    for scheme in (EQUAL, POSITIONAL):
        assert coauthor_weights(1, scheme, first_last_same=True) == [1.0]


def test_equal_four_authors():
    assert coauthor_weights(4, EQUAL) == [0.25, 0.25, 0.25, 0.25]


def test_unrecognized_pattern_falls_back_to_equal():
    assert coauthor_weights(5, POSITIONAL) == [0.2] * 5


def test_overlapping_roles_renormalize():
    # first and last share the 0.40+0.40 for n=2 under case A
    assert coauthor_weights(2, POSITIONAL, first_last_same=True) == pytest.approx([0.5, 0.5])
    # case B with n=2: (0.30+0.15) each, renormalized
    assert coauthor_weights(2, POSITIONAL, boundary_pairs_differ=True) == pytest.approx([0.5, 0.5])
    # case B with n=3: middle holds both 15% roles
    assert coauthor_weights(3, POSITIONAL, boundary_pairs_differ=True) == pytest.approx([1 / 3] * 3)
    # case B with n=4: no remainder group, renormalized 0.9 -> 1
    assert coauthor_weights(4, POSITIONAL, boundary_pairs_differ=True) == pytest.approx(
        [1 / 3, 1 / 6, 1 / 6, 1 / 3]
    )


def test_zero_authors_rejected():
    with pytest.raises(ValueError):
        coauthor_weights(0)


def test_weights_sum_to_one_all_cases():
    for n in range(1, 51):
        for kwargs in (
            dict(),
            dict(first_last_same=True),
            dict(boundary_pairs_differ=True),
        ):
            for scheme in (EQUAL, POSITIONAL):
                total = math.fsum(coauthor_weights(n, scheme, **kwargs))
                assert abs(total - 1.0) < 1e-12


@given(st.integers(1, 50), st.booleans(), st.booleans())
def test_weights_sum_property(n, same, differ):
    w = coauthor_weights(n, POSITIONAL, first_last_same=same, boundary_pairs_differ=differ)
    assert abs(math.fsum(w) - 1.0) < 1e-12
    assert all(x >= 0 for x in w)


# ---------------------------------------------------------------------------
# Case flags from affiliations

def test_flags_case_a():
    assert byline_case_flags(["U1", "U2", "U3", "U1"]) == (True, False)


def test_flags_case_b():
    assert byline_case_flags(["U1", "U2", "U3", "U4"]) == (False, True)
    # n=3: pairwise distinct boundary affiliations
    assert byline_case_flags(["U1", "U2", "U3"]) == (False, True)
    # n=2: the two authors differ
    assert byline_case_flags(["U1", "U2"]) == (False, True)


def test_flags_neither_case():
    # first/last differ but second matches penultimate
    assert byline_case_flags(["U1", "U2", "U2", "U3"]) == (False, False)


def test_flags_missing_affiliation_undecidable():
    assert byline_case_flags(["U1", None, "U3", "U4"]) == (False, False)
    assert byline_case_flags([None, "U2", "U3", "U4"]) == (False, False)
    # ... but a present, equal first/last pair still resolves case A
    assert byline_case_flags(["U1", None, None, "U1"]) == (True, False)


def test_flags_sole_author():
    assert byline_case_flags(["U1"]) == (False, False)


# ---------------------------------------------------------------------------
# Indicator computation

def _corpus(pubs, scientists=None):
    """pubs: list of (pub_id, citations, [(position, scientist_or_None, affil), ...])."""
    if scientists is None:
        scientists = [("X", "S1", "U1", "FULL")]
    sci_rows = [
        {"scientist_id": s, "sds_code": sds, "uda_code": uda, "rank": rank, "birth_year": ""}
        for s, sds, uda, rank in scientists
    ]
    pub_rows, auth_rows = [], []
    for pid, citations, byline in pubs:
        pub_rows.append(
            {"pub_id": pid, "year": 2005, "citation_count": citations,
             "subject_categories": "C1", "author_count": len(byline)}
        )
        for position, sid, affil in byline:
            auth_rows.append(
                {"pub_id": pid, "position": position, "scientist_id": sid or "",
                 "affiliation_id": affil or ""}
            )
    return load_corpus(sci_rows, pub_rows, auth_rows)


def test_inactive_scientist():
    corpus = _corpus(
        [("P1", 1, [(1, "X", "U1")])],
        scientists=[("X", "S1", "U1", "FULL"), ("lazy", "S1", "U1", "FULL")],
    )
    records = compute_indicators(corpus, build_baselines(corpus))
    rec = records["lazy"]
    assert (rec.n_p, rec.qi, rec.fss) == (0, None, 0.0)


def test_sole_author_indicators():
    # cell citations {6, 0, 2} -> median 2; the 6-citation publication scores 3.0
    corpus = _corpus(
        [
            ("P1", 6, [(1, "X", "U1")]),
            ("P2", 0, [(1, None, "U2")]),
            ("P3", 2, [(1, None, "U3")]),
        ]
    )
    records = compute_indicators(corpus, build_baselines(corpus))
    rec = records["X"]
    assert rec.n_p == 1
    assert rec.qi == pytest.approx(3.0)
    assert rec.fss == pytest.approx(3.0)  # sole author carries weight 1


def test_two_publication_example():
    """Standardized scores 2.0 and 4.0 with 2 and 4 equal-weight authors."""
    from rankmetrics.baseline import BaselineCell, BaselineTable

    corpus = _corpus(
        [
            ("P1", 4, [(1, "X", "U1"), (2, None, "U2")]),
            ("P2", 8, [(1, "X", "U1"), (2, None, "U2"), (3, None, "U3"), (4, None, "U4")]),
        ]
    )
    baselines = BaselineTable([BaselineCell(2005, "C1", 2.0, 2.0, 2)])
    rec = compute_indicators(corpus, baselines)["X"]
    assert rec.n_p == 2
    assert rec.qi == pytest.approx(3.0)  # mean(2.0, 4.0)
    assert rec.fss == pytest.approx(2.0)  # 2.0/2 + 4.0/4


def test_positional_scheme_only_for_configured_udas():
    byline = [(1, "X", "U1"), (2, None, "U2"), (3, None, "U3"), (4, None, "U1")]
    corpus = _corpus([("P1", 5, [(1, "X", "U1"), (2, None, "U2"), (3, None, "U3"), (4, None, "U1")])])
    baselines = build_baselines(corpus)
    equal = compute_indicators(corpus, baselines)["X"]
    positional = compute_indicators(corpus, baselines, positional_udas=["U1"])["X"]
    score = equal.fss * 4  # equal weight was 1/4
    assert positional.fss == pytest.approx(score * 0.40)  # first author, case A
    assert positional.qi == equal.qi  # qi ignores weights


def test_fss_conservation_across_byline():
    """Summing every position's credit recovers the publication score."""
    scientists = [(f"A{i}", "S1", "U1", "FULL") for i in range(1, 6)]
    byline = [(i, f"A{i}", f"U{i}") for i in range(1, 6)]  # boundary pairs differ
    corpus = _corpus([("P1", 7, byline)], scientists=scientists)
    baselines = build_baselines(corpus)
    for udas in ((), ("U1",)):
        records = compute_indicators(corpus, baselines, positional_udas=udas)
        total = sum(records[f"A{i}"].fss for i in range(1, 6))
        score = records["A1"].qi  # single publication: qi equals its score
        assert abs(total - score) < 1e-12


def test_fss_invariant_under_middle_permutation_case_a():
    scientists = [(f"A{i}", "S1", "U1", "FULL") for i in range(1, 6)]
    byline = [(1, "A1", "UH"), (2, "A2", "U2"), (3, "A3", "U3"), (4, "A4", "U4"), (5, "A5", "UH")]
    swapped = [(1, "A1", "UH"), (2, "A3", "U3"), (3, "A4", "U4"), (4, "A2", "U2"), (5, "A5", "UH")]
    a = compute_indicators(
        (c := _corpus([("P1", 9, byline)], scientists=scientists)), build_baselines(c), ["U1"]
    )
    b = compute_indicators(
        (c := _corpus([("P1", 9, swapped)], scientists=scientists)), build_baselines(c), ["U1"]
    )
    for sid in ("A1", "A2", "A3", "A4", "A5"):
        assert a[sid].fss == pytest.approx(b[sid].fss, abs=1e-12)


def test_equal_scheme_sole_authored_identity():
    corpus = _corpus(
        [("P1", 2, [(1, "X", "U1")]), ("P2", 2, [(1, "X", "U1")])],
        scientists=[("X", "S1", "U1", "FULL")],
    )
    rec = compute_indicators(corpus, build_baselines(corpus))["X"]
    assert rec.fss == pytest.approx(rec.n_p * rec.qi)


def test_export_import_round_trip(tmp_path):
    records = {
        "X": IndicatorRecord("X", 3, 1.25, 0.75),
        "idle": IndicatorRecord("idle", 0, None, 0.0),
    }
    path = write_indicators(records, tmp_path / "indicators.csv")
    loaded = read_indicators(path)
    assert loaded == records
