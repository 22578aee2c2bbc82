import pytest

from rankmetrics import load_corpus


def tiny_rows():
    """3 scientists, 2 publications, 4 authorships; one external co-author."""
    scientists = [
        {"scientist_id": "A1", "sds_code": "S1", "uda_code": "U1", "rank": "FULL", "birth_year": "1949"},
        {"scientist_id": "A2", "sds_code": "S1", "uda_code": "U1", "rank": "ASSISTANT", "birth_year": "1957"},
        {"scientist_id": "A3", "sds_code": "S2", "uda_code": "U1", "rank": "ASSOCIATE", "birth_year": ""},
    ]
    publications = [
        {"pub_id": "P1", "year": "2005", "citation_count": "6", "subject_categories": "C1", "author_count": "2"},
        {"pub_id": "P2", "year": "2006", "citation_count": "0", "subject_categories": "C1;C2", "author_count": "2"},
    ]
    authorships = [
        {"pub_id": "P1", "position": "1", "scientist_id": "A1", "affiliation_id": "U01"},
        {"pub_id": "P1", "position": "2", "scientist_id": "A2", "affiliation_id": "U02"},
        {"pub_id": "P2", "position": "1", "scientist_id": "A3", "affiliation_id": "U01"},
        {"pub_id": "P2", "position": "2", "scientist_id": "", "affiliation_id": "U03"},
    ]
    return scientists, publications, authorships


@pytest.fixture
def tiny_corpus():
    return load_corpus(*tiny_rows())


def single_author_corpus(entries, year=2005, category="C1"):
    """Corpus of sole-authored publications, one per citation count.

    Each entry is (scientist_id, sds, uda, rank, citations_list).
    """
    scientists, publications, authorships = [], [], []
    serial = 0
    for sid, sds, uda, rank, citations in entries:
        scientists.append(
            {"scientist_id": sid, "sds_code": sds, "uda_code": uda, "rank": rank, "birth_year": ""}
        )
        for c in citations:
            serial += 1
            pid = f"P{serial}"
            publications.append(
                {"pub_id": pid, "year": year, "citation_count": c,
                 "subject_categories": category, "author_count": 1}
            )
            authorships.append(
                {"pub_id": pid, "position": 1, "scientist_id": sid, "affiliation_id": "U01"}
            )
    return load_corpus(scientists, publications, authorships)
