"""Numeric rendering conventions and the delimited round trip."""

import pytest

from rankmetrics.tables import Column, Table, format_table, half_up, parse_table_csv, write_table


def test_half_up_rounding():
    assert half_up(35.05, 1) == "35.1"
    assert half_up(0.125, 2) == "0.13"
    assert half_up(2.5, 0) == "3"
    assert half_up(0.5604, 3) == "0.560"
    assert half_up(1.051, 2) == "1.05"
    assert half_up(23.849, 1) == "23.8"


def test_reference_activity_cell_renders():
    # 9,861 active of 10,764 renders as 91.6%
    assert half_up(100.0 * 9861 / 10764, 1) == "91.6"


def _table():
    columns = [
        Column("UDA"),
        Column("Staff", "count_pct"),
        Column("Gini", "dec3"),
        Column("Tops", "pct_index"),
        Column("Wins", "x_of_y"),
    ]
    rows = [
        ["U1", (10764, 35.1), 0.5604, (39.1, 1.051), (8, 176)],
        ["U2", (955, None), None, (12.0, None), (0, 9)],
    ]
    return Table("demo", "Demo table", columns, rows, {"tool": "rankmetrics test"})


def test_text_rendering_conventions():
    text = format_table(_table(), "text")
    assert "10,764 (35.1%)" in text
    assert "0.560" in text
    assert "39.1 (1.05)" in text
    assert "8 out of 176" in text
    assert "# tool: rankmetrics test" in text


def test_md_rendering():
    md = format_table(_table(), "md")
    assert md.startswith("## Demo table")
    assert "| U1 |" in md
    assert "10,764 (35.1%)" in md


def test_csv_expands_composite_columns(tmp_path):
    path = write_table(_table(), tmp_path / "demo.csv", "csv")
    metadata, header, rows = parse_table_csv(path)
    assert metadata == {"tool": "rankmetrics test"}
    assert header == [
        "UDA", "Staff", "Staff_pct", "Gini", "Tops_share", "Tops_index", "Wins_wins", "Wins_counted",
    ]
    assert rows[0] == ["U1", "10764", "35.1", "0.560", "39.1", "1.05", "8", "176"]
    assert rows[1] == ["U2", "955", "", "", "12.0", "", "0", "9"]


def test_csv_round_trip_preserves_values(tmp_path):
    table = _table()
    path = write_table(table, tmp_path / "demo.csv", "csv")
    _, header, rows = parse_table_csv(path)
    # values re-parse to the numbers that produced them, at rendering precision
    assert int(rows[0][1]) == 10764
    assert float(rows[0][2]) == pytest.approx(35.1)
    assert float(rows[0][3]) == pytest.approx(0.5604, abs=5e-4)
    assert float(rows[0][5]) == pytest.approx(1.051, abs=5e-3)


def test_unknown_format_rejected():
    with pytest.raises(ValueError):
        format_table(_table(), "xml")
