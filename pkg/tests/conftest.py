import csv
import pathlib
import sys

import pytest

from temporaltable import build, timepoint as tp

DATA = pathlib.Path(__file__).parent / "data"


def load_tuberculosis() -> dict[str, list]:
    """The 12-row tuberculosis fixture as typed columns."""
    with open(DATA / "tuberculosis.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    return {
        "country": [r["country"] for r in rows],
        "continent": [r["continent"] for r in rows],
        "gender": [r["gender"] for r in rows],
        "year": [tp.year(int(r["year"])) for r in rows],
        "count": [int(r["count"]) for r in rows],
    }


@pytest.fixture
def tb_raw():
    return load_tuberculosis()


@pytest.fixture
def tb(tb_raw):
    return build(tb_raw, index="year", key=("country", "gender"))


def table_rows(t) -> list[dict]:
    """Materialized rows, for independent brute-force checks."""
    return [t.row(i) for i in range(t.nrows)]


def pytest_terminal_summary(terminalreporter):
    """Print one line per acceptance criterion once capture is released."""
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        desc, ok = results[num]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[criterion {num:02d}] {verdict}  {desc}")


def assert_same_table(a, b, ignore_column_order=False):
    """Column-wise equality; optionally after aligning column order."""
    assert sorted(a.columns) == sorted(b.columns)
    if not ignore_column_order:
        assert a.column_names == b.column_names
    assert a.index == b.index
    assert a.key == b.key
    assert a.interval == b.interval
    for name in a.columns:
        assert a.kind_of(name) == b.kind_of(name), name
        assert a.column(name) == b.column(name), name
