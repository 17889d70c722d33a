import pytest

from temporaltable import (
    Granularity,
    IndexAdapter,
    RegistrationError,
    build,
    fill_gaps,
    get_adapter,
    has_gaps,
    register_index_adapter,
    registered_adapters,
    unregister_index_adapter,
)


class Semester:
    """A school semester: (year, 1) or (year, 2)."""

    def __init__(self, year, sem):
        self.year = year
        self.sem = sem

    def __eq__(self, other):
        return isinstance(other, Semester) and (self.year, self.sem) == (other.year, other.sem)

    def __hash__(self):
        return hash((self.year, self.sem))

    def __repr__(self):
        return f"Semester({self.year}, {self.sem})"


class SemesterAdapter(IndexAdapter):
    name = "semester"
    unit_label = "sem"
    sample_values = (Semester(2019, 1), Semester(2019, 2), Semester(2020, 1))

    def to_ticks(self, value):
        if not isinstance(value, Semester) or value.sem not in (1, 2):
            raise TypeError(f"not a semester: {value!r}")
        return 2 * value.year + (value.sem - 1)

    def from_ticks(self, ticks):
        y, s = divmod(ticks, 2)
        return Semester(y, s + 1)


@pytest.fixture
def semester_registry():
    register_index_adapter(SemesterAdapter())
    yield
    unregister_index_adapter("semester")


def test_semester_table_builds(semester_registry):
    t = build(
        {
            "term": [Semester(2019, 1), Semester(2019, 2), Semester(2020, 1)],
            "enrolled": [140, 121, 155],
        },
        index="term",
    )
    assert t.interval.shorthand() == "[1sem]"
    assert t.driver.granularity is Granularity.ORDINAL
    assert [v.sem for v in t.column("term")] == [1, 2, 1]


def test_semester_gaps_work_through_ticks(semester_registry):
    # The adjacent 2019 pair pins the interval to one semester, so the
    # missing first semester of 2020 is a genuine gap.
    t = build(
        {
            "term": [Semester(2019, 1), Semester(2019, 2), Semester(2020, 2)],
            "n": [1, 2, 3],
        },
        index="term",
    )
    assert t.interval.shorthand() == "[1sem]"
    assert has_gaps(t) == [((), True)]
    filled = fill_gaps(t)
    assert filled.column("term") == [
        Semester(2019, 1),
        Semester(2019, 2),
        Semester(2020, 1),
        Semester(2020, 2),
    ]
    assert filled.column("n") == [1, 2, None, 3]


def test_reregistering_replaces_without_error(semester_registry):
    class Replacement(SemesterAdapter):
        unit_label = "semester"

    register_index_adapter(Replacement())
    try:
        assert get_adapter("semester").unit_label == "semester"
    finally:
        register_index_adapter(SemesterAdapter())


def test_partial_ordering_rejected():
    class Partial(SemesterAdapter):
        name = "partial"

        def to_ticks(self, value):
            if value.sem == 2:
                raise TypeError("cannot order second semesters")
            return 2 * value.year

    with pytest.raises(RegistrationError):
        register_index_adapter(Partial())
    assert get_adapter("partial") is None


def test_non_integer_ticks_rejected():
    class Fractional(SemesterAdapter):
        name = "fractional"

        def to_ticks(self, value):
            return value.year + value.sem / 2

    with pytest.raises(RegistrationError):
        register_index_adapter(Fractional())


def test_bad_round_trip_rejected():
    class Lossy(SemesterAdapter):
        name = "lossy"

        def from_ticks(self, ticks):
            return Semester(ticks // 2, 1)

    with pytest.raises(RegistrationError):
        register_index_adapter(Lossy())


def test_registry_listing(semester_registry):
    names = [a.name for a in registered_adapters()]
    assert "semester" in names
