"""Tick encodings checked against stdlib calendar arithmetic."""

import random
from datetime import date, datetime, timedelta, timezone
from zoneinfo import ZoneInfo

import pytest
from hypothesis import given, strategies as st

from temporaltable import (
    ConversionError,
    Granularity,
    ParseError,
    PreconditionError,
    TimePoint,
    floor_to,
    guess_granularity,
    parse_timepoint,
    timepoint as tp,
)
from temporaltable.timepoint import span_ticks

EPOCH = date(1970, 1, 1)


@given(st.dates(min_value=date(1800, 1, 2), max_value=date(2300, 1, 1)))
def test_day_ticks_match_date_subtraction(d):
    point = tp.day(d.year, d.month, d.day)
    assert point.ticks == (d - EPOCH).days


@given(st.integers(min_value=1800, max_value=2300), st.integers(min_value=1, max_value=12))
def test_month_ticks_linear_in_calendar(y, m):
    assert tp.month(y, m).ticks == (y - 1970) * 12 + (m - 1)


def test_year_and_quarter_ticks():
    assert tp.year(1970).ticks == 0
    assert tp.year(2011).ticks == 41
    assert tp.quarter(1970, 1).ticks == 0
    assert tp.quarter(2011, 3).ticks == (2011 - 1970) * 4 + 2


def test_week_ticks_iso_monday_aligned():
    # The epoch fell on a Thursday; its ISO week began Monday 1969-12-29.
    assert tp.week(1970, 1).ticks == 0
    for _ in range(200):
        d = EPOCH + timedelta(days=random.Random(7).randrange(-20000, 20000))
        iso = d.isocalendar()
        w = tp.week(iso[0], iso[1])
        monday = d - timedelta(days=d.weekday())
        assert w.ticks == ((monday - EPOCH).days + 3) // 7


@given(
    st.datetimes(
        min_value=datetime(1930, 1, 1), max_value=datetime(2200, 1, 1)
    ).map(lambda d: d.replace(microsecond=0))
)
def test_second_ticks_match_epoch_seconds(dt):
    point = tp.second(dt.year, dt.month, dt.day, dt.hour, dt.minute, dt.second)
    oracle = int(dt.replace(tzinfo=timezone.utc).timestamp())
    assert point.ticks == oracle


def test_subdaily_zone_changes_ticks_not_rendering_zone():
    utc = tp.hour(2017, 8, 3, 17)
    ny = tp.hour(2017, 8, 3, 17, zone="America/New_York")
    # 17:00 in New York in August is 21:00 UTC.
    assert ny.ticks - utc.ticks == 4
    assert ny.render() == "2017-08-03 17:00"


def test_flooring_examples():
    assert floor_to(tp.day(2013, 1, 15), Granularity.MONTH) == tp.month(2013, 1)
    assert floor_to(tp.day(2013, 1, 1), Granularity.DAY) == tp.day(2013, 1, 1)
    t = tp.second(2017, 8, 3, 17, 45, 0)
    # Independent route: through the civil datetime of the tick.
    civil = datetime.fromtimestamp(t.ticks, tz=timezone.utc)
    assert floor_to(t, Granularity.YEAR) == tp.year(civil.year)
    assert floor_to(t, Granularity.QUARTER) == tp.quarter(2017, 3)
    assert floor_to(t, Granularity.WEEK) == tp.week(2017, 31)


def test_flooring_subdaily_is_utc_division():
    t = tp.minute(2017, 8, 3, 17, 45)
    assert floor_to(t, Granularity.HOUR).ticks == t.ticks // 60


def test_flooring_uses_zone_for_calendar_targets():
    # 03:00 UTC on Jan 1 is still Dec 31 in New York.
    t = TimePoint(tp.hour(2017, 1, 1, 3).ticks, Granularity.HOUR, "America/New_York")
    assert floor_to(t, Granularity.DAY) == tp.day(2016, 12, 31)
    assert floor_to(t, Granularity.YEAR) == tp.year(2016)


def test_flooring_idempotent_and_monotone():
    rng = random.Random(11)
    grans = [
        Granularity.YEAR, Granularity.QUARTER, Granularity.MONTH,
        Granularity.WEEK, Granularity.DAY,
    ]
    for _ in range(300):
        a = tp.day(rng.randrange(1950, 2050), rng.randrange(1, 13), rng.randrange(1, 29))
        b = tp.day(rng.randrange(1950, 2050), rng.randrange(1, 13), rng.randrange(1, 29))
        g = rng.choice(grans)
        fa, fb = floor_to(a, g), floor_to(b, g)
        assert floor_to(fa, g) == fa
        if a <= b:
            assert fa <= fb


def test_flooring_errors():
    with pytest.raises(ConversionError):
        floor_to(tp.ordinal(3), Granularity.YEAR)
    assert floor_to(tp.ordinal(3), Granularity.ORDINAL) == tp.ordinal(3)
    with pytest.raises(PreconditionError):
        floor_to(tp.year(2011), Granularity.DAY)


def test_comparison_needs_matching_granularity():
    with pytest.raises(PreconditionError):
        tp.year(2011) < tp.month(2011, 3)
    assert tp.year(2011) < tp.year(2012)


RENDERED = [
    (tp.year(2011), "2011"),
    (tp.quarter(2011, 3), "2011 Q3"),
    (tp.month(2011, 7), "2011-07"),
    (tp.week(2011, 7), "2011 W07"),
    (tp.day(2011, 7, 5), "2011-07-05"),
    (tp.hour(2011, 7, 5, 17), "2011-07-05 17:00"),
    (tp.minute(2011, 7, 5, 17, 45), "2011-07-05 17:45"),
    (tp.second(2011, 7, 5, 17, 45, 0), "2011-07-05 17:45:00"),
    (tp.millisecond(2011, 7, 5, 17, 45, 0, 123), "2011-07-05 17:45:00.123"),
    (tp.ordinal(42), "42"),
]


@pytest.mark.parametrize("point,text", RENDERED)
def test_canonical_rendering(point, text):
    assert point.render() == text


@pytest.mark.parametrize("point,text", RENDERED)
def test_parse_inverts_render(point, text):
    assert parse_timepoint(text, point.granularity) == point


def test_parse_alternates():
    assert parse_timepoint("2011 Jul", Granularity.MONTH) == tp.month(2011, 7)
    assert parse_timepoint("2011 jul", Granularity.MONTH) == tp.month(2011, 7)
    assert parse_timepoint("2011-07-05T17:45", Granularity.MINUTE) == tp.minute(2011, 7, 5, 17, 45)
    assert parse_timepoint("2011-07-05 17", Granularity.HOUR) == tp.hour(2011, 7, 5, 17)


def test_parse_rejects_malformed():
    for text, g in [
        ("2011-13", Granularity.MONTH),
        ("2011 Q5", Granularity.QUARTER),
        ("2011-02-30", Granularity.DAY),
        ("2011-07-05 17:30", Granularity.HOUR),
        ("noise", Granularity.YEAR),
    ]:
        with pytest.raises(ParseError):
            parse_timepoint(text, g)


def test_parse_random_round_trip():
    rng = random.Random(23)
    for _ in range(300):
        g = rng.choice([g for g in Granularity if g is not Granularity.ORDINAL])
        span = 3000 if g in (Granularity.SECOND, Granularity.MILLISECOND) else 2000
        point = TimePoint(rng.randrange(0, span), g)
        assert parse_timepoint(point.render(), g) == point


def test_guess_granularity():
    cases = {
        "2011": Granularity.YEAR,
        "2011 Q3": Granularity.QUARTER,
        "2011-07": Granularity.MONTH,
        "2011 W07": Granularity.WEEK,
        "2011-07-05": Granularity.DAY,
        "2011-07-05 17:45": Granularity.MINUTE,
        "2011-07-05 17:45:00": Granularity.SECOND,
        "2011-07-05 17:45:00.123": Granularity.MILLISECOND,
    }
    for text, g in cases.items():
        assert guess_granularity(text) is g
    assert guess_granularity("nonsense") is None


def test_span_year_to_days_matches_calendar():
    lo, hi = span_ticks(tp.year(2012), Granularity.DAY)
    assert lo == (date(2012, 1, 1) - EPOCH).days
    assert hi == (date(2012, 12, 31) - EPOCH).days
    assert hi - lo + 1 == 366


def test_span_quarter_to_months():
    lo, hi = span_ticks(tp.quarter(2011, 3), Granularity.MONTH)
    assert (lo, hi) == (tp.month(2011, 7).ticks, tp.month(2011, 9).ticks)


def test_span_hour_to_minutes():
    h = tp.hour(2011, 7, 5, 17)
    lo, hi = span_ticks(h, Granularity.MINUTE)
    assert hi - lo + 1 == 60
    assert lo == h.ticks * 60


def test_span_respects_zone_for_dst_day():
    # New York sprang forward on 2017-03-12: a 23-hour civil day.
    lo, hi = span_ticks(tp.day(2017, 3, 12), Granularity.MINUTE, "America/New_York")
    assert hi - lo + 1 == 23 * 60
    start = datetime(2017, 3, 12, tzinfo=ZoneInfo("America/New_York"))
    assert lo == int(start.timestamp()) // 60


def test_span_rejects_coarser_target():
    with pytest.raises(PreconditionError):
        span_ticks(tp.month(2011, 7), Granularity.YEAR)
    with pytest.raises(ConversionError):
        span_ticks(tp.ordinal(3), Granularity.DAY)


def test_week_span_covers_seven_days():
    w = tp.week(2011, 7)
    lo, hi = span_ticks(w, Granularity.DAY)
    monday = date.fromisocalendar(2011, 7, 1)
    assert lo == (monday - EPOCH).days
    assert hi - lo == 6
