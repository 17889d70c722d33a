"""Time points as integer ticks at a named granularity.

A :class:`TimePoint` stores a signed tick count since the Unix epoch
(1970-01-01 00:00:00 UTC) at its granularity: years since 1970, months since
1970-01, days since 1970-01-01, seconds since the epoch instant, and so on.
Weeks are ISO weeks starting Monday; week 0 is the week containing the epoch.
Integer ticks keep interval arithmetic exact, which the GCD-based interval
inference relies on.

Sub-daily ticks are UTC instants.  An optional zone label changes how a point
renders and how it floors to day-or-coarser granularities; it never changes
the stored ticks.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import date, datetime, timedelta, timezone
from zoneinfo import ZoneInfo

from .errors import ConversionError, ParseError, PreconditionError
from .granularity import MS_PER_TICK, Granularity, coarser_or_equal

_EPOCH_DATE = date(1970, 1, 1)
_EPOCH_UTC = datetime(1970, 1, 1, tzinfo=timezone.utc)
_ONE_MS = timedelta(milliseconds=1)

_MONTH_ABBR = {
    "jan": 1, "feb": 2, "mar": 3, "apr": 4, "may": 5, "jun": 6,
    "jul": 7, "aug": 8, "sep": 9, "oct": 10, "nov": 11, "dec": 12,
}


def _tzinfo(zone: str | None):
    if zone is None or zone.upper() == "UTC":
        return timezone.utc
    try:
        return ZoneInfo(zone)
    except Exception as exc:
        raise ParseError(f"unknown time zone {zone!r}") from exc


def _require_granularity(g) -> Granularity:
    if isinstance(g, Granularity):
        return g
    try:
        return Granularity(g)
    except ValueError:
        raise PreconditionError(f"unknown granularity {g!r}") from None


@dataclass(frozen=True)
class TimePoint:
    """An instant at a granularity; ordered by ticks within one granularity."""

    ticks: int
    granularity: Granularity
    zone: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.ticks, int) or isinstance(self.ticks, bool):
            raise PreconditionError(f"ticks must be an integer, got {self.ticks!r}")

    def _check_comparable(self, other):
        if not isinstance(other, TimePoint):
            raise PreconditionError(f"cannot compare TimePoint with {type(other).__name__}")
        if other.granularity is not self.granularity:
            raise PreconditionError(
                f"cannot compare {self.granularity.value} with {other.granularity.value}"
            )

    def __lt__(self, other):
        self._check_comparable(other)
        return self.ticks < other.ticks

    def __le__(self, other):
        self._check_comparable(other)
        return self.ticks <= other.ticks

    def __gt__(self, other):
        self._check_comparable(other)
        return self.ticks > other.ticks

    def __ge__(self, other):
        self._check_comparable(other)
        return self.ticks >= other.ticks

    def __repr__(self):
        return f"TimePoint({self.render()!r}, {self.granularity.value!r})"

    def render(self) -> str:
        return render_timepoint(self)

    def floor_to(self, g: Granularity) -> "TimePoint":
        return floor_to(self, g)

    @staticmethod
    def parse(text: str, granularity, zone: str | None = None) -> "TimePoint":
        return parse_timepoint(text, granularity, zone)


# --- tick <-> civil conversions -------------------------------------------

def _date_from_ticks(ticks: int, g: Granularity) -> date:
    """Start date of the period a day-or-coarser tick denotes."""
    if g is Granularity.YEAR:
        return date(1970 + ticks, 1, 1)
    if g is Granularity.QUARTER:
        y, q = divmod(ticks, 4)
        return date(1970 + y, 3 * q + 1, 1)
    if g is Granularity.MONTH:
        y, m = divmod(ticks, 12)
        return date(1970 + y, m + 1, 1)
    if g is Granularity.WEEK:
        return _EPOCH_DATE + timedelta(days=7 * ticks - 3)
    if g is Granularity.DAY:
        return _EPOCH_DATE + timedelta(days=ticks)
    raise ConversionError(f"{g.value} has no date representation")


def _date_to_ticks(d: date, g: Granularity) -> int:
    """Tick of the period at ``g`` containing date ``d``."""
    if g is Granularity.YEAR:
        return d.year - 1970
    if g is Granularity.QUARTER:
        return (d.year - 1970) * 4 + (d.month - 1) // 3
    if g is Granularity.MONTH:
        return (d.year - 1970) * 12 + (d.month - 1)
    if g is Granularity.WEEK:
        monday = d - timedelta(days=d.weekday())
        return ((monday - _EPOCH_DATE).days + 3) // 7
    if g is Granularity.DAY:
        return (d - _EPOCH_DATE).days
    raise ConversionError(f"{g.value} ticks are not date-based")


def _instant_from_ticks(ticks: int, g: Granularity) -> datetime:
    return _EPOCH_UTC + timedelta(milliseconds=ticks * MS_PER_TICK[g])


def _civil_datetime(tp: TimePoint) -> datetime:
    """Zone-local civil time of a sub-daily point."""
    return _instant_from_ticks(tp.ticks, tp.granularity).astimezone(_tzinfo(tp.zone))


def _ticks_from_civil(g: Granularity, zone: str | None, y, mo=1, d=1, h=0, mi=0, s=0, ms=0) -> int:
    """Encode a civil time at a sub-daily granularity; must align exactly."""
    try:
        local = datetime(y, mo, d, h, mi, s, ms * 1000, tzinfo=_tzinfo(zone))
    except ValueError as exc:
        raise ParseError(f"invalid civil time {(y, mo, d, h, mi, s, ms)}: {exc}") from exc
    total_ms = (local - _EPOCH_UTC) // _ONE_MS
    unit = MS_PER_TICK[g]
    ticks, rem = divmod(total_ms, unit)
    if rem:
        raise ParseError(
            f"{local.isoformat()} does not align to whole {g.value} ticks "
            f"(offset remainder {rem} ms); use a finer granularity"
        )
    return ticks


def start_date(tp: TimePoint) -> date:
    """Civil start date of the period ``tp`` denotes (local date for sub-daily)."""
    g = tp.granularity
    if g is Granularity.ORDINAL:
        raise ConversionError("ordinal ticks have no calendar date")
    if g.is_subdaily:
        return _civil_datetime(tp).date()
    return _date_from_ticks(tp.ticks, g)


# --- factories -------------------------------------------------------------

def year(y: int) -> TimePoint:
    return TimePoint(y - 1970, Granularity.YEAR)


def quarter(y: int, q: int) -> TimePoint:
    if not 1 <= q <= 4:
        raise PreconditionError(f"quarter must be 1..4, got {q}")
    return TimePoint((y - 1970) * 4 + q - 1, Granularity.QUARTER)


def month(y: int, mo: int) -> TimePoint:
    if not 1 <= mo <= 12:
        raise PreconditionError(f"month must be 1..12, got {mo}")
    return TimePoint((y - 1970) * 12 + mo - 1, Granularity.MONTH)


def week(iso_year: int, iso_week: int) -> TimePoint:
    try:
        monday = date.fromisocalendar(iso_year, iso_week, 1)
    except ValueError as exc:
        raise PreconditionError(f"invalid ISO week {iso_year} W{iso_week}: {exc}") from exc
    return TimePoint(_date_to_ticks(monday, Granularity.WEEK), Granularity.WEEK)


def day(y: int, mo: int, d: int) -> TimePoint:
    return TimePoint(_date_to_ticks(date(y, mo, d), Granularity.DAY), Granularity.DAY)


def hour(y: int, mo: int, d: int, h: int, zone: str | None = None) -> TimePoint:
    return TimePoint(_ticks_from_civil(Granularity.HOUR, zone, y, mo, d, h), Granularity.HOUR, zone)


def minute(y: int, mo: int, d: int, h: int, mi: int, zone: str | None = None) -> TimePoint:
    return TimePoint(
        _ticks_from_civil(Granularity.MINUTE, zone, y, mo, d, h, mi), Granularity.MINUTE, zone
    )


def second(y: int, mo: int, d: int, h: int, mi: int, s: int, zone: str | None = None) -> TimePoint:
    return TimePoint(
        _ticks_from_civil(Granularity.SECOND, zone, y, mo, d, h, mi, s), Granularity.SECOND, zone
    )


def millisecond(
    y: int, mo: int, d: int, h: int, mi: int, s: int, ms: int, zone: str | None = None
) -> TimePoint:
    return TimePoint(
        _ticks_from_civil(Granularity.MILLISECOND, zone, y, mo, d, h, mi, s, ms),
        Granularity.MILLISECOND,
        zone,
    )


def ordinal(n: int) -> TimePoint:
    return TimePoint(n, Granularity.ORDINAL)


# --- flooring --------------------------------------------------------------

def floor_to(t: TimePoint, g) -> TimePoint:
    """The TimePoint at granularity ``g`` containing ``t``.

    ``g`` must be coarser than or equal to ``t.granularity``.  Sub-daily to
    sub-daily flooring is exact division on UTC ticks; flooring into a
    day-or-coarser granularity goes through the zone-local civil date.
    Ordinal points only floor to themselves.
    """
    g = _require_granularity(g)
    if t.granularity is Granularity.ORDINAL or g is Granularity.ORDINAL:
        if t.granularity is g:
            return t
        raise ConversionError(
            f"cannot floor {t.granularity.value} to {g.value}: ordinal and "
            "calendar granularities do not mix"
        )
    if not coarser_or_equal(g, t.granularity):
        raise PreconditionError(
            f"cannot floor {t.granularity.value} to finer granularity {g.value}"
        )
    if t.granularity.is_subdaily and g.is_subdaily:
        factor = MS_PER_TICK[g] // MS_PER_TICK[t.granularity]
        return TimePoint(t.ticks // factor, g, t.zone)
    return TimePoint(_date_to_ticks(start_date(t), g), g)


# --- span expansion (used by time-window filtering) ------------------------

def span_ticks(t: TimePoint, g: Granularity, zone: str | None = None) -> tuple[int, int]:
    """Inclusive tick range at granularity ``g`` covered by the period ``t``.

    ``g`` must be finer than or equal to ``t.granularity``.  A tick is covered
    when its start instant falls inside the period.
    """
    if t.granularity is Granularity.ORDINAL:
        if g is not Granularity.ORDINAL:
            raise ConversionError("ordinal periods cover only ordinal ticks")
        return t.ticks, t.ticks
    if not coarser_or_equal(t.granularity, g):
        raise PreconditionError(
            f"a {t.granularity.value} period cannot expand to coarser {g.value} ticks"
        )
    if g.is_subdaily:
        lo_ms, hi_ms = period_instant_bounds(t, zone)
        return subday_span_ticks(lo_ms, hi_ms, g)
    start, end = _period_bounds(t)
    return _ceil_date_tick(start, g), _ceil_date_tick(end, g) - 1


def subday_span_ticks(start_ms: int, end_ms: int, g: Granularity) -> tuple[int, int]:
    """Inclusive sub-daily tick range for the instant range [start_ms, end_ms)."""
    unit = MS_PER_TICK[g]
    return -(-start_ms // unit), -(-end_ms // unit) - 1


def _period_bounds(t: TimePoint) -> tuple[date, date]:
    """[start, end) dates of a day-or-coarser period."""
    g = t.granularity
    if g.is_subdaily:
        raise PreconditionError("sub-daily periods have instant bounds, not date bounds")
    start = _date_from_ticks(t.ticks, g)
    end = _date_from_ticks(t.ticks + 1, g)
    return start, end


def _ceil_date_tick(d: date, g: Granularity) -> int:
    """Smallest day-or-coarser tick whose period starts on or after ``d``."""
    tick = _date_to_ticks(d, g)
    if _date_from_ticks(tick, g) < d:
        tick += 1
    return tick


def period_instant_bounds(t: TimePoint, zone: str | None) -> tuple[int, int]:
    """[start, end) epoch-millisecond bounds of any calendar period."""
    g = t.granularity
    if g.is_subdaily:
        unit = MS_PER_TICK[g]
        return t.ticks * unit, (t.ticks + 1) * unit
    start, end = _period_bounds(t)
    tz = _tzinfo(zone)
    lo = (datetime.combine(start, datetime.min.time(), tz) - _EPOCH_UTC) // _ONE_MS
    hi = (datetime.combine(end, datetime.min.time(), tz) - _EPOCH_UTC) // _ONE_MS
    return lo, hi


# --- rendering -------------------------------------------------------------

def render_timepoint(tp: TimePoint) -> str:
    g = tp.granularity
    if g is Granularity.ORDINAL:
        return str(tp.ticks)
    if g is Granularity.YEAR:
        return str(1970 + tp.ticks)
    if g is Granularity.QUARTER:
        y, q = divmod(tp.ticks, 4)
        return f"{1970 + y} Q{q + 1}"
    if g is Granularity.MONTH:
        y, m = divmod(tp.ticks, 12)
        return f"{1970 + y}-{m + 1:02d}"
    if g is Granularity.WEEK:
        monday = _date_from_ticks(tp.ticks, g)
        iso = monday.isocalendar()
        return f"{iso[0]} W{iso[1]:02d}"
    if g is Granularity.DAY:
        d = _date_from_ticks(tp.ticks, g)
        return f"{d.year:04d}-{d.month:02d}-{d.day:02d}"
    c = _civil_datetime(tp)
    base = f"{c.year:04d}-{c.month:02d}-{c.day:02d} {c.hour:02d}:{c.minute:02d}"
    if g is Granularity.HOUR or g is Granularity.MINUTE:
        return base
    base += f":{c.second:02d}"
    if g is Granularity.SECOND:
        return base
    return base + f".{c.microsecond // 1000:03d}"


# --- parsing ---------------------------------------------------------------

_RE_YEAR = re.compile(r"^(-?\d+)$")
_RE_QUARTER = re.compile(r"^(-?\d+)\s+Q([1-4])$")
_RE_MONTH_NUM = re.compile(r"^(-?\d+)-(\d{2})$")
_RE_MONTH_ABBR = re.compile(r"^(-?\d+)\s+([A-Za-z]{3})$")
_RE_WEEK = re.compile(r"^(-?\d+)\s+W(\d{1,2})$")
_RE_DAY = re.compile(r"^(\d{4})-(\d{2})-(\d{2})$")
_RE_HOUR = re.compile(r"^(\d{4})-(\d{2})-(\d{2})[ T](\d{2})(?::00)?$")
_RE_MINUTE = re.compile(r"^(\d{4})-(\d{2})-(\d{2})[ T](\d{2}):(\d{2})$")
_RE_SECOND = re.compile(r"^(\d{4})-(\d{2})-(\d{2})[ T](\d{2}):(\d{2}):(\d{2})$")
_RE_MILLI = re.compile(r"^(\d{4})-(\d{2})-(\d{2})[ T](\d{2}):(\d{2}):(\d{2})\.(\d{1,3})$")


def parse_timepoint(text: str, granularity, zone: str | None = None) -> TimePoint:
    """Parse canonical text at a declared granularity.

    Canonical forms: "2011", "2011 Q3", "2011-07" (or "2011 Jul"),
    "2011 W07", "2011-07-05", "2011-07-05 17:00", "2011-07-05 17:45",
    "2011-07-05 17:45:00", "2011-07-05 17:45:00.123".  Ordinal values are
    plain integers.  A "T" date-time separator is accepted on input.
    """
    g = _require_granularity(granularity)
    text = text.strip()
    try:
        return _parse_strict(text, g, zone)
    except ParseError:
        raise
    except (ValueError, OverflowError) as exc:
        raise ParseError(f"cannot parse {text!r} as {g.value}: {exc}") from exc


def _parse_strict(text: str, g: Granularity, zone: str | None) -> TimePoint:
    def fail():
        raise ParseError(f"cannot parse {text!r} as {g.value}")

    if g is Granularity.ORDINAL:
        m = _RE_YEAR.match(text) or fail()
        return ordinal(int(m.group(1)))
    if g is Granularity.YEAR:
        m = _RE_YEAR.match(text) or fail()
        return year(int(m.group(1)))
    if g is Granularity.QUARTER:
        m = _RE_QUARTER.match(text) or fail()
        return quarter(int(m.group(1)), int(m.group(2)))
    if g is Granularity.MONTH:
        m = _RE_MONTH_NUM.match(text)
        if m:
            mo = int(m.group(2))
            if not 1 <= mo <= 12:
                fail()
            return month(int(m.group(1)), mo)
        m = _RE_MONTH_ABBR.match(text) or fail()
        mo = _MONTH_ABBR.get(m.group(2).lower()) or fail()
        return month(int(m.group(1)), mo)
    if g is Granularity.WEEK:
        m = _RE_WEEK.match(text) or fail()
        return week(int(m.group(1)), int(m.group(2)))
    if g is Granularity.DAY:
        m = _RE_DAY.match(text) or fail()
        return day(*(int(p) for p in m.groups()))
    if g is Granularity.HOUR:
        m = _RE_HOUR.match(text) or fail()
        return hour(*(int(p) for p in m.groups()), zone=zone)
    if g is Granularity.MINUTE:
        m = _RE_MINUTE.match(text) or fail()
        return minute(*(int(p) for p in m.groups()), zone=zone)
    if g is Granularity.SECOND:
        m = _RE_SECOND.match(text) or fail()
        return second(*(int(p) for p in m.groups()), zone=zone)
    if g is Granularity.MILLISECOND:
        m = _RE_MILLI.match(text) or fail()
        y, mo, d, h, mi, s = (int(p) for p in m.groups()[:6])
        ms = int(m.group(7).ljust(3, "0"))
        return millisecond(y, mo, d, h, mi, s, ms, zone=zone)
    fail()


_GUESS_ORDER = (
    (Granularity.MILLISECOND, _RE_MILLI),
    (Granularity.SECOND, _RE_SECOND),
    (Granularity.MINUTE, _RE_MINUTE),
    (Granularity.DAY, _RE_DAY),
    (Granularity.WEEK, _RE_WEEK),
    (Granularity.QUARTER, _RE_QUARTER),
    (Granularity.MONTH, _RE_MONTH_NUM),
    (Granularity.MONTH, _RE_MONTH_ABBR),
    (Granularity.YEAR, _RE_YEAR),
)


def guess_granularity(text: str) -> Granularity | None:
    """Best-effort granularity of a canonical time string.

    Bare integers guess as years; "HH:MM" forms guess as minutes (declare the
    hour granularity explicitly when a column is hourly).
    """
    text = text.strip()
    for g, rx in _GUESS_ORDER:
        if rx.match(text):
            if g is Granularity.MONTH and rx is _RE_MONTH_ABBR:
                m = rx.match(text)
                if m.group(2).lower() not in _MONTH_ABBR:
                    continue
            return g
    return None
