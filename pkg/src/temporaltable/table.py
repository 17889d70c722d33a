"""Temporal tables: columnar data plus index, key and interval semantics.

A table is built from plain column data.  Construction checks that the
(key, index) pairs uniquely identify rows, sorts everything past-to-future
within each key, and infers the interval.  Columns keep their original
values untouched; the engine works on a parallel vector of integer ticks
derived from the index column.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .adapters import IndexAdapter, get_adapter, registered_adapters
from .errors import (
    DuplicateIndexError,
    MissingIndexError,
    PreconditionError,
    SchemaError,
    ValidityError,
)
from .granularity import Granularity
from .interval import Interval, infer_from_ticks
from .timepoint import TimePoint

# Cell kinds: "int", "real", "text", "bool", "time".  Missing cells are None.
KINDS = ("int", "real", "text", "bool", "time")


@dataclass
class Column:
    kind: str
    values: list

    def __len__(self):
        return len(self.values)


def cell_kind(v) -> str | None:
    if v is None:
        return None
    if isinstance(v, bool):
        return "bool"
    if isinstance(v, int):
        return "int"
    if isinstance(v, float):
        return "real"
    if isinstance(v, str):
        return "text"
    if isinstance(v, TimePoint):
        return "time"
    raise SchemaError(f"unsupported cell value {v!r} of type {type(v).__name__}")


def infer_kind(values: Sequence) -> str:
    """Column kind from its values; int and real mix promotes to real."""
    kinds = {cell_kind(v) for v in values}
    kinds.discard(None)
    if not kinds:
        return "text"
    if len(kinds) == 1:
        return kinds.pop()
    if kinds == {"int", "real"}:
        return "real"
    raise SchemaError(f"column mixes cell kinds: {sorted(kinds)}")


def _check_time_column(name: str, values: Sequence) -> None:
    grans = {v.granularity for v in values if v is not None}
    if len(grans) > 1:
        names = ", ".join(sorted(g.value for g in grans))
        raise SchemaError(f"time column {name!r} mixes granularities: {names}")


def _sort_cell(v):
    # Missing key values form a distinct level that sorts last.
    if v is None:
        return (1,)
    if isinstance(v, TimePoint):
        return (0, v.ticks)
    return (0, v)


# --- index drivers ---------------------------------------------------------


class IndexDriver:
    """Converts index cells to and from integer ticks."""

    granularity: Granularity | None = None
    unit_label: str | None = None  # None means use the granularity's letter
    cell_kind: str = "text"

    def to_ticks(self, value) -> int:
        raise NotImplementedError

    def from_ticks(self, ticks: int):
        raise NotImplementedError

    def render(self, value) -> str:
        return str(value)


class TimeDriver(IndexDriver):
    cell_kind = "time"

    def __init__(self, granularity: Granularity, zone: str | None):
        self.granularity = granularity
        self.zone = zone

    def to_ticks(self, value):
        return value.ticks

    def from_ticks(self, ticks):
        return TimePoint(ticks, self.granularity, self.zone)

    def render(self, value):
        return value.render()


class OrdinalDriver(IndexDriver):
    granularity = Granularity.ORDINAL
    cell_kind = "int"

    def to_ticks(self, value):
        return value

    def from_ticks(self, ticks):
        return ticks


class AdapterDriver(IndexDriver):
    granularity = Granularity.ORDINAL
    cell_kind = "time"

    def __init__(self, adapter: IndexAdapter):
        self.adapter = adapter
        self.unit_label = adapter.unit_label

    def to_ticks(self, value):
        return self.adapter.to_ticks(value)

    def from_ticks(self, ticks):
        return self.adapter.from_ticks(ticks)

    def render(self, value):
        return self.adapter.render(value)


class EmptyDriver(IndexDriver):
    """Driver for tables with no rows; the index kind is undetermined."""

    def to_ticks(self, value):  # pragma: no cover - no rows to convert
        raise SchemaError("empty table has no index values")

    def from_ticks(self, ticks):  # pragma: no cover
        raise SchemaError("empty table has no index values")


def _resolve_driver(name: str, values: Sequence, adapter: str | None) -> IndexDriver:
    present = [v for v in values if v is not None]
    if adapter is not None:
        ad = get_adapter(adapter)
        if ad is None:
            raise SchemaError(f"no index adapter registered under {adapter!r}")
        return AdapterDriver(ad)
    if not present:
        return EmptyDriver()
    if all(isinstance(v, TimePoint) for v in present):
        grans = {v.granularity for v in present}
        if len(grans) > 1:
            names = ", ".join(sorted(g.value for g in grans))
            raise SchemaError(f"index column {name!r} mixes granularities: {names}")
        zones = {v.zone for v in present}
        if len(zones) > 1:
            raise SchemaError(f"index column {name!r} mixes time zones: {sorted(map(str, zones))}")
        return TimeDriver(grans.pop(), zones.pop())
    for ad in registered_adapters():
        if all(ad.claims(v) for v in present):
            return AdapterDriver(ad)
    if all(isinstance(v, int) and not isinstance(v, bool) for v in present):
        return OrdinalDriver()
    raise SchemaError(
        f"index column {name!r} holds no recognized time kind "
        "(expected TimePoint, integer ticks, or a registered adapter kind)"
    )


# --- grouping metadata -----------------------------------------------------


@dataclass(frozen=True)
class Grouping:
    """Active grouping: plain columns and/or a derived index."""

    by: tuple[str, ...] = ()
    index_name: str | None = None
    index_values: tuple = ()  # derived index cells aligned to rows
    index_driver: IndexDriver | None = None


# --- reports ---------------------------------------------------------------


@dataclass
class DuplicateReport:
    """Rows whose (key, index) pair occurs more than once, in source order."""

    index: str
    key: tuple[str, ...]
    rows: list[dict]
    positions: list[int]

    def __bool__(self):
        return bool(self.rows)

    def __len__(self):
        return len(self.rows)


# --- the table -------------------------------------------------------------


class TemporalTable:
    """Columnar table with time-index, key and interval semantics.

    Instances are treated as immutable: every operation returns a new table.
    Do not mutate the lists returned by :meth:`column`.
    """

    def __init__(
        self,
        columns: dict[str, Column],
        index: str,
        key: tuple[str, ...],
        interval: Interval,
        declared_regular: bool,
        driver: IndexDriver,
        groups: Grouping | None = None,
        order_dirty: bool = False,
        notes: tuple[str, ...] = (),
    ):
        self.columns = columns
        self.index = index
        self.key = key
        self.interval = interval
        self.declared_regular = declared_regular
        self.driver = driver
        self.groups = groups
        self.order_dirty = order_dirty
        self.notes = notes
        self._ticks: list[int] | None = None

    # -- basic accessors --

    @property
    def nrows(self) -> int:
        if not self.columns:
            return 0
        return len(next(iter(self.columns.values())))

    @property
    def ncols(self) -> int:
        return len(self.columns)

    @property
    def column_names(self) -> list[str]:
        return list(self.columns)

    @property
    def schema(self) -> list[tuple[str, str]]:
        return [(name, col.kind) for name, col in self.columns.items()]

    @property
    def zone(self) -> str | None:
        return getattr(self.driver, "zone", None)

    def column(self, name: str) -> list:
        if name not in self.columns:
            raise SchemaError(f"no column named {name!r}")
        return self.columns[name].values

    def kind_of(self, name: str) -> str:
        if name not in self.columns:
            raise SchemaError(f"no column named {name!r}")
        return self.columns[name].kind

    def row(self, i: int) -> dict:
        return {name: col.values[i] for name, col in self.columns.items()}

    def rows(self) -> Iterable[dict]:
        for i in range(self.nrows):
            yield self.row(i)

    def to_dict(self) -> dict[str, list]:
        return {name: list(col.values) for name, col in self.columns.items()}

    def ticks(self) -> list[int]:
        if self._ticks is None:
            self._ticks = [self.driver.to_ticks(v) for v in self.columns[self.index].values]
        return self._ticks

    def key_tuple(self, i: int) -> tuple:
        return tuple(self.columns[k].values[i] for k in self.key)

    def __eq__(self, other):
        if not isinstance(other, TemporalTable):
            return NotImplemented
        return (
            self.schema == other.schema
            and self.index == other.index
            and self.key == other.key
            and self.interval == other.interval
            and all(
                self.columns[n].values == other.columns[n].values for n in self.columns
            )
        )

    def __repr__(self):
        return (
            f"<TemporalTable {self.nrows} x {self.ncols} {self.interval} "
            f"index={self.index!r} key={list(self.key)!r}>"
        )

    # -- ordering --

    def canonical(self) -> "TemporalTable":
        """This table re-sorted past-to-future if a verb disturbed the order."""
        if not self.order_dirty:
            return self
        order = _sort_order(self)
        cols = {
            name: Column(col.kind, [col.values[i] for i in order])
            for name, col in self.columns.items()
        }
        return TemporalTable(
            cols,
            self.index,
            self.key,
            self.interval,
            self.declared_regular,
            self.driver,
            groups=self.groups,
            order_dirty=False,
            notes=self.notes,
        )

    def is_canonical_order(self) -> bool:
        prev = None
        ticks = self.ticks()
        for i in range(self.nrows):
            cur = (tuple(_sort_cell(v) for v in self.key_tuple(i)), ticks[i])
            if prev is not None and cur < prev:
                return False
            prev = cur
        return True


def _sort_order(t: TemporalTable) -> list[int]:
    ticks = t.ticks()
    return sorted(
        range(t.nrows),
        key=lambda i: (tuple(_sort_cell(v) for v in t.key_tuple(i)), ticks[i]),
    )


# --- construction ----------------------------------------------------------


def _normalize_raw(raw) -> dict[str, list]:
    if isinstance(raw, TemporalTable):
        return raw.to_dict()
    if not isinstance(raw, Mapping):
        raise SchemaError("raw table must be a mapping of column name to values")
    cols = {str(name): list(values) for name, values in raw.items()}
    lengths = {len(v) for v in cols.values()}
    if len(lengths) > 1:
        raise SchemaError(f"ragged columns: lengths {sorted(lengths)}")
    return cols


def _prepare(
    raw,
    index: str,
    key: Sequence[str],
    adapter: str | None,
    *,
    allow_missing_index: bool,
):
    data = _normalize_raw(raw)
    if index not in data:
        raise SchemaError(f"index column {index!r} not found")
    key = tuple(key)
    if index in key:
        raise SchemaError(f"index column {index!r} cannot also be a key column")
    for k in key:
        if k not in data:
            raise SchemaError(f"key column {k!r} not found")
    if len(set(key)) != len(key):
        raise SchemaError(f"duplicate key columns: {list(key)}")

    idx_values = data[index]
    if not allow_missing_index and any(v is None for v in idx_values):
        pos = next(i for i, v in enumerate(idx_values) if v is None)
        raise MissingIndexError(f"index column {index!r} has a missing value at row {pos}")
    driver = _resolve_driver(index, idx_values, adapter)

    notes = []
    columns: dict[str, Column] = {}
    for name, values in data.items():
        if name == index:
            # Index cells may be adapter values; the driver vouches for them.
            columns[name] = Column(driver.cell_kind, values)
            continue
        kind = infer_kind(values)
        if kind == "time":
            _check_time_column(name, values)
        if name in key and values and all(v is None for v in values):
            notes.append(f"key column {name!r} is entirely missing; treated as one level")
        columns[name] = Column(kind, values)
    ticks = [None if v is None else driver.to_ticks(v) for v in idx_values]
    for i, tk in enumerate(ticks):
        if tk is not None and (not isinstance(tk, int) or isinstance(tk, bool)):
            raise SchemaError(f"index value {idx_values[i]!r} does not map to integer ticks")
    return columns, key, driver, ticks, tuple(notes)


def _scan_duplicates(columns, index, key, ticks) -> DuplicateReport:
    seen: dict[tuple, list[int]] = {}
    for i in range(len(ticks)):
        kt = tuple(columns[k].values[i] for k in key)
        seen.setdefault((kt, ticks[i]), []).append(i)
    positions = sorted(p for ps in seen.values() if len(ps) > 1 for p in ps)
    rows = [{name: col.values[i] for name, col in columns.items()} for i in positions]
    return DuplicateReport(index=index, key=key, rows=rows, positions=positions)


def build(
    raw,
    index: str,
    key: Sequence[str] = (),
    regular: bool = True,
    adapter: str | None = None,
) -> TemporalTable:
    """Construct a valid temporal table from raw column data.

    ``raw`` maps column names to equal-length value lists (an existing table
    is also accepted).  Cells may be int, float, str, bool, TimePoint or
    None.  Raises :class:`DuplicateIndexError` when (key, index) pairs are
    not unique, and :class:`MissingIndexError` for missing index values.
    Row content is preserved exactly; only the row order changes.
    """
    columns, key, driver, ticks, notes = _prepare(
        raw, index, key, adapter, allow_missing_index=False
    )
    report = _scan_duplicates(columns, index, key, ticks)
    if report:
        first_kt = tuple(columns[k].values[report.positions[0]] for k in key)
        raise DuplicateIndexError(
            f"{len(report)} rows share a (key, index) pair; first duplicate: "
            f"key={first_kt!r} index={driver.render(columns[index].values[report.positions[0]])}",
            report,
        )

    order = sorted(
        range(len(ticks)),
        key=lambda i: (
            tuple(_sort_cell(columns[k].values[i]) for k in key),
            ticks[i],
        ),
    )
    sorted_cols = {
        name: Column(col.kind, [col.values[i] for i in order]) for name, col in columns.items()
    }
    sorted_ticks = [ticks[i] for i in order]

    interval = _infer_for(sorted_cols, key, sorted_ticks, driver, regular)
    t = TemporalTable(sorted_cols, index, key, interval, regular, driver, notes=notes)
    t._ticks = sorted_ticks
    return t


def _infer_for(columns, key, sorted_ticks, driver, regular) -> Interval:
    groups = _contiguous_groups(columns, key, len(sorted_ticks))
    tick_groups = [sorted_ticks[r.start : r.stop] for _, r in groups]
    return infer_from_ticks(tick_groups, driver.granularity, regular, driver.unit_label)


def _contiguous_groups(columns, key, nrows) -> list[tuple[tuple, range]]:
    groups: list[tuple[tuple, range]] = []
    start = 0
    prev = None
    for i in range(nrows):
        kt = tuple(columns[k].values[i] for k in key)
        if prev is not None and kt != prev:
            groups.append((prev, range(start, i)))
            start = i
        prev = kt
    if nrows:
        groups.append((prev, range(start, nrows)))
    return groups


def duplicates(
    raw, index: str, key: Sequence[str] = (), adapter: str | None = None
) -> DuplicateReport:
    """All rows participating in a duplicated (key, index) pair, in source order.

    The report is empty exactly when :func:`build` would succeed with the
    same arguments (missing index values aside, which build rejects outright).
    """
    columns, key, driver, ticks, _ = _prepare(
        raw, index, key, adapter, allow_missing_index=True
    )
    ticks = [("missing",) if tk is None else tk for tk in ticks]
    return _scan_duplicates(columns, index, key, ticks)


def key_groups(t: TemporalTable) -> list[tuple[tuple, range]]:
    """One (key tuple, row range) entry per series, in sorted key order."""
    t = t.canonical()
    return _contiguous_groups(t.columns, t.key, t.nrows)


# --- rebuild helpers shared by the verb layer ------------------------------


def rebuild(
    data: dict[str, Column] | dict[str, list],
    index: str,
    key: tuple[str, ...],
    regular: bool,
    *,
    interval_override: Interval | None = None,
    adapter_driver: IndexDriver | None = None,
) -> TemporalTable:
    """Re-validate, re-sort and re-infer after a structural change."""
    raw = {
        name: (col.values if isinstance(col, Column) else col) for name, col in data.items()
    }
    adapter_name = (
        adapter_driver.adapter.name if isinstance(adapter_driver, AdapterDriver) else None
    )
    t = build(raw, index, key, regular, adapter=adapter_name)
    if interval_override is not None:
        t.interval = interval_override
    return t


def validate_table(t: TemporalTable) -> None:
    """Assert the full construction contract on an existing table.

    Checks column consistency, (key, index) uniqueness, canonical ordering
    (unless the table is marked order-dirty) and that the stored interval
    matches re-inference.  Raises ValidityError or SchemaError on failure.
    """
    n = t.nrows
    for name, col in t.columns.items():
        if len(col) != n:
            raise SchemaError(f"column {name!r} has length {len(col)}, expected {n}")
        if name == t.index:
            if col.kind != t.driver.cell_kind:
                raise SchemaError(
                    f"index column {name!r} kind {col.kind!r} does not match "
                    f"its driver ({t.driver.cell_kind!r})"
                )
            continue
        actual = infer_kind(col.values)
        if actual != col.kind and not (col.kind == "real" and actual == "int") and not (
            actual == "text" and all(v is None for v in col.values)
        ):
            raise SchemaError(f"column {name!r} kind {col.kind!r} does not match values ({actual!r})")
    if t.index not in t.columns:
        raise SchemaError(f"index column {t.index!r} missing")
    if t.index in t.key:
        raise SchemaError("index column duplicated in key")
    ticks = t.ticks()
    seen = set()
    for i in range(n):
        pair = (t.key_tuple(i), ticks[i])
        if pair in seen:
            raise ValidityError(f"duplicate (key, index) pair {pair!r}")
        seen.add(pair)
    if not t.order_dirty and not t.is_canonical_order():
        raise ValidityError("rows are not sorted by (key, index)")
    canon = t.canonical()
    expected = _infer_for(
        canon.columns, canon.key, canon.ticks(), canon.driver, canon.declared_regular
    )
    if canon.interval != expected:
        raise ValidityError(
            f"stored interval {canon.interval} does not match re-inference {expected}"
        )
