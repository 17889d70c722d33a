"""Table verbs that keep the temporal contract intact.

Every verb takes a valid table and either returns a valid table (wrapped in
a :class:`VerbOutcome` with any diagnostics) or raises an engine error.  Row
and column changes re-run the construction checks, so uniqueness, ordering
and the inferred interval stay trustworthy throughout a pipeline.

Predicates and derivation functions receive one row as a plain dict.  They
must be pure; grouped aggregation may evaluate groups in any order.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import aggregates
from .errors import (
    ConversionError,
    ParseError,
    PreconditionError,
    SchemaError,
    ValidityError,
)
from .granularity import Granularity
from .table import (
    Column,
    Grouping,
    TemporalTable,
    _resolve_driver,
    _sort_cell,
    infer_kind,
    rebuild,
)
from .timepoint import (
    TimePoint,
    _require_granularity,
    floor_to,
    guess_granularity,
    parse_timepoint,
    span_ticks,
)


@dataclass(frozen=True)
class VerbOutcome:
    """A verb result: the table plus any warnings raised along the way."""

    table: TemporalTable
    warnings: tuple[str, ...] = ()

    def __iter__(self):
        return iter((self.table, self.warnings))


def _rows(t: TemporalTable):
    return (t.row(i) for i in range(t.nrows))


def _call_rowwise(fn, row: dict, what: str):
    try:
        return fn(row)
    except KeyError as exc:
        raise SchemaError(f"{what} references unknown column {exc.args[0]!r}") from exc


def _take(t: TemporalTable, keep: list[int]) -> TemporalTable:
    data = {
        name: Column(col.kind, [col.values[i] for i in keep])
        for name, col in t.columns.items()
    }
    return rebuild(data, t.index, t.key, t.declared_regular, adapter_driver=t.driver)


# --- row verbs --------------------------------------------------------------


def filter(t: TemporalTable, predicate) -> VerbOutcome:
    """Keep rows where the predicate holds; interval is re-inferred."""
    t = t.canonical()
    keep = [i for i, row in enumerate(_rows(t)) if _call_rowwise(predicate, row, "predicate")]
    return VerbOutcome(_take(t, keep))


@dataclass(frozen=True)
class IndexFilterExpr:
    """A textual time window: "2011", "2013-01 ~ 2013-03", "~ 2012", "2012 ~"."""

    text: str

    def bounds(self, t: TemporalTable) -> tuple[int | None, int | None]:
        """Inclusive [lo, hi] bounds in the table's index tick space."""
        parts = self.text.split("~")
        if len(parts) > 2:
            raise ParseError(f"too many '~' in time window {self.text!r}")
        sides = [p.strip() for p in parts]
        if not any(sides):
            raise ParseError(f"time window {self.text!r} has no endpoints")
        if len(sides) == 1:
            lo, hi = _endpoint_span(t, sides[0])
            return lo, hi
        lo = _endpoint_span(t, sides[0])[0] if sides[0] else None
        hi = _endpoint_span(t, sides[1])[1] if sides[1] else None
        return lo, hi


def _endpoint_span(t: TemporalTable, text: str) -> tuple[int, int]:
    if not text:
        raise ParseError("empty time window")
    g = t.driver.granularity
    if g is None:
        raise ParseError("cannot filter the index of an empty table by time")
    if g is Granularity.ORDINAL:
        try:
            tick = int(text)
        except ValueError:
            raise ParseError(f"index is ordinal; {text!r} is not an integer") from None
        return tick, tick
    expr_g = guess_granularity(text)
    if expr_g is None:
        raise ParseError(f"cannot read {text!r} as a time point")
    point = parse_timepoint(text, expr_g, t.zone)
    return span_ticks(point, g, t.zone)


def filter_index(t: TemporalTable, expr) -> VerbOutcome:
    """Shorthand time subsetting; the window may be coarser than the index."""
    if isinstance(expr, str):
        expr = IndexFilterExpr(expr)
    t = t.canonical()
    lo, hi = expr.bounds(t)
    ticks = t.ticks()
    keep = [
        i
        for i, tk in enumerate(ticks)
        if (lo is None or tk >= lo) and (hi is None or tk <= hi)
    ]
    return VerbOutcome(_take(t, keep))


def arrange(t: TemporalTable, spec) -> VerbOutcome:
    """Reorder rows; warns and marks the table when time order is disturbed.

    ``spec`` lists column names, each optionally as (name, "desc").
    Order-dirty tables are re-sorted automatically by order-sensitive
    operations downstream.
    """
    norm = []
    for item in spec:
        if isinstance(item, str):
            norm.append((item, "asc"))
        else:
            name, direction = item
            if direction not in ("asc", "desc"):
                raise PreconditionError(f"sort direction must be asc or desc, got {direction!r}")
            norm.append((name, direction))
    for name, _ in norm:
        if name not in t.columns:
            raise SchemaError(f"no column named {name!r}")

    order = list(range(t.nrows))
    for name, direction in reversed(norm):
        values = t.columns[name].values
        order.sort(key=lambda i: _sort_cell(values[i]), reverse=(direction == "desc"))

    data = {
        name: Column(col.kind, [col.values[i] for i in order])
        for name, col in t.columns.items()
    }
    out = TemporalTable(
        data,
        t.index,
        t.key,
        t.interval,
        t.declared_regular,
        t.driver,
        notes=t.notes,
    )
    if out.is_canonical_order():
        return VerbOutcome(out)
    out.order_dirty = True
    return VerbOutcome(
        out,
        warnings=(
            "row order no longer runs past-to-future within keys; "
            "order-sensitive operations will re-sort",
        ),
    )


# --- column verbs -----------------------------------------------------------


def select(t: TemporalTable, names) -> VerbOutcome:
    """Keep the named columns, preserving temporal semantics.

    The index is retained implicitly (with a warning) when left out of a
    selection that keeps every key column.  Key columns may be dropped as
    long as the remaining key still identifies rows uniquely.
    """
    names = list(dict.fromkeys(names))
    for name in names:
        if name not in t.columns:
            raise SchemaError(f"no column named {name!r}")
    warnings = ()
    if t.index not in names:
        if all(k in names for k in t.key):
            names.append(t.index)
            warnings = (f"index column {t.index!r} retained implicitly",)
        else:
            raise SchemaError(
                f"selection removes the index column {t.index!r}; include it, "
                "or summarize/transmute to reshape the table"
            )
    new_key = tuple(k for k in t.key if k in names)
    data = {name: t.columns[name] for name in names}
    return VerbOutcome(
        rebuild(data, t.index, new_key, t.declared_regular, adapter_driver=t.driver),
        warnings,
    )


def _evaluate(t_data: dict[str, list], nrows: int, expr, name: str) -> list:
    if callable(expr):
        out = []
        for i in range(nrows):
            row = {col: vals[i] for col, vals in t_data.items()}
            out.append(_call_rowwise(expr, row, f"column {name!r}"))
        return out
    if isinstance(expr, (list, tuple)):
        if len(expr) != nrows:
            raise PreconditionError(
                f"column {name!r}: {len(expr)} values for {nrows} rows"
            )
        return list(expr)
    return [expr] * nrows


def mutate(t: TemporalTable, **exprs) -> VerbOutcome:
    """Add or overwrite columns; each expression sees earlier results.

    An expression is a callable over the row dict, a full-length list of
    values, or a constant broadcast to every row.  Overwriting the index or
    a key column re-validates uniqueness and ordering.
    """
    t = t.canonical()
    data = t.to_dict()
    n = t.nrows
    for name, expr in exprs.items():
        data[name] = _evaluate(data, n, expr, name)
    return VerbOutcome(rebuild(data, t.index, t.key, t.declared_regular, adapter_driver=t.driver))


def transmute(t: TemporalTable, **exprs) -> VerbOutcome:
    """Like mutate, but keep only key, index, and the named results."""
    t = t.canonical()
    data = t.to_dict()
    n = t.nrows
    for name, expr in exprs.items():
        data[name] = _evaluate(data, n, expr, name)
    keep = list(t.key) + [t.index] + [c for c in exprs if c not in t.key and c != t.index]
    return VerbOutcome(
        rebuild({c: data[c] for c in keep}, t.index, t.key, t.declared_regular,
                adapter_driver=t.driver)
    )


# --- grouping verbs ---------------------------------------------------------


def _with_groups(t: TemporalTable, groups: Grouping) -> TemporalTable:
    out = TemporalTable(
        t.columns,
        t.index,
        t.key,
        t.interval,
        t.declared_regular,
        t.driver,
        groups=groups,
        order_dirty=t.order_dirty,
        notes=t.notes,
    )
    out._ticks = t._ticks
    return out


def group_by(t: TemporalTable, *columns) -> TemporalTable:
    """Attach grouping columns; data is untouched until summarize."""
    cols = list(dict.fromkeys(columns))
    for c in cols:
        if c not in t.columns:
            raise SchemaError(f"no column named {c!r}")
        if c == t.index:
            raise SchemaError(f"cannot group by the index column {c!r}; use index_by")
    base = t.groups or Grouping()
    return _with_groups(t, replace(base, by=tuple(cols)))


def group_by_key(t: TemporalTable) -> TemporalTable:
    """Group by every key column."""
    return group_by(t, *t.key)


def index_by(t: TemporalTable, spec, name: str | None = None) -> TemporalTable:
    """Group by a coarser derived index.

    ``spec`` is a target granularity (floor each index value to it) or a
    callable mapping index values to new index values.  The mapping must be
    order-preserving; summarize then uses the derived column as the index.
    """
    t = t.canonical()
    values = t.columns[t.index].values
    ticks = t.ticks()

    if callable(spec) and not isinstance(spec, Granularity):
        fn = spec
        default_name = getattr(fn, "__name__", "")
        if not default_name or default_name == "<lambda>":
            default_name = f"{t.index}_by"
    else:
        g = _require_granularity(spec)
        src = t.driver.granularity
        if src is not None and Granularity.ORDINAL in (g, src) and g is not src:
            raise ConversionError(
                f"cannot derive a {g.value} index from a {src.value} index"
            )
        if g is src or g is Granularity.ORDINAL:
            fn = lambda v: v
        else:
            fn = lambda v: floor_to(v, g)
        default_name = g.value

    cache = {}
    derived = []
    for v, tk in zip(values, ticks):
        if tk not in cache:
            cache[tk] = fn(v)
        derived.append(cache[tk])

    driver = _resolve_driver(name or default_name, derived, None)
    pairs = sorted((tk, driver.to_ticks(d)) for tk, d in cache.items())
    for (_, d1), (_, d2) in zip(pairs, pairs[1:]):
        if d2 < d1:
            raise PreconditionError("index mapping is not order-preserving")

    base = t.groups or Grouping()
    groups = replace(
        base,
        index_name=name or default_name,
        index_values=tuple(derived),
        index_driver=driver,
    )
    return _with_groups(t, groups)


def summarize(t: TemporalTable, **aggs) -> TemporalTable:
    """Aggregate values over time: one row per (group, index) combination.

    Each keyword maps an output column to a ``(spec, column)`` pair, with
    spec from the fixed vocabulary (sum, mean, min, max, count, quantile:p).
    The result's key is the grouping columns; without group_by the key
    columns are dropped and the table collapses to one series.
    """
    t = t.canonical()
    grouping = t.groups or Grouping()
    for out_name, pair in aggs.items():
        spec, col = pair
        aggregates.parse_spec(spec)
        if col not in t.columns:
            raise SchemaError(f"aggregation over unknown column {col!r}")

    if grouping.index_name:
        idx_name = grouping.index_name
        idx_values = list(grouping.index_values)
        idx_driver = grouping.index_driver
    else:
        idx_name = t.index
        idx_values = t.columns[t.index].values
        idx_driver = t.driver
    by = [c for c in grouping.by if c != idx_name]

    buckets: dict[tuple, list[int]] = {}
    cell_of: dict[tuple, tuple] = {}
    for i in range(t.nrows):
        group_cells = tuple(t.columns[c].values[i] for c in by)
        tick_key = tuple(_sort_cell(c) for c in group_cells) + (
            idx_driver.to_ticks(idx_values[i]),
        )
        buckets.setdefault(tick_key, []).append(i)
        cell_of[tick_key] = group_cells + (idx_values[i],)

    out: dict[str, list] = {c: [] for c in by}
    out[idx_name] = []
    for name in aggs:
        out[name] = []
    for tick_key in sorted(buckets):
        rows = buckets[tick_key]
        cells = cell_of[tick_key]
        for c, cell in zip(by, cells):
            out[c].append(cell)
        out[idx_name].append(cells[-1])
        for out_name, (spec, col) in aggs.items():
            out[out_name].append(aggregates.apply(spec, [t.columns[col].values[i] for i in rows]))

    adapter_driver = idx_driver if idx_name != t.index else t.driver
    return rebuild(out, idx_name, tuple(by), t.declared_regular, adapter_driver=adapter_driver)


# --- reshaping verbs --------------------------------------------------------


def gather(t: TemporalTable, names_to: str, values_to: str, columns) -> VerbOutcome:
    """Melt wide measure columns into long (name, value) pairs.

    The name column joins the key, so each original row becomes one row per
    melted column and uniqueness is preserved.
    """
    columns = list(dict.fromkeys(columns))
    if not columns:
        raise PreconditionError("gather needs at least one column")
    for c in columns:
        if c not in t.columns:
            raise SchemaError(f"no column named {c!r}")
        if c == t.index or c in t.key:
            raise SchemaError(f"cannot gather index or key column {c!r}")
    kinds = {t.kind_of(c) for c in columns}
    if len(kinds) > 1 and kinds != {"int", "real"}:
        raise SchemaError(f"gathered columns mix cell kinds: {sorted(kinds)}")
    remaining = [c for c in t.columns if c not in columns]
    for new in (names_to, values_to):
        if new in remaining:
            raise SchemaError(f"column {new!r} already exists")
    if names_to == values_to:
        raise SchemaError("names_to and values_to must differ")

    t = t.canonical()
    data: dict[str, list] = {c: [] for c in remaining}
    data[names_to] = []
    data[values_to] = []
    for i in range(t.nrows):
        for c in columns:
            for r in remaining:
                data[r].append(t.columns[r].values[i])
            data[names_to].append(c)
            data[values_to].append(t.columns[c].values[i])

    new_key = t.key + (names_to,)
    return VerbOutcome(rebuild(data, t.index, new_key, t.declared_regular,
                               adapter_driver=t.driver))


def spread(t: TemporalTable, key_col: str, value_col: str) -> VerbOutcome:
    """Pivot one key level per column: the inverse of gather.

    Level columns appear in ascending level order.  Rows are grouped by all
    remaining columns; a level observed twice in one group is a validity
    error.
    """
    for c in (key_col, value_col):
        if c not in t.columns:
            raise SchemaError(f"no column named {c!r}")
    if key_col == value_col:
        raise SchemaError("spread key and value columns must differ")
    if t.index in (key_col, value_col):
        raise SchemaError("cannot spread the index column")
    if value_col in t.key:
        raise SchemaError(f"cannot use key column {value_col!r} as spread values")

    t = t.canonical()
    levels_raw = [v for v in t.columns[key_col].values]
    if any(v is None for v in levels_raw):
        raise ValidityError(f"column {key_col!r} has missing levels; cannot spread")
    levels = sorted(set(levels_raw), key=_sort_cell)
    names = [v.render() if isinstance(v, TimePoint) else str(v) for v in levels]
    remaining = [c for c in t.columns if c not in (key_col, value_col)]
    for nm in names:
        if nm in remaining:
            raise SchemaError(f"spread level {nm!r} clashes with an existing column")
    if len(set(names)) != len(names):
        raise ValidityError(f"levels of {key_col!r} render to identical column names")

    groups: dict[tuple, dict] = {}
    order: list[tuple] = []
    for i in range(t.nrows):
        gk = tuple(t.columns[c].values[i] for c in remaining)
        if gk not in groups:
            groups[gk] = {}
            order.append(gk)
        level = t.columns[key_col].values[i]
        if level in groups[gk]:
            raise ValidityError(
                f"duplicate level {level!r} of {key_col!r} within one row group; "
                "cannot spread"
            )
        groups[gk][level] = t.columns[value_col].values[i]

    data: dict[str, list] = {c: [] for c in remaining}
    for nm in names:
        data[nm] = []
    for gk in order:
        for c, cell in zip(remaining, gk):
            data[c].append(cell)
        for level, nm in zip(levels, names):
            data[nm].append(groups[gk].get(level))

    new_key = tuple(k for k in t.key if k != key_col)
    return VerbOutcome(rebuild(data, t.index, new_key, t.declared_regular,
                               adapter_driver=t.driver))


# --- joins ------------------------------------------------------------------

_JOIN_KINDS = ("left", "right", "inner", "full", "semi", "anti")


def _other_columns(other) -> dict[str, list]:
    if isinstance(other, TemporalTable):
        return other.to_dict()
    cols = {str(k): list(v) for k, v in dict(other).items()}
    if len({len(v) for v in cols.values()}) > 1:
        raise SchemaError("joined table has ragged columns")
    return cols


def join(t: TemporalTable, other, kind: str = "left", by=None) -> VerbOutcome:
    """Relational join re-validated under the temporal contract.

    ``by`` lists join columns as names or (left, right) pairs; by default the
    commonly named columns.  Missing cells match missing cells.  Clashing
    right column names get a "_y" suffix.  semi and anti filter left rows
    without adding columns.
    """
    if kind not in _JOIN_KINDS:
        raise PreconditionError(f"join kind must be one of {_JOIN_KINDS}, got {kind!r}")
    t = t.canonical()
    right = _other_columns(other)
    rn = len(next(iter(right.values()))) if right else 0

    if by is None:
        pairs = [(c, c) for c in t.columns if c in right]
        if not pairs:
            raise SchemaError("tables share no column names; pass join columns")
    else:
        pairs = [(p, p) if isinstance(p, str) else (p[0], p[1]) for p in by]
    for lc, rc in pairs:
        if lc not in t.columns:
            raise SchemaError(f"no column named {lc!r}")
        if rc not in right:
            raise SchemaError(f"joined table has no column named {rc!r}")

    lookup: dict[tuple, list[int]] = {}
    for j in range(rn):
        k = tuple(right[rc][j] for _, rc in pairs)
        lookup.setdefault(k, []).append(j)

    left_keys = [tuple(t.columns[lc].values[i] for lc, _ in pairs) for i in range(t.nrows)]

    if kind in ("semi", "anti"):
        want = kind == "semi"
        keep = [i for i, k in enumerate(left_keys) if (k in lookup) == want]
        return VerbOutcome(_take(t, keep))

    by_right = {rc for _, rc in pairs}
    extra = [c for c in right if c not in by_right]
    renames = {c: (c + "_y" if c in t.columns else c) for c in extra}
    if len(set(renames.values()) | set(t.columns)) != len(renames) + len(t.columns):
        raise SchemaError("suffixed join column names still clash; rename before joining")

    data: dict[str, list] = {c: [] for c in t.columns}
    for c in extra:
        data[renames[c]] = []

    def emit(i: int | None, j: int | None):
        for c, col in t.columns.items():
            data[c].append(col.values[i] if i is not None else None)
        for c in extra:
            data[renames[c]].append(right[c][j] if j is not None else None)
        if i is None and j is not None:
            for (lc, rc) in pairs:
                data[lc][-1] = right[rc][j]

    matched_right = set()
    for i, k in enumerate(left_keys):
        js = lookup.get(k)
        if js:
            matched_right.update(js)
            for j in js:
                emit(i, j)
        elif kind in ("left", "full"):
            emit(i, None)
    if kind in ("right", "full"):
        for j in range(rn):
            if j not in matched_right:
                emit(None, j)

    return VerbOutcome(rebuild(data, t.index, t.key, t.declared_regular,
                               adapter_driver=t.driver))
