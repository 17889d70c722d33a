"""Find implicit gaps in a regular series and make them explicit rows.

Sensors drop readings, surveys skip a wave, a counter resets.  The rows
that are absent do not announce themselves; the gap verbs compare each
series against the arithmetic grid its interval implies.
"""

from temporaltable import (
    Aggregate,
    build,
    count_gaps,
    fill_gaps,
    has_gaps,
    render_summary,
    scan_gaps,
    timepoint as tp,
)

# Two pedestrian counters, one of which went dark for part of April.
readings = {
    "sensor": ["north"] * 5 + ["south"] * 7,
    "day": [tp.day(2023, 4, d) for d in (1, 2, 5, 6, 7)]
    + [tp.day(2023, 4, d) for d in range(1, 8)],
    "walkers": [310, 285, 290, 301, 295, 150, 162, 158, 149, 170, 166, 171],
}

t = build(readings, index="day", key=("sensor",))
print(render_summary(t))
print()

print("has gaps:", has_gaps(t))
print("missing days:", scan_gaps(t))
print("gap runs:", count_gaps(t))
print()

# fill_gaps inserts the missing rows.  With no policy the new cells are
# missing; an Aggregate fills from the surrounding series instead.
filled = fill_gaps(t, fills={"walkers": Aggregate("mean")})
north = [r for r in range(filled.nrows) if filled.row(r)["sensor"] == "north"]
for r in north:
    row = filled.row(r)
    print(row["day"].render(), row["walkers"])

assert not any(flag for _, flag in has_gaps(filled))

# full=True extends every series to the shared observation span, which
# turns a ragged collection into a balanced panel.
balanced = fill_gaps(t, full=True)
print()
print("balanced:", balanced.nrows, "rows,",
      len(dict(has_gaps(balanced))), "series")
