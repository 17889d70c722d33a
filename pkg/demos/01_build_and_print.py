"""Build a temporal table from plain columns and look at it.

A temporal table is an ordinary columnar table plus three declarations:
which column is the time index, which columns identify a series (the key),
and how far apart consecutive observations sit (the interval, inferred).
"""

from temporaltable import build, duplicates, key_groups, render_summary, timepoint as tp

counts = {
    "country": ["Australia", "Australia", "Australia", "Australia",
                "New Zealand", "New Zealand", "New Zealand", "New Zealand"],
    "gender": ["Female", "Female", "Male", "Male",
               "Female", "Female", "Male", "Male"],
    "year": [tp.year(y) for y in (2011, 2012, 2011, 2012, 2011, 2012, 2011, 2012)],
    "count": [120, 125, 176, 161, 36, 23, 47, 42],
}

t = build(counts, index="year", key=("country", "gender"))

# The banner line carries the dimensions and the inferred interval, and the
# key line counts how many distinct series the table holds.
print(render_summary(t))
print()

print("interval:", t.interval.shorthand())
print("series:")
for key_tuple, rows in key_groups(t):
    print(" ", key_tuple, "->", len(rows), "rows")
print()

# Rows arrive in any order; build sorts each series past to future.
shuffled = {name: values[::-1] for name, values in counts.items()}
assert build(shuffled, index="year", key=("country", "gender")) == t

# A repeated (key, index) pair is refused at build time.  duplicates() finds
# the offending rows without trying to build.
bad = {name: values + [values[2]] for name, values in counts.items()}
report = duplicates(bad, index="year", key=("country", "gender"))
print("duplicate rows at positions:", report.positions)
for row in report.rows:
    print(" ", row)
