"""Reshape a monthly panel with the table verbs.

Every verb takes a temporal table and returns one, re-sorting and
re-checking the declarations as it goes, so a chain of steps cannot
silently lose the time structure.
"""

from temporaltable import (
    build,
    filter_index,
    group_by_key,
    index_by,
    mutate,
    render_summary,
    select,
    summarize,
    timepoint as tp,
)
from temporaltable import filter as tfilter

months = []
stores = []
sales = []
for store, base in (("downtown", 210.0), ("airport", 180.0), ("harbor", 95.0)):
    for m in range(1, 13):
        stores.append(store)
        months.append(tp.month(2022, m))
        # A gentle seasonal swing, peaking mid-year.
        sales.append(round(base + 30.0 * (1 - abs(m - 7) / 6.0), 1))

t = build({"store": stores, "month": months, "sales": sales},
          index="month", key=("store",))
print(render_summary(t))
print()

# Keep the winter quarter of 2022 at the two larger stores.
winter, _ = filter_index(t, "2022-01 ~ 2022-03")
big, _ = tfilter(winter, lambda row: row["store"] != "harbor")

# Derive a column, then drop everything except what the report needs.
taxed, _ = mutate(big, tax=lambda row: round(row["sales"] * 0.1, 2))
slim, warnings = select(taxed, ["store", "sales", "tax"])
for w in warnings:
    print("note:", w)
print(render_summary(slim))
print()

# index_by coarsens the index; summarize then pools rows that share a
# group and an index value.  Grouping by the key keeps one series per
# store, so this yields quarterly totals per store.
quarterly = summarize(index_by(group_by_key(t), "quarter"),
                      total=("sum", "sales"))
print(render_summary(quarterly))
print()

# Left ungrouped, summarize pools across the whole key and the result is
# one market-wide row per month.
market = summarize(t, total=("sum", "sales"))
january = market.row(0)
assert january["total"] == sum(
    s for s, m in zip(sales, months) if m == tp.month(2022, 1)
)
print("january market total:", january["total"])
