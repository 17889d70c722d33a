"""Teach the engine a domain-specific time scale.

Any value type can serve as an index once an adapter maps it to and from
evenly spaced integer ticks.  Registration checks the round trip and the
ordering up front, so a broken adapter fails at registration, not later
inside some verb.

Here the scale is the two-week sprint an engineering team numbers as
"2024.07": seventh sprint of 2024, twenty-six per year.
"""

from temporaltable import (
    IndexAdapter,
    build,
    fill_gaps,
    register_index_adapter,
    render_summary,
    scan_gaps,
    unregister_index_adapter,
)


class Sprint:
    def __init__(self, year, number):
        if not 1 <= number <= 26:
            raise ValueError(f"sprint number out of range: {number}")
        self.year = year
        self.number = number

    def __eq__(self, other):
        return (
            isinstance(other, Sprint)
            and (self.year, self.number) == (other.year, other.number)
        )

    def __hash__(self):
        return hash((self.year, self.number))

    def __repr__(self):
        return f"Sprint({self.year}, {self.number})"

    def __str__(self):
        return f"{self.year}.{self.number:02d}"


class SprintAdapter(IndexAdapter):
    name = "sprint"
    unit_label = "sp"
    sample_values = (Sprint(2024, 1), Sprint(2024, 2), Sprint(2024, 26))

    def to_ticks(self, value):
        if not isinstance(value, Sprint):
            raise TypeError(f"not a sprint: {value!r}")
        return 26 * value.year + (value.number - 1)

    def from_ticks(self, ticks):
        year, n = divmod(ticks, 26)
        return Sprint(year, n + 1)


register_index_adapter(SprintAdapter())
try:
    velocity = {
        "team": ["apps"] * 4 + ["infra"] * 3,
        "sprint": [Sprint(2024, n) for n in (5, 6, 7, 9)]
        + [Sprint(2024, n) for n in (5, 6, 7)],
        "points": [21, 25, 18, 23, 34, 30, 31],
    }
    t = build(velocity, index="sprint", key=("team",))

    # The inferred interval wears the adapter's unit label.
    print(render_summary(t))
    print()

    # Gap handling runs on ticks, so it needs nothing sprint-specific.
    print("missed sprints:", scan_gaps(t))
    filled = fill_gaps(t, fills={"points": 0})
    apps = [filled.row(r) for r in range(filled.nrows)
            if filled.row(r)["team"] == "apps"]
    for row in apps:
        print(row["sprint"], row["points"])
finally:
    unregister_index_adapter("sprint")
