"""Drive the command-line interface the way a shell user would.

Every subcommand reads a CSV, applies the declarations given as flags,
and writes CSV or a summary back out.  Exit codes separate usage errors
(2), data problems (1), and i/o failures (3) from success (0).
"""

import subprocess
import sys
import tempfile
from pathlib import Path

ROWS = """\
city,day,riders
wellington,2024-05-01,1430
wellington,2024-05-02,1501
wellington,2024-05-05,1476
auckland,2024-05-01,5210
auckland,2024-05-02,5333
auckland,2024-05-03,5180
auckland,2024-05-04,4988
auckland,2024-05-05,5423
"""


def run(*args, data=None):
    cmd = [sys.executable, "-m", "temporaltable", *args]
    proc = subprocess.run(cmd, capture_output=True, text=True, input=data)
    print(f"$ ttab {' '.join(args)}")
    print(proc.stdout, end="")
    if proc.returncode != 0:
        print(proc.stderr, end="")
        print(f"(exit {proc.returncode})")
    print()
    return proc


with tempfile.TemporaryDirectory() as tmp:
    csv_path = str(Path(tmp) / "riders.csv")
    Path(csv_path).write_text(ROWS)
    common = ["--index", "day", "--key", "city"]

    # validate parses, checks, and prints the contextual summary.
    run("validate", csv_path, *common)

    # gaps scan: wellington is missing two days.
    run("gaps", "scan", csv_path, *common)

    # gaps fill emits the repaired table as CSV, constants included.
    repaired = run("gaps", "fill", csv_path, *common, "--fill-with", "riders=0")

    # aggregate across the key: total riders per day.
    run("agg", csv_path, *common, "--by", "day", "--fn", "riders=sum")

    # a trailing 2-day mean per city; the gap makes this an error.
    bad = run("roll", csv_path, *common, "--col", "riders",
              "--op", "slide", "--fn", "mean", "--size", "2")
    assert bad.returncode == 1

    # after filling, the same roll succeeds.
    filled_path = str(Path(tmp) / "filled.csv")
    Path(filled_path).write_text(repaired.stdout)
    run("roll", filled_path, *common, "--col", "riders",
        "--op", "slide", "--fn", "mean", "--size", "2")
