"""Golden CLI outputs for the bundled problems; run as a script to regenerate."""

import io
from pathlib import Path

from diaglandau.cli import run

GOLDEN = Path(__file__).with_name("golden")
PROBLEMS = ["appell_f4", "bivariate_cbc", "ex1_l1", "ex1_l2", "ex1_l3", "square"]
CASES = [
    (name, cmd, fmt)
    for name in PROBLEMS
    for cmd in ("nondeg", "transform", "faces", "landau", "diagonal")
    for fmt in ("human", "machine")
]


def render(name, cmd, fmt):
    buf = io.StringIO()
    argv = [cmd, f"{name}.prob", "--format", fmt]
    if cmd == "diagonal":
        argv += ["--max", "6"]
    code = run(argv, buf)
    return f"exit={code}\n" + buf.getvalue()


def path(name, cmd, fmt):
    return GOLDEN / f"{name}.{cmd}.{fmt}.txt"


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for case in CASES:
        path(*case).write_text(render(*case))
