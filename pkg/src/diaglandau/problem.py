"""Line-oriented problem files.

::

    # Appell F4 as a (1,1,0,0),(0,0,1,1) diagonal
    vars = z1, z2, z3, z4
    f = 1 - z1 - z2 - z3 - z4
    Q = [1,1,0,0; 0,0,1,1]

Optional keys: ``g`` (numerator, default 1), ``order`` (expansion vertex,
default the origin), ``spair_cap`` and ``skip_nondeg``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .landau import DiagonalProblem
from .lattice import IntegerMatrix
from .laurent import LaurentPolynomial, parse

KEYS = {"vars", "f", "g", "q", "order", "spair_cap", "skip_nondeg", "name"}
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")


class ProblemFileError(ValueError):
    pass


@dataclass(frozen=True)
class ProblemFile:
    vars: tuple[str, ...]
    f: LaurentPolynomial
    g: LaurentPolynomial
    Q: IntegerMatrix
    order: tuple[int, ...] | None = None
    spair_cap: int | None = None
    skip_nondeg: bool = False
    name: str = ""

    def problem(self) -> DiagonalProblem:
        return DiagonalProblem(self.f, self.Q, self.g, self.vars)


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ProblemFileError(f"{what}: expected comma-separated integers, got {text!r}") from None


def parse_matrix(text: str) -> IntegerMatrix:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ProblemFileError(f"Q must be bracketed, got {text!r}")
    rows = [_int_list(r, "Q") for r in body[1:-1].split(";")]
    if not rows or any(not r for r in rows) or len({len(r) for r in rows}) != 1:
        raise ProblemFileError("Q rows must be nonempty and of equal length")
    return IntegerMatrix(rows)


def loads(text: str, name: str = "") -> ProblemFile:
    fields: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lower()
        if not sep:
            raise ProblemFileError(f"line {lineno}: expected 'key = value'")
        if key not in KEYS:
            raise ProblemFileError(f"line {lineno}: unknown key {key!r}")
        if key in fields:
            raise ProblemFileError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = (value.strip(), lineno)
    for required in ("vars", "f", "q"):
        if required not in fields:
            raise ProblemFileError(f"missing required key {required!r}")

    names = tuple(v.strip() for v in fields["vars"][0].split(","))
    if not names or any(not _NAME.match(v) for v in names) or len(set(names)) != len(names):
        raise ProblemFileError(f"bad variable list {fields['vars'][0]!r}")

    def expr(key: str, default: str | None = None) -> LaurentPolynomial:
        text, lineno = fields.get(key, (default, 0))
        try:
            return parse(text, names)
        except ValueError as exc:
            raise ProblemFileError(f"line {lineno}: {key}: {exc}") from None

    f = expr("f")
    if f.is_zero():
        raise ProblemFileError("f is the zero polynomial")
    g = expr("g", "1")
    q = parse_matrix(fields["q"][0])
    if q.cols != len(names):
        raise ProblemFileError(f"Q rows have {q.cols} entries, expected {len(names)}")
    order = None
    if "order" in fields:
        order = tuple(_int_list(fields["order"][0].strip("[]() "), "order"))
        if len(order) != len(names):
            raise ProblemFileError("order has wrong length")
    cap = int(fields["spair_cap"][0]) if "spair_cap" in fields else None
    skip = fields.get("skip_nondeg", ("false", 0))[0].lower() in ("1", "true", "yes")
    return ProblemFile(names, f, g, q, order, cap, skip, fields.get("name", (name, 0))[0])


def bundled(name: str) -> Path | None:
    """Path of a problem file shipped with the package, by file name."""
    base = resources.files("diaglandau") / "problems" / Path(name).name
    return Path(str(base)) if base.is_file() else None


def load(path: str | Path) -> ProblemFile:
    """Read a problem file; bare names of bundled problems also resolve."""
    p = Path(path)
    if not p.is_file():
        found = bundled(str(path))
        if found is None:
            raise ProblemFileError(f"no such problem file: {path}")
        p = found
    return loads(p.read_text(), p.stem)
