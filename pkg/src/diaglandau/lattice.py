"""Exact integer matrix algebra: Smith and Hermite forms, lattice saturation,
and completion of a saturated set of vectors to a basis of Z^n."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class LatticeError(ValueError):
    """Raised for malformed or non-unimodular integer matrices."""


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable rectangular matrix with arbitrary-precision integer entries."""

    entries: tuple[tuple[int, ...], ...]

    def __init__(self, rows: Iterable[Iterable[int]]):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data and len({len(row) for row in data}) != 1:
            raise LatticeError("rows have different lengths")
        object.__setattr__(self, "entries", data)

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> IntegerMatrix:
        return cls(zip(*columns)) if columns else cls([])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(zip(*self.entries)) if self.entries else IntegerMatrix([])

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise LatticeError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return IntegerMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.entries]
        )

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise LatticeError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.entries)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def det(self) -> int:
        """Exact determinant by fraction-free Bareiss elimination."""
        if not self.is_square():
            raise LatticeError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.tolist()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.is_square() and abs(self.det()) == 1

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(map(str, row)) for row in self.entries) + "]"


def as_matrix(m: IntegerMatrix | Sequence[Sequence[int]]) -> IntegerMatrix:
    return m if isinstance(m, IntegerMatrix) else IntegerMatrix(m)


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == S`` with U, V unimodular and S diagonal, d1 | d2 | ..."""

    U: IntegerMatrix
    S: IntegerMatrix
    V: IntegerMatrix

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d != 0)


def smith_normal_form(m: IntegerMatrix | Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form by elementary row and column operations.

    The pivot at each stage is an entry of minimal absolute value in the
    remaining submatrix.  Row operations are mirrored on ``U`` and column
    operations on ``V`` so that ``U @ M @ V == S`` holds exactly.
    """
    m = as_matrix(m)
    rows, cols = m.shape
    a = m.tolist()
    u = IntegerMatrix.identity(rows).tolist()
    v = IntegerMatrix.identity(cols).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row[dst] += q * row[src]
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for k in range(min(rows, cols)):
        while True:
            nonzero = [
                (abs(a[i][j]), i, j)
                for i in range(k, rows)
                for j in range(k, cols)
                if a[i][j] != 0
            ]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(k, pi)
            swap_cols(k, pj)
            p = a[k][k]
            clean = True
            for i in range(k + 1, rows):
                q = a[i][k] // p
                if q:
                    add_row(k, i, -q)
                if a[i][k]:
                    clean = False
            for j in range(k + 1, cols):
                q = a[k][j] // p
                if q:
                    add_col(k, j, -q)
                if a[k][j]:
                    clean = False
            if not clean:
                continue
            # pivot must divide the rest of the submatrix
            bad = next(
                (i for i in range(k + 1, rows) for j in range(k + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, k, 1)
        if k < rows and k < cols and a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            u[k] = [-x for x in u[k]]
    return SmithDecomposition(IntegerMatrix(u), IntegerMatrix(a), IntegerMatrix(v))


def hermite_normal_form(m: IntegerMatrix | Sequence[Sequence[int]]) -> IntegerMatrix:
    """Row-style Hermite normal form of the lattice spanned by the rows of ``m``.

    Zero rows are dropped.  Pivots are positive and the entries above each
    pivot are reduced into ``[0, pivot)``, so the result is unique for the
    lattice.
    """
    a = [list(row) for row in as_matrix(m).entries]
    cols = len(a[0]) if a else 0
    out: list[list[int]] = []
    r = 0
    for c in range(cols):
        # Euclid on column c among rows r..end
        while True:
            live = [i for i in range(r, len(a)) if a[i][c] != 0]
            if len(live) <= 1:
                break
            piv = min(live, key=lambda i: abs(a[i][c]))
            for i in live:
                if i != piv:
                    q = a[i][c] // a[piv][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[piv])]
        live = [i for i in range(r, len(a)) if a[i][c] != 0]
        if not live:
            continue
        i = live[0]
        a[r], a[i] = a[i], a[r]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    out = [row for row in a[:r]]
    return IntegerMatrix(out) if out else IntegerMatrix([])


def _pivot_columns(h: IntegerMatrix) -> list[int]:
    return [next(j for j, x in enumerate(row) if x) for row in h.entries]


def reduce_modulo_lattice(vector: Sequence[int], hnf: IntegerMatrix) -> tuple[int, ...]:
    """Canonical representative of ``vector`` modulo the row lattice of ``hnf``."""
    v = list(vector)
    for row, p in zip(hnf.entries, _pivot_columns(hnf)):
        q = v[p] // row[p]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return tuple(v)


def is_saturated(q: IntegerMatrix | Sequence[Sequence[int]]) -> bool:
    """True iff the r rows of ``q`` are independent and span a saturated lattice."""
    q = as_matrix(q)
    if q.rows == 0:
        return True
    snf = smith_normal_form(q)
    return snf.rank == q.rows and all(d == 1 for d in snf.invariant_factors)


def inverse_unimodular(b: IntegerMatrix | Sequence[Sequence[int]]) -> IntegerMatrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    b = as_matrix(b)
    if not b.is_unimodular():
        raise LatticeError("matrix is not unimodular")
    n = b.rows
    # Gauss-Jordan over Z works since every pivot we need is a unit after Euclid
    a = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(b.entries)]
    for c in range(n):
        while True:
            live = [i for i in range(c, n) if a[i][c] != 0]
            if len(live) == 1:
                break
            piv = min(live, key=lambda i: abs(a[i][c]))
            for i in live:
                if i != piv:
                    q = a[i][c] // a[piv][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[piv])]
        i = live[0]
        a[c], a[i] = a[i], a[c]
        if a[c][c] < 0:
            a[c] = [-x for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                q = a[i][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[c])]
    return IntegerMatrix([row[n:] for row in a])


def _snf_completion(q: IntegerMatrix) -> list[tuple[int, ...]]:
    """Complementary columns from the Smith transform of ``q``."""
    r, n = q.shape
    snf = smith_normal_form(q)
    # the kernel functionals: rows p with p . q_j = 0, basis read off V^{-1}
    kernel = IntegerMatrix([snf.V.column(j) for j in range(r, n)])
    # any lift C with P.C = I completes Q; solve via Smith form of P
    p_snf = smith_normal_form(hermite_normal_form(kernel)) if n > r else None
    if p_snf is None:
        return []
    s = n - r
    lift = p_snf.V @ IntegerMatrix(
        [[int(i == j) for j in range(s)] for i in range(n)]
    ) @ p_snf.U
    return lift.columns()


def extend_to_unimodular(
    q: IntegerMatrix | Sequence[Sequence[int]], method: str = "canonical"
) -> IntegerMatrix:
    """Complete the rows of a saturated ``q`` to a unimodular matrix B.

    The first r columns of B are the rows of ``q`` in the given order.  With
    ``method="canonical"`` the added columns are the unit vectors off the
    Hermite pivots of ``q`` whenever every pivot equals 1, which reproduces
    the textbook transforms such as ``z1 = w1/(w2 w3)`` for the (1,1,1)
    diagonal; otherwise (and always with ``method="smith"``) they come from
    the Smith transform.  Added columns are reduced modulo the lattice of
    ``q`` so the output is deterministic.
    """
    q = as_matrix(q)
    if q.rows == 0:
        raise LatticeError("empty set of vectors")
    if not is_saturated(q):
        raise LatticeError("vectors do not span a saturated sublattice")
    r, n = q.shape
    hnf = hermite_normal_form(q)
    pivots = _pivot_columns(hnf)
    if method == "canonical" and all(hnf[i, p] == 1 for i, p in enumerate(pivots)):
        extra = [tuple(int(i == j) for i in range(n)) for j in range(n) if j not in pivots]
    elif method in ("canonical", "smith"):
        extra = _snf_completion(q)
    else:
        raise ValueError(f"unknown completion method {method!r}")
    extra = [reduce_modulo_lattice(c, hnf) for c in extra]
    b = IntegerMatrix.from_columns(list(q.entries) + extra)
    if not b.is_unimodular():
        raise LatticeError("internal error: completion is not unimodular")
    return b
