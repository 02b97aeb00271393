"""Exact rational scalars and small dense matrices.

Scalars are :class:`fractions.Fraction` (always reduced, positive denominator,
zero stored as 0/1).  :class:`Matrix` is an immutable row-major array of them.
Nothing in this module uses floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "ShapeError",
    "SingularMatrixError",
    "RankError",
    "Matrix",
    "parse_rational",
    "format_rational",
    "identity",
    "zeros",
    "unit",
    "diag",
    "mat_mul",
    "mat_inverse",
    "mat_rank",
    "mat_transpose",
    "contragredient",
    "rank_one_factor",
    "lead_entry",
    "scale_to_lead_one",
]


class ShapeError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


class RankError(ValueError):
    pass


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"-3/2"``, ``"0"``, ``"7"``; ints and Fractions pass through.

    Floats are refused, since they cannot be exact.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational literal: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational literal: {text!r}")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ShapeError(f"matrix dimensions must be positive, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )
        if not all(type(e) is Fraction for e in self.entries):
            object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ShapeError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), width, tuple(Fraction(e) for r in rows for e in r))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix(self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def scale(self, s) -> "Matrix":
        s = Fraction(s)
        return Matrix(self.rows, self.cols, tuple(s * x for x in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    @property
    def T(self) -> "Matrix":
        return mat_transpose(self)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix[{body}]"


def identity(n: int) -> Matrix:
    one, zero = Fraction(1), Fraction(0)
    return Matrix(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))


def zeros(rows: int, cols: int) -> Matrix:
    return Matrix(rows, cols, (Fraction(0),) * (rows * cols))


def unit(rows: int, cols: int, i: int, j: int) -> Matrix:
    """Matrix unit with a single 1 at 0-based position (i, j)."""
    entries = [Fraction(0)] * (rows * cols)
    entries[i * cols + j] = Fraction(1)
    return Matrix(rows, cols, tuple(entries))


def diag(values: Iterable) -> Matrix:
    values = [Fraction(v) for v in values]
    n = len(values)
    return Matrix(n, n, tuple(values[i] if i == j else Fraction(0) for i in range(n) for j in range(n)))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    n, k, m = a.rows, a.cols, b.cols
    ae, be = a.entries, b.entries
    out = []
    for i in range(n):
        arow = ae[i * k:(i + 1) * k]
        for j in range(m):
            s = Fraction(0)
            for t in range(k):
                x = arow[t]
                if x:
                    y = be[t * m + j]
                    if y:
                        s += x * y
            out.append(s)
    return Matrix(n, m, tuple(out))


def mat_transpose(a: Matrix) -> Matrix:
    return Matrix(a.cols, a.rows, tuple(a.entries[i * a.cols + j] for j in range(a.cols) for i in range(a.rows)))


def _row_reduce(rows: list[list[Fraction]], ncols: int) -> int:
    """In-place Gauss-Jordan elimination; returns the rank.

    Pivot is the first nonzero entry in the column (deterministic).
    """
    rank = 0
    nrows = len(rows)
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        inv = 1 / prow[col]
        if inv != 1:
            rows[rank] = prow = [x * inv for x in prow]
        for r in range(nrows):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], prow)]
        rank += 1
        if rank == nrows:
            break
    return rank


def mat_rank(a: Matrix) -> int:
    return _row_reduce(a.to_rows(), a.cols)


def mat_inverse(a: Matrix) -> Matrix:
    if not a.is_square():
        raise ShapeError(f"cannot invert non-square {a.rows}x{a.cols} matrix")
    n = a.rows
    aug = [list(a.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if _row_reduce(aug, n) < n:
        raise SingularMatrixError("matrix is singular")
    return Matrix(n, n, tuple(x for r in aug for x in r[n:]))


def contragredient(a: Matrix) -> Matrix:
    """Inverse transpose, x -> (x^t)^{-1}."""
    return mat_inverse(mat_transpose(a))


def lead_entry(a: Matrix) -> Fraction:
    """First nonzero entry in row-major order (0 for the zero matrix)."""
    return next((x for x in a.entries if x), Fraction(0))


def scale_to_lead_one(a: Matrix) -> tuple[Matrix, Fraction]:
    """Return (a / lead, lead) so the result's first nonzero entry is 1."""
    lead = lead_entry(a)
    if not lead:
        raise ValueError("zero matrix has no lead entry")
    if lead == 1:
        return a, lead
    return a.scale(1 / lead), lead


def rank_one_factor(a: Matrix) -> tuple[Matrix, Matrix]:
    """Split a rank-one matrix as column * row, with the column's lead entry 1."""
    if mat_rank(a) != 1:
        raise RankError("rank_one_factor needs a rank-one matrix")
    r0 = next(i for i in range(a.rows) if any(a.row(i)))
    row = a.row(r0)
    c0 = next(j for j, x in enumerate(row) if x)
    pivot = row[c0]
    col = Matrix(a.rows, 1, tuple(a[i, c0] / pivot for i in range(a.rows)))
    return col, Matrix(1, a.cols, row)
