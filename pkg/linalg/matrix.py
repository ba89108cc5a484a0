from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import sympy

Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        entries = tuple(Fraction(e) for e in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(f"{len(entries)} entries do not fill a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int = None) -> 'RationalMatrix':
        rows = [list(row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(row) != cols for row in rows):
            raise ValueError("Ragged rows")
        return cls(len(rows), cols, tuple(e for row in rows for e in row))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int = None) -> 'RationalMatrix':
        columns = [list(column) for column in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        if any(len(column) != rows for column in columns):
            raise ValueError("Ragged columns")
        return cls(rows, len(columns), tuple(columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'RationalMatrix':
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> 'RationalMatrix':
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def __getitem__(self, position: Tuple[int, int]) -> Fraction:
        i, j = position
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ValueError(f"Vector of length {len(v)} does not match {self.cols} columns")
        v = [Fraction(x) for x in v]
        return tuple(sum((a * x for a, x in zip(self.row(i), v)), Fraction(0)) for i in range(self.rows))

    def transpose_apply(self, u: Sequence) -> Vector:
        """u^T M as a vector of length cols."""
        if len(u) != self.rows:
            raise ValueError(f"Vector of length {len(u)} does not match {self.rows} rows")
        u = [Fraction(x) for x in u]
        return tuple(sum((u[i] * self[i, j] for i in range(self.rows)), Fraction(0)) for j in range(self.cols))


def to_sympy(M: RationalMatrix) -> sympy.Matrix:
    return sympy.Matrix(M.rows, M.cols, [sympy.Rational(e.numerator, e.denominator) for e in M.entries])


def from_sympy(S: sympy.Matrix) -> RationalMatrix:
    return RationalMatrix(S.rows, S.cols, tuple(Fraction(int(e.p), int(e.q)) for e in S))


def rref(M: RationalMatrix) -> Tuple[RationalMatrix, Tuple[int, ...]]:
    """Exact reduced row-echelon form and the strictly increasing pivot columns."""
    if M.rows == 0 or M.cols == 0:
        return M, ()
    reduced, pivots = to_sympy(M).rref()
    return from_sympy(reduced), tuple(pivots)


def rank(M: RationalMatrix) -> int:
    return len(rref(M)[1])


def nullspace(M: RationalMatrix) -> List[Vector]:
    """Basis of {v : Mv = 0}, one vector per free column in increasing column order."""
    if M.cols == 0:
        return []
    if M.rows == 0:
        return [RationalMatrix.identity(M.cols).row(j) for j in range(M.cols)]

    basis = [from_sympy(v).column(0) for v in to_sympy(M).nullspace()]
    for v in basis:
        assert not any(M.apply(v)), "nullspace vector is not in the kernel"

    return basis
