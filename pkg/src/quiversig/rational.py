"""Small exact linear algebra kernel over the rationals.

Dense row-major matrices of :class:`fractions.Fraction`. Pivoting picks the
first nonzero entry, so every result is deterministic given the input order.
Sized for the small chain complexes the homology pipeline produces.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = ["RationalMatrix", "PivotTracker"]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class RationalMatrix:
    """Exact-rational matrix with explicit shape (rows may be empty)."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols: int):
        self.rows = [[Fraction(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = int(ncols)
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError(f"row length {len(row)} != ncols {self.ncols}")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls([[_ZERO] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.rows[i][i] = _ONE
        return m

    @classmethod
    def from_columns(cls, columns, nrows: int) -> "RationalMatrix":
        cols = [list(c) for c in columns]
        for c in cols:
            if len(c) != nrows:
                raise ValueError(f"column length {len(c)} != nrows {nrows}")
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(nrows)], len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def column(self, j: int) -> list[Fraction]:
        return [self.rows[i][j] for i in range(self.nrows)]

    def columns(self) -> list[list[Fraction]]:
        return [self.column(j) for j in range(self.ncols)]

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if other.nrows != self.nrows:
            raise ValueError("row count mismatch in hstack")
        return RationalMatrix(
            [self.rows[i] + other.rows[i] for i in range(self.nrows)],
            self.ncols + other.ncols,
        )

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matmul")
        out = RationalMatrix.zeros(self.nrows, other.ncols)
        for i in range(self.nrows):
            row = self.rows[i]
            for k, rk in enumerate(row):
                if rk == 0:
                    continue
                ork = other.rows[k]
                oi = out.rows[i]
                for j in range(other.ncols):
                    oi[j] += rk * ork[j]
        return out

    def mul_vec(self, vec) -> list[Fraction]:
        if len(vec) != self.ncols:
            raise ValueError("length mismatch in mul_vec")
        return [sum((r[j] * vec[j] for j in range(self.ncols)), _ZERO) for r in self.rows]

    def rref(self) -> tuple["RationalMatrix", list[int]]:
        """Reduced row-echelon form and the pivot column indices."""
        m = RationalMatrix([list(r) for r in self.rows], self.ncols)
        pivots: list[int] = []
        lead = 0
        for col in range(m.ncols):
            pivot_row = None
            for i in range(lead, m.nrows):
                if m.rows[i][col] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m.rows[lead], m.rows[pivot_row] = m.rows[pivot_row], m.rows[lead]
            pv = m.rows[lead][col]
            m.rows[lead] = [x / pv for x in m.rows[lead]]
            for i in range(m.nrows):
                if i != lead and m.rows[i][col] != 0:
                    f = m.rows[i][col]
                    m.rows[i] = [a - f * b for a, b in zip(m.rows[i], m.rows[lead])]
            pivots.append(col)
            lead += 1
            if lead == m.nrows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[list[Fraction]]:
        """Basis of the right null space, one vector per free column, in column order."""
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivot_set]
        basis = []
        for j in free:
            vec = [_ZERO] * self.ncols
            vec[j] = _ONE
            for row_index, pcol in enumerate(pivots):
                vec[pcol] = -reduced.rows[row_index][j]
            basis.append(vec)
        return basis

    def solve(self, rhs) -> list[Fraction] | None:
        """One exact solution of A x = rhs (free variables zero), or None."""
        if len(rhs) != self.nrows:
            raise ValueError("rhs length mismatch in solve")
        augmented = self.hstack(RationalMatrix.from_columns([rhs], self.nrows))
        reduced, pivots = augmented.rref()
        if self.ncols in pivots:
            return None
        x = [_ZERO] * self.ncols
        for row_index, pcol in enumerate(pivots):
            x[pcol] = reduced.rows[row_index][self.ncols]
        return x

    def to_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.rows], dtype=np.float64).reshape(
            (self.nrows, self.ncols)
        )

    def __repr__(self) -> str:
        return f"RationalMatrix({self.nrows}x{self.ncols})"


class PivotTracker:
    """Incremental exact independence test for a stream of column vectors."""

    def __init__(self, length: int):
        self.length = int(length)
        self._pivots: list[tuple[int, list[Fraction]]] = []

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def add(self, vec) -> bool:
        """Reduce ``vec`` against the stored pivots; keep and report True if independent."""
        v = [Fraction(x) for x in vec]
        if len(v) != self.length:
            raise ValueError("vector length mismatch")
        for pos, pivot in self._pivots:
            if v[pos] != 0:
                f = v[pos]
                v = [a - f * b for a, b in zip(v, pivot)]
        lead = next((i for i, x in enumerate(v) if x != 0), None)
        if lead is None:
            return False
        inv = v[lead]
        self._pivots.append((lead, [x / inv for x in v]))
        self._pivots.sort(key=lambda t: t[0])
        return True
