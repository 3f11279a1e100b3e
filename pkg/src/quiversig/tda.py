"""Filtered simplicial complexes and their homology chain representations.

A filtration X_0 ⊆ X_1 ⊆ ... ⊆ X_n induces, in each homology degree, maps
H_k(X_0) -> H_k(X_1) -> ... -> H_k(X_n), which is exactly a representation
of the equioriented chain with n+1 nodes. Everything up to that
representation is computed in exact rational arithmetic; doubles appear only
when the chain representation is materialized.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .decomposition import IntervalBarcode, barcode_interval
from .errors import ValidationError
from .quiver import Quiver
from .rational import PivotTracker, RationalMatrix
from .representation import Representation

__all__ = [
    "Simplex",
    "FilteredComplex",
    "HomologyBasis",
    "boundary_matrix",
    "homology_basis",
    "persistence_representation",
    "persistence_barcode",
]


@dataclass(frozen=True)
class Simplex:
    """Vertex set (stored sorted) entering the filtration at ``level``."""

    verts: tuple[str, ...]
    level: int

    @property
    def dim(self) -> int:
        return len(self.verts) - 1


def _as_simplex(entry) -> Simplex:
    if isinstance(entry, Simplex):
        verts, level = entry.verts, entry.level
    elif isinstance(entry, dict):
        try:
            verts, level = entry["verts"], entry["level"]
        except KeyError as missing:
            raise ValidationError(f"simplex entry is missing key {missing}") from None
    else:
        try:
            verts, level = entry
        except (TypeError, ValueError):
            raise ValidationError(f"cannot interpret {entry!r} as a simplex") from None
    vtuple = tuple(sorted(str(v) for v in verts))
    if not vtuple:
        raise ValidationError("a simplex needs at least one vertex")
    if len(set(vtuple)) != len(vtuple):
        raise ValidationError(f"repeated vertex in simplex {vtuple}")
    level = int(level)
    if level < 0:
        raise ValidationError(f"filtration level must be nonnegative, got {level}")
    return Simplex(vtuple, level)


class FilteredComplex:
    """Explicitly listed simplices with filtration levels.

    Validation enforces closure and monotonicity: every codimension-one face
    of a simplex must be present and enter the filtration no later than the
    simplex itself. Simplices are stored sorted by (level, dimension,
    vertices), which fixes all chain bases; within a fixed dimension, the
    chain basis of X_l is a prefix of the chain basis of X_{l+1}.
    """

    __slots__ = ("_simplices", "_n", "_by_verts")

    def __init__(self, simplices: Iterable, n: int | None = None):
        items = [_as_simplex(s) for s in simplices]
        by_verts: dict[tuple[str, ...], Simplex] = {}
        for s in items:
            if s.verts in by_verts:
                raise ValidationError(f"duplicate simplex {s.verts}")
            by_verts[s.verts] = s
        for s in items:
            if s.dim == 0:
                continue
            for face in combinations(s.verts, len(s.verts) - 1):
                owner = by_verts.get(face)
                if owner is None:
                    raise ValidationError(f"missing face {face} of simplex {s.verts}")
                if owner.level > s.level:
                    raise ValidationError(
                        f"face {face} enters at level {owner.level}, after its "
                        f"coface {s.verts} at level {s.level}"
                    )
        self._simplices = tuple(sorted(items, key=lambda s: (s.level, s.dim, s.verts)))
        max_level = max((s.level for s in items), default=0)
        self._n = max_level if n is None else int(n)
        if self._n < max_level:
            raise ValidationError(f"declared n={self._n} below the deepest level {max_level}")
        self._by_verts = by_verts

    @property
    def simplices(self) -> tuple[Simplex, ...]:
        return self._simplices

    @property
    def n(self) -> int:
        """Index of the last filtration step (levels run 0..n)."""
        return self._n

    def simplices_of(self, k: int, level: int) -> list[Simplex]:
        """Degree-k simplices present in X_level, in chain-basis order."""
        return [s for s in self._simplices if s.dim == k and s.level <= level]

    def __len__(self) -> int:
        return len(self._simplices)

    def __repr__(self) -> str:
        return f"FilteredComplex({len(self._simplices)} simplices, levels 0..{self._n})"


def boundary_matrix(complex_: FilteredComplex, k: int, level: int) -> RationalMatrix:
    """Matrix of the degree-k boundary map on X_level over the rationals.

    Columns run over k-simplices, rows over (k-1)-simplices, both in
    chain-basis order; signs alternate over the sorted vertex ids.
    """
    if k < 1:
        raise ValidationError(f"boundary matrix needs degree k >= 1, got {k}")
    return _boundary(complex_, k, level)


def _boundary(complex_: FilteredComplex, k: int, level: int) -> RationalMatrix:
    rows = complex_.simplices_of(k - 1, level)
    cols = complex_.simplices_of(k, level)
    row_index = {s.verts: i for i, s in enumerate(rows)}
    out = RationalMatrix.zeros(len(rows), len(cols))
    for j, s in enumerate(cols):
        sign = Fraction(1)
        for drop in range(len(s.verts)):
            face = s.verts[:drop] + s.verts[drop + 1:]
            out.rows[row_index[face]][j] += sign
            sign = -sign
    return out


@dataclass(frozen=True)
class HomologyBasis:
    """Chosen cycle representatives spanning H_k(X_level).

    ``representatives`` are columns in the degree-k chain basis of X_level;
    each is a cycle and the set is independent modulo boundaries.
    """

    level: int
    degree: int
    representatives: tuple[tuple[Fraction, ...], ...]
    chain_size: int

    @property
    def dimension(self) -> int:
        return len(self.representatives)


def homology_basis(complex_: FilteredComplex, k: int, level: int) -> HomologyBasis:
    """Deterministic homology basis from echelon-form cycle and boundary data."""
    if k < 0:
        raise ValidationError(f"homology degree must be nonnegative, got {k}")
    n_chain = len(complex_.simplices_of(k, level))
    if k == 0:
        cycles = RationalMatrix.identity(n_chain).columns()
    else:
        cycles = _boundary(complex_, k, level).nullspace()
    tracker = PivotTracker(n_chain)
    for col in _boundary(complex_, k + 1, level).columns():
        tracker.add(col)
    reps = [tuple(z) for z in cycles if tracker.add(z)]
    return HomologyBasis(level=level, degree=k, representatives=tuple(reps), chain_size=n_chain)


def persistence_representation(complex_: FilteredComplex, k: int) -> Representation:
    """Chain representation H_k(X_0) -> ... -> H_k(X_n) of the filtration.

    Nodes are the levels "0".."n"; the arrow matrix at level l expresses the
    inclusion-induced map in the chosen homology bases. All solves are exact;
    the result is converted to doubles at the end.
    """
    n = complex_.n
    bases = [homology_basis(complex_, k, level) for level in range(n + 1)]
    quiver = Quiver(
        [str(level) for level in range(n + 1)],
        [(f"i{level}", str(level), str(level + 1)) for level in range(n)],
    )
    dims = {str(level): bases[level].dimension for level in range(n + 1)}
    maps = {}
    for level in range(n):
        cur, nxt = bases[level], bases[level + 1]
        # columns: representatives at level+1, then boundaries at level+1
        w = RationalMatrix.from_columns(
            [list(r) for r in nxt.representatives], nxt.chain_size
        )
        solver = w.hstack(_boundary(complex_, k + 1, level + 1))
        out = RationalMatrix.zeros(nxt.dimension, cur.dimension)
        for j, rep_vec in enumerate(cur.representatives):
            padded = list(rep_vec) + [Fraction(0)] * (nxt.chain_size - cur.chain_size)
            solution = solver.solve(padded)
            if solution is None:
                raise ValidationError(
                    f"inclusion-induced map at level {level} has no exact expression; "
                    "the complex data is inconsistent"
                )
            for i in range(nxt.dimension):
                out.rows[i][j] = solution[i]
        maps[f"i{level}"] = out.to_float()
    return Representation(quiver, dims, maps)


def persistence_barcode(complex_: FilteredComplex, k: int) -> IntervalBarcode:
    """Barcode of the degree-k persistence representation.

    Bar positions are 1-based chain nodes: position l+1 corresponds to
    filtration level l.
    """
    return barcode_interval(persistence_representation(complex_, k))
