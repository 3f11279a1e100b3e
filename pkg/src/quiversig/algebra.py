"""Path algebra elements: finite linear combinations of paths with the
concatenation product, extended bilinearly.

Coefficients are real doubles. Terms whose coefficient ends up with absolute
value at or below :data:`DROP_TOL` are removed after every operation, so the
zero element is always the empty combination.
"""
from __future__ import annotations

from typing import Iterable, Mapping

from .errors import MismatchError, ValidationError
from .quiver import Path, Quiver, ZERO, concat

__all__ = ["DROP_TOL", "FilterElement", "unit", "zero", "multiply", "add"]

#: Coefficients with |c| <= DROP_TOL are dropped after arithmetic.
DROP_TOL = 1e-12


class FilterElement:
    """An element of the path algebra of a quiver.

    Immutable by convention: all arithmetic returns new instances. Terms are
    kept in a canonical order (path length, then arrow ids) for deterministic
    serialization and equality.
    """

    __slots__ = ("_quiver", "_terms")

    def __init__(self, quiver: Quiver, terms: Mapping[Path, float] | Iterable[tuple[Path, float]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Path, float] = {}
        for path, coeff in items:
            if not isinstance(path, Path):
                raise ValidationError(f"filter term key {path!r} is not a Path")
            if path.quiver != quiver:
                raise MismatchError("filter term path belongs to a different quiver")
            acc[path] = acc.get(path, 0.0) + float(coeff)
        cleaned = {p: c for p, c in acc.items() if abs(c) > DROP_TOL}
        self._quiver = quiver
        self._terms = dict(sorted(cleaned.items(), key=lambda item: item[0].sort_key()))

    @property
    def quiver(self) -> Quiver:
        return self._quiver

    @property
    def terms(self) -> dict[Path, float]:
        """Copy of the term map (canonically ordered)."""
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, path: Path) -> float:
        return self._terms.get(path, 0.0)

    def sorted_terms(self) -> list[tuple[Path, float]]:
        return list(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "FilterElement") -> "FilterElement":
        return add(self, other)

    def __sub__(self, other: "FilterElement") -> "FilterElement":
        return add(self, other, 1.0, -1.0)

    def __neg__(self) -> "FilterElement":
        return FilterElement(self._quiver, {p: -c for p, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, FilterElement):
            return multiply(self, other)
        return FilterElement(self._quiver, {p: float(other) * c for p, c in self._terms.items()})

    def __rmul__(self, scalar) -> "FilterElement":
        return FilterElement(self._quiver, {p: float(scalar) * c for p, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FilterElement):
            return NotImplemented
        return self._quiver == other._quiver and self._terms == other._terms

    def __hash__(self):
        return hash((self._quiver, tuple(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "FilterElement(0)"
        bits = " + ".join(f"{c:g}*{p!r}" for p, c in self._terms.items())
        return f"FilterElement({bits})"


def unit(quiver: Quiver) -> FilterElement:
    """The algebra unit: the sum of all trivial paths with coefficient 1."""
    return FilterElement(quiver, {quiver.trivial_path(n): 1.0 for n in quiver.nodes})


def zero(quiver: Quiver) -> FilterElement:
    return FilterElement(quiver)


def multiply(b: FilterElement, a: FilterElement) -> FilterElement:
    """Algebra product ``b * a`` (``a`` acts first), extended bilinearly.

    Concatenations whose endpoints do not meet contribute nothing.
    """
    if b.quiver != a.quiver:
        raise MismatchError("cannot multiply filters over different quivers")
    acc: dict[Path, float] = {}
    for p2, c2 in b._terms.items():
        for p1, c1 in a._terms.items():
            q = concat(p2, p1)
            if q is ZERO:
                continue
            acc[q] = acc.get(q, 0.0) + c2 * c1
    return FilterElement(b.quiver, acc)


def add(b: FilterElement, a: FilterElement, beta: float = 1.0, alpha: float = 1.0) -> FilterElement:
    """Linear combination ``beta*b + alpha*a`` with coefficient merging."""
    if b.quiver != a.quiver:
        raise MismatchError("cannot add filters over different quivers")
    acc = {p: beta * c for p, c in b._terms.items()}
    for p, c in a._terms.items():
        acc[p] = acc.get(p, 0.0) + alpha * c
    return FilterElement(b.quiver, acc)
