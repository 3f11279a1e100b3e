"""Quiver representations, block signals, filter application and shift operators.

Matrices act on column vectors: the matrix attached to an arrow ``a`` has
shape ``dims[head(a)] x dims[tail(a)]``. The total space stacks node blocks
in quiver node order; zero-dimensional node spaces are first-class.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .algebra import FilterElement
from .errors import MismatchError, ValidationError
from .quiver import Path, Quiver

__all__ = ["Representation", "QuiverSignal", "ShiftMatrix", "direct_sum"]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class Representation:
    """Per-node dimensions plus one real matrix per arrow.

    Instances are immutable: dimension and matrix data are copied on
    construction and the arrays are marked read-only.
    """

    __slots__ = ("_quiver", "_dims", "_maps")

    def __init__(self, quiver: Quiver, dims: Mapping[str, int], maps: Mapping[str, np.ndarray]):
        self._quiver = quiver

        clean_dims: dict[str, int] = {}
        for node in quiver.nodes:
            if node not in dims:
                raise ValidationError(f"missing dimension for node '{node}'")
            d = int(dims[node])
            if d < 0:
                raise ValidationError(f"dimension for node '{node}' must be nonnegative, got {d}")
            clean_dims[node] = d
        for key in dims:
            if str(key) not in clean_dims:
                raise ValidationError(f"dimension given for unknown node '{key}'")

        clean_maps: dict[str, np.ndarray] = {}
        for arrow in quiver.arrows:
            if arrow.id not in maps:
                raise ValidationError(f"missing matrix for arrow '{arrow.id}'")
            m = np.array(maps[arrow.id], dtype=np.float64)
            want = (clean_dims[arrow.head], clean_dims[arrow.tail])
            if 0 in want and m.size == 0:
                m = np.zeros(want)
            if m.shape != want:
                raise ValidationError(
                    f"matrix for arrow '{arrow.id}' has shape {m.shape}, expected {want}"
                )
            clean_maps[arrow.id] = _frozen(m)
        for key in maps:
            if str(key) not in clean_maps:
                raise ValidationError(f"matrix given for unknown arrow '{key}'")

        self._dims = clean_dims
        self._maps = clean_maps

    @property
    def quiver(self) -> Quiver:
        return self._quiver

    @property
    def dims(self) -> dict[str, int]:
        return dict(self._dims)

    @property
    def maps(self) -> dict[str, np.ndarray]:
        return dict(self._maps)

    def dim(self, node: str) -> int:
        try:
            return self._dims[str(node)]
        except KeyError:
            raise ValidationError(f"unknown node id '{node}'") from None

    def map(self, arrow_id: str) -> np.ndarray:
        try:
            return self._maps[str(arrow_id)]
        except KeyError:
            raise ValidationError(f"unknown arrow id '{arrow_id}'") from None

    @property
    def total_dim(self) -> int:
        return sum(self._dims.values())

    def node_offsets(self) -> dict[str, int]:
        """Start offset of each node block in the stacked total space."""
        offsets, pos = {}, 0
        for node in self._quiver.nodes:
            offsets[node] = pos
            pos += self._dims[node]
        return offsets

    def eval_path(self, path: Path) -> np.ndarray:
        """Composite matrix along a path; identity of size dims[node] for a trivial path."""
        if path.quiver != self._quiver:
            raise MismatchError("path belongs to a different quiver")
        if path.is_trivial:
            return np.eye(self._dims[path.base])
        result = self._maps[path.arrows[0].id]
        for arrow in path.arrows[1:]:
            result = self._maps[arrow.id] @ result
        return result

    def apply_filter(self, element: FilterElement, signal: "QuiverSignal") -> "QuiverSignal":
        """Convolve: each term adds coeff * (path composite) * x(tail) into block head."""
        if element.quiver != self._quiver:
            raise MismatchError("filter belongs to a different quiver")
        if signal.rep is not self:
            raise MismatchError("signal belongs to a different representation")
        out = {node: np.zeros(d) for node, d in self._dims.items()}
        for path, coeff in element.sorted_terms():
            out[path.head] += coeff * (self.eval_path(path) @ signal.block(path.tail))
        return QuiverSignal(self, out)

    def shift_operator(self, path: Path) -> "ShiftMatrix":
        """Materialize the path action on the stacked total space.

        The only (possibly zero) nonzero block sits at block-row head(path),
        block-column tail(path).
        """
        block = self.eval_path(path)
        offsets = self.node_offsets()
        n = self.total_dim
        dense = np.zeros((n, n))
        h, t = path.head, path.tail
        dense[offsets[h]:offsets[h] + self._dims[h], offsets[t]:offsets[t] + self._dims[t]] = block
        return ShiftMatrix(matrix=_frozen(dense), path=path, head=h, tail=t)

    def zero_signal(self) -> "QuiverSignal":
        return QuiverSignal(self, {node: np.zeros(d) for node, d in self._dims.items()})

    def __repr__(self) -> str:
        return f"Representation(dims={self._dims})"


class QuiverSignal:
    """One real vector per node, matching the representation's dimensions."""

    __slots__ = ("_rep", "_blocks")

    def __init__(self, rep: Representation, blocks: Mapping[str, np.ndarray]):
        clean: dict[str, np.ndarray] = {}
        for node in rep.quiver.nodes:
            if node not in blocks:
                raise ValidationError(f"missing signal block for node '{node}'")
            v = np.array(blocks[node], dtype=np.float64).reshape(-1)
            if v.shape[0] != rep.dim(node):
                raise ValidationError(
                    f"signal block for node '{node}' has length {v.shape[0]}, "
                    f"expected {rep.dim(node)}"
                )
            clean[node] = _frozen(v)
        for key in blocks:
            if str(key) not in clean:
                raise ValidationError(f"signal block given for unknown node '{key}'")
        self._rep = rep
        self._blocks = clean

    @property
    def rep(self) -> Representation:
        return self._rep

    @property
    def blocks(self) -> dict[str, np.ndarray]:
        return dict(self._blocks)

    def block(self, node: str) -> np.ndarray:
        try:
            return self._blocks[str(node)]
        except KeyError:
            raise ValidationError(f"unknown node id '{node}'") from None

    def flatten(self) -> np.ndarray:
        """Concatenate node blocks in quiver node order."""
        parts = [self._blocks[n] for n in self._rep.quiver.nodes]
        return np.concatenate(parts) if parts else np.zeros(0)

    @classmethod
    def from_flat(cls, rep: Representation, vec: np.ndarray) -> "QuiverSignal":
        v = np.asarray(vec, dtype=np.float64).reshape(-1)
        if v.shape[0] != rep.total_dim:
            raise ValidationError(f"flat vector has length {v.shape[0]}, expected {rep.total_dim}")
        offsets = rep.node_offsets()
        return cls(rep, {n: v[offsets[n]:offsets[n] + rep.dim(n)] for n in rep.quiver.nodes})

    def __repr__(self) -> str:
        return f"QuiverSignal(dim={self._rep.total_dim})"


@dataclass(frozen=True, eq=False)
class ShiftMatrix:
    """Dense one-block operator rho(p) on the stacked total space."""

    matrix: np.ndarray
    path: Path
    head: str
    tail: str

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def direct_sum(r1: Representation, r2: Representation) -> Representation:
    """Direct sum: dimensions add per node; arrow matrices become block-diagonal."""
    if r1.quiver != r2.quiver:
        raise MismatchError("cannot form the direct sum over different quivers")
    quiver = r1.quiver
    dims = {n: r1.dim(n) + r2.dim(n) for n in quiver.nodes}
    maps = {}
    for arrow in quiver.arrows:
        m1, m2 = r1.map(arrow.id), r2.map(arrow.id)
        block = np.zeros((dims[arrow.head], dims[arrow.tail]))
        block[: m1.shape[0], : m1.shape[1]] = m1
        block[m1.shape[0]:, m1.shape[1]:] = m2
        maps[arrow.id] = block
    return Representation(quiver, dims, maps)
