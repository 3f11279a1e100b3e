"""Intertwining maps between representations.

A morphism from ``src`` to ``dst`` is a family of per-node matrices ``T_i``
(shape ``dst.dims[i] x src.dims[i]``) making every arrow square commute:
``T_head @ src_map == dst_map @ T_tail``. The full Hom space is the null
space of one stacked linear system over the vectorized blocks.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import MismatchError, ValidationError
from .linalg import null_space, singular_value_cutoff
from .representation import Representation

__all__ = ["Intertwiner", "IsoResult", "hom_basis", "end_dim", "is_isomorphic"]

#: Relative slack allowed in the commuting-square residual of an Intertwiner.
COMMUTE_TOL = 1e-9


class Intertwiner:
    """Per-node linear maps commuting with every arrow map.

    The commuting squares are checked on construction; the allowed residual
    per arrow is ``COMMUTE_TOL * (1 + max side norm)``.
    """

    __slots__ = ("_source", "_target", "_blocks")

    def __init__(self, source: Representation, target: Representation,
                 blocks: Mapping[str, np.ndarray], check: bool = True):
        if source.quiver != target.quiver:
            raise MismatchError("intertwiner endpoints live over different quivers")
        clean: dict[str, np.ndarray] = {}
        for node in source.quiver.nodes:
            if node not in blocks:
                raise ValidationError(f"missing intertwiner block for node '{node}'")
            b = np.array(blocks[node], dtype=np.float64)
            want = (target.dim(node), source.dim(node))
            if 0 in want and b.size == 0:
                b = np.zeros(want)
            if b.shape != want:
                raise ValidationError(
                    f"intertwiner block at node '{node}' has shape {b.shape}, expected {want}"
                )
            b.setflags(write=False)
            clean[node] = b
        self._source = source
        self._target = target
        self._blocks = clean
        if check:
            residual, bound = self._residual()
            if residual > bound:
                raise ValidationError(
                    f"blocks do not intertwine: residual {residual:.3e} exceeds {bound:.3e}"
                )

    def _residual(self) -> tuple[float, float]:
        worst, scale = 0.0, 0.0
        for arrow in self._source.quiver.arrows:
            lhs = self._blocks[arrow.head] @ self._source.map(arrow.id)
            rhs = self._target.map(arrow.id) @ self._blocks[arrow.tail]
            if lhs.size:
                worst = max(worst, float(np.abs(lhs - rhs).max()))
                scale = max(scale, float(np.linalg.norm(lhs)), float(np.linalg.norm(rhs)))
        return worst, COMMUTE_TOL * (1.0 + scale)

    @property
    def source(self) -> Representation:
        return self._source

    @property
    def target(self) -> Representation:
        return self._target

    @property
    def blocks(self) -> dict[str, np.ndarray]:
        return dict(self._blocks)

    def block(self, node: str) -> np.ndarray:
        return self._blocks[str(node)]

    def residual(self) -> float:
        return self._residual()[0]

    def is_invertible(self, tol: float | None = None) -> bool:
        """True iff every block is square with smallest singular value above the rank cutoff."""
        for node in self._source.quiver.nodes:
            b = self._blocks[node]
            if b.shape[0] != b.shape[1]:
                return False
            if b.size == 0:
                continue
            sigma = np.linalg.svd(b, compute_uv=False)
            if sigma[-1] <= singular_value_cutoff(sigma, b.shape, tol):
                return False
        return True

    def __repr__(self) -> str:
        shapes = {n: b.shape for n, b in self._blocks.items()}
        return f"Intertwiner({shapes})"


def _vec_layout(src: Representation, dst: Representation) -> tuple[dict[str, tuple[int, int]], int]:
    """Column-major block offsets of the stacked unknown vec(T_1), vec(T_2), ..."""
    offsets, pos = {}, 0
    for node in src.quiver.nodes:
        size = dst.dim(node) * src.dim(node)
        offsets[node] = (pos, size)
        pos += size
    return offsets, pos


def hom_basis(src: Representation, dst: Representation, tol: float | None = None) -> list[Intertwiner]:
    """Orthonormal basis of the space of intertwiners ``src -> dst``.

    Assembles ``T_head @ src_map - dst_map @ T_tail = 0`` over all arrows as
    one matrix acting on the stacked column-major vectorizations of the
    unknown blocks, and extracts a numerical null-space basis. Deterministic
    up to the SVD's orthonormal basis choice.
    """
    if src.quiver != dst.quiver:
        raise MismatchError("hom_basis endpoints live over different quivers")
    quiver = src.quiver
    offsets, unknowns = _vec_layout(src, dst)
    if unknowns == 0:
        return []

    rows = sum(dst.dim(a.head) * src.dim(a.tail) for a in quiver.arrows)
    system = np.zeros((rows, unknowns))
    row = 0
    for arrow in quiver.arrows:
        h, t = arrow.head, arrow.tail
        n_eq = dst.dim(h) * src.dim(t)
        if n_eq == 0:
            continue
        # vec(T_h @ P) = kron(P.T, I) vec(T_h); vec(R @ T_t) = kron(I, R) vec(T_t)
        off_h, _ = offsets[h]
        off_t, _ = offsets[t]
        p = src.map(arrow.id)
        r = dst.map(arrow.id)
        system[row:row + n_eq, off_h:off_h + dst.dim(h) * src.dim(h)] += np.kron(p.T, np.eye(dst.dim(h)))
        system[row:row + n_eq, off_t:off_t + dst.dim(t) * src.dim(t)] -= np.kron(np.eye(src.dim(t)), r)
        row += n_eq

    basis = null_space(system[:row], tol)
    out = []
    for k in range(basis.shape[1]):
        blocks = {}
        for node in quiver.nodes:
            off, size = offsets[node]
            blocks[node] = basis[off:off + size, k].reshape((dst.dim(node), src.dim(node)), order="F")
        out.append(Intertwiner(src, dst, blocks))
    return out


def end_dim(rep: Representation, tol: float | None = None) -> int:
    """Dimension of the endomorphism algebra; 1 certifies indecomposability."""
    return len(hom_basis(rep, rep, tol))


@dataclass(frozen=True)
class IsoResult:
    """Verdict of an isomorphism search, with the invertible witness when found."""

    isomorphic: bool
    witness: Intertwiner | None

    def __bool__(self) -> bool:
        return self.isomorphic


def combine(basis: list[Intertwiner], coeffs: np.ndarray) -> Intertwiner:
    """Linear combination of same-endpoint intertwiners."""
    if not basis:
        raise ValidationError("cannot combine an empty basis")
    src, dst = basis[0].source, basis[0].target
    blocks = {
        node: sum(c * b.block(node) for c, b in zip(coeffs, basis))
        for node in src.quiver.nodes
    }
    return Intertwiner(src, dst, blocks)


def is_isomorphic(a: Representation, b: Representation, trials: int = 8,
                  seed=None, tol: float | None = None) -> IsoResult:
    """Randomized isomorphism test over the Hom space.

    A ``True`` verdict is certified by the returned invertible witness. A
    ``False`` verdict after all trials is probabilistic: invertible elements
    form a Zariski-open subset of Hom, so generic coefficient samples miss an
    existing isomorphism with probability zero, but degenerate floats can in
    principle produce a spurious negative.
    """
    if a.quiver != b.quiver:
        raise MismatchError("cannot compare representations over different quivers")
    if a.dims != b.dims:
        return IsoResult(False, None)
    if a.total_dim == 0:
        empty = Intertwiner(a, b, {n: np.zeros((0, 0)) for n in a.quiver.nodes})
        return IsoResult(True, empty)
    basis = hom_basis(a, b, tol)
    if not basis:
        return IsoResult(False, None)
    rng = np.random.default_rng(seed)
    for _ in range(max(1, int(trials))):
        candidate = combine(basis, rng.standard_normal(len(basis)))
        if candidate.is_invertible(tol):
            return IsoResult(True, candidate)
    return IsoResult(False, None)
