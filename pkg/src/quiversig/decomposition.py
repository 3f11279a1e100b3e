"""Decompositions of quiver representations.

Three routes, by increasing generality of the input:

* ``barcode_interval`` — interval multiplicities for equioriented chains via
  rank inclusion-exclusion on composite maps.
* ``generic_decompose`` — split any representation into indecomposables by
  sampling random endomorphisms and cutting along their eigenvalue clusters.
* ``fourier_decompose`` — reorganize a signal by simple type; only defined
  when the representation is semisimple (all arrow maps vanish on an acyclic
  quiver), and refuses otherwise rather than fabricate a decomposition.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from .algebra import FilterElement
from .errors import (
    MismatchError,
    NotSemisimpleError,
    QuiverStructureError,
    ValidationError,
)
from .linalg import EPS, numerical_rank
from .morphisms import IsoResult, hom_basis, is_isomorphic
from .quiver import Quiver
from .representation import QuiverSignal, Representation, direct_sum

__all__ = [
    "IntervalBarcode",
    "Summand",
    "SummandList",
    "FourierDecomposition",
    "chain_order",
    "interval_representation",
    "barcode_interval",
    "generic_decompose",
    "is_semisimple",
    "composition_factors",
    "fourier_decompose",
]

#: Max-norm below which an arrow map counts as zero for the semisimplicity test.
SEMISIMPLE_TOL = 1e-12

#: Relative gap separating eigenvalue clusters in the generic splitter.
CLUSTER_GAP = 1e-6

#: Residual slack for accepting a spectral projector and its invariance.
_SPLIT_TOL = 1e-7


class IntervalBarcode:
    """Multiset of intervals [a, b] (1-based chain positions) with multiplicities."""

    def __init__(self, n: int, multiplicities: Mapping[tuple[int, int], int],
                 nodes: tuple[str, ...] | None = None):
        self.n = int(n)
        clean: dict[tuple[int, int], int] = {}
        for (a, b), m in multiplicities.items():
            a, b, m = int(a), int(b), int(m)
            if not (1 <= a <= b <= self.n):
                raise ValidationError(f"interval [{a}, {b}] out of range for chain length {self.n}")
            if m < 0:
                raise ValidationError(f"negative multiplicity {m} for interval [{a}, {b}]")
            if m:
                clean[(a, b)] = m
        self._mult = dict(sorted(clean.items()))
        self.nodes = tuple(nodes) if nodes is not None else tuple(str(i) for i in range(1, self.n + 1))

    @property
    def multiplicities(self) -> dict[tuple[int, int], int]:
        return dict(self._mult)

    def bars(self) -> list[tuple[tuple[int, int], int]]:
        """Bars sorted by (start, end)."""
        return list(self._mult.items())

    def multiplicity(self, a: int, b: int) -> int:
        return self._mult.get((int(a), int(b)), 0)

    def dims_at(self) -> dict[int, int]:
        """Dimension bookkeeping: bars through each position, summed."""
        out = {i: 0 for i in range(1, self.n + 1)}
        for (a, b), m in self._mult.items():
            for i in range(a, b + 1):
                out[i] += m
        return out

    def total_bars(self) -> int:
        return sum(self._mult.values())

    def __iter__(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(self._mult.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalBarcode):
            return NotImplemented
        return self.n == other.n and self._mult == other._mult

    def __hash__(self):
        return hash((self.n, tuple(self._mult.items())))

    def __repr__(self) -> str:
        bars = ", ".join(f"[{a},{b}]:{m}" for (a, b), m in self._mult.items())
        return f"IntervalBarcode(n={self.n}, {{{bars}}})"


def chain_order(quiver: Quiver) -> list[str] | None:
    """Nodes in chain order when the quiver is an equioriented chain, else None."""
    nodes = quiver.nodes
    if len(quiver.arrows) != max(len(nodes) - 1, 0):
        return None
    out_deg = {n: 0 for n in nodes}
    in_deg = {n: 0 for n in nodes}
    succ = {}
    for a in quiver.arrows:
        if a.tail == a.head:
            return None
        out_deg[a.tail] += 1
        in_deg[a.head] += 1
        if out_deg[a.tail] > 1 or in_deg[a.head] > 1:
            return None
        succ[a.tail] = a.head
    starts = [n for n in nodes if in_deg[n] == 0]
    if len(nodes) == 0:
        return []
    if len(starts) != 1:
        return None
    order = [starts[0]]
    while order[-1] in succ:
        order.append(succ[order[-1]])
    return order if len(order) == len(nodes) else None


def _chain_maps(rep: Representation, order: list[str]) -> list[np.ndarray]:
    by_ends = {(a.tail, a.head): a.id for a in rep.quiver.arrows}
    return [rep.map(by_ends[(order[k], order[k + 1])]) for k in range(len(order) - 1)]


def interval_representation(quiver: Quiver, start: int, end: int) -> Representation:
    """Interval module: scalar at chain positions start..end, identity arrows inside."""
    order = chain_order(quiver)
    if order is None:
        raise QuiverStructureError("interval modules are defined over equioriented chains only")
    n = len(order)
    if not (1 <= start <= end <= n):
        raise ValidationError(f"interval [{start}, {end}] out of range for chain length {n}")
    dims = {node: int(start <= k + 1 <= end) for k, node in enumerate(order)}
    by_ends = {(a.tail, a.head): a.id for a in quiver.arrows}
    maps = {}
    for k in range(n - 1):
        aid = by_ends[(order[k], order[k + 1])]
        inside = start <= k + 1 and k + 2 <= end
        maps[aid] = np.eye(1) if inside else np.zeros((dims[order[k + 1]], dims[order[k]]))
    return Representation(quiver, dims, maps)


def barcode_interval(rep: Representation, tol: float | None = None) -> IntervalBarcode:
    """Interval multiplicities of an equioriented chain representation.

    With rk(a, b) the numerical rank of the composite map from position a to
    position b (rk(a, a) = dims[a], out-of-range terms zero), the bar count is

        m[a, b] = rk(a, b) - rk(a-1, b) - rk(a, b+1) + rk(a-1, b+1).

    Composites are built by successive left multiplication to bound error
    growth. The output always satisfies the dimension bookkeeping identity;
    an inconsistent rank pattern (possible only through numerical noise)
    raises instead of returning a wrong barcode.
    """
    order = chain_order(rep.quiver)
    if order is None:
        raise QuiverStructureError("barcode_interval needs an equioriented chain quiver")
    n = len(order)
    dims = [rep.dim(node) for node in order]
    maps = _chain_maps(rep, order)
    norms = [float(np.linalg.norm(m, 2)) if m.size else 0.0 for m in maps]

    rank = {}
    for a in range(1, n + 1):
        composite = np.eye(dims[a - 1])
        rank[(a, a)] = dims[a - 1]
        scale = 1.0
        for b in range(a + 1, n + 1):
            composite = maps[b - 2] @ composite
            scale *= norms[b - 2]
            # a computed product carries rounding noise of order eps * product
            # of factor norms; a cutoff relative to the composite's own largest
            # singular value would mistake that noise for rank when the true
            # composite vanishes
            cutoff = tol if tol is not None else max(composite.shape, default=0) * EPS * scale
            rank[(a, b)] = numerical_rank(composite, cutoff)

    def rk(a: int, b: int) -> int:
        if a < 1 or b > n:
            return 0
        return rank[(a, b)]

    mult = {}
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            m = rk(a, b) - rk(a - 1, b) - rk(a, b + 1) + rk(a - 1, b + 1)
            if m < 0:
                raise ValidationError(
                    f"inconsistent rank pattern at interval [{a}, {b}] "
                    f"(multiplicity {m} < 0); adjust the rank tolerance"
                )
            if m:
                mult[(a, b)] = m

    barcode = IntervalBarcode(n, mult, nodes=tuple(order))
    actual = barcode.dims_at()
    for i in range(1, n + 1):
        if actual[i] != dims[i - 1]:
            raise ValidationError(
                f"barcode bookkeeping failed at position {i}: bars sum to "
                f"{actual[i]} but the space has dimension {dims[i - 1]}"
            )
    return barcode


@dataclass(frozen=True, eq=False)
class Summand:
    """A direct summand with its per-node basis columns in the original coordinates."""

    rep: Representation
    basis: dict[str, np.ndarray]
    flag: str | None = None

    def dimension_vector(self) -> tuple[int, ...]:
        return tuple(self.rep.dim(n) for n in self.rep.quiver.nodes)


class SummandList:
    """Result of a generic decomposition; iterable over :class:`Summand`."""

    def __init__(self, original: Representation, summands: list[Summand]):
        self.original = original
        self._summands = list(summands)

    def __len__(self) -> int:
        return len(self._summands)

    def __iter__(self) -> Iterator[Summand]:
        return iter(self._summands)

    def __getitem__(self, i) -> Summand:
        return self._summands[i]

    def dimension_vectors(self) -> list[tuple[int, ...]]:
        return sorted(s.dimension_vector() for s in self._summands)

    def flags(self) -> list[str | None]:
        return [s.flag for s in self._summands]

    def unsplit_count(self) -> int:
        return sum(1 for s in self._summands if s.flag == "unsplit")

    def verify(self, trials: int = 8, seed=None, tol: float | None = None) -> IsoResult:
        """Check that the direct sum of the summands is isomorphic to the input."""
        total = None
        for s in self._summands:
            total = s.rep if total is None else direct_sum(total, s.rep)
        if total is None:
            zero_dims = {n: 0 for n in self.original.quiver.nodes}
            zero_maps = {a.id: np.zeros((0, 0)) for a in self.original.quiver.arrows}
            total = Representation(self.original.quiver, zero_dims, zero_maps)
        return is_isomorphic(total, self.original, trials=trials, seed=seed, tol=tol)

    def __repr__(self) -> str:
        return f"SummandList({[s.dimension_vector() for s in self._summands]})"


def _cluster_eigenvalues(values: np.ndarray) -> list[list[int]]:
    """Group eigenvalues by relative gap, closing up under complex conjugation."""
    m = len(values)
    if m == 0:
        return []
    scale = max(1.0, float(np.abs(values).max()))
    threshold = CLUSTER_GAP * scale
    parent = list(range(m))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    for i in range(m):
        for j in range(i + 1, m):
            if abs(values[i] - values[j]) <= threshold or abs(values[i] - np.conj(values[j])) <= threshold:
                union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _spectral_split(rep: Representation, endo: dict[str, np.ndarray]):
    """Bases for the generalized eigenspace clusters of an endomorphism.

    Returns a list of per-node basis dicts (orthonormal columns), one per
    cluster, or None when the spectrum does not separate or the numerics are
    too degenerate to certify an honest split.
    """
    nodes = rep.quiver.nodes
    eig: dict[str, tuple[np.ndarray, np.ndarray]] = {}
    tagged: list[tuple[str, int]] = []
    all_vals: list[complex] = []
    for node in nodes:
        block = endo[node]
        if block.shape[0] == 0:
            eig[node] = (np.zeros(0, dtype=complex), np.zeros((0, 0), dtype=complex))
            continue
        w, v = np.linalg.eig(block)
        eig[node] = (w, v)
        for j in range(len(w)):
            tagged.append((node, j))
            all_vals.append(w[j])

    clusters = _cluster_eigenvalues(np.array(all_vals, dtype=complex))
    if len(clusters) < 2:
        return None

    membership = {}
    for c_index, members in enumerate(clusters):
        for k in members:
            membership[tagged[k]] = c_index

    parts: list[dict[str, np.ndarray]] = [dict() for _ in clusters]
    for node in nodes:
        w, v = eig[node]
        size = rep.dim(node)
        if size == 0:
            for part in parts:
                part[node] = np.zeros((0, 0))
            continue
        try:
            v_inv = np.linalg.inv(v)
        except np.linalg.LinAlgError:
            return None
        taken = 0
        for c_index in range(len(clusters)):
            sel = [j for j in range(len(w)) if membership.get((node, j)) == c_index]
            projector = np.real(v[:, sel] @ v_inv[sel, :])
            bound = _SPLIT_TOL * (1.0 + float(np.linalg.norm(projector)) ** 2)
            if float(np.linalg.norm(projector @ projector - projector)) > bound:
                return None
            # for a clean diagonalizable split the projector trace counts the
            # selected eigenvalues
            r = int(round(float(np.trace(projector))))
            if r != len(sel):
                return None
            if r == 0:
                parts[c_index][node] = np.zeros((size, 0))
                continue
            u, s, _ = np.linalg.svd(projector)
            if int(np.count_nonzero(s > 0.5)) != r:
                return None
            parts[c_index][node] = u[:, :r]
            taken += r
        if taken != size:
            return None
    return parts


def _restrict(rep: Representation, basis: dict[str, np.ndarray]) -> Representation | None:
    """Restrict arrow maps to an invariant per-node subspace (orthonormal columns)."""
    dims = {n: basis[n].shape[1] for n in rep.quiver.nodes}
    maps = {}
    for arrow in rep.quiver.arrows:
        b_h, b_t = basis[arrow.head], basis[arrow.tail]
        image = rep.map(arrow.id) @ b_t
        coords = b_h.T @ image
        leak = image - b_h @ coords
        if leak.size and float(np.abs(leak).max()) > _SPLIT_TOL * (1.0 + float(np.abs(image).max())):
            return None
        maps[arrow.id] = coords
    return Representation(rep.quiver, dims, maps)


def generic_decompose(rep: Representation, seed=None, max_rounds: int = 8,
                      tol: float | None = None) -> SummandList:
    """Split a representation into indecomposable summands, generically.

    Strategy per piece: if the endomorphism algebra is one-dimensional the
    piece is certified indecomposable. Otherwise sample a random endomorphism,
    cluster its eigenvalues (relative gap :data:`CLUSTER_GAP`), project onto
    the generalized eigenspaces of each cluster (these are subrepresentation
    projections, being polynomials in the sampled endomorphism), restrict the
    arrow maps and recurse. A piece that survives ``max_rounds`` sampling
    rounds without an honest split is reported with flag ``"unsplit"`` —
    degenerate spectra degrade the answer, never falsify it.
    """
    rng = np.random.default_rng(seed)
    summands: list[Summand] = []
    identity = {n: np.eye(rep.dim(n)) for n in rep.quiver.nodes}
    _decompose_into(rep, identity, rng, max(1, int(max_rounds)), tol, summands)
    return SummandList(rep, summands)


def _decompose_into(rep: Representation, basis: dict[str, np.ndarray], rng,
                    max_rounds: int, tol: float | None, out: list[Summand]) -> None:
    if rep.total_dim == 0:
        return
    endos = hom_basis(rep, rep, tol)
    if len(endos) == 1:
        out.append(Summand(rep, basis, None))
        return
    for _ in range(max_rounds):
        coeffs = rng.standard_normal(len(endos))
        sample = {
            n: sum(c * e.block(n) for c, e in zip(coeffs, endos))
            for n in rep.quiver.nodes
        }
        parts = _spectral_split(rep, sample)
        if parts is None or len(parts) < 2:
            continue
        restricted = []
        for part in parts:
            sub = _restrict(rep, part)
            if sub is None:
                restricted = None
                break
            restricted.append((sub, part))
        if restricted is None:
            continue
        for sub, part in restricted:
            lifted = {n: basis[n] @ part[n] for n in rep.quiver.nodes}
            _decompose_into(sub, lifted, rng, max_rounds, tol, out)
        return
    out.append(Summand(rep, basis, "unsplit"))


def is_semisimple(rep: Representation) -> bool:
    """For acyclic quivers: true iff every arrow matrix vanishes (max-norm <= 1e-12)."""
    if not rep.quiver.is_acyclic():
        raise QuiverStructureError(
            "semisimplicity test supports acyclic quivers only (cycles admit "
            "simple modules beyond the node simples)"
        )
    return _worst_arrow(rep)[1] <= SEMISIMPLE_TOL


def _worst_arrow(rep: Representation) -> tuple[str | None, float]:
    worst_id, worst = None, 0.0
    for arrow in rep.quiver.arrows:
        m = rep.map(arrow.id)
        norm = float(np.abs(m).max()) if m.size else 0.0
        if worst_id is None or norm > worst:
            worst_id, worst = arrow.id, norm
    return worst_id, worst


def composition_factors(rep: Representation) -> dict[str, int]:
    """Multiplicity of the simple at each node; equals the dimension vector for acyclic quivers."""
    if not rep.quiver.is_acyclic():
        raise QuiverStructureError("composition factors are computed for acyclic quivers only")
    return rep.dims


class FourierDecomposition:
    """A signal reorganized by simple type, with the inverse transform.

    For a semisimple representation of an acyclic quiver, every simple is the
    one-dimensional module at a node, the multiplicity of type ``i`` equals
    dims[i], and the components of type ``i`` are exactly the coordinates of
    the signal block at node ``i``.
    """

    __slots__ = ("_rep", "_components")

    def __init__(self, rep: Representation, components: Mapping[str, np.ndarray]):
        self._rep = rep
        clean = {}
        for node in rep.quiver.nodes:
            v = np.array(components[node], dtype=np.float64).reshape(-1)
            if v.shape[0] != rep.dim(node):
                raise ValidationError(
                    f"component count for type '{node}' is {v.shape[0]}, expected {rep.dim(node)}"
                )
            v.setflags(write=False)
            clean[node] = v
        self._components = clean

    @property
    def rep(self) -> Representation:
        return self._rep

    @property
    def multiplicities(self) -> dict[str, int]:
        return self._rep.dims

    @property
    def components(self) -> dict[str, np.ndarray]:
        return dict(self._components)

    def component(self, node: str) -> np.ndarray:
        return self._components[str(node)]

    def reconstruct(self) -> QuiverSignal:
        """Inverse transform back to the block signal."""
        return QuiverSignal(self._rep, dict(self._components))

    def filter_diagonal(self, element: FilterElement) -> "FourierDecomposition":
        """Apply a filter supported on trivial paths: scale each type by its coefficient."""
        if element.quiver != self._rep.quiver:
            raise MismatchError("filter belongs to a different quiver")
        for path, _ in element.sorted_terms():
            if not path.is_trivial:
                raise ValidationError(
                    "diagonal filtering needs a filter supported on trivial paths"
                )
        scaled = {
            node: element.coefficient(self._rep.quiver.trivial_path(node)) * self._components[node]
            for node in self._rep.quiver.nodes
        }
        return FourierDecomposition(self._rep, scaled)

    def __repr__(self) -> str:
        return f"FourierDecomposition(multiplicities={self.multiplicities})"


def fourier_decompose(rep: Representation, signal: QuiverSignal) -> FourierDecomposition:
    """Fourier transform of a signal over a semisimple representation.

    Raises :class:`NotSemisimpleError` (naming the offending arrow and its
    norm) when an arrow map is nonzero; barcode or generic decomposition are
    the tools for that case.
    """
    if not rep.quiver.is_acyclic():
        raise QuiverStructureError(
            "Fourier decomposition supports acyclic quivers only (cycles admit "
            "simple modules beyond the node simples)"
        )
    arrow_id, norm = _worst_arrow(rep)
    if norm > SEMISIMPLE_TOL:
        raise NotSemisimpleError(arrow_id, norm)
    if signal.rep is not rep:
        raise MismatchError("signal belongs to a different representation")
    return FourierDecomposition(rep, signal.blocks)
