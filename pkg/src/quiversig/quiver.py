"""Directed multigraphs (quivers) with labelled arrows and composable paths.

Paths are stored in application order: ``arrows[0]`` is applied first, so a
path with arrows ``(a, b)`` runs tail(a) -> head(a) = tail(b) -> head(b).
Classical right-to-left composition notation writes the same path as ``b a``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MismatchError, ValidationError

__all__ = ["Arrow", "Quiver", "Path", "ZERO", "concat", "chain_quiver"]


@dataclass(frozen=True)
class Arrow:
    """Labelled arrow ``tail -> head``; parallel arrows differ only by id."""

    id: str
    tail: str
    head: str


class _Zero:
    """Marker for a concatenation whose endpoints do not meet."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "ZERO"


#: Distinguished zero result of :func:`concat`; not a :class:`Path`.
ZERO = _Zero()


def _as_arrow(entry) -> Arrow:
    if isinstance(entry, Arrow):
        return Arrow(str(entry.id), str(entry.tail), str(entry.head))
    try:
        aid, tail, head = entry
    except (TypeError, ValueError):
        raise ValidationError(f"cannot interpret {entry!r} as an arrow") from None
    return Arrow(str(aid), str(tail), str(head))


class Quiver:
    """Finite directed multigraph; loops and parallel arrows are allowed.

    Nodes and arrows keep their construction order, which fixes the
    deterministic ordering used by path enumeration and block layouts.
    Instances are immutable and hashable; structurally equal quivers compare
    equal.
    """

    __slots__ = ("_nodes", "_arrows", "_by_id", "_node_pos", "_out", "_hash")

    def __init__(self, nodes: Iterable, arrows: Iterable = ()):
        self._nodes = tuple(str(n) for n in nodes)
        self._arrows = tuple(_as_arrow(a) for a in arrows)

        self._node_pos = {}
        for i, n in enumerate(self._nodes):
            if n in self._node_pos:
                raise ValidationError(f"duplicate node id '{n}'")
            self._node_pos[n] = i

        self._by_id = {}
        self._out = {n: [] for n in self._nodes}
        for a in self._arrows:
            if a.id in self._by_id:
                raise ValidationError(f"duplicate arrow id '{a.id}'")
            if a.tail not in self._node_pos:
                raise ValidationError(f"arrow '{a.id}' has tail '{a.tail}' not in nodes")
            if a.head not in self._node_pos:
                raise ValidationError(f"arrow '{a.id}' has head '{a.head}' not in nodes")
            self._by_id[a.id] = a
            self._out[a.tail].append(a)

        self._hash = hash((self._nodes, self._arrows))

    @property
    def nodes(self) -> tuple[str, ...]:
        return self._nodes

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self._arrows

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self._by_id[str(arrow_id)]
        except KeyError:
            raise ValidationError(f"unknown arrow id '{arrow_id}'") from None

    def has_node(self, node: str) -> bool:
        return str(node) in self._node_pos

    def node_index(self, node: str) -> int:
        """Position of ``node`` in construction order."""
        try:
            return self._node_pos[str(node)]
        except KeyError:
            raise ValidationError(f"unknown node id '{node}'") from None

    def arrows_from(self, node: str) -> tuple[Arrow, ...]:
        self.node_index(node)
        return tuple(self._out[str(node)])

    def trivial_path(self, node: str) -> "Path":
        return Path(self, (), base=str(node))

    def path(self, arrow_ids: Sequence[str], base: str | None = None) -> "Path":
        """Build a path from arrow ids listed in application order.

        An empty id list needs ``base`` to name the node of the trivial path.
        """
        ids = [str(i) for i in arrow_ids]
        if not ids:
            if base is None:
                raise ValidationError("a trivial path needs a base node")
            return self.trivial_path(base)
        return Path(self, tuple(self.arrow(i) for i in ids))

    def is_acyclic(self) -> bool:
        """True iff the quiver has no directed cycle (loops count as cycles)."""
        WHITE, GREY, BLACK = 0, 1, 2
        color = {n: WHITE for n in self._nodes}
        for start in self._nodes:
            if color[start] != WHITE:
                continue
            stack = [(start, iter(self._out[start]))]
            color[start] = GREY
            while stack:
                node, it = stack[-1]
                advanced = False
                for a in it:
                    if color[a.head] == GREY:
                        return False
                    if color[a.head] == WHITE:
                        color[a.head] = GREY
                        stack.append((a.head, iter(self._out[a.head])))
                        advanced = True
                        break
                if not advanced:
                    color[node] = BLACK
                    stack.pop()
        return True

    def enumerate_paths(self, max_len: int) -> list["Path"]:
        """All paths of length 0..max_len.

        Ordered by length, then lexicographically on the tuple of arrow ids in
        application order; trivial paths come in node order.
        """
        if not isinstance(max_len, int) or max_len < 0:
            raise ValidationError(f"max_len must be a nonnegative integer, got {max_len!r}")
        out: list[Path] = [self.trivial_path(n) for n in self._nodes]
        level: list[Path] = list(out)
        for _ in range(max_len):
            level = [
                Path(self, p.arrows + (a,))
                for p in level
                for a in self._out[p.head]
            ]
            level.sort(key=lambda p: p.arrow_ids)
            out.extend(level)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self._nodes == other._nodes and self._arrows == other._arrows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Quiver({len(self._nodes)} nodes, {len(self._arrows)} arrows)"


class Path:
    """A composable sequence of arrows, or a trivial path at a single node.

    ``arrows`` is kept in application order; consecutive arrows must satisfy
    head(arrows[i]) == tail(arrows[i+1]).
    """

    __slots__ = ("_quiver", "_arrows", "_base", "_hash")

    def __init__(self, quiver: Quiver, arrows: Sequence[Arrow] = (), base: str | None = None):
        arrows = tuple(arrows)
        if arrows:
            for a in arrows:
                if quiver.arrow(a.id) != a:
                    raise ValidationError(f"arrow '{a.id}' does not belong to {quiver!r}")
            for left, right in zip(arrows, arrows[1:]):
                if left.head != right.tail:
                    raise ValidationError(
                        f"arrows '{left.id}' and '{right.id}' are not composable: "
                        f"head '{left.head}' != tail '{right.tail}'"
                    )
            base = None
        else:
            if base is None:
                raise ValidationError("a trivial path needs a base node")
            base = str(base)
            quiver.node_index(base)
        self._quiver = quiver
        self._arrows = arrows
        self._base = base
        self._hash = hash((quiver, tuple(a.id for a in arrows), base))

    @property
    def quiver(self) -> Quiver:
        return self._quiver

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self._arrows

    @property
    def arrow_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self._arrows)

    @property
    def base(self) -> str | None:
        return self._base

    @property
    def is_trivial(self) -> bool:
        return not self._arrows

    def __len__(self) -> int:
        return len(self._arrows)

    @property
    def tail(self) -> str:
        return self._base if not self._arrows else self._arrows[0].tail

    @property
    def head(self) -> str:
        return self._base if not self._arrows else self._arrows[-1].head

    def sort_key(self):
        """Canonical ordering key: by length, then arrow ids (node order for trivial)."""
        if not self._arrows:
            return (0, (self._quiver.node_index(self._base),))
        return (len(self._arrows), self.arrow_ids)

    def __mul__(self, earlier: "Path"):
        """``later * earlier``: apply ``earlier`` first (right-to-left product)."""
        return concat(self, earlier)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Path):
            return NotImplemented
        return (
            self._base == other._base
            and self.arrow_ids == other.arrow_ids
            and self._quiver == other._quiver
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self._arrows:
            return f"Path(e_{self._base})"
        return f"Path({' '.join(self.arrow_ids)}: {self.tail}->{self.head})"


def concat(later: Path, earlier: Path):
    """Concatenate two paths, applying ``earlier`` first.

    Returns :data:`ZERO` when tail(later) != head(earlier); trivial paths act
    as one-sided identities at their node.
    """
    if not isinstance(later, Path) or not isinstance(earlier, Path):
        raise ValidationError("concat expects two Path values")
    if later.quiver != earlier.quiver:
        raise MismatchError("cannot concatenate paths from different quivers")
    if later.tail != earlier.head:
        return ZERO
    if not later.arrows and not earlier.arrows:
        return earlier
    return Path(later.quiver, earlier.arrows + later.arrows)


def chain_quiver(n: int, prefix: str = "") -> Quiver:
    """Equioriented chain 1 -> 2 -> ... -> n with arrows ``a{i}_{i+1}``."""
    if not isinstance(n, int) or n < 0:
        raise ValidationError(f"chain length must be a nonnegative integer, got {n!r}")
    nodes = [f"{prefix}{i}" for i in range(1, n + 1)]
    arrows = [
        (f"a{i}_{i + 1}", f"{prefix}{i}", f"{prefix}{i + 1}")
        for i in range(1, n)
    ]
    return Quiver(nodes, arrows)
