"""Shared builders for the test suite."""
from __future__ import annotations

import numpy as np

import quiversig as qs

FIG1_ARROWS = [
    ("a12", "1", "2"), ("a23", "2", "3"), ("a22", "2", "2"), ("a34", "3", "4"),
    ("a35", "3", "5"), ("a44", "4", "4"), ("a41", "4", "1"), ("a51", "5", "1"),
]
FIG1_DIMS = {"1": 2, "2": 3, "3": 2, "4": 2, "5": 1}


def fig1_quiver() -> qs.Quiver:
    return qs.Quiver([str(i) for i in range(1, 6)], FIG1_ARROWS)


def fig1_representation(seed: int = 2024) -> qs.Representation:
    q = fig1_quiver()
    rng = np.random.default_rng(seed)
    maps = {a.id: rng.standard_normal((FIG1_DIMS[a.head], FIG1_DIMS[a.tail])) for a in q.arrows}
    return qs.Representation(q, FIG1_DIMS, maps)


def random_signal(rep: qs.Representation, seed: int = 0) -> qs.QuiverSignal:
    rng = np.random.default_rng(seed)
    return qs.QuiverSignal(rep, {n: rng.standard_normal(rep.dim(n)) for n in rep.quiver.nodes})


def random_invertible(rng, n: int) -> np.ndarray:
    if n == 0:
        return np.zeros((0, 0))
    while True:
        m = rng.standard_normal((n, n))
        if np.linalg.cond(m) < 1.0e4:
            return m


def conjugate(rep: qs.Representation, bases: dict[str, np.ndarray]) -> qs.Representation:
    """Change basis at every node: new arrow map is P_head @ M @ P_tail^{-1}."""
    inv = {n: np.linalg.inv(bases[n]) if bases[n].size else bases[n] for n in rep.quiver.nodes}
    maps = {
        a.id: bases[a.head] @ rep.map(a.id) @ inv[a.tail]
        for a in rep.quiver.arrows
    }
    return qs.Representation(rep.quiver, rep.dims, maps)


def random_conjugate(rep: qs.Representation, seed: int):
    rng = np.random.default_rng(seed)
    bases = {n: random_invertible(rng, rep.dim(n)) for n in rep.quiver.nodes}
    return conjugate(rep, bases), bases


def plant_interval_rep(rng, n: int, max_node_dim: int = 4):
    """Random interval multiset within per-node capacity, plus its direct sum.

    The returned multiset is ground truth for the barcode by construction.
    """
    quiver = qs.chain_quiver(n)
    capacity = [max_node_dim] * n
    bars: dict[tuple[int, int], int] = {}
    for _ in range(int(rng.integers(1, 2 * n + 2))):
        candidates = [
            (a, b)
            for a in range(1, n + 1)
            for b in range(a, n + 1)
            if all(capacity[i - 1] > 0 for i in range(a, b + 1))
        ]
        if not candidates:
            break
        a, b = candidates[int(rng.integers(0, len(candidates)))]
        bars[(a, b)] = bars.get((a, b), 0) + 1
        for i in range(a, b + 1):
            capacity[i - 1] -= 1
    rep = None
    for (a, b), mult in sorted(bars.items()):
        for _ in range(mult):
            piece = qs.interval_representation(quiver, a, b)
            rep = piece if rep is None else qs.direct_sum(rep, piece)
    return bars, rep


def triangle_complex() -> qs.FilteredComplex:
    """Three vertices at level 0, the edges at level 1, the face at level 2."""
    return qs.FilteredComplex([
        (["a"], 0), (["b"], 0), (["c"], 0),
        (["a", "b"], 1), (["b", "c"], 1), (["a", "c"], 1),
        (["a", "b", "c"], 2),
    ])


def random_filtered_complex(rng, max_simplices: int = 12, max_level: int = 3) -> qs.FilteredComplex:
    """Random small complex: vertex levels random, cofaces never precede faces."""
    n_verts = int(rng.integers(2, 5))
    verts = [chr(ord("a") + i) for i in range(n_verts)]
    levels: dict[tuple[str, ...], int] = {
        (v,): int(rng.integers(0, max_level + 1)) for v in verts
    }
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            if len(levels) >= max_simplices:
                break
            if rng.random() < 0.7:
                base = max(levels[(u,)], levels[(v,)])
                levels[(u, v)] = min(max_level, base + int(rng.integers(0, 2)))
    for i, u in enumerate(verts):
        for j, v in enumerate(verts[i + 1:], start=i + 1):
            for w in verts[j + 1:]:
                if len(levels) >= max_simplices:
                    break
                faces = [(u, v), (u, w), (v, w)]
                if all(f in levels for f in faces) and rng.random() < 0.5:
                    base = max(levels[f] for f in faces)
                    levels[(u, v, w)] = min(max_level, base + int(rng.integers(0, 2)))
    return qs.FilteredComplex([(list(k), lv) for k, lv in levels.items()])
