from fractions import Fraction

import numpy as np
import pytest

import quiversig as qs
from quiversig import (
    FilteredComplex,
    boundary_matrix,
    homology_basis,
    persistence_barcode,
    persistence_representation,
)
from helpers import random_filtered_complex
from oracles import fraction_rank


def betti_by_rank_nullity(complex_, k, level):
    """Oracle: dim C_k - rank d_k - rank d_{k+1} with an independent elimination."""
    n_chain = len(complex_.simplices_of(k, level))
    rank_k = 0
    if k >= 1:
        d_k = boundary_matrix(complex_, k, level)
        rank_k = fraction_rank(d_k.rows, d_k.ncols)
    d_k1 = boundary_matrix(complex_, k + 1, level)
    rank_k1 = fraction_rank(d_k1.rows, d_k1.ncols)
    return n_chain - rank_k - rank_k1


class TestConstruction:
    def test_triangle(self, triangle):
        assert triangle.n == 2
        assert len(triangle) == 7
        keys = [(s.level, s.dim, s.verts) for s in triangle.simplices]
        assert keys == sorted(keys)

    def test_monotonicity_violation(self):
        with pytest.raises(qs.ValidationError, match="after its"):
            FilteredComplex([(["u"], 0), (["v"], 1), (["u", "v"], 0)])

    def test_missing_face(self):
        with pytest.raises(qs.ValidationError, match="missing face"):
            FilteredComplex([(["u"], 0), (["u", "v"], 1)])

    def test_duplicate_simplex(self):
        with pytest.raises(qs.ValidationError, match="duplicate"):
            FilteredComplex([(["u"], 0), (["u"], 1)])

    def test_declared_n_extends_filtration(self):
        c = FilteredComplex([(["u"], 0)], n=2)
        assert c.n == 2
        rep = persistence_representation(c, 0)
        assert rep.dims == {"0": 1, "1": 1, "2": 1}

    def test_declared_n_below_levels(self):
        with pytest.raises(qs.ValidationError, match="below"):
            FilteredComplex([(["u"], 0), (["v"], 3), (["u", "v"], 3)], n=1)

    def test_empty_complex(self):
        c = FilteredComplex([])
        assert c.n == 0 and len(c) == 0
        rep = persistence_representation(c, 0)
        assert rep.dims == {"0": 0}


class TestBoundary:
    def test_single_edge_column(self):
        c = FilteredComplex([(["u"], 0), (["v"], 0), (["u", "v"], 0)])
        d1 = boundary_matrix(c, 1, 0)
        assert d1.rows == [[Fraction(-1)], [Fraction(1)]]

    def test_degree_zero_rejected(self, triangle):
        with pytest.raises(qs.ValidationError):
            boundary_matrix(triangle, 0, 2)

    def test_dd_zero_on_triangle(self, triangle):
        d1 = boundary_matrix(triangle, 1, 2)
        d2 = boundary_matrix(triangle, 2, 2)
        product = d1.matmul(d2)
        assert all(x == 0 for row in product.rows for x in row)

    def test_triangle_rank_at_level_one(self, triangle):
        d1 = boundary_matrix(triangle, 1, 1)
        assert fraction_rank(d1.rows, d1.ncols) == 2

    def test_empty_chain_groups(self, triangle):
        d5 = boundary_matrix(triangle, 5, 2)
        assert d5.shape == (0, 0)


class TestHomologyBasis:
    def test_representatives_are_cycles(self, triangle):
        for level in range(3):
            basis = homology_basis(triangle, 1, level)
            if basis.dimension == 0:
                continue
            d1 = boundary_matrix(triangle, 1, level)
            for rep_vec in basis.representatives:
                image = d1.mul_vec(list(rep_vec))
                assert all(x == 0 for x in image)

    def test_betti_numbers_of_triangle(self, triangle):
        assert [homology_basis(triangle, 0, lv).dimension for lv in range(3)] == [3, 1, 1]
        assert [homology_basis(triangle, 1, lv).dimension for lv in range(3)] == [0, 1, 0]


class TestPersistence:
    def test_triangle_degree_zero(self, triangle):
        rep = persistence_representation(triangle, 0)
        assert rep.dims == {"0": 3, "1": 1, "2": 1}
        assert np.linalg.matrix_rank(rep.map("i0")) == 1
        assert np.linalg.matrix_rank(rep.map("i1")) == 1
        assert persistence_barcode(triangle, 0).multiplicities == {(1, 3): 1, (1, 1): 2}

    def test_triangle_degree_one(self, triangle):
        rep = persistence_representation(triangle, 1)
        assert rep.dims == {"0": 0, "1": 1, "2": 0}
        assert persistence_barcode(triangle, 1).multiplicities == {(2, 2): 1}

    def test_single_vertex(self):
        c = FilteredComplex([(["p"], 0)])
        assert persistence_barcode(c, 0).multiplicities == {(1, 1): 1}

    def test_two_components_merging(self):
        c = FilteredComplex([(["u"], 0), (["v"], 0), (["u", "v"], 1)])
        assert persistence_barcode(c, 0).multiplicities == {(1, 2): 1, (1, 1): 1}

    def test_barcode_bookkeeping(self, triangle):
        for k in (0, 1):
            bc = persistence_barcode(triangle, k)
            dims = bc.dims_at()
            for level in range(triangle.n + 1):
                assert dims[level + 1] == homology_basis(triangle, k, level).dimension


class TestRandomizedInvariants:
    @pytest.mark.parametrize("seed", range(10))
    def test_dd_zero_and_rank_nullity(self, seed):
        rng = np.random.default_rng(1000 + seed)
        c = random_filtered_complex(rng)
        max_dim = max((s.dim for s in c.simplices), default=0)
        for level in range(c.n + 1):
            for k in range(1, max_dim + 1):
                d_k = boundary_matrix(c, k, level)
                d_k1 = boundary_matrix(c, k + 1, level)
                if d_k.ncols and d_k1.ncols:
                    product = d_k.matmul(d_k1)
                    assert all(x == 0 for row in product.rows for x in row)
            for k in range(0, max_dim + 1):
                assert homology_basis(c, k, level).dimension == betti_by_rank_nullity(c, k, level)

    @pytest.mark.parametrize("seed", range(6))
    def test_persistence_locality(self, seed):
        # bars dead before the final step survive new top-level simplices intact
        rng = np.random.default_rng(2000 + seed)
        c = random_filtered_complex(rng, max_simplices=10)
        verts = sorted({s.verts[0] for s in c.simplices if s.dim == 0})
        extended_simplices = [(list(s.verts), s.level) for s in c.simplices]
        extended_simplices.append((["zz"], c.n + 1))
        present = {s.verts for s in c.simplices}
        for i, u in enumerate(verts):
            for v in verts[i + 1:]:
                if (u, v) not in present:
                    extended_simplices.append(([u, v], c.n + 1))
                    break
            else:
                continue
            break
        extended = FilteredComplex(extended_simplices)
        assert extended.n == c.n + 1
        for k in (0, 1):
            old_bc = persistence_barcode(c, k)
            new_bc = persistence_barcode(extended, k)
            dead_old = {iv: m for iv, m in old_bc.multiplicities.items() if iv[1] <= c.n}
            dead_new = {iv: m for iv, m in new_bc.multiplicities.items() if iv[1] <= c.n}
            assert dead_old == dead_new
            # anchor both barcodes to the independent rank-nullity oracle
            for bc, complex_ in ((old_bc, c), (new_bc, extended)):
                dims = bc.dims_at()
                for level in range(complex_.n + 1):
                    assert dims[level + 1] == betti_by_rank_nullity(complex_, k, level)


def test_exactness_of_induced_maps(triangle):
    # induced map entries come from exact solves; the merge map of the
    # triangle components is a 1x3 row of ones in the chosen vertex basis
    rep = persistence_representation(triangle, 0)
    assert np.array_equal(rep.map("i0"), np.ones((1, 3)))
