import numpy as np
import pytest

import quiversig as qs
from quiversig import FilterElement, QuiverSignal, Representation, direct_sum, unit

from helpers import FIG1_DIMS, fig1_representation, random_signal


class TestConstruction:
    def test_fig1_random_maps_valid(self, fig1_rep):
        assert fig1_rep.total_dim == 10
        assert fig1_rep.dims == FIG1_DIMS

    def test_a2_block_identity(self, a2):
        # (r+t) x (r+s) with an identity block in the corner
        phi = np.zeros((3, 4))
        phi[:2, :2] = np.eye(2)
        rep = Representation(a2, {"1": 4, "2": 3}, {"a1_2": phi})
        assert rep.map("a1_2").shape == (3, 4)

    def test_shape_mismatch(self, a2):
        with pytest.raises(qs.ValidationError, match="a1_2"):
            Representation(a2, {"1": 2, "2": 3}, {"a1_2": np.zeros((2, 2))})

    def test_missing_matrix(self, a2):
        with pytest.raises(qs.ValidationError, match="missing matrix"):
            Representation(a2, {"1": 1, "2": 1}, {})

    def test_missing_dimension(self, a2):
        with pytest.raises(qs.ValidationError, match="missing dimension"):
            Representation(a2, {"1": 1}, {"a1_2": np.zeros((1, 1))})

    def test_unknown_keys(self, a2):
        with pytest.raises(qs.ValidationError, match="unknown node"):
            Representation(a2, {"1": 1, "2": 1, "9": 1}, {"a1_2": np.zeros((1, 1))})
        with pytest.raises(qs.ValidationError, match="unknown arrow"):
            Representation(a2, {"1": 1, "2": 1},
                           {"a1_2": np.zeros((1, 1)), "zz": np.zeros((1, 1))})

    def test_zero_dimensional_nodes(self, a2):
        rep = Representation(a2, {"1": 0, "2": 2}, {"a1_2": np.zeros((2, 0))})
        assert rep.total_dim == 2
        assert rep.map("a1_2").shape == (2, 0)

    def test_matrices_are_read_only(self, fig1_rep):
        with pytest.raises(ValueError):
            fig1_rep.map("a12")[0, 0] = 7.0


class TestEvalPath:
    def test_trivial_is_identity(self, fig1_rep):
        m = fig1_rep.eval_path(fig1_rep.quiver.trivial_path("3"))
        assert np.array_equal(m, np.eye(2))

    def test_two_step_composite(self, fig1_rep):
        q = fig1_rep.quiver
        m = fig1_rep.eval_path(q.path(["a35", "a51"]))
        expected = fig1_rep.map("a51") @ fig1_rep.map("a35")
        assert np.allclose(m, expected, rtol=1e-12)

    def test_three_step_equals_triple_product(self, fig1_rep):
        q = fig1_rep.quiver
        m = fig1_rep.eval_path(q.path(["a34", "a41", "a12"]))
        expected = fig1_rep.map("a12") @ (fig1_rep.map("a41") @ fig1_rep.map("a34"))
        assert np.allclose(m, expected, rtol=1e-12)

    def test_foreign_path_rejected(self, fig1_rep):
        with pytest.raises(qs.MismatchError):
            fig1_rep.eval_path(qs.chain_quiver(2).path(["a1_2"]))


class TestApplyFilter:
    def test_golden_two_term_filter(self, fig1_rep):
        q = fig1_rep.quiver
        x = random_signal(fig1_rep, seed=5)
        c = FilterElement(q, {
            q.path(["a35", "a51"]): 1.0,
            q.path(["a34", "a41", "a12"]): 1.0,
        })
        y = fig1_rep.apply_filter(c, x)
        y1 = fig1_rep.map("a51") @ (fig1_rep.map("a35") @ x.block("3"))
        y2 = fig1_rep.map("a12") @ (fig1_rep.map("a41") @ (fig1_rep.map("a34") @ x.block("3")))
        assert np.allclose(y.block("1"), y1, rtol=1e-12)
        assert np.allclose(y.block("2"), y2, rtol=1e-12)
        for node in ("3", "4", "5"):
            assert np.array_equal(y.block(node), np.zeros(fig1_rep.dim(node)))

    def test_unit_acts_as_identity(self, fig1_rep):
        x = random_signal(fig1_rep, seed=6)
        y = fig1_rep.apply_filter(unit(fig1_rep.quiver), x)
        assert np.array_equal(y.flatten(), x.flatten())

    def test_matches_dense_shift_path(self, fig1_rep):
        # oracle: materialize the full operator and act on the flattened signal
        q = fig1_rep.quiver
        rng = np.random.default_rng(11)
        paths = q.enumerate_paths(2)
        for _ in range(10):
            chosen = rng.choice(len(paths), size=5, replace=False)
            c = FilterElement(q, [(paths[i], float(rng.integers(-3, 4))) for i in chosen])
            dense = sum(
                coeff * fig1_rep.shift_operator(p).matrix for p, coeff in c.sorted_terms()
            )
            x = random_signal(fig1_rep, seed=int(rng.integers(0, 1000)))
            expected = dense @ x.flatten() if len(c) else np.zeros(fig1_rep.total_dim)
            got = fig1_rep.apply_filter(c, x).flatten()
            assert np.allclose(got, expected, rtol=1e-12, atol=1e-12)

    def test_linearity(self, fig1_rep):
        q = fig1_rep.quiver
        rng = np.random.default_rng(3)
        paths = q.enumerate_paths(2)
        c1 = FilterElement(q, {paths[7]: 1.5, paths[20]: -0.5})
        c2 = FilterElement(q, {paths[9]: 2.0})
        x1, x2 = random_signal(fig1_rep, 1), random_signal(fig1_rep, 2)
        a, b = float(rng.standard_normal()), float(rng.standard_normal())

        lhs = fig1_rep.apply_filter(qs.add(c1, c2, a, b), x1).flatten()
        rhs = a * fig1_rep.apply_filter(c1, x1).flatten() + b * fig1_rep.apply_filter(c2, x1).flatten()
        assert np.allclose(lhs, rhs, rtol=1e-9)

        mixed = QuiverSignal(fig1_rep, {
            n: a * x1.block(n) + b * x2.block(n) for n in q.nodes
        })
        lhs = fig1_rep.apply_filter(c1, mixed).flatten()
        rhs = a * fig1_rep.apply_filter(c1, x1).flatten() + b * fig1_rep.apply_filter(c1, x2).flatten()
        assert np.allclose(lhs, rhs, rtol=1e-9)

    def test_product_action_composes(self, fig1_rep):
        q = fig1_rep.quiver
        b = FilterElement(q, {q.path(["a23"]): 2.0, q.trivial_path("1"): -1.0})
        a = FilterElement(q, {q.path(["a12"]): 1.0, q.path(["a22"]): 0.5})
        x = random_signal(fig1_rep, seed=8)
        via_product = fig1_rep.apply_filter(qs.multiply(b, a), x).flatten()
        via_stages = fig1_rep.apply_filter(b, fig1_rep.apply_filter(a, x)).flatten()
        assert np.allclose(via_product, via_stages, rtol=1e-9, atol=1e-12)

    def test_membership_mismatch(self, fig1_rep):
        other = fig1_representation(seed=99)
        x_other = random_signal(other, seed=1)
        with pytest.raises(qs.MismatchError):
            fig1_rep.apply_filter(unit(fig1_rep.quiver), x_other)


class TestShiftOperator:
    def test_trivial_path_partial_identity(self, fig1_rep):
        shift = fig1_rep.shift_operator(fig1_rep.quiver.trivial_path("1"))
        expected = np.zeros((10, 10))
        expected[:2, :2] = np.eye(2)
        assert np.array_equal(shift.matrix, expected)

    def test_homomorphism_on_pairs_up_to_len2(self, fig1_rep):
        q = fig1_rep.quiver
        paths = q.enumerate_paths(2)
        for p1 in paths:
            m1 = fig1_rep.shift_operator(p1).matrix
            for p2 in paths:
                m2 = fig1_rep.shift_operator(p2).matrix
                product = qs.concat(p2, p1)
                expected = (
                    fig1_rep.shift_operator(product).matrix
                    if product is not qs.ZERO
                    else np.zeros((10, 10))
                )
                scale = 1.0 + np.abs(expected).max()
                assert np.abs(m2 @ m1 - expected).max() <= 1e-9 * scale

    def test_single_block_structure(self, fig1_rep):
        offsets = fig1_rep.node_offsets()
        for p in fig1_rep.quiver.enumerate_paths(2):
            shift = fig1_rep.shift_operator(p)
            masked = shift.matrix.copy()
            h, t = p.head, p.tail
            masked[offsets[h]:offsets[h] + fig1_rep.dim(h),
                   offsets[t]:offsets[t] + fig1_rep.dim(t)] = 0.0
            assert not masked.any()


class TestDirectSum:
    def test_dims_add(self, fig1_rep):
        rep2 = fig1_representation(seed=5)
        total = direct_sum(fig1_rep, rep2)
        assert total.dims == {n: 2 * d for n, d in FIG1_DIMS.items()}

    def test_sum_with_zero_preserves_maps(self, fig1_rep):
        q = fig1_rep.quiver
        zero_rep = Representation(q, {n: 0 for n in q.nodes},
                                  {a.id: np.zeros((0, 0)) for a in q.arrows})
        total = direct_sum(fig1_rep, zero_rep)
        assert total.dims == fig1_rep.dims
        for a in q.arrows:
            assert np.array_equal(total.map(a.id), fig1_rep.map(a.id))

    def test_rep1_plus_rep3_on_a2(self, a2):
        rep1 = qs.interval_representation(a2, 1, 2)
        rep3 = qs.interval_representation(a2, 1, 1)
        total = direct_sum(rep1, rep3)
        assert total.dims == {"1": 2, "2": 1}
        assert np.array_equal(total.map("a1_2"), np.array([[1.0, 0.0]]))

    def test_block_diagonal(self, fig1_rep):
        rep2 = fig1_representation(seed=5)
        total = direct_sum(fig1_rep, rep2)
        m = total.map("a12")
        assert np.array_equal(m[:3, :2], fig1_rep.map("a12"))
        assert np.array_equal(m[3:, 2:], rep2.map("a12"))
        assert not m[:3, 2:].any() and not m[3:, :2].any()

    def test_quiver_mismatch(self, fig1_rep, a2):
        other = qs.interval_representation(a2, 1, 1)
        with pytest.raises(qs.MismatchError):
            direct_sum(fig1_rep, other)


class TestSignals:
    def test_block_length_validation(self, fig1_rep):
        blocks = {n: np.zeros(fig1_rep.dim(n)) for n in fig1_rep.quiver.nodes}
        blocks["2"] = np.zeros(5)
        with pytest.raises(qs.ValidationError, match="node '2'"):
            QuiverSignal(fig1_rep, blocks)

    def test_missing_block(self, fig1_rep):
        with pytest.raises(qs.ValidationError, match="missing signal block"):
            QuiverSignal(fig1_rep, {"1": np.zeros(2)})

    def test_flatten_roundtrip(self, fig1_rep):
        x = random_signal(fig1_rep, seed=4)
        again = QuiverSignal.from_flat(fig1_rep, x.flatten())
        for n in fig1_rep.quiver.nodes:
            assert np.array_equal(again.block(n), x.block(n))

    def test_flat_layout_is_node_order(self, fig1_rep):
        x = random_signal(fig1_rep, seed=4)
        flat = x.flatten()
        offsets = fig1_rep.node_offsets()
        for n in fig1_rep.quiver.nodes:
            seg = flat[offsets[n]:offsets[n] + fig1_rep.dim(n)]
            assert np.array_equal(seg, x.block(n))
