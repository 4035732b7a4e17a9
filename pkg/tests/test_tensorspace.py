import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import shapes_up_to, small_shapes
from qtl.qlaurent import ONE, ZERO, Q, monomial, qint
from qtl.tensorspace import (BAR_DELTA, DELTA, TensorVector, act_tensor, act_word_tensor,
                             block_order, compose, compositions, elementary, from_dual,
                             op_add, op_equal, operator_matrix, pair_reversed, prefix_leq,
                             prefix_less, prefix_sums, reverse, sigma_tensor, to_dual)
from qtl.uqsl2 import act, basis_vector


def factorwise(gen, shape, w, coproduct):
    """Generator on a pure tensor using single-factor actions only."""
    k = len(shape)
    vs = [basis_vector(d, d - 2 * x) for d, x in zip(shape, w)]
    sgn = 1 if coproduct == DELTA else -1
    out = {}
    if gen in ("K", "Ki"):
        e = sum(d - 2 * x for d, x in zip(shape, w))
        return {tuple(w): monomial(e if gen == "K" else -e)}
    for i in range(k):
        img = act(gen, vs[i])
        for m, c in img.coeffs.items():
            s = c
            for j in range(k):
                wt = shape[j] - 2 * w[j]
                if gen == "E" and j < i:
                    s = s * monomial(sgn * wt)
                if gen == "F" and j > i:
                    s = s * monomial(-sgn * wt)
            w2 = tuple(w[:i]) + ((shape[i] - m) // 2,) + tuple(w[i + 1:])
            out[w2] = out.get(w2, ZERO) + s
    return {x: c for x, c in out.items() if c}


class TestOrder:
    def test_examples(self):
        assert prefix_leq((0, 1), (1, 0))
        assert prefix_leq((1, 0), (1, 0))
        assert not prefix_leq((1, 0), (0, 1))
        assert prefix_sums((1, 2, 0)) == (1, 3, 3)

    @given(st.data())
    def test_antisymmetric(self, data):
        shape = data.draw(small_shapes(5, 4))
        total = data.draw(st.integers(0, sum(shape)))
        comps = compositions(shape, total)
        a = data.draw(st.sampled_from(comps))
        b = data.draw(st.sampled_from(comps))
        if prefix_leq(a, b) and prefix_leq(b, a):
            assert a == b
        assert prefix_less(a, b) == (prefix_leq(a, b) and a != b)

    def test_block_order_is_linear_extension(self):
        for shape in [(1, 1, 1), (2, 1, 2), (3, 2)]:
            for total in range(sum(shape) + 1):
                order = block_order(shape, total)
                assert sorted(order) == sorted(compositions(shape, total))
                for i, a in enumerate(order):
                    for b in order[i + 1:]:
                        assert not prefix_less(a, b)

    def test_compositions_count(self):
        shape = (2, 1, 3)
        assert len(compositions(shape)) == 3 * 2 * 4
        assert all(sum(c) == 2 for c in compositions(shape, 2))


class TestAction:
    def test_examples(self):
        top = elementary((1, 1), (0, 0))
        assert act_tensor("E", top) == TensorVector((1, 1))
        expected = TensorVector((1, 1), {(1, 0): monomial(-1), (0, 1): ONE})
        assert act_tensor("F", top) == expected
        for w in compositions((2, 1, 1)):
            v = elementary((2, 1, 1), w)
            assert act_tensor("K", v) == v.scale(monomial(4 - 2 * sum(w)))

    @pytest.mark.parametrize("shape", [(1, 1), (2, 1), (1, 2, 1), (3, 0, 2)])
    @pytest.mark.parametrize("coproduct", [DELTA, BAR_DELTA])
    def test_matches_factorwise(self, shape, coproduct):
        for gen in ("E", "F", "K", "Ki"):
            for w in compositions(shape):
                got = act_tensor(gen, elementary(shape, w), coproduct).coeffs
                assert got == factorwise(gen, shape, w, coproduct)

    @pytest.mark.parametrize("shape", shapes_up_to(6, max_parts=3))
    def test_relations(self, shape):
        for cop in (DELTA, BAR_DELTA):
            E, F, K, Ki = (operator_matrix(g, shape, cop) for g in ("E", "F", "K", "Ki"))
            ident = {c: {c: ONE} for c in K}
            assert op_equal(compose(K, Ki), ident)
            scale = lambda op, s: {c: {r: s * v for r, v in col.items()} for c, col in op.items()}
            assert op_equal(compose(K, E), scale(compose(E, K), monomial(2)))
            assert op_equal(compose(K, F), scale(compose(F, K), monomial(-2)))
            comm = scale(op_add(compose(E, F), compose(F, E), -1), Q - monomial(-1))
            assert op_equal(comm, op_add(K, Ki, -1))

    @given(small_shapes(5, 3), st.sampled_from(["E", "F"]), st.data())
    def test_sigma_swaps_coproducts(self, shape, gen, data):
        w = data.draw(st.sampled_from(compositions(shape)))
        v = elementary(shape, w).scale(Q + monomial(-3))
        assert sigma_tensor(act_tensor(gen, v, DELTA)) == act_tensor(gen, sigma_tensor(v), BAR_DELTA)
        assert sigma_tensor(act_tensor("K", v)) == act_tensor("Ki", sigma_tensor(v))

    def test_word(self):
        v = elementary((1, 1), (0, 0))
        assert act_word_tensor(("E", "F"), v) == act_tensor("E", act_tensor("F", v))


class TestPairingAndDuals:
    def test_examples(self):
        u = elementary((1, 1), (0, 1))
        v_match = TensorVector((1, 1), {(1, 0): ONE}, dual=True)
        v_miss = TensorVector((1, 1), {(0, 1): ONE}, dual=True)
        assert pair_reversed(u, v_match) == ONE
        assert pair_reversed(u, v_miss) == ZERO

    def test_sigma_and_reverse(self):
        v = elementary((1, 1), (0, 0)).scale(Q)
        assert sigma_tensor(v) == elementary((1, 1), (0, 0)).scale(monomial(-1))
        x = TensorVector((2, 1), {(1, 0): Q, (0, 1): ONE})
        assert reverse(x).shape == (1, 2)
        assert reverse(reverse(x)) == x

    def test_dual_roundtrip(self):
        x = TensorVector((2, 2), {(1, 1): Q, (2, 0): ONE})
        assert from_dual(to_dual(x)) == x
        assert to_dual(x).coeffs[(1, 1)] == Q * qint(2) * qint(2)

    def test_invalid(self):
        with pytest.raises(ValueError):
            TensorVector((1, 1), {(2, 0): ONE})
        with pytest.raises(ValueError):
            operator_matrix("E", (1,), "sideways")
