import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qtl.qlaurent import ONE, ZERO, Q, monomial, qbinom, qint, ratio
from qtl.uqsl2 import (GENERATORS, GeneratorWord, IrrepVector, act, act_word, basis_vector,
                       from_dual, omega, pair, sigma, to_dual, weights)


def apply_all(gen, d):
    return {m: act(gen, basis_vector(d, m)) for m in weights(d)}


def combo(vecs, d):
    out = IrrepVector(d)
    for v in vecs:
        out = out + v
    return out


class TestAction:
    def test_examples(self):
        assert act("E", basis_vector(3, 3)) == IrrepVector(3)
        assert act("E", basis_vector(2, 0)) == basis_vector(2, 2).scale(qint(2))
        for m in weights(4):
            assert act("K", basis_vector(4, m)) == basis_vector(4, m).scale(monomial(m))

    def test_bad_weight(self):
        with pytest.raises(ValueError):
            basis_vector(2, 1)
        with pytest.raises(ValueError):
            act("X", basis_vector(1, 1))

    @pytest.mark.parametrize("d", range(0, 9))
    def test_relations(self, d):
        for m in weights(d):
            v = basis_vector(d, m)
            ef = act("E", act("F", v))
            fe = act("F", act("E", v))
            lhs = (ef + fe.scale(-1)).scale(Q - monomial(-1))
            rhs = act("K", v) + act("Ki", v).scale(-1)
            assert lhs == rhs
            assert act("K", act("E", v)) == act("E", act("K", v)).scale(monomial(2))
            assert act("K", act("F", v)) == act("F", act("K", v)).scale(monomial(-2))
            assert act("K", act("Ki", v)) == v

    def test_dual_action(self):
        for d in range(6):
            for m in weights(d):
                if m == d:
                    continue
                v = IrrepVector(d, {m: ONE}, dual=True)
                assert act("E", v) == IrrepVector(d, {m + 2: qint((d - m) // 2)}, dual=True)


class TestPairing:
    def test_examples(self):
        assert pair(basis_vector(3, 3), basis_vector(3, 3)) == ONE
        assert pair(basis_vector(3, 3), basis_vector(3, 1)) == ZERO
        assert pair(basis_vector(2, 0), basis_vector(2, 0)) == monomial(-1) + Q

    def test_dual(self):
        assert to_dual(basis_vector(3, 3)).coeffs == {3: ONE}
        v0 = IrrepVector(2, {0: ONE}, dual=True)
        assert from_dual(v0) == basis_vector(2, 0).scale(ratio(ONE, qint(2)))
        v = IrrepVector(4, {2: Q, -2: ONE + Q})
        assert from_dual(to_dual(v)) == v

    @given(st.integers(0, 6), st.lists(st.sampled_from(GENERATORS), max_size=3), st.data())
    def test_adjoint(self, d, letters, data):
        m1 = data.draw(st.sampled_from(weights(d)))
        m2 = data.draw(st.sampled_from(weights(d)))
        x = GeneratorWord(tuple(letters))
        u, v = basis_vector(d, m1), basis_vector(d, m2)
        assert pair(act_word(x, u), v) == pair(u, act_word(omega(x), v))


class TestWords:
    def test_omega(self):
        assert omega(GeneratorWord(("E", "F"))).letters == ("E", "F")
        assert omega(GeneratorWord(("E", "K"))).letters == ("K", "F")
        assert omega(GeneratorWord(("K",))).letters == ("K",)

    def test_sigma(self):
        s = sigma(GeneratorWord(("K",), Q))
        assert s.letters == ("Ki",) and s.scalar == monomial(-1)

    @given(st.lists(st.sampled_from(GENERATORS), max_size=4))
    def test_involutions(self, letters):
        x = GeneratorWord(tuple(letters), Q + monomial(3))
        assert omega(omega(x)) == x
        assert sigma(sigma(x)) == x

    def test_act_word_order(self):
        v = basis_vector(2, 0)
        assert act_word(GeneratorWord(("E", "F")), v) == act("E", act("F", v))
        assert act_word(GeneratorWord((), monomial(2)), v) == v.scale(monomial(2))
