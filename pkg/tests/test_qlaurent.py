import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qtl.qlaurent import (ONE, Q, ZERO, LaurentInt, PoleError, RatQ, bar, eval_at,
                          flag_cell_count, monomial, parse_scalar, qbinom, qfact,
                          qint, ratio)

laurents = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentInt)
nonzero = laurents.filter(bool)


def brute_cells(dd, aa):
    """Direct sum over 0/1 words with block sums aa of q^(2 * inversions)."""
    total = ZERO
    n = sum(dd)
    cuts = list(itertools.accumulate(dd, initial=0))
    for word in itertools.product((0, 1), repeat=n):
        if tuple(sum(word[cuts[i]:cuts[i + 1]]) for i in range(len(dd))) != tuple(aa):
            continue
        inv = sum(1 for i in range(n) for j in range(i) if word[j] == 0 and word[i] == 1)
        total = total + monomial(2 * inv)
    return total


def product_cells(dd, aa):
    """Closed product: q-binomials shifted by the zeros in earlier blocks."""
    total = ONE
    zeros = 0
    for d, a in zip(dd, aa):
        total = total * monomial(2 * a * zeros + a * (d - a)) * qbinom(d, a)
        zeros += d - a
    return total


class TestQInt:
    def test_small(self):
        assert qint(0) == ZERO
        assert qint(1) == ONE
        assert qint(3) == LaurentInt({-2: 1, 0: 1, 2: 1})

    def test_factorial_and_binomial(self):
        assert qfact(2) == LaurentInt({-1: 1, 1: 1})
        assert qbinom(5, 0) == ONE
        # frozen from the 0/1-word sum: q^-4 times sum over 2-subsets of 4
        assert qbinom(4, 2) == LaurentInt({-4: 1, -2: 1, 0: 2, 2: 1, 4: 1})
        assert qbinom(4, 2) == monomial(-4) * brute_cells((4,), (2,))

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            qint(-1)
        with pytest.raises(ValueError):
            qbinom(2, 3)

    @pytest.mark.parametrize("d", range(0, 9))
    def test_binomial_symmetries(self, d):
        for k in range(d + 1):
            assert qbinom(d, k) == qbinom(d, d - k)
            assert bar(qbinom(d, k)) == qbinom(d, k)
            assert eval_at(qbinom(d, k), 1) == math.comb(d, k)
            if k >= 1:
                assert qint(d) * qbinom(d - 1, k - 1) == qint(k) * qbinom(d, k)

    def test_at_one(self):
        assert eval_at(qint(2), 1) == 2
        assert eval_at(qint(3), 1) == 3
        assert eval_at(1 + Q * Q, 2) == 5


class TestBar:
    def test_examples(self):
        assert bar(monomial(2)) == monomial(-2)
        assert bar(qint(3)) == qint(3)
        assert bar(Q + monomial(3)) == monomial(-1) + monomial(-3)

    @given(laurents)
    def test_involution(self, x):
        assert bar(bar(x)) == x

    @given(laurents, laurents)
    def test_ring_map(self, x, y):
        assert bar(x * y) == bar(x) * bar(y)
        assert bar(x + y) == bar(x) + bar(y)


class TestArithmetic:
    @given(laurents, laurents, laurents)
    def test_ring_axioms(self, x, y, z):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x - x == ZERO
        assert x * ONE == x

    @given(laurents, st.integers(-3, 3))
    def test_eval_is_homomorphism(self, x, v):
        if v == 0:
            return
        y = x * x + Q
        assert eval_at(y, v) == eval_at(x, v) ** 2 + v

    @given(laurents, nonzero)
    def test_exact_division(self, x, y):
        assert (x * y).divexact(y) == x
        assert (x * y) / y == x

    @given(laurents, nonzero, nonzero)
    def test_ratio_normal_form(self, x, y, z):
        r = ratio(x * z, y * z)
        assert r == ratio(x, y)
        assert r * y == x
        if isinstance(r, RatQ):
            assert r.den.eval_at(0) != 0
            assert r.den.coeffs()[r.den.high] > 0

    @given(laurents, nonzero)
    def test_rational_field_ops(self, x, y):
        r = ratio(x, y)
        assert r + r == ratio(2 * x, y)
        assert r - r == ZERO
        if x:
            assert r * ratio(y, x) == ONE

    def test_pole(self):
        r = ratio(ONE, Q - ONE)
        assert isinstance(r, RatQ)
        with pytest.raises(PoleError):
            eval_at(r, 1)
        assert eval_at(r, 3) == Fraction(1, 2)

    def test_monomial_powers(self):
        assert Q ** -2 == monomial(-2)
        assert (Q + ONE) ** 2 == monomial(2) + 2 * Q + ONE


class TestText:
    def test_format(self):
        assert str(qint(3)) == "q^-2 + 1 + q^2"
        assert str(2 * Q) == "2*q"
        assert str(ZERO) == "0"

    @given(laurents)
    def test_roundtrip_laurent(self, x):
        assert parse_scalar(str(x)) == x

    @given(laurents, nonzero)
    def test_roundtrip_ratio(self, x, y):
        r = ratio(x, y)
        assert parse_scalar(str(r)) == r

    def test_garbage(self):
        with pytest.raises(ValueError):
            parse_scalar("q^^2")


class TestFlagCells:
    def test_examples(self):
        assert flag_cell_count((2,), (1,)) == ONE + monomial(2)
        assert flag_cell_count((3,), (0,)) == ONE
        assert eval_at(flag_cell_count((2, 1), (1, 1)), 1) == 2

    @pytest.mark.parametrize("dd", [(1, 1), (2, 1), (1, 2), (2, 2), (1, 1, 1), (3, 0, 2), (2, 1, 2)])
    def test_matches_word_sum_and_product(self, dd):
        for aa in itertools.product(*(range(d + 1) for d in dd)):
            c = flag_cell_count(dd, aa)
            assert c == brute_cells(dd, aa)
            assert c == product_cells(dd, aa)
            assert eval_at(c, 1) == math.prod(math.comb(d, a) for d, a in zip(dd, aa))

    def test_total_is_grassmannian(self):
        for n in range(1, 6):
            for a in range(n + 1):
                total = sum((flag_cell_count((1,) * n, w)
                             for w in itertools.product((0, 1), repeat=n) if sum(w) == a), ZERO)
                assert total == monomial(a * (n - a)) * qbinom(n, a)

    def test_invalid(self):
        with pytest.raises(ValueError):
            flag_cell_count((1,), (2,))
