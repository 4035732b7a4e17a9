import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import shape_and_weights, shapes_up_to, small_shapes
from qtl.matchings import (DOWN, UP, LowerMatch, a_minus, a_plus, enumerate_lcm,
                           enumerate_olcm, leq_match, lm_of_match, match_from_weights,
                           match_of_kernel, n_of_weights, render, rn_of_match,
                           unmatched_arrows, weights_of_match)

FIG_SHAPE = (4, 3, 3, 4)
FIG_WEIGHTS = (3, 1, 1, 2)


def brute_lcm(shape):
    """Every arc set accepted by the validator, from all subsets of pairs."""
    n = sum(shape)
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    found = set()

    def extend(start, arcs, used):
        try:
            LowerMatch(shape, arcs)
        except ValueError:
            pass
        else:
            found.add(frozenset(arcs))
        for i in range(start, len(pairs)):
            p, q = pairs[i]
            if p in used or q in used:
                continue
            extend(i + 1, arcs + [(p, q)], used | {p, q})

    extend(0, [], frozenset())
    return found


class TestEnumeration:
    def test_small(self):
        assert {m.arcs for m in enumerate_lcm((1, 1))} == {frozenset(), frozenset({(1, 2)})}
        assert [m.arcs for m in enumerate_lcm((1,))] == [frozenset()]
        assert len(enumerate_olcm((1, 1))) == 4

    @pytest.mark.parametrize("shape", shapes_up_to(5) + [(2, 2, 2)])
    def test_against_brute_force(self, shape):
        assert {m.arcs for m in enumerate_lcm(shape)} == brute_lcm(shape)

    @pytest.mark.parametrize("shape", shapes_up_to(5) + [(4, 3, 3, 4)])
    def test_oriented_count(self, shape):
        assert len(enumerate_olcm(shape)) == math.prod(d + 1 for d in shape)

    def test_validator(self):
        with pytest.raises(ValueError):
            LowerMatch((2,), [(1, 2)])                 # inside one box
        with pytest.raises(ValueError):
            LowerMatch((1, 1, 1, 1), [(1, 3), (2, 4)])  # crossing
        with pytest.raises(ValueError):
            LowerMatch((1, 1, 1), [(1, 3)])            # vertex 2 under an arc
        with pytest.raises(ValueError):
            LowerMatch((1, 1), [], ((1, DOWN), (2, UP)))


class TestBijection:
    def test_examples(self):
        M = match_from_weights((1, 1), (1, 0))
        assert M.arcs == {(1, 2)} and M.unmatched() == []
        M = match_from_weights((1, 1), (0, 1))
        assert M.arcs == frozenset()
        assert dict(M.orientation) == {1: UP, 2: DOWN}
        assert match_from_weights((3,), (2,)).arcs == frozenset()

    def test_figure_data(self):
        M = match_from_weights(FIG_SHAPE, FIG_WEIGHTS)
        r, n = rn_of_match(M)
        assert r == (3, 1, 1, 0)
        assert n == (4, 1, 1, 3)
        assert tuple(b - a for a, b in zip(r, n)) == (1, 0, 0, 3)
        assert lm_of_match(M.unoriented()) == ((3, 1, 1, 0), (1, 0, 0, 3))

    @pytest.mark.parametrize("shape", shapes_up_to(5) + [FIG_SHAPE])
    def test_bijection(self, shape):
        images = set()
        for a in itertools.product(*(range(d + 1) for d in shape)):
            M = match_from_weights(shape, a)
            assert weights_of_match(M) == a
            images.add(M)
        assert images == set(enumerate_olcm(shape))

    @given(shape_and_weights(6, 4))
    def test_down_count_and_kernel(self, sw):
        shape, a = sw
        M = match_from_weights(shape, a)
        _, downs = unmatched_arrows(M)
        assert len(M.arcs) + len(downs) == sum(a)
        # n depends on the arcs only; forcing free vertices down keeps the arcs
        n = n_of_weights(shape, a)
        assert match_of_kernel(shape, n).arcs == M.arcs
        assert match_from_weights(shape, n).arcs == M.arcs

    def test_rn_statistics(self):
        empty = LowerMatch((2, 1), [])
        assert rn_of_match(empty) == ((0, 0), (2, 1))
        assert lm_of_match(LowerMatch((1, 1), [])) == ((0, 0), (1, 1))
        assert lm_of_match(LowerMatch((1, 1), [(1, 2)])) == ((1, 0), (0, 0))


class TestOrderAndMoves:
    def test_leq(self):
        empty = LowerMatch((1, 1), [])
        arc = LowerMatch((1, 1), [(1, 2)])
        assert leq_match(empty, arc)
        assert leq_match(arc, arc)
        assert not leq_match(arc, empty)

    def test_examples(self):
        assert a_plus((1, 1), (0, 0)) == (0, 1)
        assert a_plus((1, 1), (1, 0)) is None
        assert a_minus((1, 1), (1, 1)) == (0, 1)

    @given(shape_and_weights(6, 4))
    def test_toggles_invert(self, sw):
        shape, a = sw
        up = a_plus(shape, a)
        if up is not None:
            assert sum(up) == sum(a) + 1
            assert a_minus(shape, up) == a
            assert match_from_weights(shape, up).arcs == match_from_weights(shape, a).arcs
        down = a_minus(shape, a)
        if down is not None:
            assert a_plus(shape, down) == a


class TestRender:
    def test_figure(self):
        text = render(match_from_weights(FIG_SHAPE, FIG_WEIGHTS))
        assert text.splitlines() == [
            "[^vvv][^^v][^^v][^^vv]",
            "[|(((][))(][))(][)|||]",
            "arcs: 2-9, 3-6, 4-5, 7-8, 10-11",
        ]

    def test_single_arc(self):
        assert render(match_from_weights((1, 1), (1, 0))).splitlines()[-1] == "arcs: 1-2"

    def test_json(self):
        M = match_from_weights((1, 1), (0, 1))
        assert M.to_json() == {"shape": [1, 1], "arcs": [], "orientation": {"1": "u", "2": "d"}}
