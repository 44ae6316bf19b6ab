import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cptlab.acts import (
    Act,
    SpaceMismatch,
    StateSpace,
    have_disjoint_supports,
    is_comonotonic,
    is_cosigned,
    negative_part,
    positive_part,
    support,
)
from strategies import SPACES, act_strategy, n_and_act


def comonotone_by_ordering(f, g):
    """Independent check: some state ordering sorts both acts nondecreasingly."""
    n = len(f)
    for perm in itertools.permutations(range(n)):
        if all(f[perm[k]] <= f[perm[k + 1]] and g[perm[k]] <= g[perm[k + 1]] for k in range(n - 1)):
            return True
    return False


def A(*xs):
    return Act(SPACES[len(xs)], xs)


class TestStateSpace:
    def test_labels_distinct(self):
        with pytest.raises(ValueError):
            StateSpace(["a", "a"])

    @pytest.mark.parametrize("n", [0, 17])
    def test_size_bounds(self, n):
        with pytest.raises(ValueError):
            StateSpace(f"s{i}" for i in range(n))

    def test_masks(self):
        sp = StateSpace(["x", "y", "z"])
        assert sp.mask_of(["x", "z"]) == 0b101
        assert sp.label(0b110) == "y,z"
        assert sp.complement(0b001) == 0b110
        with pytest.raises(KeyError):
            sp.mask_of(["w"])


class TestAct:
    def test_length_checked(self):
        with pytest.raises(ValueError):
            Act(SPACES[3], (1, 2))

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_non_finite_rejected(self, bad):
        with pytest.raises(ValueError):
            Act(SPACES[2], (1.0, bad))

    def test_arithmetic_space_mismatch(self):
        with pytest.raises(SpaceMismatch):
            A(1, 2) + Act(StateSpace(["a", "b"]), (1, 2))


class TestSignParts:
    def test_hedging_example(self):
        gh = A(-3, 11, -1)
        assert positive_part(gh).payoffs == (0, 11, 0)
        assert negative_part(gh).payoffs == (3, 0, 1)

    def test_nonnegative(self):
        f = A(3, 4, 4)
        assert positive_part(f) == f
        assert negative_part(f).payoffs == (0, 0, 0)

    def test_two_states(self):
        assert positive_part(A(-2, 5)).payoffs == (0, 5)
        assert negative_part(A(-2, 5)).payoffs == (2, 0)

    @given(n_and_act())
    def test_decomposition(self, f):
        fp, fm = positive_part(f), negative_part(f)
        assert fp.is_nonnegative and fm.is_nonnegative
        assert (fp - fm) == f
        assert all(min(a, b) == 0 for a, b in zip(fp, fm))

    @given(n_and_act())
    def test_parts_comonotone(self, f):
        assert is_comonotonic(positive_part(f), -negative_part(f))


class TestSupport:
    def test_examples(self):
        assert support(A(-3, 0, -1)) == 0b101
        assert support(A(0, 0, 0)) == 0
        assert support(A(3, 4, 4)) == 0b111

    def test_exact_zero(self):
        assert support(A(1e-300, 0.0)) == 0b01


class TestComonotonic:
    def test_example_acts(self):
        f, g, h = A(3, 4, 4), A(0, 11, 0), A(-3, 0, -1)
        for x, y in itertools.combinations([f, g, h], 2):
            assert is_comonotonic(x, y)

    def test_opposite(self):
        assert not is_comonotonic(A(1, 0), A(0, 1))

    @given(n_and_act(), st.floats(-5, 5))
    def test_constant(self, f, c):
        assert is_comonotonic(f, Act.constant(f.space, c))

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatch):
            is_comonotonic(A(1, 2), A(1, 2, 3))

    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(act_strategy(n, -3, 3), act_strategy(n, -3, 3))))
    def test_matches_common_ordering(self, pair):
        f, g = pair
        assert is_comonotonic(f, g) == comonotone_by_ordering(f.payoffs, g.payoffs)
        assert is_comonotonic(f, g) == is_comonotonic(g, f)
        assert is_comonotonic(f, f)

    def test_exhaustive_opposite_sign_disjoint(self):
        levels = range(0, 3)
        sp = SPACES[3]
        for fp in itertools.product(levels, repeat=3):
            for gp in itertools.product(levels, repeat=3):
                f, g = Act(sp, fp), -Act(sp, gp)
                if have_disjoint_supports(f, g):
                    assert is_comonotonic(f, g)
                    assert is_cosigned(f, g)


class TestCosigned:
    def test_examples(self):
        f, g, h = A(3, 4, 4), A(0, 11, 0), A(-3, 0, -1)
        assert not is_cosigned(f, h)
        assert not is_cosigned(h, f)
        assert is_cosigned(g, h)
        assert is_cosigned(A(1, 2, 3), A(0, 0, 5))

    def test_not_comonotone(self):
        assert not is_cosigned(A(1, 0), A(0, 1))


class TestDisjointSupports:
    def test_examples(self):
        f, g, h = A(3, 4, 4), A(0, 11, 0), A(-3, 0, -1)
        assert have_disjoint_supports(g, h)
        assert not have_disjoint_supports(f, h)
        assert have_disjoint_supports(A(0, 0, 0), f)


def test_fraction_payoffs_exact():
    f = Act(SPACES[2], (Fraction(1, 3), Fraction(-2, 3)))
    assert negative_part(f).payoffs == (0, Fraction(2, 3))
