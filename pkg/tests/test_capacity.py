import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cptlab import example1
from cptlab.acts import StateSpace
from cptlab.capacity import (
    MissingSubset,
    NotMonotone,
    NotNormalized,
    additive,
    conjugate,
    distorted,
    is_concave,
    is_convex,
    random_capacity,
    unanimity,
    validate,
)
from strategies import SPACES, capacity_for


def brute_convex(v, sign=1, eps=1e-9):
    """All ordered subset pairs, no pruning."""
    size = len(v.table)
    t = v.table
    for a, b in itertools.product(range(size), repeat=2):
        if sign * (t[a | b] + t[a & b] - t[a] - t[b]) < -eps:
            return False
    return True


def gap(v, a, b):
    t = v.table
    return t[a | b] + t[a & b] - t[a] - t[b]


class TestValidate:
    def test_example_table(self):
        v = example1.capacity()
        assert v.value_of("s1") == Fraction(2, 3)
        assert v.value_of("s1", "s3") == 1

    def test_not_normalized(self):
        sp = SPACES[2]
        with pytest.raises(NotNormalized) as e:
            validate(sp, [0.1, 0.5, 0.5, 1])
        assert e.value.value == 0.1
        with pytest.raises(NotNormalized):
            validate(sp, [0, 0.5, 0.5, 0.9])

    def test_not_monotone_witness(self):
        sp = SPACES[3]
        table = [0, 0.5, 0.2, 0.4, 0.1, 0.6, 0.3, 1]
        with pytest.raises(NotMonotone) as e:
            validate(sp, table)
        assert (e.value.smaller, e.value.larger) == (0b001, 0b011)

    def test_missing(self):
        with pytest.raises(MissingSubset):
            validate(SPACES[2], {0: 0, 1: 0.5, 3: 1})
        with pytest.raises(MissingSubset):
            validate(SPACES[2], [0, 0.5, 1])

    def test_tolerance_snaps_endpoints(self):
        v = validate(SPACES[1], [1e-12, 1 - 1e-12], tol=1e-9)
        assert v.table == (0, 1.0)


class TestConjugate:
    def test_example(self):
        v = example1.capacity()
        assert conjugate(v).value_of("s1") == Fraction(1, 3)

    @given(st.integers(1, 5).flatmap(capacity_for))
    def test_involution_and_validity(self, v):
        w = conjugate(v)
        validate(v.space, w.table, tol=1e-12)
        assert conjugate(w).allclose(v, 1e-15)

    def test_additive_self_conjugate(self):
        p = additive(SPACES[3], [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)])
        assert conjugate(p) == p


class TestConvexity:
    def test_example_not_convex(self):
        v = example1.capacity()
        res = is_convex(v)
        assert not res
        a, b = res.witness
        assert gap(v, a, b) < 0
        assert res.witness == (0b001, 0b010)
        assert gap(v, 0b001, 0b010) == Fraction(-1, 3)
        assert brute_convex(v) is False

    def test_additive_both(self):
        p = additive(SPACES[3], [0.2, 0.3, 0.5])
        assert is_convex(p) and is_concave(p)

    def test_unanimity(self):
        u = unanimity(SPACES[3])
        assert is_convex(u)
        assert not is_concave(u)
        assert brute_convex(u) and not brute_convex(u, -1)

    def test_squared_uniform_convex(self):
        v = distorted(SPACES[4], [0.25] * 4, lambda p: p * p)
        assert is_convex(v)
        assert brute_convex(v)

    @given(st.integers(1, 4).flatmap(capacity_for))
    def test_matches_brute_force(self, v):
        assert bool(is_convex(v)) == brute_convex(v)
        assert bool(is_concave(v)) == brute_convex(v, -1)

    @given(st.integers(2, 4).flatmap(capacity_for))
    def test_duality(self, v):
        assert bool(is_convex(v)) == bool(is_concave(conjugate(v)))

    def test_witness_is_valid(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            v = random_capacity(SPACES[4], rng)
            res = is_convex(v)
            if not res:
                assert gap(v, *res.witness) < -1e-9


class TestRandomCapacity:
    @pytest.mark.parametrize("n", [1, 2, 3, 6])
    def test_valid(self, n):
        rng = np.random.default_rng(n)
        for _ in range(20):
            v = random_capacity(StateSpace.of_size(n), rng)
            validate(v.space, v.table)

    def test_reproducible(self):
        a = random_capacity(SPACES[3], np.random.default_rng(7))
        b = random_capacity(SPACES[3], np.random.default_rng(7))
        assert a == b
