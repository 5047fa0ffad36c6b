import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from subseq.bounds import hermite_hadamard_bounds, mean_and_height, ostrowski_check
from subseq.envelope import subadditive_envelope

EXAMPLE_SEQ = [4, 1, 0, -1, -4, -2, -3]


class TestMeanHeight:
    def test_example_sequence(self):
        mean, height = mean_and_height(EXAMPLE_SEQ)
        assert mean == pytest.approx(-5 / 7, abs=1e-15) and height == 8

    def test_constant(self):
        assert mean_and_height([1.5, 1.5, 1.5]) == (1.5, 0.0)

    def test_pair(self):
        assert mean_and_height([0, 1]) == (0.5, 1.0)

    def test_single_has_no_height(self):
        assert mean_and_height([4.0]) == (4.0, None)

    @given(st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=30))
    def test_height_is_pairwise_sup(self, xs):
        _, h = mean_and_height(xs)
        assert h == max(abs(a - b) for i, a in enumerate(xs) for j, b in enumerate(xs) if i != j)


class TestOstrowski:
    def test_examples(self):
        assert ostrowski_check(EXAMPLE_SEQ)
        assert ostrowski_check([2, 2])

    def test_random(self, rng):
        for _ in range(1000):
            assert ostrowski_check(rng.normal(0, 10, int(rng.integers(2, 50))))


class TestHermiteHadamard:
    def test_constant_even(self):
        rep = hermite_hadamard_bounds([2, 2, 2, 2])
        assert (rep.hh_lower, rep.mean, rep.hh_upper) == (1.0, 2.0, 5.0)
        assert rep.parity == "even" and rep.subadditive and rep.bracketed

    def test_example_sequence_odd(self):
        rep = hermite_hadamard_bounds(EXAMPLE_SEQ)
        assert rep.parity == "odd"
        assert rep.hh_lower == pytest.approx(-12 / 7, abs=1e-15)
        assert rep.mean == pytest.approx(-5 / 7, abs=1e-15)
        assert rep.hh_upper == 16
        assert rep.bracketed

    def test_additive_saturates(self):
        rep = hermite_hadamard_bounds([1, 2, 3, 4, 5])
        assert rep.hh_lower == rep.mean == rep.hh_upper == 3.0

    @pytest.mark.parametrize("a", [-3, -1, 1, 2, 7])
    @pytest.mark.parametrize("n", [1, 3, 9, 101])
    def test_additive_odd_exact(self, a, n):
        rep = hermite_hadamard_bounds(a * np.arange(1, n + 1))
        if n == 1:
            assert rep.hh_lower is None
        else:
            assert rep.hh_lower == rep.mean == rep.hh_upper

    def test_non_subadditive_not_asserted(self):
        rep = hermite_hadamard_bounds([1, 5, 2])
        assert not rep.subadditive and rep.bracketed is None
        assert rep.hh_lower is not None

    def test_single_term(self):
        rep = hermite_hadamard_bounds([3.0])
        assert rep.mean == 3.0 and rep.height is None and rep.parity is None

    def test_generated_subadditive(self, rng):
        for _ in range(1000):
            n = int(rng.integers(2, 201))
            u = subadditive_envelope(rng.uniform(-1, 1, n)).v.values
            rep = hermite_hadamard_bounds(u)
            assert rep.subadditive
            assert rep.hh_lower <= rep.mean + 1e-9 and rep.mean <= rep.hh_upper + 1e-9

    def test_upper_bound_intermediate_system(self, rng):
        # u_k <= k u_1, the step behind the upper bound
        for _ in range(200):
            u = subadditive_envelope(rng.uniform(-1, 1, 60)).v.values
            assert np.all(u <= np.arange(1, 61) * u[0] + 1e-9)
