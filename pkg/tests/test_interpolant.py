import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from subseq.core import DomainError, is_subadditive
from subseq.envelope import subadditive_envelope
from subseq.interpolant import (
    Interpolant,
    audit_grid,
    audit_subadditivity,
    dense_ratio_minimum,
    eval_interpolant,
    fekete_estimate,
    mediant_bounds,
    ratio_infimum,
)

from oracles import interp_reference

EXAMPLE_SEQ = [4, 1, 0, -1, -4, -2, -3]
knots = st.lists(st.floats(-50, 50, allow_nan=False), min_size=2, max_size=30)


class TestEval:
    @pytest.mark.parametrize(
        "u, x, expected",
        [([4, 1], 1.5, 2.5), ([4, 1, 0], 2, 1), ([4, 1, 0], 2.25, 0.75), ([4, 1, 0], 3, 0)],
    )
    def test_examples(self, u, x, expected):
        assert eval_interpolant(Interpolant.from_values(u), x) == expected

    @pytest.mark.parametrize("x", [0.999, 3.0001, math.nan])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            eval_interpolant(Interpolant.from_values([4, 1, 0]), x)

    def test_single_point(self):
        assert Interpolant.from_values([2.5])(1.0) == 2.5

    @given(knots)
    def test_exact_at_knots(self, u):
        f = Interpolant.from_values(u)
        n = np.arange(1, len(u) + 1, dtype=float)
        assert np.array_equal(f(n), np.asarray(u, dtype=float))

    @given(knots, st.floats(0, 1))
    def test_affine_between_knots(self, u, t):
        f = Interpolant.from_values(u)
        for n in range(1, len(u)):
            x = t * n + (1 - t) * (n + 1)
            expected = t * u[n - 1] + (1 - t) * u[n]
            assert f(x) == pytest.approx(expected, abs=1e-9 * (1 + abs(u[n - 1]) + abs(u[n])))

    def test_matches_numpy_interp(self, rng):
        u = rng.uniform(-3, 3, 25)
        x = rng.uniform(1, 25, 1000)
        np.testing.assert_allclose(Interpolant.from_values(u)(x), interp_reference(u, x), atol=1e-12)


class TestAudit:
    def test_example_sequence(self):
        res = audit_subadditivity(Interpolant.from_values(EXAMPLE_SEQ), 0.25)
        assert res.holds and res.max_deficit <= 0

    def test_not_subadditive(self):
        res = audit_subadditivity(Interpolant.from_values([1, 5, 2]), 0.1)
        assert not res.holds
        assert (res.x, res.y) == (1.0, 1.0)
        assert res.max_deficit == 3.0

    @pytest.mark.parametrize("c", [0.0, 0.5, 7.0])
    def test_constant_nonnegative(self, c):
        assert audit_subadditivity(Interpolant.from_values([c] * 6), 0.1).holds

    def test_single_point_vacuous(self):
        res = audit_subadditivity(Interpolant.from_values([3.0]), 0.1)
        assert res.holds and res.x is None

    def test_grid_contains_knots(self):
        g = audit_grid(5, 0.3)
        assert set(range(1, 6)) <= set(g.tolist())
        assert np.all(np.diff(g) > 0) and g[0] == 1 and g[-1] == 5

    def test_bad_step(self):
        with pytest.raises(DomainError):
            audit_subadditivity(Interpolant.from_values([1, 2]), 0)

    def test_subadditive_corpus(self, rng):
        for _ in range(200):
            u = subadditive_envelope(rng.uniform(-1, 1, int(rng.integers(2, 30)))).v
            res = audit_subadditivity(Interpolant(u), 0.1)
            assert res.max_deficit <= 1e-9

    def test_deficit_is_what_it_says(self, rng):
        u = rng.uniform(-1, 1, 12)
        f = Interpolant.from_values(u)
        res = audit_subadditivity(f, 0.2)
        assert res.max_deficit == pytest.approx(f(min(res.x + res.y, 12.0)) - f(res.x) - f(res.y))

    def test_sampling_subadditive_function_gives_subadditive_sequence(self, rng):
        for _ in range(50):
            u = subadditive_envelope(rng.uniform(-1, 1, 20)).v
            f = Interpolant(u)
            assert is_subadditive(f(np.arange(1.0, 21.0))).holds


class TestMediant:
    def test_examples(self):
        assert mediant_bounds(1, 2, 3, 4) == (0.5, 4 / 6, 0.75)
        assert mediant_bounds(2.5, 3, 2.5, 3) == (2.5 / 3, 2.5 / 3, 2.5 / 3)
        assert mediant_bounds(-1, 1, 1, 1) == (-1, 0, 1)

    def test_domain(self):
        with pytest.raises(DomainError):
            mediant_bounds(1, 0, 1, 1)

    def test_sandwich_random(self, rng):
        a = rng.uniform(-1e3, 1e3, (100_000, 2))
        b = rng.uniform(1e-3, 1e3, (100_000, 2))
        for (a1, a2), (b1, b2) in zip(a, b):
            lo, mid, hi = mediant_bounds(a1, b1, a2, b2)
            assert lo <= mid <= hi


class TestRatioInfimum:
    def test_example_sequence(self):
        res = ratio_infimum(Interpolant.from_values(EXAMPLE_SEQ))
        assert res == (-0.8, 5.0)
        assert dense_ratio_minimum(Interpolant.from_values(EXAMPLE_SEQ)) >= -0.8 - 1e-9

    def test_single(self):
        assert ratio_infimum(Interpolant.from_values([3.0])) == (3.0, 1.0)

    def test_constant_ratio(self):
        assert ratio_infimum(Interpolant.from_values([2, 4, 6])) == (2.0, 1.0)

    def test_random_against_dense_grid(self, rng):
        for _ in range(500):
            u = rng.uniform(-1, 1, int(rng.integers(1, 101)))
            f = Interpolant.from_values(u)
            res = ratio_infimum(f)
            ratios = u / np.arange(1, u.size + 1)
            assert abs(res.value - ratios.min()) <= 1e-12
            assert dense_ratio_minimum(f, 1e-3) >= res.value - 1e-9


class TestFekete:
    def test_affine_positive_offset(self):
        n = np.arange(1, 11)
        est = fekete_estimate(2 * n + 3)
        assert est.subadditive
        assert est.prefix_inf == pytest.approx(2.3) and est.argmin == 10
        assert np.all(np.diff(est.ratios) < 0)
        assert np.all(est.ratios > 2)

    def test_additive(self):
        est = fekete_estimate(np.arange(1, 21))
        assert est.prefix_inf == est.last_ratio == 1.0
        assert est.gap == 0

    def test_example_sequence(self):
        est = fekete_estimate(EXAMPLE_SEQ)
        assert est.prefix_inf == -0.8 and est.argmin == 5 and est.subadditive
        assert est.last_ratio == -3 / 7

    def test_non_subadditive_flag(self):
        assert not fekete_estimate([1, 5, 2]).subadditive

    def test_hille_consistency(self, rng):
        # f(x)/x between knots never leaves the range of the knot ratios
        for _ in range(100):
            u = subadditive_envelope(rng.uniform(-1, 1, int(rng.integers(2, 60)))).v
            f = Interpolant(u)
            r = fekete_estimate(u).ratios
            N = len(u)
            j = np.arange(1, 40)
            x = N * (1 - 2.0 ** -j)
            x = x[x >= 1]
            s = f(x) / x
            assert np.all(s >= r.min() - 1e-12) and np.all(s <= r.max() + 1e-12)
