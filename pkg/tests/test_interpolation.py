import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from seqlat.errors import MajorizationError, UnsupportedCoupleError
from seqlat.interpolation import (
    CoupleSpec,
    k_curve,
    k_functional,
    k_ratio_test,
    orbit_operator,
    partial_sum_majorization,
    validate_orbit_operator,
)
from seqlat.rearrangement import StepFunction, rearrangement_partial_integral

from conftest import random_step, random_substochastic

L1LINF = CoupleSpec.l1_linf()


class TestKFunctional:
    def test_characteristic(self):
        f = StepFunction([(1.0, 1.0)])
        for t in (0.2, 1.0, 5.0):
            assert k_functional(t, f, L1LINF) == pytest.approx(min(t, 1.0), rel=1e-12)

    def test_matches_partial_integral(self, rng):
        for _ in range(40):
            f = random_step(rng, atoms=int(rng.integers(1, 7)))
            t = float(rng.uniform(0.01, 1.5))
            assert k_functional(t, f, L1LINF) == pytest.approx(
                rearrangement_partial_integral(f, t), abs=1e-12)

    def test_weighted_l1_closed_form(self):
        couple = CoupleSpec.weighted(1, [1, 2], 1, [1, 1])
        assert k_functional(1.5, [1, 1], couple) == pytest.approx(2.5, rel=1e-12)

    def test_small_t_endpoint(self, rng):
        couple = CoupleSpec.weighted(2, [1, 2, 3], 2, [0.5, 1, 2])
        x = rng.normal(size=3)
        t = 1e-6
        k = k_functional(t, x, couple)
        norm1 = float(np.sum((np.array([0.5, 1, 2]) * np.abs(x)) ** 2) ** 0.5)
        assert k / t == pytest.approx(norm1, rel=1e-4)

    def test_general_case_against_theta_grid(self, rng):
        couple = CoupleSpec.weighted(2, [1, 2], 3, [2, 0.7])
        x = np.array([1.0, -0.8])
        w0, w1 = np.array([1.0, 2.0]), np.array([2.0, 0.7])
        for t in (0.3, 1.0, 4.0):
            got = k_functional(t, x, couple)
            best = math.inf
            for th0 in np.linspace(0, 1, 201):
                for th1 in np.linspace(0, 1, 201):
                    th = np.array([th0, th1])
                    A = float(np.sum((w0 * np.abs(x) * th) ** 2) ** 0.5)
                    B = float(np.sum((w1 * np.abs(x) * (1 - th)) ** 3) ** (1 / 3))
                    best = min(best, A + t * B)
            assert got <= best + 1e-9
            assert got == pytest.approx(best, rel=2e-4)

    def test_swap_symmetry(self, rng):
        w0, w1 = rng.uniform(0.5, 2, 4), rng.uniform(0.5, 2, 4)
        fwd = CoupleSpec.weighted(1, w0, math.inf, w1)
        bwd = CoupleSpec.weighted(math.inf, w1, 1, w0)
        x = rng.normal(size=4)
        for t in (0.2, 1.0, 7.0):
            assert k_functional(t, x, fwd) == pytest.approx(
                t * k_functional(1.0 / t, x, bwd), rel=1e-9)

    def test_couple_type_mismatch(self):
        with pytest.raises(UnsupportedCoupleError):
            k_functional(1.0, np.array([1.0]), L1LINF)


class TestKCurve:
    def test_shape_invariants(self, rng):
        for _ in range(5):
            f = random_step(rng, atoms=int(rng.integers(1, 6)))
            assert k_curve(f, L1LINF, 1e-3, 1e3, 41).check_shape()["ok"]
        couple = CoupleSpec.weighted(1, rng.uniform(0.5, 2, 4),
                                     math.inf, rng.uniform(0.5, 2, 4))
        for _ in range(5):
            x = rng.normal(size=4)
            assert k_curve(x, couple, 1e-3, 1e3, 41).check_shape()["ok"]

    def test_subadditive_in_element(self, rng):
        couple = CoupleSpec.weighted(1, np.ones(4), math.inf, rng.uniform(0.5, 2, 4))
        for _ in range(20):
            x, z = rng.normal(size=4), rng.normal(size=4)
            t = float(np.exp(rng.normal()))
            assert k_functional(t, x + z, couple) <= (
                k_functional(t, x, couple) + k_functional(t, z, couple) + 1e-9)


class TestRatioTest:
    def test_identity_fails_finite_s(self, rng):
        f = random_step(rng, atoms=3)
        rep = k_ratio_test(f, f, L1LINF, L1LINF, 2.0)
        assert rep["verdict"] == "fails"

    def test_identity_holds_at_inf(self, rng):
        f = random_step(rng, atoms=3)
        rep = k_ratio_test(f, f, L1LINF, L1LINF, math.inf)
        assert rep["verdict"] == "holds"
        assert rep["constant"] == pytest.approx(1.0, rel=1e-12)

    def test_zero_target_holds(self, rng):
        f = random_step(rng, atoms=3)
        rep = k_ratio_test(f, StepFunction([]), L1LINF, L1LINF, 2.0)
        assert rep["verdict"] == "holds"

    def test_zero_source_rejected(self, rng):
        f = random_step(rng, atoms=3)
        with pytest.raises(ValueError):
            k_ratio_test(StepFunction([]), f, L1LINF, L1LINF, 2.0)

    def test_two_spikes_closed_form(self):
        # dyadic weights: the K of a spike at i is min(1, t 2^{-i}), so the
        # ratio is constant at both ends and the integral diverges
        n, k = 6, 3
        w1 = 2.0 ** (-np.arange(n, dtype=float))
        couple = CoupleSpec.weighted(1, np.ones(n), 1, w1)
        x = np.zeros(n); x[0] = 1.0
        y = np.zeros(n); y[k] = 1.0
        rep = k_ratio_test(x, y, couple, couple, 2.0)
        ts = np.array(rep["ts"])
        expect = np.minimum(1.0, ts * 2.0 ** (-k)) / np.minimum(1.0, ts)
        assert np.allclose(rep["ratios"], expect, rtol=1e-9)
        assert rep["verdict"] == "fails"
        assert rep["tail_exponent_zero"] == pytest.approx(0.0, abs=1e-9)


class TestMajorization:
    def test_identity(self):
        assert partial_sum_majorization([1.0, 2.0], [1.0, 2.0], 1.0)

    def test_example_true(self):
        assert partial_sum_majorization([2, 1], [1.5, 1], 1.0)

    def test_example_false(self):
        assert not partial_sum_majorization([1, 1], [3, 0], 1.0)

    @given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=10**6))
    @settings(max_examples=80, deadline=None)
    def test_substochastic_images_majorized(self, n, seed):
        rng = np.random.default_rng(seed)
        S = random_substochastic(rng, n, n)
        x = rng.normal(size=n) * 3
        assert partial_sum_majorization(x, S @ x, 1.0)


class TestOrbitOperator:
    def test_identity_map(self):
        x = np.array([2.0, -1.0, 0.5])
        T = orbit_operator(x, x)
        assert np.allclose(T, np.eye(3), atol=1e-12)

    def test_hand_checked_witness(self):
        T = orbit_operator([2.0, 0.0], [1.0, 1.0])
        assert np.allclose(T[:, 0], [0.5, 0.5], atol=1e-12)
        assert np.allclose(T[:, 1], [0.0, 0.0], atol=1e-12)

    def test_violating_pair_reports_index(self):
        with pytest.raises(MajorizationError) as exc:
            orbit_operator([1.0, 1.0], [3.0, 0.0])
        assert exc.value.k == 1

    def test_zero_source_rejected(self):
        with pytest.raises(MajorizationError):
            orbit_operator([0.0, 0.0], [0.0, 1.0])

    @given(st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=6),
           st.integers(min_value=0, max_value=10**6))
    @settings(max_examples=120, deadline=None)
    def test_generate_and_verify(self, nx, ny, seed):
        rng = np.random.default_rng(seed)
        S = random_substochastic(rng, ny, nx)
        x = rng.normal(size=nx) * 2
        if not np.any(x):
            x[0] = 1.0
        y = S @ x
        T = orbit_operator(x, y)
        rep = validate_orbit_operator(T, x, y)
        assert rep["column_sum"] <= 1 + 1e-10
        assert rep["row_sum"] <= 1 + 1e-10
        assert rep["map_error"] <= 1e-10


def test_rs_agrees_with_majorization_on_finite_couple(rng):
    n = 5
    couple = CoupleSpec.weighted(1, np.ones(n), math.inf, np.ones(n))
    ts = np.concatenate([np.geomspace(1e-4, 50, 41), np.arange(1.0, n + 1)])
    for _ in range(50):
        x = np.abs(rng.normal(size=n)) + 0.05
        y = np.abs(rng.normal(size=n))
        C = k_ratio_test(x, y, couple, couple, math.inf, ts=ts)["constant"]
        assert partial_sum_majorization(x, y, C * (1 + 1e-9))
        if C > 1e-9:
            assert not partial_sum_majorization(x, y, C * (1 - 1e-6))
