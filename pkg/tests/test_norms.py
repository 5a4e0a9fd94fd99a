import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from seqlat.errors import InvalidSpecError
from seqlat.norms import (
    lorentz_norm,
    lorentz_quasi_constant,
    lp_norm,
    luxemburg_norm,
    musielak_norm,
    orlicz_sequence_norm,
    seq_norm,
    weighted_lp_norm,
)
from seqlat.orlicz import power, power_log
from seqlat.rearrangement import StepFunction
from seqlat.spaces import BetaSequence, LatticeSpec

from conftest import random_step


class TestSeqNorm:
    def test_pythagoras(self):
        assert seq_norm([3, 4], LatticeSpec.lp(2)) == 5.0

    def test_sup_norm(self):
        assert seq_norm([1, 1, 1], LatticeSpec.lp(math.inf)) == 1.0
        assert seq_norm([1, -2, 1], LatticeSpec.c0()) == 2.0

    def test_orlicz_seq_matches_l2(self):
        got = orlicz_sequence_norm([1, 1], power(2))
        assert got == pytest.approx(math.sqrt(2), rel=1e-10)
        a = [0.3, -1.2, 0.7]
        assert seq_norm(a, LatticeSpec.orlicz_seq(power(2))) == pytest.approx(
            lp_norm(a, 2), rel=1e-10)

    def test_function_kind_rejected(self):
        with pytest.raises(InvalidSpecError):
            seq_norm([1.0], LatticeSpec.lorentz(2, 1))


class TestLuxemburg:
    def test_characteristic_multiple(self):
        f = StepFunction([(3.0, 0.25)])
        assert luxemburg_norm(f, power(2)) == pytest.approx(1.5, rel=1e-12)

    def test_characteristic_equals_fundamental(self):
        for M in (power(2), power_log(2, 1)):
            for t in (0.1, 0.35, 1.0):
                f = StepFunction([(1.0, t)])
                assert luxemburg_norm(f, M) == pytest.approx(
                    1.0 / M.inverse(1.0 / t), rel=1e-9)

    def test_zero(self):
        assert luxemburg_norm(StepFunction([]), power(2)) == 0.0

    def test_modular_attained(self, rng):
        M = power_log(2, 1)
        for _ in range(20):
            f = random_step(rng, atoms=int(rng.integers(1, 6)))
            lam = luxemburg_norm(f, M)
            modular = float(np.dot(M(np.abs(f.values) / lam), f.measures))
            assert modular == pytest.approx(1.0, abs=1e-8)


class TestLorentz:
    def test_characteristic(self):
        for q in (1.0, 2.0, 3.0):
            f = StepFunction([(1.0, 0.2)])
            assert lorentz_norm(f, 2, q) == pytest.approx(0.2 ** 0.5, rel=1e-12)

    def test_diagonal_matches_luxemburg(self, rng):
        for _ in range(10):
            f = random_step(rng, atoms=4)
            for p in (1.5, 2.0, 3.0):
                assert lorentz_norm(f, p, p) == pytest.approx(
                    luxemburg_norm(f, power(p)), rel=1e-9)

    def test_zero(self):
        assert lorentz_norm(StepFunction([]), 2, 1) == 0.0

    def test_quasi_triangle_constant(self, rng):
        p, q = 2.0, 3.0
        c = lorentz_quasi_constant(p, q)
        assert c == 2.0 ** 0.5
        for _ in range(20):
            f = random_step(rng, atoms=3, total=0.4)
            g = random_step(rng, atoms=3, total=0.4)
            fg = StepFunction(f.atoms + g.atoms, check_total=False)
            assert lorentz_norm(fg, p, q) <= c * (
                lorentz_norm(f, p, q) + lorentz_norm(g, p, q)) * (1 + 1e-9)


class TestMusielak:
    def test_single_coordinate(self):
        M = power_log(2, 1)
        beta = BetaSequence([5.0], M)
        assert musielak_norm([0.7], beta, M) == pytest.approx(0.7, rel=1e-12)

    def test_power_closed_form(self):
        # equal scalings with a power function collapse to the plain l_p norm
        M = power(2)
        beta = BetaSequence.from_measures([0.25, 0.25, 0.25], M)
        a = np.array([1.0, 2.0, 3.0])
        lam = musielak_norm(a, beta, M)
        assert lam == pytest.approx(lp_norm(a, 2), rel=1e-9)
        modular = float(np.sum(M(a * beta.betas / lam) / M(beta.betas)))
        assert modular == pytest.approx(1.0, abs=1e-8)

    def test_zero(self):
        M = power(2)
        assert musielak_norm([0.0, 0.0], BetaSequence([2.0, 2.0], M), M) == 0.0

    def test_budget_enforced(self):
        M = power(2)
        with pytest.raises(InvalidSpecError):
            BetaSequence([1.0, 1.0], M)  # budget 2 > 1

    def test_length_mismatch(self):
        M = power(2)
        beta = BetaSequence([3.0], M)
        with pytest.raises(InvalidSpecError):
            musielak_norm([1.0, 1.0], beta, M)


class TestWeighted:
    def test_unit_weights(self, rng):
        a = rng.normal(size=5)
        for p in (1.0, 2.0, math.inf):
            assert weighted_lp_norm(a, p, np.ones(5)) == seq_norm(a, LatticeSpec.lp(p))

    def test_simple_values(self):
        assert weighted_lp_norm([1, 1], 1, [1, 2]) == 3.0
        assert weighted_lp_norm([1, 1], 2, [3, 4]) == 5.0


HOSTS = [
    LatticeSpec.lp(1),
    LatticeSpec.lp(2.5),
    LatticeSpec.lp(math.inf),
    LatticeSpec.c0(),
    LatticeSpec.orlicz_seq(power_log(2, 1)),
]


@given(st.lists(st.floats(min_value=-5, max_value=5), min_size=1, max_size=6),
       st.lists(st.floats(min_value=0, max_value=1), min_size=6, max_size=6))
@settings(max_examples=60, deadline=None)
def test_lattice_monotone(b, shrink):
    b = np.array(b)
    a = b * np.array(shrink[: len(b)])
    for host in HOSTS:
        assert seq_norm(a, host) <= seq_norm(b, host) + 1e-10


@given(st.lists(st.floats(min_value=-5, max_value=5), min_size=2, max_size=6),
       st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_rearrangement_invariance(a, pyrandom):
    a = np.array(a)
    perm = list(range(len(a)))
    pyrandom.shuffle(perm)
    for host in HOSTS:
        assert seq_norm(a, host) == pytest.approx(seq_norm(a[perm], host), abs=1e-12)


@given(st.lists(st.floats(min_value=-3, max_value=3), min_size=1, max_size=5),
       st.lists(st.floats(min_value=-3, max_value=3), min_size=5, max_size=5),
       st.floats(min_value=-4, max_value=4))
@settings(max_examples=60, deadline=None)
def test_homogeneity_and_triangle(a, b, c):
    a = np.array(a)
    b = np.array(b[: len(a)])
    for host in HOSTS:
        assert seq_norm(c * a, host) == pytest.approx(
            abs(c) * seq_norm(a, host), rel=1e-9, abs=1e-12)
        assert seq_norm(a + b, host) <= seq_norm(a, host) + seq_norm(b, host) + 1e-9


class TestSpecValidation:
    def test_parameter_ranges(self):
        with pytest.raises(InvalidSpecError):
            LatticeSpec.lorentz(1.0, 2.0)       # p must exceed 1
        with pytest.raises(InvalidSpecError):
            LatticeSpec.lorentz(2.0, math.inf)  # q must be finite
        with pytest.raises(InvalidSpecError):
            LatticeSpec.lp(0.5)
        with pytest.raises(InvalidSpecError):
            LatticeSpec.weighted_lp(2, [1.0, -1.0])

    def test_json_round_trip(self):
        for spec in (LatticeSpec.lp(math.inf), LatticeSpec.c0(),
                     LatticeSpec.lorentz(2, 3),
                     LatticeSpec.orlicz_fn(power_log(2, 1)),
                     LatticeSpec.weighted_lp(1, [1, 2, 3])):
            back = LatticeSpec.from_json(spec.to_json())
            assert back.to_json() == spec.to_json()


@given(st.lists(st.tuples(st.floats(min_value=1e-8, max_value=1e8),
                          st.floats(min_value=1e-9, max_value=0.19)),
                min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_luxemburg_extreme_scales(atoms):
    f = StepFunction(atoms)
    M = power_log(2, 1)
    lam = luxemburg_norm(f, M)
    modular = float(np.dot(M(np.abs(f.values) / lam), f.measures))
    assert modular == pytest.approx(1.0, abs=1e-7)
