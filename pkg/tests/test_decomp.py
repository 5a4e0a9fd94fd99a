import math

import numpy as np
import pytest

from seqlat.decomp import (
    decomposability_constant,
    estimate_constant,
    estimate_product_infimum,
    grobler_dodds,
    matuszewska_slopes,
    multiplicator_check,
)
from seqlat.orlicz import power, power_log
from seqlat.spaces import LatticeSpec

L1 = LatticeSpec.lp(1)
L2 = LatticeSpec.lp(2)
LINF = LatticeSpec.lp(math.inf)


class TestEstimateConstant:
    def test_lp_self_exponent(self):
        rep = estimate_constant(L2, 2, "upper")
        assert rep.constant == 1.0
        assert rep.exact
        rep = estimate_constant(L2, 2, "lower")
        assert rep.constant == 1.0

    def test_every_lattice_upper_one(self):
        for host in (L2, LINF, LatticeSpec.lorentz(2, 3),
                     LatticeSpec.orlicz_fn(power_log(2, 1))):
            rep = estimate_constant(host, 1, "upper", n_max=8)
            assert rep.constant <= 1.0 + 1e-9
            assert rep.verdict == "bounded"

    def test_l2_upper_three_grows(self):
        rep = estimate_constant(L2, 3, "upper", n_max=32)
        # equal-split families give the closed-form rate n^{1/2 - 1/3}
        assert rep.verdict == "growing"
        assert rep.growth_exponent == pytest.approx(1.0 / 2.0 - 1.0 / 3.0, abs=0.01)
        for n, best in rep.per_n:
            assert best == pytest.approx(n ** (1.0 / 2.0 - 1.0 / 3.0), rel=1e-9)

    def test_lorentz_upper_min_bounded(self):
        rep = estimate_constant(LatticeSpec.lorentz(2, 1), 1, "upper", n_max=16)
        assert rep.verdict == "bounded"
        assert rep.constant == 1.0
        values = [row[1] for row in rep.per_n]
        assert max(values) <= 1.0 + 1e-9

    def test_growth_table_has_doubling_sizes(self):
        rep = estimate_constant(L2, 3, "upper", n_max=16)
        assert [row[0] for row in rep.per_n] == [2, 4, 8, 16]


class TestDecomposabilityConstant:
    def test_holder_feasible_pair_is_one(self):
        rep = decomposability_constant(L2, L1, 2.0, n_max=6)
        assert rep.empirical == pytest.approx(1.0, abs=1e-9)
        assert rep.verdict == "bounded"

    def test_linf_l1_grows_like_sqrt(self):
        rep = decomposability_constant(LINF, L1, 2.0, n_max=16)
        assert rep.empirical >= 4.0 - 1e-9
        assert rep.verdict == "growing"
        assert rep.growth_exponent == pytest.approx(0.5, abs=0.05)
        a = np.array(rep.witness["a"])
        b = np.array(rep.witness["b"])
        assert np.allclose(a, a[0]) and np.allclose(b, b[0])  # uniform witness

    def test_identity_pair_at_inf(self):
        for p in (1.0, 2.0, 3.0):
            host = LatticeSpec.lp(p)
            rep = decomposability_constant(host, host, math.inf, n_max=4)
            assert rep.empirical == pytest.approx(1.0, abs=1e-9)

    def test_witness_reproduces_ratio(self):
        rep = decomposability_constant(LINF, L1, 2.0, n_max=8)
        a = np.array(rep.witness["a"])
        b = np.array(rep.witness["b"])
        ratio = np.sum(np.abs(a * b)) / (
            np.sqrt(np.sum(b ** 2)) * np.max(np.abs(a)))
        assert ratio == pytest.approx(rep.empirical, rel=1e-8)


class TestIndices:
    def test_lorentz(self):
        rep = grobler_dodds(LatticeSpec.lorentz(2, 3))
        assert (rep.delta, rep.sigma) == (2.0, 3.0)
        assert rep.source == "analytic_table"

    def test_lp(self):
        rep = grobler_dodds(LatticeSpec.lp(4))
        assert (rep.delta, rep.sigma) == (4.0, 4.0)

    def test_c0_flagged_analytic(self):
        rep = grobler_dodds(LatticeSpec.c0())
        assert math.isinf(rep.delta) and math.isinf(rep.sigma)
        assert rep.source == "analytic_table"

    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    def test_orlicz_power_slope(self, p):
        rep = grobler_dodds(LatticeSpec.orlicz_fn(power(p)))
        assert rep.delta == pytest.approx(p, abs=0.05)
        assert rep.sigma == pytest.approx(p, abs=0.05)
        assert rep.source == "empirical_slope"

    def test_slopes_direct(self):
        d, s = matuszewska_slopes(power(2.5))
        assert d == pytest.approx(2.5, abs=1e-6)
        assert s == pytest.approx(2.5, abs=1e-6)


class TestProductInfimum:
    def test_l2_l1_feasible_corner(self):
        rep = estimate_product_infimum(L2, L1, 2.0, n_max=8)
        assert rep["value"] == pytest.approx(1.0, abs=1e-9)
        p, q = rep["argmin"]
        assert (p, q) == (1.0, 2.0)
        assert rep["sandwich_ok"]

    def test_identity_at_inf(self):
        rep = estimate_product_infimum(L2, L2, math.inf, n_max=4)
        assert rep["value"] == pytest.approx(1.0, abs=1e-9)
        assert tuple(rep["argmin"]) == (2.0, 2.0)

    def test_hypothesis_violation_branch(self):
        rep = estimate_product_infimum(L1, L2, 2.0, n_max=4)
        assert rep["hypothesis_violation"]
        assert rep["s_max"] == "inf"
        assert rep["value"] is None

    def test_lorentz_diagonal_pair(self):
        X = LatticeSpec.lorentz(3, 3)
        Y = LatticeSpec.lorentz(2, 2)
        rep = estimate_product_infimum(X, Y, 6.0, n_max=6)
        ds = decomposability_constant(X, Y, 6.0, n_max=6)
        assert ds.empirical <= rep["value"] * (1 + 1e-6)
        assert rep["value"] <= ds.empirical ** 2 * 1.25


class TestMultiplicator:
    def test_l2_l2_inf_is_holder(self):
        rep = multiplicator_check(L2, L2, math.inf, samples=10, n=4)
        assert rep["worst_ratio"] <= 1.0 + 1e-9
        assert rep["bound_ok"]

    def test_l2_l1_two_is_cauchy_schwarz(self):
        rep = multiplicator_check(L2, L1, 2.0, samples=10, n=4)
        assert rep["worst_ratio"] <= 1.0 + 1e-9

    def test_lorentz_pair(self):
        X = LatticeSpec.lorentz(3, 3)
        Y = LatticeSpec.lorentz(2, 2)
        rep = multiplicator_check(X, Y, 6.0, samples=20, n=5)
        assert rep["bound_ok"], rep


def test_monotone_in_s():
    vals = [decomposability_constant(LINF, L1, s, n_max=8).empirical
            for s in (1.0, 2.0, 4.0, math.inf)]
    assert all(v1 <= v2 + 1e-9 for v1, v2 in zip(vals, vals[1:]))


def test_estimate_monotone_in_n_max():
    rep8 = estimate_constant(L2, 3, "upper", n_max=8)
    rep32 = estimate_constant(L2, 3, "upper", n_max=32)
    assert rep32.constant >= rep8.constant - 1e-12
