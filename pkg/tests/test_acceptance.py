"""Acceptance criteria, one test per criterion, run at their stated
tolerances and desk-scale budgets.  Each test prints a single
``ACCEPT-nn ... PASS`` line (visible with ``pytest -s`` or in the captured
output); an assertion failure marks the criterion red.
"""

import math
import time

import numpy as np
import pytest
from click.testing import CliRunner

from seqlat.cli import main as cli_main
from seqlat.config import RunConfig
from seqlat.decomp import decomposability_constant, estimate_product_infimum, grobler_dodds
from seqlat.interpolation import (
    CoupleSpec,
    k_curve,
    k_functional,
    orbit_operator,
    partial_sum_majorization,
    validate_orbit_operator,
)
from seqlat.norms import lp_norm, orlicz_sequence_norm
from seqlat.optimal import (
    OptimConfig,
    lower_sequence_norm,
    musielak_intersection_norm,
    orlicz_disjoint_reduction,
    upper_fundamental_sandwich,
    upper_sequence_norm,
)
from seqlat.orlicz import DilationProfile, delta2_constant, power, power_log
from seqlat.rearrangement import rearrangement_partial_integral
from seqlat.report import canonical_json
from seqlat.spaces import LatticeSpec
from seqlat.verify import run_verification_suite

from conftest import disjoint_step_family, random_step, random_substochastic

CLOSED_HOSTS = [
    LatticeSpec.lp(1),
    LatticeSpec.lp(2),
    LatticeSpec.lp(3.5),
    LatticeSpec.lp(math.inf),
    LatticeSpec.c0(),
    LatticeSpec.lorentz(2, 1),
    LatticeSpec.lorentz(2, 3),
    LatticeSpec.lorentz(3, 2),
]


def _report(name, elapsed, budget=None, detail=""):
    line = f"ACCEPT-{name} PASS ({elapsed:.2f}s"
    if budget is not None:
        line += f" < {budget:g}s"
    line += f") {detail}"
    print(line)


def test_c01_holder_boundary():
    t0 = time.time()
    l1, l2, linf = LatticeSpec.lp(1), LatticeSpec.lp(2), LatticeSpec.lp(math.inf)
    feasible = decomposability_constant(l2, l1, 2.0, n_max=6, seed=0)
    assert feasible.empirical == pytest.approx(1.0, abs=1e-9)
    growing = decomposability_constant(linf, l1, 2.0, n_max=32, seed=0)
    assert [row[0] for row in growing.per_n] == [2, 4, 8, 16, 32]
    assert growing.growth_exponent == pytest.approx(0.5, abs=0.05)
    elapsed = time.time() - t0
    assert elapsed < 10.0
    _report("01 holder-boundary", elapsed, 10,
            f"constant={feasible.empirical:.3g} slope={growing.growth_exponent:.3f}")


def test_c02_embedding_chain():
    t0 = time.time()
    rng = np.random.default_rng(0)
    cfg = OptimConfig(seed=0)
    slack = 1e-10
    for host in CLOSED_HOSTS:
        for _ in range(200):
            a = rng.normal(0.0, 2.0, int(rng.integers(1, 8)))
            xu = upper_sequence_norm(a, host, cfg).value
            xl = lower_sequence_norm(a, host, cfg).value
            assert lp_norm(a, math.inf) <= xl + slack
            assert xl <= xu + slack
            assert xu <= lp_norm(a, 1.0) + slack
    elapsed = time.time() - t0
    assert elapsed < 5.0
    _report("02 embedding-chain", elapsed, 5, f"{200 * len(CLOSED_HOSTS)} vectors")


def test_c03_c0_and_lp_closed_forms():
    t0 = time.time()
    rng = np.random.default_rng(1)
    cfg = OptimConfig(seed=0)
    host = LatticeSpec.c0()
    for _ in range(100):
        a = rng.normal(0.0, 2.0, int(rng.integers(1, 9)))
        expect = float(np.max(np.abs(a)))
        assert upper_sequence_norm(a, host, cfg).value == expect
        assert lower_sequence_norm(a, host, cfg).value == expect
    for p in (1.0, 2.0, 3.5):
        host = LatticeSpec.lp(p)
        for _ in range(100):
            a = rng.normal(0.0, 2.0, int(rng.integers(1, 9)))
            expect = lp_norm(a, p)
            assert upper_sequence_norm(a, host, cfg).value == expect
            assert lower_sequence_norm(a, host, cfg).value == expect
    _report("03 closed-forms", time.time() - t0, None, "c0 and l_p exact")


def test_c04_lorentz_identification():
    t0 = time.time()
    rng = np.random.default_rng(2)
    cfg = OptimConfig(seed=0)
    for p, q in ((2, 1), (2, 3), (3, 2)):
        host = LatticeSpec.lorentz(p, q)
        for _ in range(30):
            a = rng.normal(0.0, 2.0, int(rng.integers(1, 7)))
            xu = upper_sequence_norm(a, host, cfg)
            lmin = lp_norm(a, min(p, q))
            assert xu.lo - 1e-12 <= lmin <= xu.hi + 1e-12
            assert max(xu.constants["upper_equivalence"],
                       xu.constants["lower_equivalence"]) <= 10.0
            xl = lower_sequence_norm(a, host, cfg)
            lmax = lp_norm(a, max(p, q))
            assert xl.lo - 1e-12 <= lmax <= xl.hi + 1e-12
    elapsed = time.time() - t0
    assert elapsed < 30.0
    _report("04 lorentz-identification", elapsed, 30, "constants = 1")


def test_c05_orlicz_power_exactness():
    t0 = time.time()
    rng = np.random.default_rng(3)
    cfg = OptimConfig(seed=0)
    for p in (1.5, 2.0, 3.0):
        host = LatticeSpec.orlicz_fn(power(p))
        for _ in range(4):
            a = np.abs(rng.normal(0.0, 1.0, int(rng.integers(2, 7)))) + 0.05
            res = upper_sequence_norm(a, host, cfg)
            assert res.value == pytest.approx(lp_norm(a, p), rel=0.02)
    elapsed = time.time() - t0
    assert elapsed < 60.0
    _report("05 orlicz-power-exactness", elapsed, 60, "within 2%")


def test_c06_reduction_inequalities():
    t0 = time.time()
    rng = np.random.default_rng(4)
    violations = 0
    for M in (power(2), power_log(2, 1)):
        K = delta2_constant(M, 1e6).constant
        for _ in range(50):
            ys = disjoint_step_family(rng, members=3,
                                      atoms_each=int(rng.integers(1, 4)))
            hs, fs, rep = orlicz_disjoint_reduction(ys, M)
            assert rep["delta2"] == pytest.approx(K, rel=1e-12)
            if not (rep["h_chain_ok"] and rep["f_chain_ok"]
                    and rep["g_bound_ok"] and rep["sum_chain_ok"]):
                violations += 1
    assert violations == 0
    elapsed = time.time() - t0
    assert elapsed < 30.0
    _report("06 reduction-inequalities", elapsed, 30, "0 violations in 100 families")


def test_c07_fundamental_equivalence():
    t0 = time.time()
    cfg = OptimConfig(seed=0)
    for n in (2, 4, 8, 16):
        rep = upper_fundamental_sandwich(power(2), n, cfg)
        expect = math.sqrt(n)
        assert rep["dilation"] == pytest.approx(expect, rel=1e-9)
        assert rep["overlap"], rep
        assert rep["lo"] == pytest.approx(expect, rel=0.02)
    _report("07 fundamental-equivalence", time.time() - t0, None,
            "sqrt(n) within 2%")


def test_c08_musielak_consistency():
    t0 = time.time()
    rng = np.random.default_rng(5)
    cfg = OptimConfig(seed=0, starts=4)
    M = power(2)
    host = LatticeSpec.orlicz_fn(M)
    psi = DilationProfile(M)
    p_M = grobler_dodds(host).delta
    K = delta2_constant(M, 1e6).constant
    for _ in range(50):
        a = np.abs(rng.normal(0.0, 1.0, int(rng.integers(1, 7)))) + 0.05
        mi = musielak_intersection_norm(a, M, cfg).value
        xu = upper_sequence_norm(a, host, cfg).value
        assert mi == pytest.approx(xu, rel=0.03)
        # the dilation-profile sequence norm dominates from above with
        # factor 2, and the p_M norm sits below the sandwich top
        assert xu <= 2.0 * orlicz_sequence_norm(a, psi) * (1 + 1e-9)
        assert lp_norm(a, p_M) <= (K + 1.0) * xu * (1 + 1e-9)
    _report("08 musielak-consistency", time.time() - t0, None, "within 3%")


def test_c09_product_sandwich():
    t0 = time.time()
    for q in (2.0, 3.0):
        for p in (1.0, 1.5):
            s = 1.0 / (1.0 / p - 1.0 / q)
            X, Y = LatticeSpec.lp(q), LatticeSpec.lp(p)
            rep = estimate_product_infimum(X, Y, s, n_max=8, seed=0)
            ds = rep["empirical_decomposability"]
            assert ds <= rep["value"] * (1.0 + 1e-6)
            assert rep["value"] <= ds ** 2 * 1.25
    _report("09 product-sandwich", time.time() - t0, None,
            "bounds hold on 4 host pairs")


def test_c10_k_functional_oracle():
    t0 = time.time()
    rng = np.random.default_rng(6)
    couple = CoupleSpec.l1_linf()
    for _ in range(100):
        f = random_step(rng, atoms=int(rng.integers(1, 7)))
        t = float(rng.uniform(0.005, 2.0))
        got = k_functional(t, f, couple)
        oracle = rearrangement_partial_integral(f, t)
        assert abs(got - oracle) <= 1e-8
    for _ in range(5):
        f = random_step(rng, atoms=int(rng.integers(1, 7)))
        assert k_curve(f, couple, 1e-3, 1e3, 41).check_shape(1e-9)["ok"]
    _report("10 k-functional-oracle", time.time() - t0, None,
            "100 pairs within 1e-8")


def test_c11_orbit_round_trip():
    t0 = time.time()
    rng = np.random.default_rng(7)
    for _ in range(100):
        nx, ny = int(rng.integers(1, 7)), int(rng.integers(1, 7))
        S = random_substochastic(rng, ny, nx)
        x = rng.normal(0.0, 2.0, nx)
        if not np.any(x):
            x[0] = 1.0
        y = S @ x
        assert partial_sum_majorization(x, y, 1.0)
        T = orbit_operator(x, y)
        rep = validate_orbit_operator(T, x, y)
        assert rep["column_sum"] <= 1.0 + 1e-10
        assert rep["row_sum"] <= 1.0 + 1e-10
        assert rep["map_error"] <= 1e-10
    _report("11 orbit-round-trip", time.time() - t0, None, "100 reconstructions")


def test_c12_determinism():
    t0 = time.time()
    r1 = run_verification_suite(RunConfig(seed=0))
    r2 = run_verification_suite(RunConfig(seed=0))
    b1 = canonical_json(r1.to_json()).encode()
    b2 = canonical_json(r2.to_json()).encode()
    assert b1 == b2
    assert r1.counts["fail"] == 0
    # the CLI surface is deterministic too
    runner = CliRunner()
    outs = []
    for _ in range(2):
        res = runner.invoke(cli_main, [
            "verify", "--seed", "0", "--quiet",
            "--select", "ra-mass-conserved,no-luxemburg-attained,os-family-validator",
        ])
        assert res.exit_code == 0
        outs.append(res.output)
    assert outs[0] == outs[1]
    _report("12 determinism", time.time() - t0, None,
            f"{len(r1.checks)} checks byte-identical")
