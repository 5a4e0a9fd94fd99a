"""Registry-driven verification suite.

Every structural invariant of the library is registered under a stable
check id with a one-line mathematical statement.  Checks run on seeded
desk-scale instances; a failing check fails the run, an inconclusive one is
listed without failing it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import RunConfig
from .decomp import (
    decomposability_constant,
    estimate_product_infimum,
    grobler_dodds,
)
from .errors import InvalidSpecError
from .interpolation import (
    CoupleSpec,
    k_curve,
    k_functional,
    k_ratio_test,
    partial_sum_majorization,
)
from .norms import (
    host_norm,
    lorentz_quasi_constant,
    lp_norm,
    luxemburg_norm,
    seq_norm,
)
from .optimal import (
    DisjointFamily,
    disjoint_infimum,
    lower_sequence_norm,
    upper_sequence_norm,
)
from .orlicz import (
    dilation_function,
    fundamental_function,
    power,
    power_log,
    young_conjugate,
)
from .rearrangement import (
    SeqVector,
    StepFunction,
    decreasing_rearrangement,
    distribution_function,
)
from .spaces import LatticeSpec


@dataclass
class CheckResult:
    id: str
    statement: str
    status: str                 # pass | fail | inconclusive
    measured: dict = field(default_factory=dict)
    tolerance: float = 0.0

    def to_json(self):
        return {
            "id": self.id,
            "statement": self.statement,
            "status": self.status,
            "measured": self.measured,
            "tolerance": self.tolerance,
        }


@dataclass
class VerificationSuiteResult:
    checks: list
    seed: int

    @property
    def counts(self):
        out = {"pass": 0, "fail": 0, "inconclusive": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def exit_code(self):
        return 1 if self.counts["fail"] else 0

    def to_json(self):
        return {
            "seed": self.seed,
            "checks": [c.to_json() for c in self.checks],
            "summary": self.counts,
        }


def _closed_hosts():
    return [
        LatticeSpec.lp(1),
        LatticeSpec.lp(2),
        LatticeSpec.lp(3.5),
        LatticeSpec.lp(math.inf),
        LatticeSpec.c0(),
        LatticeSpec.lorentz(2, 1),
        LatticeSpec.lorentz(2, 3),
        LatticeSpec.lorentz(3, 2),
    ]


def _random_step(rng, atoms=4, total=0.9):
    m = rng.dirichlet(np.ones(atoms)) * total
    v = np.exp(rng.normal(0.0, 1.0, atoms)) * rng.choice([-1.0, 1.0], atoms)
    starts = np.concatenate([[0.0], np.cumsum(m)[:-1]])
    return StepFunction(list(zip(v, m)), starts=starts)


# -- special functions ---------------------------------------------------------

def check_fundamental_quasiconcave(cfg: RunConfig) -> CheckResult:
    tol = cfg.tolerance("shape_tol")
    hosts = [
        LatticeSpec.orlicz_fn(power(2)),
        LatticeSpec.orlicz_fn(power_log(2, 1)),
        LatticeSpec.lorentz(2, 1),
        LatticeSpec.lorentz(3, 2),
    ]
    ts = np.geomspace(1e-4, 1.0, 40)
    worst = 0.0
    for host in hosts:
        phi = np.array([fundamental_function(host, t) for t in ts])
        worst = max(worst, float(np.max(np.maximum(phi[:-1] - phi[1:], 0.0))))
        ratio = phi / ts
        worst = max(worst, float(np.max(np.maximum(ratio[1:] - ratio[:-1], 0.0))))
    status = "pass" if worst <= tol else "fail"
    return CheckResult(
        "sf-fundamental-quasiconcave",
        "fundamental functions increase while phi(t)/t decreases",
        status, {"worst_violation": worst}, tol,
    )


def check_conjugate_duality(cfg: RunConfig) -> CheckResult:
    tol = 1e-6
    worst = 0.0
    from .orlicz import _golden_max

    for p in (1.5, 2.0, 3.0):
        M = power(p)
        for t in np.geomspace(0.1, 10.0, 25):
            # numeric conjugate of the conjugate, refined around the argmax
            def outer(log_u):
                u = math.exp(log_u)
                return t * u - young_conjugate(M, u)

            grid = np.linspace(math.log(1e-6), math.log(1e4), 300)
            vals = [outer(s) for s in grid]
            k = int(np.argmax(vals))
            _, double = _golden_max(outer, grid[max(k - 1, 0)],
                                    grid[min(k + 1, len(grid) - 1)], iters=90)
            worst = max(worst, abs(double - M(t)) / max(1.0, M(t)))
    status = "pass" if worst <= tol else "fail"
    return CheckResult(
        "sf-conjugate-duality",
        "the Young conjugate applied twice recovers the power function",
        status, {"worst_relative_error": worst}, tol,
    )


def check_dilation_submultiplicative(cfg: RunConfig) -> CheckResult:
    eps = 5e-3
    M = power_log(2, 1)
    g = M.inverse
    worst = 0.0
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for u1, u2 in ((2.0, 3.0), (4.0, 4.0), (0.5, 8.0), (1.5, 1.5)):
            lhs = dilation_function(g, u1 * u2, grid_points=513)
            rhs = (dilation_function(g, u1, grid_points=513)
                   * dilation_function(g, u2, grid_points=513))
            worst = max(worst, lhs / (rhs * (1 + eps)) - 1.0)
    status = "pass" if worst <= 0.0 else "fail"
    return CheckResult(
        "sf-dilation-submultiplicative",
        "dilation functions are submultiplicative up to grid slack",
        status, {"worst_excess": worst}, eps,
    )


# -- rearrangement --------------------------------------------------------------

def check_rearrangement_equimeasurable(cfg: RunConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed)
    tol = 1e-12
    worst = 0.0
    for _ in range(30):
        f = _random_step(rng, atoms=int(rng.integers(1, 7)))
        r = decreasing_rearrangement(f)
        for tau in np.linspace(0.0, f.sup_norm() * 1.1, 9):
            worst = max(worst, abs(distribution_function(f, tau)
                                   - distribution_function(r, tau)))
    status = "pass" if worst <= tol else "fail"
    return CheckResult(
        "ra-distribution-preserved",
        "rearrangement preserves the distribution function at every level",
        status, {"worst_gap": worst}, tol,
    )


def check_rearrangement_mass(cfg: RunConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 1)
    tol = 1e-12
    worst = 0.0
    for _ in range(30):
        f = _random_step(rng, atoms=int(rng.integers(1, 7)))
        r = decreasing_rearrangement(f)
        worst = max(worst, abs(r.mass() - f.mass()))
    status = "pass" if worst <= tol else "fail"
    return CheckResult(
        "ra-mass-conserved",
        "the rearrangement integral equals the total atom mass",
        status, {"worst_gap": worst}, tol,
    )


# -- norms -----------------------------------------------------------------------

def _sample_hosts_with_elements(rng, n=5):
    M = power_log(2, 0.5)
    hosts = [
        LatticeSpec.lp(1), LatticeSpec.lp(2), LatticeSpec.lp(math.inf),
        LatticeSpec.c0(), LatticeSpec.orlicz_seq(M),
        LatticeSpec.weighted_lp(2, rng.uniform(0.5, 2.0, n)),
    ]
    return hosts


def check_norm_lattice_monotone(cfg: RunConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 2)
    tol = cfg.tolerance("chain_slack")
    worst = 0.0
    n = 5
    for host in _sample_hosts_with_elements(rng, n):
        for _ in range(20):
            b = rng.normal(0.0, 2.0, n)
            a = b * rng.uniform(0.0, 1.0, n)
            worst = max(worst, seq_norm(a, host) - seq_norm(b, host))
    for host in (LatticeSpec.lorentz(2, 3), LatticeSpec.orlicz_fn(power(2))):
        for _ in range(10):
            f = _random_step(rng)
            g = StepFunction(
                list(zip(f.values * rng.uniform(0.0, 1.0, len(f)), f.measures)),
                check_total=False,
            )
            worst = max(worst, host_norm(g, host) - host_norm(f, host))
    status = "pass" if worst <= tol else "fail"
    return CheckResult(
        "no-lattice-monotone",
        "coordinatewise domination of moduli implies norm domination",
        status, {"worst_violation": worst}, tol,
    )


def check_norm_rearrangement_invariance(cfg: RunConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 3)
    tol = 1e-12
    worst = 0.0
    n = 6
    for host in (LatticeSpec.lp(1.7), LatticeSpec.lp(math.inf), LatticeSpec.c0(),
                 LatticeSpec.orlicz_seq(power(2))):
        for _ in range(20):
            a = rng.normal(0.0, 1.0, n)
            perm = rng.permutation(n)
            worst = max(worst, abs(seq_norm(a, host) - seq_norm(a[perm], host)))
    status = "pass" if worst <= tol else "fail"
    return CheckResult(
        "no-rearrangement-invariant",
        "norms of non-weighted sequence hosts are permutation invariant",
        status, {"worst_gap": worst}, tol,
    )


def check_norm_homogeneity_triangle(cfg: RunConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 4)
    tol = cfg.tolerance("shape_tol")
    worst = 0.0
    n = 5
    for host in _sample_hosts_with_elements(rng, n):
        for _ in range(15):
            a, b = rng.normal(0.0, 1.0, n), rng.normal(0.0, 1.0, n)
            c = float(rng.normal(0.0, 2.0))
            worst = max(worst, abs(seq_norm(c * a, host) - abs(c) * seq_norm(a, host)))
            worst = max(
                worst, seq_norm(a + b, host) - seq_norm(a, host) - seq_norm(b, host)
            )
    for p, q in ((2, 1), (2, 3)):
        host = LatticeSpec.lorentz(p, q)
        cq = lorentz_quasi_constant(p, q)
        for _ in range(10):
            f = _random_step(rng, atoms=3, total=0.4)
            g = _random_step(rng, atoms=3, total=0.4)
            fg = StepFunction(f.atoms + g.atoms, check_total=False)
            worst = max(
                worst,
                host_norm(fg, host) - cq * (host_norm(f, host) + host_norm(g, host)),
            )
    status = "pass" if worst <= tol else "fail"
    return CheckResult(
        "no-homogeneity-triangle",
        "norms are homogeneous and (quasi-)subadditive with the documented constant",
        status, {"worst_violation": worst}, tol,
    )


def check_luxemburg_attained(cfg: RunConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 5)
    tol = 1e-8
    worst = 0.0
    for M in (power(2), power_log(2, 1), power(1.5)):
        for _ in range(15):
            f = _random_step(rng, atoms=int(rng.integers(1, 6)))
            lam = luxemburg_norm(f, M)
            modular = float(np.dot(M(np.abs(f.values) / lam), f.measures))
            worst = max(worst, abs(modular - 1.0))
    status = "pass" if worst <= tol else "fail"
    return CheckResult(
        "no-luxemburg-attained",
        "the modular at the Luxemburg norm equals one for nonzero functions",
        status, {"worst_gap": worst}, tol,
    )


# -- optimal sequence functionals -------------------------------------------------

def check_embedding_chain(cfg: RunConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 6)
    slack = cfg.tolerance("chain_slack")
    worst = 0.0
    oc = cfg.optim()
    for host in _closed_hosts():
        for _ in range(25):
            n = int(rng.integers(1, 8))
            a = rng.normal(0.0, 2.0, n)
            xu = upper_sequence_norm(a, host, oc).value
            xl = lower_sequence_norm(a, host, oc).value
            sup, one = lp_norm(a, math.inf), lp_norm(a, 1.0)
            worst = max(worst, sup - xl, xl - xu, xu - one)
    orlicz_hosts = [LatticeSpec.orlicz_fn(power(2)),
                    LatticeSpec.orlicz_fn(power(2)),
                    LatticeSpec.orlicz_fn(power_log(2, 1))]
    for host in orlicz_hosts:
        a = np.abs(rng.normal(0.0, 1.0, 3)) + 0.1
        xu = upper_sequence_norm(a, host, oc)
        xl = lower_sequence_norm(a, host, oc)
        worst = max(worst, lp_norm(a, math.inf) - xl.hi, xl.lo - xu.hi,
                    xu.lo - lp_norm(a, 1.0))
    status = "pass" if worst <= slack else "fail"
    return CheckResult(
        "os-embedding-chain",
        "sup norm <= lower functional <= upper functional <= sum norm",
        status, {"worst_violation": worst}, slack,
    )


def check_optimal_symmetry(cfg: RunConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 7)
    tol = cfg.tolerance("shape_tol")
    worst = 0.0
    oc = cfg.optim()
    for host in _closed_hosts():
        for _ in range(10):
            n = int(rng.integers(2, 7))
            a = rng.normal(0.0, 1.0, n)
            perm = rng.permutation(n)
            for fn in (upper_sequence_norm, lower_sequence_norm, disjoint_infimum):
                worst = max(worst, abs(fn(a, host, oc).value - fn(a[perm], host, oc).value))
    host = LatticeSpec.orlicz_fn(power(2))
    a = np.array([0.5, 1.5, 1.0])
    r1 = upper_sequence_norm(a, host, oc)
    r2 = upper_sequence_norm(a[::-1].copy(), host, oc)
    overlap = r1.lo <= r2.hi + tol and r2.lo <= r1.hi + tol
    status = "pass" if worst <= tol and overlap else "fail"
    return CheckResult(
        "os-symmetric",
        "the three functionals are symmetric under coordinate permutations",
        status, {"worst_gap": worst, "orlicz_overlap": overlap}, tol,
    )


def check_truncation_contractive(cfg: RunConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 8)
    tol = cfg.tolerance("chain_slack")
    worst = 0.0
    oc = cfg.optim()
    for host in _closed_hosts():
        for _ in range(10):
            n = int(rng.integers(2, 7))
            a = rng.normal(0.0, 1.0, n)
            for fn in (upper_sequence_norm, lower_sequence_norm, disjoint_infimum):
                worst = max(worst, fn(a[:-1], host, oc).value - fn(a, host, oc).value)
    host = LatticeSpec.orlicz_fn(power(2))
    a = np.array([1.0, 0.7, 0.4])
    worst_orlicz = (upper_sequence_norm(a[:-1], host, oc).value
                    - upper_sequence_norm(a, host, oc).value)
    status = "pass" if worst <= tol and worst_orlicz <= 1e-6 else "fail"
    return CheckResult(
        "os-truncation-contractive",
        "dropping the last coordinate never increases any functional",
        status, {"worst_violation": worst, "orlicz_violation": worst_orlicz}, tol,
    )


def check_disjoint_blocks(cfg: RunConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 9)
    tol = cfg.tolerance("chain_slack")
    worst = 0.0
    oc = cfg.optim()
    for p in (1.0, 2.0, 3.0):
        host = LatticeSpec.lp(p)
        for _ in range(10):
            blocks = [rng.normal(0.0, 1.0, int(rng.integers(1, 4))) for _ in range(3)]
            disjoint_sum = np.concatenate(blocks)
            norms = np.array([upper_sequence_norm(b, host, oc).value for b in blocks])
            lhs = upper_sequence_norm(disjoint_sum, host, oc).value
            rhs = upper_sequence_norm(norms, host, oc).value
            worst = max(worst, lhs - rhs)
            lo_lhs = lower_sequence_norm(norms, host, oc).value
            lo_rhs = lower_sequence_norm(disjoint_sum, host, oc).value
            worst = max(worst, lo_lhs - lo_rhs)
    status = "pass" if worst <= tol else "fail"
    return CheckResult(
        "os-disjoint-blocks",
        "disjoint block sums obey the upper/lower functional inequalities",
        status, {"worst_violation": worst}, tol,
    )


def check_idempotent(cfg: RunConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 10)
    tol = cfg.tolerance("exactness")
    worst = 0.0
    oc = cfg.optim()
    for p in (1.0, 2.0, 4.0):
        host = LatticeSpec.lp(p)
        for _ in range(10):
            a = rng.normal(0.0, 1.0, int(rng.integers(1, 7)))
            once = upper_sequence_norm(a, host, oc).value
            twice = upper_sequence_norm(a, LatticeSpec.lp(p), oc).value
            worst = max(worst, abs(once - twice))
            lo_once = lower_sequence_norm(a, host, oc).value
            worst = max(worst, abs(lo_once - once))
    status = "pass" if worst <= tol else "fail"
    return CheckResult(
        "os-idempotent",
        "reapplying the construction to its own l_p output changes nothing",
        status, {"worst_gap": worst}, tol,
    )


def check_index_consistency(cfg: RunConfig) -> CheckResult:
    tol = 0.05
    oc = cfg.optim()
    worst = 0.0
    for host in (LatticeSpec.lp(2), LatticeSpec.lp(3), LatticeSpec.lorentz(2, 3),
                 LatticeSpec.lorentz(3, 2)):
        ns = np.array([2, 4, 8, 16, 32])
        vals = np.array([
            upper_sequence_norm(np.ones(n), host, oc).value for n in ns
        ])
        slope = float(np.polyfit(np.log(ns), np.log(vals), 1)[0])
        delta = grobler_dodds(host).delta
        worst = max(worst, abs(1.0 / slope - delta))
    status = "pass" if worst <= tol else "fail"
    return CheckResult(
        "os-index-consistency",
        "the all-ones growth exponent of the upper functional matches the upper index",
        status, {"worst_gap": worst}, tol,
    )


def check_family_validator(cfg: RunConfig) -> CheckResult:
    host = LatticeSpec.lp(2)
    overlapping = DisjointFamily(
        host,
        [SeqVector([1.0, 0.0, 0.0]), SeqVector([1.0, 0.0, 0.0])],
    )
    try:
        overlapping.validate()
        status = "fail"
    except InvalidSpecError:
        status = "pass"
    return CheckResult(
        "os-family-validator",
        "families with overlapping supports are rejected before any norm computation",
        status, {}, 0.0,
    )


# -- decomposability ---------------------------------------------------------------

def check_one_decomposable(cfg: RunConfig) -> CheckResult:
    tol = 1e-9
    worst = 0.0
    pairs = [
        (LatticeSpec.lp(2), LatticeSpec.lp(1)),
        (LatticeSpec.lp(math.inf), LatticeSpec.lp(1)),
        (LatticeSpec.lorentz(2, 3), LatticeSpec.lorentz(3, 2)),
    ]
    for X, Y in pairs:
        d = decomposability_constant(X, Y, 1.0, n_max=6, seed=cfg.seed)
        worst = max(worst, d.empirical - 1.0)
    status = "pass" if worst <= tol else "fail"
    return CheckResult(
        "dc-one-decomposable",
        "every host pair is relatively 1-decomposable with constant one",
        status, {"worst_excess": worst}, tol,
    )


def check_monotone_in_s(cfg: RunConfig) -> CheckResult:
    tol = 1e-9
    X, Y = LatticeSpec.lp(math.inf), LatticeSpec.lp(1)
    values = [
        decomposability_constant(X, Y, s, n_max=8, seed=cfg.seed).empirical
        for s in (1.0, 2.0, 4.0, math.inf)
    ]
    worst = max(
        (values[i] - values[i + 1] for i in range(len(values) - 1)), default=0.0
    )
    status = "pass" if worst <= tol else "fail"
    return CheckResult(
        "dc-monotone-in-s",
        "the empirical constant is nondecreasing in the summability exponent",
        status, {"values": values, "worst_drop": worst}, tol,
    )


def check_holder_boundary(cfg: RunConfig) -> CheckResult:
    tol_const, tol_slope = 1e-9, 0.05
    worst_const, worst_slope = 0.0, 0.0
    cases = [
        (2.0, 1.0, 2.0),     # feasible boundary
        (2.0, 1.0, 4.0),     # infeasible, exponent 1/1 - 1/2 - 1/4 = 1/4
        (math.inf, 1.0, 2.0),  # infeasible, exponent 1/2
        (3.0, 2.0, 6.0),     # feasible boundary
    ]
    for q, p, s in cases:
        expected = max(0.0, 1.0 / p - (0.0 if math.isinf(q) else 1.0 / q)
                       - (0.0 if math.isinf(s) else 1.0 / s))
        d = decomposability_constant(
            LatticeSpec.lp(q), LatticeSpec.lp(p), s, n_max=32, seed=cfg.seed
        )
        if expected == 0.0:
            worst_const = max(worst_const, abs(d.empirical - 1.0))
        else:
            worst_slope = max(worst_slope, abs(d.growth_exponent - expected))
    status = "pass" if worst_const <= tol_const and worst_slope <= tol_slope else "fail"
    return CheckResult(
        "dc-holder-boundary",
        "constants are one inside the exponent triangle and grow at the predicted rate outside",
        status, {"worst_const": worst_const, "worst_slope": worst_slope}, tol_slope,
    )


def check_product_sandwich(cfg: RunConfig) -> CheckResult:
    ok = True
    rows = []
    for q, p in ((2.0, 1.0), (3.0, 1.5)):
        s = 1.0 / (1.0 / p - 1.0 / q)
        rep = estimate_product_infimum(
            LatticeSpec.lp(q), LatticeSpec.lp(p), s, n_max=8, seed=cfg.seed
        )
        rows.append({"q": q, "p": p, "s": s, "value": rep["value"],
                     "sandwich_ok": rep.get("sandwich_ok")} )
        ok = ok and bool(rep.get("sandwich_ok"))
    return CheckResult(
        "dc-product-sandwich",
        "the estimate-product infimum lies between the constant and its square",
        "pass" if ok else "fail", {"cases": rows}, 1.25,
    )


# -- interpolation -------------------------------------------------------------------

def check_kcurve_shape(cfg: RunConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 11)
    tol = cfg.tolerance("shape_tol")
    ok = True
    for _ in range(5):
        f = _random_step(rng, atoms=int(rng.integers(1, 6)))
        ok = ok and k_curve(f, CoupleSpec.l1_linf(), 1e-3, 1e3, 41).check_shape(tol)["ok"]
    couple = CoupleSpec.weighted(1, rng.uniform(0.5, 2, 5), 1, rng.uniform(0.5, 2, 5))
    for _ in range(5):
        x = rng.normal(0.0, 1.0, 5)
        ok = ok and k_curve(x, couple, 1e-3, 1e3, 41).check_shape(tol)["ok"]
    couple2 = CoupleSpec.weighted(2, rng.uniform(0.5, 2, 4), 3, rng.uniform(0.5, 2, 4))
    for _ in range(2):
        x = rng.normal(0.0, 1.0, 4)
        ok = ok and k_curve(x, couple2, 1e-2, 1e2, 25).check_shape(1e-7)["ok"]
    return CheckResult(
        "in-kcurve-shape",
        "K-curves are nonnegative, nondecreasing, concave, with K(t)/t nonincreasing",
        "pass" if ok else "fail", {}, tol,
    )


def check_k_subadditive(cfg: RunConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 12)
    tol = cfg.tolerance("shape_tol")
    worst = 0.0
    couple = CoupleSpec.weighted(1, np.ones(5), math.inf, rng.uniform(0.5, 2, 5))
    for _ in range(20):
        x, z = rng.normal(0.0, 1.0, 5), rng.normal(0.0, 1.0, 5)
        t = float(np.exp(rng.normal(0.0, 2.0)))
        worst = max(
            worst,
            k_functional(t, x + z, couple)
            - k_functional(t, x, couple) - k_functional(t, z, couple),
        )
    status = "pass" if worst <= tol else "fail"
    return CheckResult(
        "in-k-subadditive",
        "K(t, x+z) never exceeds K(t, x) + K(t, z)",
        status, {"worst_violation": worst}, tol,
    )


def check_substochastic_majorization(cfg: RunConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 13)
    ok = True
    for _ in range(50):
        n = int(rng.integers(1, 7))
        S = rng.uniform(0.0, 1.0, (n, n))
        S /= max(float(S.sum(axis=0).max()), float(S.sum(axis=1).max()))
        x = rng.normal(0.0, 2.0, n)
        ok = ok and partial_sum_majorization(x, S @ x, 1.0)
    return CheckResult(
        "in-substochastic-majorization",
        "images under doubly substochastic maps are partial-sum majorized",
        "pass" if ok else "fail", {}, 0.0,
    )


def check_rs_matches_majorization(cfg: RunConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 14)
    n = 5
    couple = CoupleSpec.weighted(1, np.ones(n), math.inf, np.ones(n))
    agree = True
    # the ratio of two piecewise-linear K's peaks at an integer breakpoint
    ts = np.concatenate([np.geomspace(1e-4, 10.0 * n, 41),
                         np.arange(1.0, n + 1.0)])
    for _ in range(50):
        x = np.abs(rng.normal(0.0, 1.0, n)) + 0.05
        y = np.abs(rng.normal(0.0, 1.0, n))
        rep = k_ratio_test(x, y, couple, couple, math.inf, ts=ts)
        C = rep["constant"]
        if not partial_sum_majorization(x, y, C * (1 + 1e-9)):
            agree = False
        if partial_sum_majorization(x, y, C * (1 - 1e-6)) and C > 1e-9:
            # C should be the least constant on this finite couple
            agree = False
    return CheckResult(
        "in-rs-majorization-agreement",
        "the sup K-ratio equals the least partial-sum majorization constant",
        "pass" if agree else "fail", {}, 1e-6,
    )


# ids here must match the CheckResult ids the functions report; the meta
# test over the registry asserts the correspondence
REGISTRY = {
    "sf-fundamental-quasiconcave": check_fundamental_quasiconcave,
    "sf-conjugate-duality": check_conjugate_duality,
    "sf-dilation-submultiplicative": check_dilation_submultiplicative,
    "ra-distribution-preserved": check_rearrangement_equimeasurable,
    "ra-mass-conserved": check_rearrangement_mass,
    "no-lattice-monotone": check_norm_lattice_monotone,
    "no-rearrangement-invariant": check_norm_rearrangement_invariance,
    "no-homogeneity-triangle": check_norm_homogeneity_triangle,
    "no-luxemburg-attained": check_luxemburg_attained,
    "os-embedding-chain": check_embedding_chain,
    "os-symmetric": check_optimal_symmetry,
    "os-truncation-contractive": check_truncation_contractive,
    "os-disjoint-blocks": check_disjoint_blocks,
    "os-idempotent": check_idempotent,
    "os-index-consistency": check_index_consistency,
    "os-family-validator": check_family_validator,
    "dc-one-decomposable": check_one_decomposable,
    "dc-monotone-in-s": check_monotone_in_s,
    "dc-holder-boundary": check_holder_boundary,
    "dc-product-sandwich": check_product_sandwich,
    "in-kcurve-shape": check_kcurve_shape,
    "in-k-subadditive": check_k_subadditive,
    "in-substochastic-majorization": check_substochastic_majorization,
    "in-rs-majorization-agreement": check_rs_matches_majorization,
}


def run_verification_suite(config: RunConfig | None = None,
                           selection: list | None = None) -> VerificationSuiteResult:
    """Run the selected registry checks (all by default) in registry order."""
    config = config or RunConfig()
    ids = list(REGISTRY)
    if selection:
        unknown = [s for s in selection if s not in REGISTRY]
        if unknown:
            raise KeyError(f"unknown check ids: {unknown}")
        ids = [i for i in ids if i in set(selection)]
    checks = []
    for cid in ids:
        try:
            checks.append(REGISTRY[cid](config))
        except Exception as exc:  # a crashed check is a failed check
            checks.append(CheckResult(
                cid, "check crashed", "fail", {"error": repr(exc)}, 0.0,
            ))
    return VerificationSuiteResult(checks=checks, seed=config.seed)
