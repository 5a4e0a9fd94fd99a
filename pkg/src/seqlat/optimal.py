"""Optimal upper/lower sequence-space functionals over concrete hosts.

For a host lattice X and a coefficient vector a of length n, three
quantities are computed over families of n unit-norm elements of X with
pairwise disjoint supports:

* the upper functional      sup ||sum a_i x_i||_X
* the disjoint infimum      inf ||sum a_i x_i||_X
* the lower functional      inf over finite decompositions a = sum a^k of
                            the summed disjoint infima

l_p, c_0 and Lorentz hosts admit closed forms (for Lorentz the disjoint
upper min(p,q)- and lower max(p,q)-estimates hold with constant one, by
Minkowski's integral inequality applied to the distribution function of a
disjoint sum, so the identification with l_min / l_max is exact).  Orlicz
hosts are optimized over families of normalized characteristic functions
parametrized by a measure vector on the simplex {m_k > 0, sum m_k <= 1};
results carry honest bound kinds and the equivalence constants used.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import CapExceededError, Delta2ViolationError, InvalidSpecError, UnsupportedHostError
from .norms import (
    host_norm,
    lorentz_norm,
    lp_norm,
    luxemburg_atoms,
    luxemburg_norm,
    musielak_norm,
)
from .orlicz import OrliczFunction, delta2_constant, dilation_function
from .rearrangement import SeqVector, StepFunction, as_vector
from .spaces import BetaSequence, LatticeSpec

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class OptimConfig:
    """Caps and optimizer knobs shared by the sequence-space functionals."""

    n_cap: int = 8                # optimization hosts
    closed_form_cap: int = 10_000
    starts: int = 16
    seed: int = 0
    max_parts: int = 3
    sweeps: int = 60
    rel_tol: float = 1e-6
    golden_iters: int = 25
    m_min: float = 1e-9
    delta2_umax: float = 1e6

    def light(self):
        """Reduced-effort copy used for inner decomposition searches."""
        return replace(self, starts=max(3, self.starts // 5), sweeps=12,
                       golden_iters=18)


@dataclass
class DisjointFamily:
    """n unit-norm elements of the host with pairwise disjoint supports."""

    host: LatticeSpec
    members: list

    def validate(self, norm_tol: float = 1e-9):
        if not self.members:
            raise InvalidSpecError("empty family")
        if all(isinstance(m, SeqVector) for m in self.members):
            seen = set()
            for m in self.members:
                sup = set(int(i) for i in m.support)
                if seen & sup:
                    raise InvalidSpecError("family members have overlapping supports")
                seen |= sup
        elif all(isinstance(m, StepFunction) for m in self.members):
            if all(m.starts is not None for m in self.members):
                intervals = []
                for m in self.members:
                    intervals.extend(m.intervals())
                intervals.sort()
                for (s0, e0), (s1, _) in zip(intervals, intervals[1:]):
                    if s1 < e0 - 1e-12:
                        raise InvalidSpecError("family members have overlapping supports")
            else:
                total = sum(m.total_measure() for m in self.members)
                if total > 1.0 + 1e-12:
                    raise InvalidSpecError(
                        "family supports cannot be disjoint: total measure exceeds 1"
                    )
        else:
            raise InvalidSpecError("family members must share one element type")
        for m in self.members:
            nm = host_norm(m, self.host)
            if abs(nm - 1.0) > norm_tol:
                raise InvalidSpecError(f"family member has norm {nm:.12g}, not 1")
        return self

    def to_json(self):
        return {
            "host": self.host.to_json(),
            "members": [m.to_json() for m in self.members],
        }


@dataclass
class OptimalNormResult:
    """Value of one sequence-space functional plus bound bookkeeping."""

    value: float
    bound_kind: str               # exact | lower_bound | upper_bound | sandwich
    lo: float
    hi: float
    witness: object = None
    iterations: int = 0
    constants: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.lo > self.hi + 1e-12 * max(1.0, abs(self.hi)):
            raise InvalidSpecError("sandwich lower bound exceeds upper bound")

    def to_json(self):
        return {
            "value": self.value,
            "bound_kind": self.bound_kind,
            "lo": self.lo,
            "hi": self.hi,
            "witness": self.witness.to_json() if hasattr(self.witness, "to_json") else self.witness,
            "iterations": self.iterations,
            "constants": self.constants,
        }


SUPPORTED_HOSTS = ("lp", "c0", "lorentz", "orlicz_fn")


def _check_host(a, host: LatticeSpec, config: OptimConfig):
    if host.kind not in SUPPORTED_HOSTS:
        raise UnsupportedHostError(f"host {host.kind!r} not supported here")
    n = len(a)
    cap = config.closed_form_cap if host.kind in ("lp", "c0", "lorentz") else config.n_cap
    if n > cap:
        raise CapExceededError(f"vector length {n} above the cap {cap}")
    if n == 0:
        raise InvalidSpecError("empty coefficient vector")


def _fundamental(M: OrliczFunction, m):
    return 1.0 / M.inverse(1.0 / m)


def _effective_m_min(M: OrliczFunction | None, m_min: float) -> float:
    """Tabulated functions only represent measures down to 1/M(t_end)."""
    if M is not None and M.family == "tabulated":
        return max(m_min, (1.0 + 1e-9) / float(M.knots[1][-1]))
    return m_min


# -- characteristic families -------------------------------------------------

def char_family(host: LatticeSpec, measures) -> DisjointFamily:
    """Normalized characteristic functions over consecutive subintervals."""
    m = np.asarray(measures, dtype=float)
    starts = np.concatenate([[0.0], np.cumsum(m)[:-1]])
    members = []
    for mk, sk in zip(m, starts):
        if host.kind == "orlicz_fn":
            height = 1.0 / _fundamental(host.orlicz, mk)
        else:
            height = mk ** (-1.0 / host.p)
        members.append(StepFunction([(height, mk)], starts=[sk]))
    return DisjointFamily(host, members)


def basis_family(host: LatticeSpec, n: int) -> DisjointFamily:
    """Standard unit vectors as a disjoint family in a sequence host."""
    members = []
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        members.append(SeqVector(e))
    return DisjointFamily(host, members)


def _char_value(host: LatticeSpec, a_abs, measures, phi=None) -> float:
    """||sum a_k chi_k / phi(m_k)|| for the host, on a formal atom list."""
    m = np.asarray(measures, dtype=float)
    if host.kind == "orlicz_fn":
        M = host.orlicz
        if phi is None:
            phi = lambda mk: _fundamental(M, mk)
        heights = np.array([ak / phi(mk) if ak > 0 else 0.0
                            for ak, mk in zip(a_abs, m)])
        return luxemburg_atoms(heights, m, M)
    heights = a_abs * m ** (-1.0 / host.p)
    f = StepFunction(list(zip(heights, m)), check_total=False)
    return lorentz_norm(f, host.p, host.q)


def _char_objective(host: LatticeSpec, a_abs):
    """Characteristic-family objective with memoized fundamental values."""
    if host.kind != "orlicz_fn":
        return lambda m: _char_value(host, a_abs, m)
    M = host.orlicz
    cache = {}

    def phi(mk):
        val = cache.get(mk)
        if val is None:
            val = _fundamental(M, mk)
            cache[mk] = val
        return val

    return lambda m: _char_value(host, a_abs, m, phi=phi)


# -- simplex optimizer --------------------------------------------------------

def _golden_line(f, lo, hi, maximize, iters):
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    sign = 1.0 if maximize else -1.0
    fc, fd = sign * f(c), sign * f(d)
    evals = 2
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = sign * f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = sign * f(d)
        evals += 1
    if fc >= fd:
        return c, sign * fc, evals
    return d, sign * fd, evals


def _structured_starts(a_abs, n, M: OrliczFunction | None, rng, count):
    # ordered so that truncation to few starts keeps the diverse shapes:
    # flat mass, coefficient-matched, separated scales, then random fill
    starts = [np.full(n, 1.0 / n)]
    if M is not None:
        p_hat = 1.0 / math.log2(max(M.inverse(2.0), 1.0 + 1e-9))
        p_hat = min(max(p_hat, 1.0), 64.0)
        w = np.maximum(a_abs, 1e-12) ** p_hat
        starts.append(w / w.sum())
    g = (1e-2) ** np.arange(n, dtype=float)
    starts.append(g / g.sum())
    starts.append(np.full(n, 0.01 / n))
    if M is not None:
        # equal measures at the dilation-optimal total mass
        vs = np.geomspace(1.0, 1e5, 41)
        ratios = [M.inverse(n * v) / M.inverse(v) for v in vs]
        v_star = vs[int(np.argmax(ratios))]
        starts.append(np.full(n, 1.0 / (n * v_star)))
        w = np.maximum(a_abs, 1e-12) ** p_hat
        starts.append(0.5 * w / w.sum())
    starts.append(np.full(n, 0.5 / n))
    g = (1e-1) ** np.arange(n, dtype=float)
    starts.append(g / g.sum())
    starts.append(np.full(n, 0.1 / n))
    while len(starts) < count:
        m = rng.dirichlet(np.ones(n)) * rng.uniform(0.2, 1.0)
        starts.append(m)
    return starts[:count]


def simplex_search(objective, n, config: OptimConfig, maximize=True,
                   a_abs=None, M=None):
    """Multi-start projected coordinate ascent/descent over the open simplex.

    Measures are optimized in log coordinates; each coordinate move is a
    golden-section line search respecting m_k >= m_min and sum m <= 1.
    Returns (best measure vector, best value, objective evaluations).
    """
    rng = np.random.default_rng(config.seed)
    if a_abs is None:
        a_abs = np.ones(n)
    count = max(config.starts, 1)
    starts = _structured_starts(a_abs, n, M, rng, count)
    best_m, best_val, evals = None, None, 0
    better = (lambda x, y: x > y) if maximize else (lambda x, y: x < y)
    m_min = _effective_m_min(M, config.m_min)
    log_min = math.log(m_min)
    for m0 in starts:
        m = np.clip(np.asarray(m0, dtype=float), m_min, 1.0)
        if m.sum() > 1.0:
            # shrink toward the floor so every entry stays representable
            t = (1.0 - 1e-12 - n * m_min) / (m.sum() - n * m_min)
            m = m_min + (m - m_min) * t
        val = objective(m)
        evals += 1
        for _ in range(config.sweeps):
            prev = val
            for k in range(n):
                room = 1.0 - (m.sum() - m[k])
                hi = math.log(max(room, m_min))
                if hi <= log_min:
                    continue

                def line(theta, k=k):
                    trial = m.copy()
                    trial[k] = math.exp(theta)
                    return objective(trial)

                theta, fval, used = _golden_line(
                    line, log_min, hi, maximize, config.golden_iters
                )
                evals += used
                if better(fval, val):
                    val = fval
                    m[k] = math.exp(theta)
            if abs(val - prev) <= config.rel_tol * max(abs(prev), 1e-30):
                break
        if best_val is None or better(val, best_val):
            best_val, best_m = val, m.copy()
    return best_m, best_val, evals


# -- the three functionals ----------------------------------------------------

def upper_sequence_norm(a, host: LatticeSpec, config: OptimConfig | None = None) -> OptimalNormResult:
    """sup of ||sum a_i x_i||_X over disjoint unit families of size n."""
    config = config or OptimConfig()
    x = as_vector(a)
    _check_host(x, host, config)
    ax = np.abs(x)
    n = len(x)

    if host.kind == "lp":
        value = lp_norm(ax, host.p)
        return OptimalNormResult(value, "exact", value, value,
                                 witness=basis_family(host, n))
    if host.kind == "c0":
        value = lp_norm(ax, math.inf)
        return OptimalNormResult(value, "exact", value, value,
                                 witness=basis_family(host, n))
    if host.kind == "lorentz":
        return _lorentz_result(ax, host, exponent=min(host.p, host.q), upper=True)

    M = host.orlicz
    best_m, best_val, evals = simplex_search(
        _char_objective(host, ax), n, config, maximize=True, a_abs=ax, M=M,
    )
    K = delta2_constant(M, config.delta2_umax).constant
    witness = char_family(host, best_m)
    return OptimalNormResult(
        best_val, "sandwich", best_val, best_val * (K + 1.0),
        witness=witness, iterations=evals,
        constants={"delta2": K, "upper_equivalence": K + 1.0},
    )


def disjoint_infimum(a, host: LatticeSpec, config: OptimConfig | None = None) -> OptimalNormResult:
    """inf of ||sum a_i x_i||_X over disjoint unit families of size n."""
    config = config or OptimConfig()
    x = as_vector(a)
    _check_host(x, host, config)
    ax = np.abs(x)
    n = len(x)

    if host.kind == "lp":
        value = lp_norm(ax, host.p)
        return OptimalNormResult(value, "exact", value, value,
                                 witness=basis_family(host, n))
    if host.kind == "c0":
        value = lp_norm(ax, math.inf)
        return OptimalNormResult(value, "exact", value, value,
                                 witness=basis_family(host, n))
    if host.kind == "lorentz":
        return _lorentz_result(ax, host, exponent=max(host.p, host.q), upper=False)

    M = host.orlicz
    best_m, best_val, evals = simplex_search(
        _char_objective(host, ax), n, config, maximize=False, a_abs=ax, M=M,
    )
    lo = lp_norm(ax, math.inf)
    constants = {}
    if M.family == "power":
        # the host is then isometrically L_p, whose lower p-estimate constant is 1
        lo = max(lo, lp_norm(ax, M.p))
        constants["lower_estimate_exponent"] = M.p
    lo = min(lo, best_val)  # guard against root-finder wobble at equality
    witness = char_family(host, best_m)
    return OptimalNormResult(
        best_val, "upper_bound", lo, best_val,
        witness=witness, iterations=evals, constants=constants,
    )


def lower_sequence_norm(a, host: LatticeSpec, config: OptimConfig | None = None) -> OptimalNormResult:
    """Decomposition infimum of the disjoint infima, a = sum of parts."""
    config = config or OptimConfig()
    x = as_vector(a)
    _check_host(x, host, config)
    ax = np.abs(x)
    n = len(x)

    if host.kind == "lp":
        value = lp_norm(ax, host.p)
        return OptimalNormResult(value, "exact", value, value,
                                 witness=basis_family(host, n))
    if host.kind == "c0":
        value = lp_norm(ax, math.inf)
        return OptimalNormResult(value, "exact", value, value,
                                 witness=basis_family(host, n))
    if host.kind == "lorentz":
        # the disjoint infimum is already the l_max(p,q) norm, so splitting
        # cannot improve on the trivial decomposition
        return _lorentz_result(ax, host, exponent=max(host.p, host.q), upper=False)

    M = host.orlicz
    light = config.light()
    cache = {}
    evals = 0

    def phi_hat(coeffs):
        nonlocal evals
        key = tuple(sorted(round(float(c), 14) for c in coeffs if c > 0))
        if not key:
            return 0.0
        if key not in cache:
            sub = np.array(key)
            _, val, used = simplex_search(
                _char_objective(host, sub), len(sub), light,
                maximize=False, a_abs=sub, M=M,
            )
            evals += used
            cache[key] = val
        return cache[key]

    best = phi_hat(ax)
    best_parts = [ax]
    searched = 1
    for blocks in _index_partitions(n, config.max_parts):
        if len(blocks) == 1:
            continue
        parts = []
        for block in blocks:
            part = np.zeros(n)
            part[list(block)] = ax[list(block)]
            parts.append(part)
        total = sum(phi_hat(p[p > 0]) for p in parts)
        searched += 1
        if total < best:
            best, best_parts = total, parts
    rng = np.random.default_rng(config.seed + 1)
    for _ in range(6):
        # quantized nonnegative splits keep the part cache effective
        parts_count = int(rng.integers(2, config.max_parts + 1))
        shares = rng.choice([0.0, 0.5, 1.0], size=(n, parts_count))
        for i in range(n):
            if shares[i].sum() == 0.0:
                shares[i, int(rng.integers(parts_count))] = 1.0
        shares /= shares.sum(axis=1, keepdims=True)
        parts = [ax * shares[:, j] for j in range(parts_count)]
        total = sum(phi_hat(p[p > 1e-13]) for p in parts)
        searched += 1
        if total < best:
            best, best_parts = total, parts

    lo = lp_norm(ax, math.inf)
    if M.family == "power":
        lo = max(lo, lp_norm(ax, M.p))
    return OptimalNormResult(
        best, "sandwich", lo, best,
        witness={"parts": [list(map(float, p)) for p in best_parts],
                 "searched": searched},
        iterations=evals,
        constants={"max_parts": config.max_parts},
    )


def _lorentz_result(ax, host, exponent, upper):
    """Closed-form Lorentz value with an explicit characteristic witness."""
    p, q = host.p, host.q
    value = lp_norm(ax, exponent)
    pos = ax[ax > 0]
    witness = None
    gap = None
    if pos.size:
        if exponent == p:
            # equal heights: m_k proportional to a_k^p merges into one block
            m = pos ** p
            m = m / m.sum()
        else:
            # separated scales approach the l_q identification from inside
            g = (1e-5) ** np.arange(pos.size, dtype=float)
            m = g / g.sum()
        achieved = _char_value(host, pos, m)
        gap = abs(achieved - value) / max(value, 1e-300)
        witness = {"measures": list(map(float, m)), "achieved": achieved,
                   "relative_gap": gap}
    return OptimalNormResult(
        value, "exact", value, value, witness=witness,
        constants={"upper_equivalence": 1.0, "lower_equivalence": 1.0,
                   "identified_exponent": exponent},
    )


def _index_partitions(n, max_parts):
    """Set partitions of range(n) into at most max_parts blocks.

    Exhaustive for n <= 6; contiguous blocks only for larger n to keep the
    search desk-scale.
    """
    if n <= 6:
        def rec(i, blocks):
            if i == n:
                yield [tuple(b) for b in blocks]
                return
            for b in blocks:
                b.append(i)
                yield from rec(i + 1, blocks)
                b.pop()
            if len(blocks) < max_parts:
                blocks.append([i])
                yield from rec(i + 1, blocks)
                blocks.pop()
        yield from rec(1, [[0]]) if n else iter(())
    else:
        idx = list(range(n))
        for parts in range(2, max_parts + 1):
            for cuts in itertools.combinations(range(1, n), parts - 1):
                bounds = [0, *cuts, n]
                yield [tuple(idx[lo:hi]) for lo, hi in zip(bounds, bounds[1:])]


# -- appendix-style reduction to characteristic functions ----------------------

def orlicz_disjoint_reduction(ys, M: OrliczFunction, delta2_umax: float = 1e6,
                              delta2_cap: float = 1e6):
    """Replace a disjoint family by characteristic multiples with controlled
    norms.

    For pairwise disjoint step functions y_k this constructs h_k (one
    characteristic multiple each) and the combined 2n-member family f
    (the h's together with the threshold remainders g_k), and reports the
    norm chains

        1/4 ||y_k|| <= ||h_k|| <= ||y_k||,
        1/2 ||y_k|| <= ||f_k|| <= 3/2 ||y_k||   (f_k := h_k, k <= n),
        ||sum h|| <= ||sum y|| <= (K+1) ||sum f||,

    with K the doubling constant of M.
    """
    if not ys:
        raise InvalidSpecError("empty family")
    total = sum(y.total_measure() for y in ys)
    if total > 1.0 + 1e-12:
        raise InvalidSpecError("family supports cannot be disjoint in [0,1]")
    if all(y.starts is not None for y in ys):
        intervals = []
        for y in ys:
            intervals.extend(y.intervals())
        intervals.sort()
        for (s0, e0), (s1, _) in zip(intervals, intervals[1:]):
            if s1 < e0 - 1e-12:
                raise InvalidSpecError("family members have overlapping supports")
    d2 = delta2_constant(M, delta2_umax, cap=delta2_cap)
    if not d2.satisfied:
        raise Delta2ViolationError(
            f"doubling constant {d2.constant:g} exceeds the cap {delta2_cap:g}"
        )
    K = d2.constant

    hs, gs, members = [], [], []
    for k, y in enumerate(ys):
        y = abs(y)
        norm_y = luxemburg_norm(y, M)
        supp = y.total_measure()
        if norm_y == 0.0 or supp == 0.0:
            raise InvalidSpecError("family members must be nonzero")
        c = norm_y / (2.0 * _fundamental(M, supp))
        keep = y.values >= c
        u_vals, u_meas = y.values[keep], y.measures[keep]
        g_meas = supp - float(u_meas.sum())
        norm_u = luxemburg_atoms(u_vals, u_meas, M)
        modular_u = float(np.dot(M(u_vals), u_meas))
        r = _solve_height(M, u_vals, norm_u, modular_u)
        phi_supp = _fundamental(M, supp)
        if norm_u <= r * phi_supp:
            d = 1.0 / M(r / norm_u)
        else:
            d = supp
        d = min(d, supp)
        h = StepFunction([(r, d)], check_total=False)
        g = (StepFunction([(c, g_meas)], check_total=False)
             if g_meas > 1e-15 else StepFunction([], check_total=False))
        hs.append(h)
        gs.append(g)
        members.append({
            "k": k,
            "norm_y": norm_y,
            "norm_u": norm_u,
            "norm_h": luxemburg_norm(h, M),
            "norm_g": luxemburg_norm(g, M),
            "threshold": c,
            "height": r,
            "measure": d,
        })

    fs = hs + gs

    def stacked(funcs):
        vals = np.concatenate([f.values for f in funcs]) if funcs else np.array([])
        meas = np.concatenate([f.measures for f in funcs]) if funcs else np.array([])
        return luxemburg_atoms(vals, meas, M)

    norm_sum_h = stacked(hs)
    norm_sum_y = stacked([abs(y) for y in ys])
    norm_sum_f = stacked(fs)
    tol = 1e-9
    report = {
        "delta2": K,
        "members": members,
        "h_chain_ok": all(
            0.25 * m["norm_y"] <= m["norm_h"] + tol * m["norm_y"]
            and m["norm_h"] <= m["norm_y"] * (1 + tol)
            for m in members
        ),
        "f_chain_ok": all(
            0.5 * m["norm_y"] <= m["norm_h"] + tol * m["norm_y"]
            and m["norm_h"] <= 1.5 * m["norm_y"] * (1 + tol)
            for m in members
        ),
        "g_bound_ok": all(
            m["norm_g"] <= 0.5 * m["norm_y"] * (1 + tol) for m in members
        ),
        "norm_sum_h": norm_sum_h,
        "norm_sum_y": norm_sum_y,
        "norm_sum_f": norm_sum_f,
        "sum_chain_ok": (
            norm_sum_h <= norm_sum_y * (1 + tol)
            and norm_sum_y <= (K + 1.0) * norm_sum_f * (1 + tol)
        ),
    }
    return hs, fs, report


def _solve_height(M, values, norm_u, modular_u):
    """Solve M(r) = M(r / ||u||) * modular_u for r within the value range.

    The two sides coincide identically for the power family; the argmin of
    the residual over the bracket is returned when no sign change exists.
    """
    from scipy.optimize import brentq

    v_min, v_max = float(np.min(values)), float(np.max(values))

    def residual(r):
        return M(r) - M(r / norm_u) * modular_u

    if v_max <= v_min * (1 + 1e-14):
        return v_max
    grid = np.geomspace(v_min, v_max, 64)
    res = np.array([residual(r) for r in grid])
    signs = np.sign(res)
    flips = np.nonzero(np.diff(signs) != 0)[0]
    if flips.size:
        i = int(flips[0])
        return float(brentq(residual, grid[i], grid[i + 1], rtol=1e-12))
    return float(grid[int(np.argmin(np.abs(res)))])


# -- fundamental-sequence sandwich and the Musielak route ----------------------

def upper_fundamental_sandwich(M: OrliczFunction, n: int,
                               config: OptimConfig | None = None) -> dict:
    """Upper functional of the all-ones vector versus the dilation of M^{-1}.

    The dilation value pins the same quantity between factors 1 and 2, so
    the two intervals must overlap after applying the equivalence constants.
    """
    config = config or OptimConfig()
    config = replace(config, n_cap=max(n, config.n_cap))
    host = LatticeSpec.orlicz_fn(M)
    res = upper_sequence_norm(np.ones(n), host, config)
    dil = dilation_function(M.inverse, float(n))
    lo_d, hi_d = dil, 2.0 * dil
    tol = 1e-9
    overlap = res.lo <= hi_d * (1 + tol) and lo_d <= res.hi * (1 + tol)
    return {
        "n": n,
        "lo": res.lo,
        "hi": res.hi,
        "dilation": dil,
        "dilation_interval": [lo_d, hi_d],
        "overlap": overlap,
        "iterations": res.iterations,
    }


def musielak_intersection_norm(a, M: OrliczFunction,
                               config: OptimConfig | None = None) -> OptimalNormResult:
    """sup over admissible scaling sequences of the Musielak sequence norm.

    Scalings are parametrized by beta_k = M^{-1}(1/m_k) with m on the budget
    simplex; this is the same search as the upper functional on the Orlicz
    host, evaluated through the Musielak modular instead of the Luxemburg
    integral.
    """
    config = config or OptimConfig()
    x = as_vector(a)
    host = LatticeSpec.orlicz_fn(M)
    _check_host(x, host, config)
    ax = np.abs(x)
    n = len(x)

    inv_cache = {}

    def objective(m):
        betas = np.array([inv_cache.setdefault(mk, M.inverse(1.0 / mk))
                          for mk in np.minimum(m, 1.0)])
        return musielak_norm(ax, BetaSequence(betas, M), M)

    best_m, best_val, evals = simplex_search(
        objective, n, config, maximize=True, a_abs=ax, M=M
    )
    K = delta2_constant(M, config.delta2_umax).constant
    betas = [float(M.inverse(1.0 / mk)) for mk in best_m]
    return OptimalNormResult(
        best_val, "sandwich", best_val, best_val * (K + 1.0),
        witness={"measures": list(map(float, best_m)), "betas": betas},
        iterations=evals,
        constants={"delta2": K, "upper_equivalence": K + 1.0},
    )
