"""Orlicz functions and the scalar machinery built on them.

An Orlicz function here is an increasing convex continuous M on [0, inf)
with M(0) = 0, normalized so that M(1) = 1.  Three families are supported:

* ``power``     M(t) = t**p, p >= 1
* ``powerlog``  M(t) = t**p * (1 + log(max(t, 1)))**a, p >= 1, a >= 0
  (pure power below t = 1, so convexity and the normalization survive)
* ``tabulated`` convex piecewise-linear interpolation through knots,
  rescaled so that M(1) = 1

On top of evaluation and inversion the module provides Young conjugates,
empirical doubling (Delta-2) constants, dilation functions
Phi_g(u) = sup_{v >= max(1, 1/u)} g(u v) / g(v), and fundamental functions
of the supported host lattices.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import (
    DivergenceError,
    DomainOverflowError,
    InvalidSpecError,
    TruncationWarning,
)

ROOT_RTOL = 1e-12        # bracketed root-finding, relative
OPT_RTOL = 1e-8          # 1-D maximization, relative
V_MAX_DEFAULT = 1e6      # truncation window for dilation suprema
CONJUGATE_CAP = 1e12     # divergence cap for Young conjugates

_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # golden ratio step


class OrliczFunction:
    """A normalized Orlicz function M with closed-form or tabulated evaluation."""

    def __init__(self, family, p=None, a=None, knots=None):
        if family not in ("power", "powerlog", "tabulated"):
            raise InvalidSpecError(f"unknown Orlicz family {family!r}")
        self.family = family
        self.p = p
        self.a = a
        self.knots = None
        if family == "power":
            if p is None or p < 1:
                raise InvalidSpecError("power family needs p >= 1")
        elif family == "powerlog":
            if p is None or p < 1:
                raise InvalidSpecError("powerlog family needs p >= 1")
            if a is None or a < 0:
                raise InvalidSpecError("powerlog family needs a >= 0")
        else:
            self.knots = self._normalize_knots(knots)

    @staticmethod
    def _normalize_knots(knots):
        if not knots:
            raise InvalidSpecError("tabulated family needs knots")
        pts = sorted((float(t), float(y)) for t, y in knots)
        if pts[0][0] > 0:
            pts.insert(0, (0.0, 0.0))
        ts = np.array([t for t, _ in pts])
        ys = np.array([y for _, y in pts])
        if ts[0] != 0.0 or ys[0] != 0.0:
            raise InvalidSpecError("tabulated knots must start at M(0) = 0")
        if np.any(np.diff(ts) <= 0):
            raise InvalidSpecError("tabulated knots need strictly increasing t")
        if np.any(np.diff(ys) < 0):
            raise InvalidSpecError("tabulated knots must be nondecreasing")
        slopes = np.diff(ys) / np.diff(ts)
        if np.any(np.diff(slopes) < -1e-10 * max(1.0, slopes.max())):
            raise InvalidSpecError("tabulated knots must be convex")
        if ts[-1] < 1.0:
            raise InvalidSpecError("tabulated knots must cover t = 1")
        at_one = float(np.interp(1.0, ts, ys))
        if at_one <= 0:
            raise InvalidSpecError("tabulated M(1) must be positive before rescaling")
        return ts, ys / at_one

    # -- evaluation ---------------------------------------------------------

    def __call__(self, t):
        """Evaluate M(t); accepts scalars or arrays, t >= 0."""
        t = np.asarray(t, dtype=float)
        if np.any(t < 0):
            raise ValueError("Orlicz functions are defined for t >= 0")
        if self.family == "power":
            out = t ** self.p
        elif self.family == "powerlog":
            out = t ** self.p * (1.0 + np.log(np.maximum(t, 1.0))) ** self.a
        else:
            ts, ys = self.knots
            if np.any(t > ts[-1] * (1 + 1e-12)):
                raise DomainOverflowError(
                    f"t beyond tabulated range [0, {ts[-1]:g}]"
                )
            out = np.interp(t, ts, ys)
        return out if out.ndim else float(out)

    def inverse(self, y):
        """Return t >= 0 with M(t) = y, to relative tolerance 1e-12."""
        if y < 0:
            raise ValueError("inverse needs y >= 0")
        if y == 0.0:
            return 0.0
        if self.family == "power":
            return y ** (1.0 / self.p)
        if self.family == "powerlog":
            if y <= 1.0:
                return y ** (1.0 / self.p)  # below 1 the function is a pure power
            lo, hi = 1.0, 2.0
            while self(hi) < y:
                lo, hi = hi, hi * 2.0
                if hi > 1e300:
                    raise DomainOverflowError("inverse argument overflows")
            return brentq(lambda t: self(t) - y, lo, hi, rtol=ROOT_RTOL)
        ts, ys = self.knots
        if y > ys[-1] * (1 + 1e-12):
            raise DomainOverflowError(f"y beyond tabulated range [0, {ys[-1]:g}]")
        # rightmost preimage, so flat initial segments invert to their sup
        idx = int(np.searchsorted(ys, y, side="right"))
        idx = min(idx, len(ys) - 1)
        y0, y1 = ys[idx - 1], ys[idx]
        t0, t1 = ts[idx - 1], ts[idx]
        if y1 == y0:
            return float(t1)
        return float(t0 + (y - y0) * (t1 - t0) / (y1 - y0))

    # -- serialization ------------------------------------------------------

    def to_json(self):
        if self.family == "power":
            return {"family": "power", "p": self.p}
        if self.family == "powerlog":
            return {"family": "powerlog", "p": self.p, "a": self.a}
        ts, ys = self.knots
        return {"family": "tabulated", "knots": [[float(t), float(y)] for t, y in zip(ts, ys)]}

    @classmethod
    def from_json(cls, obj):
        fam = obj.get("family")
        if fam == "power":
            return cls("power", p=float(obj["p"]))
        if fam == "powerlog":
            return cls("powerlog", p=float(obj["p"]), a=float(obj["a"]))
        if fam == "tabulated":
            return cls("tabulated", knots=obj["knots"])
        raise InvalidSpecError(f"unknown Orlicz family {fam!r}")

    def __repr__(self):
        if self.family == "power":
            return f"OrliczFunction(power, p={self.p})"
        if self.family == "powerlog":
            return f"OrliczFunction(powerlog, p={self.p}, a={self.a})"
        return f"OrliczFunction(tabulated, {len(self.knots[0])} knots)"


def power(p):
    """M(t) = t**p."""
    return OrliczFunction("power", p=float(p))


def power_log(p, a):
    """M(t) = t**p (1 + log_+ t)**a."""
    return OrliczFunction("powerlog", p=float(p), a=float(a))


def tabulated(knots):
    """Convex piecewise-linear M through the given (t, y) knots."""
    return OrliczFunction("tabulated", knots=knots)


def evaluate(M: OrliczFunction, t: float) -> float:
    """Functional form of ``M(t)``."""
    return M(t)


def inverse(M: OrliczFunction, y: float) -> float:
    """Functional form of ``M.inverse(y)``."""
    return M.inverse(y)


# -- Young conjugate --------------------------------------------------------

def _golden_max(f, lo, hi, iters=80):
    """Golden-section maximization of a unimodal f on [lo, hi]."""
    a, b = lo, hi
    c = b - _PHI * (b - a)
    d = a + _PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if b - a <= OPT_RTOL * max(1.0, abs(a), abs(b)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _PHI * (b - a)
            fd = f(d)
    xs = [(fc, c), (fd, d)]
    return max(xs)[::-1]


def young_conjugate(M: OrliczFunction, u: float, cap: float = CONJUGATE_CAP) -> float:
    """Young conjugate sup_{t>0} (u t - M(t)).

    Closed form for the power family; otherwise a 1-D concave maximization
    over log t to relative tolerance 1e-8.  Raises DivergenceError when the
    supremum exceeds ``cap``.
    """
    if u < 0:
        raise ValueError("conjugate argument must be nonnegative")
    if u == 0.0:
        return 0.0
    if M.family == "power":
        p = M.p
        if p == 1.0:
            if u <= 1.0:
                return 0.0
            raise DivergenceError("conjugate of t diverges for u > 1")
        q = p / (p - 1.0)
        return (p - 1.0) * (u / p) ** q

    def objective(log_t):
        t = math.exp(log_t)
        try:
            return u * t - M(t)
        except DomainOverflowError:
            return -math.inf

    if M.family == "tabulated":
        hi = math.log(M.knots[0][-1])
    else:
        # expand until past the peak or over the cap
        hi = 0.0
        prev = objective(hi)
        while True:
            nxt = objective(hi + 1.0)
            if nxt > cap:
                raise DivergenceError("conjugate exceeds cap, u outside effective domain")
            if nxt < prev:
                hi += 1.0
                break
            prev = nxt
            hi += 1.0
            if hi > 700:
                raise DivergenceError("conjugate exceeds cap, u outside effective domain")
    lo = -45.0
    grid = np.linspace(lo, hi, 200)
    vals = [objective(s) for s in grid]
    k = int(np.argmax(vals))
    a = grid[max(k - 1, 0)]
    b = grid[min(k + 1, len(grid) - 1)]
    _, best = _golden_max(objective, a, b)
    if best > cap:
        raise DivergenceError("conjugate exceeds cap, u outside effective domain")
    return max(best, 0.0)


# -- doubling constant ------------------------------------------------------

@dataclass
class Delta2Report:
    """Empirical doubling constant sup_{u in range} M(2u)/M(u)."""

    constant: float
    range_tested: tuple
    satisfied: bool
    grid_points: int

    def to_json(self):
        return {
            "constant": self.constant,
            "range_tested": list(self.range_tested),
            "satisfied": self.satisfied,
            "grid_points": self.grid_points,
        }


def delta2_constant(
    M: OrliczFunction, u_max: float, grid_points: int = 10_000, cap: float = 1e6
) -> Delta2Report:
    """Empirical sup of M(2u)/M(u) over a log grid on [1, u_max]."""
    if u_max < 1:
        raise ValueError("u_max must be >= 1")
    us = np.geomspace(1.0, u_max, num=grid_points)
    try:
        ratios = M(2.0 * us) / M(us)
    except DomainOverflowError:
        # clip the grid to the representable range of a tabulated function
        top = M.knots[0][-1] / 2.0
        us = np.geomspace(1.0, min(u_max, top), num=grid_points)
        ratios = M(2.0 * us) / M(us)
        u_max = us[-1]
    constant = float(np.max(ratios))
    return Delta2Report(
        constant=constant,
        range_tested=(1.0, float(u_max)),
        satisfied=bool(constant <= cap),
        grid_points=grid_points,
    )


# -- dilation function ------------------------------------------------------

def dilation_function(
    g, u: float, v_max: float = V_MAX_DEFAULT, grid_points: int = 4097
) -> float:
    """sup_{v >= max(1, 1/u)} g(u v)/g(v), truncated at v = v_max.

    The log grid maximum is refined by golden section around the argmax.
    Emits TruncationWarning when the maximum sits at the window edge.
    """
    if u <= 0:
        raise ValueError("dilation argument must be positive")
    v0 = max(1.0, 1.0 / u)
    if v0 >= v_max:
        raise ValueError("empty dilation window, raise v_max")
    vs = np.geomspace(v0, v_max, num=grid_points)
    try:
        ratios = np.asarray(g(u * vs) / g(vs), dtype=float)
        if ratios.shape != vs.shape:
            raise TypeError
    except (TypeError, ValueError):
        ratios = np.array([g(u * v) / g(v) for v in vs])
    k = int(np.argmax(ratios))

    def objective(log_v):
        v = math.exp(log_v)
        return g(u * v) / g(v)

    lo = math.log(vs[max(k - 1, 0)])
    hi = math.log(vs[min(k + 1, grid_points - 1)])
    _, best = _golden_max(objective, lo, hi)
    best = max(best, float(ratios[k]))
    if k == grid_points - 1:
        warnings.warn(
            f"dilation supremum attained at the truncation edge v_max={v_max:g}",
            TruncationWarning,
        )
    return best


def m_dilation(M: OrliczFunction, u: float, v_max: float = V_MAX_DEFAULT) -> float:
    """Dilation function of M itself for large arguments."""
    return dilation_function(M, u, v_max=v_max)


class DilationProfile:
    """The dilation function of M sampled on (0, 1] as a reusable callable.

    Values are log-log interpolated between grid samples and extrapolated
    below the grid with the end slope; psi(0) = 0 and psi(1) = 1 up to grid
    error, so the profile can drive an Orlicz sequence norm.
    """

    def __init__(self, M: OrliczFunction, u_min: float = 1e-8, points: int = 65,
                 window: float = 1e5):
        self.M = M
        us = np.geomspace(u_min, 1.0, points)
        # the window rides above the lower limit max(1, 1/u) of each supremum
        vals = np.array([
            dilation_function(M, u, v_max=max(1.0, 1.0 / u) * window,
                              grid_points=1025)
            for u in us
        ])
        self._log_u = np.log(us)
        self._log_v = np.log(vals)
        self._slope0 = ((self._log_v[1] - self._log_v[0])
                        / (self._log_u[1] - self._log_u[0]))

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        scalar = u.ndim == 0
        u = np.atleast_1d(u)
        out = np.zeros_like(u)
        pos = u > 0
        logs = np.log(np.where(pos, u, 1.0))
        interp = np.interp(logs, self._log_u, self._log_v)
        below = logs < self._log_u[0]
        interp = np.where(
            below, self._log_v[0] + self._slope0 * (logs - self._log_u[0]), interp
        )
        out[pos] = np.exp(interp[pos])
        return float(out[0]) if scalar else out


# -- fundamental functions --------------------------------------------------

def fundamental_function(spec, t):
    """Norm of a characteristic function of measure t (function hosts) or of
    the first n unit vectors (sequence hosts, t = n)."""
    kind = spec.kind
    if kind == "lp":
        n = _check_count(t)
        if math.isinf(spec.p):
            return 1.0
        return n ** (1.0 / spec.p)
    if kind == "c0":
        _check_count(t)
        return 1.0
    if kind == "lorentz":
        _check_unit_measure(t)
        return t ** (1.0 / spec.p)
    if kind == "orlicz_fn":
        _check_unit_measure(t)
        return 1.0 / spec.orlicz.inverse(1.0 / t)
    if kind == "orlicz_seq":
        n = _check_count(t)
        return 1.0 / spec.orlicz.inverse(1.0 / n)
    raise InvalidSpecError(f"host {kind!r} has no fundamental function")


def _check_count(t):
    n = float(t)
    if n < 1 or abs(n - round(n)) > 1e-9:
        raise ValueError("sequence hosts take a positive integer count")
    return round(n)


def _check_unit_measure(t):
    if not 0.0 < t <= 1.0:
        raise ValueError("function hosts take a measure in (0, 1]")
