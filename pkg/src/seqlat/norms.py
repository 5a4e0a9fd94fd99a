"""Norm evaluators for the concrete host lattices.

Sequence hosts: l_p, weighted l_p, c_0 (sup norm) and Orlicz sequence
spaces (Luxemburg-type infimum by bracketed root-finding).  Function hosts
on [0,1]: Orlicz spaces with the Luxemburg norm and Lorentz spaces with the
classical quasi-norm evaluated in closed form on step functions.  The
Musielak-Orlicz sequence norm with coordinate scalings completes the set.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from .errors import DomainOverflowError, InvalidSpecError, UnsupportedHostError
from .orlicz import OrliczFunction
from .rearrangement import StepFunction, as_vector, decreasing_rearrangement
from .spaces import BetaSequence, LatticeSpec

LUX_RTOL = 1e-10
_MODULAR_OVERFLOW = 1e300


def _bracketed_root(excess, lo, hi, rtol):
    """brentq with the absolute tolerance scaled to the bracket, so tiny
    norms keep their relative precision."""
    xtol = max(lo * rtol * 1e-2, 5e-324)
    return float(brentq(excess, lo, hi, rtol=rtol, xtol=xtol))


def lp_norm(a, p: float) -> float:
    """Plain l_p norm with the sup norm at p = inf."""
    x = np.abs(as_vector(a))
    if x.size == 0:
        return 0.0
    if math.isinf(p):
        return float(np.max(x))
    if p == 1.0:
        return float(np.sum(x))
    return float(np.sum(x ** p) ** (1.0 / p))


def weighted_lp_norm(a, p: float, weights) -> float:
    """(sum |a_i w_i|^p)^{1/p}, sup-variant at p = inf."""
    x = as_vector(a)
    w = np.asarray(weights, dtype=float).ravel()
    if np.any(w <= 0):
        raise InvalidSpecError("weights must be strictly positive")
    if len(w) < len(x):
        raise InvalidSpecError("weight sequence shorter than the vector")
    return lp_norm(x * w[: len(x)], p)


def orlicz_sequence_norm(a, psi, rtol: float = LUX_RTOL) -> float:
    """inf{u > 0 : sum psi(|a_k|/u) <= 1} for an increasing psi, psi(1) = 1.

    ``psi`` may be an OrliczFunction or any vectorizable callable with
    psi(0) = 0.  For convex normalized psi the infimum lies in
    [max|a|, sum|a|], which brackets the monotone root.
    """
    x = np.abs(as_vector(a))
    x = x[x > 0]
    if x.size == 0:
        return 0.0
    lo = float(np.max(x))
    hi = float(np.sum(x))

    def excess(u):
        try:
            return float(np.sum(psi(x / u))) - 1.0
        except DomainOverflowError:
            return _MODULAR_OVERFLOW  # the root lies above any such u

    if hi <= lo * (1 + 1e-15):
        return lo
    # expand geometrically if psi is not convex-normalized enough to bracket
    flo, fhi = excess(lo), excess(hi)
    while fhi > 0:
        hi *= 2.0
        fhi = excess(hi)
    while flo < 0:
        lo /= 2.0
        flo = excess(lo)
    if flo == 0.0:
        return lo
    return _bracketed_root(excess, lo, hi, rtol)


def luxemburg_atoms(values, measures, M: OrliczFunction, rtol: float = LUX_RTOL) -> float:
    """Luxemburg norm of a formal atom list (no [0,1] embedding required)."""
    v = np.abs(np.asarray(values, dtype=float).ravel())
    m = np.asarray(measures, dtype=float).ravel()
    keep = v > 0
    v, m = v[keep], m[keep]
    if v.size == 0:
        return 0.0
    if M.family == "power":
        # closed form: the modular is a plain power integral
        p = M.p
        return float(np.sum(v ** p * m) ** (1.0 / p))
    lo = float(np.dot(v, m))           # integral of |f|
    hi = float(np.max(v))              # sup of |f|
    total = float(np.sum(m))
    if total > 1.0:
        lo = max(lo / total, 1e-300)   # Jensen bracket only valid on mass <= 1
        hi = hi * max(total, 1.0)

    def excess(lam):
        try:
            return float(np.dot(M(v / lam), m)) - 1.0
        except DomainOverflowError:
            return _MODULAR_OVERFLOW  # the root lies above any such lam

    flo, fhi = excess(lo), excess(hi)
    while fhi > 0:
        hi *= 2.0
        fhi = excess(hi)
    while flo < 0 and lo > 1e-280:
        lo /= 2.0
        flo = excess(lo)
    if flo <= 0:
        return lo
    if lo >= hi:
        return hi
    return _bracketed_root(excess, lo, hi, rtol)


def luxemburg_norm(f: StepFunction, M: OrliczFunction, rtol: float = LUX_RTOL) -> float:
    """Luxemburg norm inf{lam > 0 : int M(|f|/lam) <= 1} on [0,1]."""
    return luxemburg_atoms(f.values, f.measures, M, rtol=rtol)


def lorentz_norm(f: StepFunction, p: float, q: float) -> float:
    """Lorentz functional (q/p int_0^1 (t^{1/p} f*(t))^q dt/t)^{1/q}.

    Exact piecewise power integration over the step rearrangement; for a
    characteristic function of measure t this returns t^{1/p}.
    """
    if not (1 < p < math.inf and 1 <= q < math.inf):
        raise InvalidSpecError("lorentz_norm needs 1 < p < inf, 1 <= q < inf")
    r = decreasing_rearrangement(f)
    if len(r) == 0:
        return 0.0
    cuts = np.concatenate([[0.0], np.cumsum(r.measures)])
    alpha = q / p
    segments = cuts[1:] ** alpha - cuts[:-1] ** alpha
    return float(np.sum(r.values ** q * segments) ** (1.0 / q))


def musielak_norm(
    a, beta: BetaSequence, M: OrliczFunction, rtol: float = LUX_RTOL
) -> float:
    """Musielak-Orlicz sequence norm with coordinate scalings beta_k.

    inf{lam > 0 : sum_k M(|a_k| beta_k / lam) / M(beta_k) <= 1}; the
    infimum lies in [max|a|, sum|a|].
    """
    x = np.abs(as_vector(a))
    if len(x) > len(beta):
        raise InvalidSpecError("vector longer than the beta sequence")
    b = beta.betas[: len(x)]
    keep = x > 0
    x, b = x[keep], b[keep]
    if x.size == 0:
        return 0.0
    denom = M(b)
    lo = float(np.max(x))
    hi = float(np.sum(x))

    def excess(lam):
        try:
            return float(np.sum(M(x * b / lam) / denom)) - 1.0
        except DomainOverflowError:
            return _MODULAR_OVERFLOW  # the root lies above any such lam

    if hi <= lo * (1 + 1e-15):
        return lo
    flo, fhi = excess(lo), excess(hi)
    while fhi > 0:
        hi *= 2.0
        fhi = excess(hi)
    if flo <= 0:
        return lo
    return _bracketed_root(excess, lo, hi, rtol)


def seq_norm(a, spec: LatticeSpec) -> float:
    """Norm of a finite sequence in a sequence host."""
    if spec.kind == "lp":
        return lp_norm(a, spec.p)
    if spec.kind == "c0":
        return lp_norm(a, math.inf)
    if spec.kind == "weighted_lp":
        return weighted_lp_norm(a, spec.p, spec.weights)
    if spec.kind == "orlicz_seq":
        return orlicz_sequence_norm(a, spec.orlicz)
    raise InvalidSpecError(f"{spec.kind!r} is not a sequence host")


def function_norm(f: StepFunction, spec: LatticeSpec) -> float:
    """Norm of a step function in a function host on [0,1]."""
    if spec.kind == "orlicz_fn":
        return luxemburg_norm(f, spec.orlicz)
    if spec.kind == "lorentz":
        return lorentz_norm(f, spec.p, spec.q)
    raise InvalidSpecError(f"{spec.kind!r} is not a function host")


def host_norm(x, spec: LatticeSpec) -> float:
    """Dispatch on the host kind: sequences for sequence hosts, step
    functions for function hosts."""
    if spec.is_sequence_host:
        return seq_norm(x, spec)
    if isinstance(x, StepFunction):
        return function_norm(x, spec)
    raise UnsupportedHostError(
        f"host {spec.kind!r} needs a StepFunction element"
    )


def lorentz_quasi_constant(p: float, q: float) -> float:
    """Triangle-inequality constant of the Lorentz functional.

    The functional is a norm for q <= p; for q > p it satisfies
    ||f+g|| <= 2^{1/p} (||f|| + ||g||).
    """
    return 1.0 if q <= p else 2.0 ** (1.0 / p)
