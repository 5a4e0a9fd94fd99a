"""Step functions on [0,1] and finite sequences.

A step function is stored as value/measure atoms; an optional list of start
positions pins each atom to a concrete subinterval so that disjointness of
supports is checkable.  Distribution functions, non-increasing
rearrangements and equimeasurability tests operate on the atoms alone.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidSpecError

TIE_TOL = 1e-12
MEASURE_SLACK = 1e-12


class StepFunction:
    """Finitely-valued measurable function on [0,1] as (value, measure) atoms.

    Zero-valued atoms are dropped at construction.  When ``check_total`` is
    true the total support measure must not exceed 1; formal atom lists used
    as intermediate quantities may disable the check.
    """

    __slots__ = ("values", "measures", "starts")

    def __init__(self, atoms, starts=None, check_total=True):
        vals, meas, sts = [], [], []
        for i, (v, m) in enumerate(atoms):
            if m <= 0:
                raise InvalidSpecError("atom measures must be positive")
            if v == 0.0:
                continue
            vals.append(float(v))
            meas.append(float(m))
            if starts is not None:
                sts.append(float(starts[i]))
        self.values = np.array(vals, dtype=float)
        self.measures = np.array(meas, dtype=float)
        self.starts = np.array(sts, dtype=float) if starts is not None else None
        total = float(self.measures.sum())
        if check_total and total > 1.0 + MEASURE_SLACK:
            raise InvalidSpecError(f"total measure {total:g} exceeds 1 on [0,1]")
        if self.starts is not None:
            self._check_self_overlap()

    def _check_self_overlap(self):
        iv = sorted(zip(self.starts, self.starts + self.measures))
        for (s0, e0), (s1, _) in zip(iv, iv[1:]):
            if s1 < e0 - MEASURE_SLACK:
                raise InvalidSpecError("atom intervals overlap")
        if iv and iv[-1][1] > 1.0 + MEASURE_SLACK:
            raise InvalidSpecError("atom intervals leave [0,1]")

    # -- basic queries ------------------------------------------------------

    def __len__(self):
        return len(self.values)

    @property
    def atoms(self):
        return list(zip(self.values, self.measures))

    def total_measure(self) -> float:
        return float(self.measures.sum())

    def support_measure(self) -> float:
        return self.total_measure()

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values))) if len(self) else 0.0

    def mass(self) -> float:
        """Integral of |f| over [0,1]."""
        return float(np.dot(np.abs(self.values), self.measures))

    def intervals(self):
        if self.starts is None:
            return None
        return list(zip(self.starts, self.starts + self.measures))

    def scale(self, c: float) -> "StepFunction":
        return StepFunction(
            list(zip(self.values * c, self.measures)),
            starts=self.starts,
            check_total=False,
        )

    def __abs__(self) -> "StepFunction":
        return StepFunction(
            list(zip(np.abs(self.values), self.measures)),
            starts=self.starts,
            check_total=False,
        )

    def to_json(self):
        out = {"atoms": [[float(v), float(m)] for v, m in self.atoms]}
        if self.starts is not None:
            out["starts"] = [float(s) for s in self.starts]
        return out

    @classmethod
    def from_json(cls, obj):
        return cls(obj["atoms"], starts=obj.get("starts"))

    def __repr__(self):
        return f"StepFunction({self.atoms})"


class SeqVector:
    """Finite real sequence with support bookkeeping."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = np.asarray(entries, dtype=float).ravel()

    def __len__(self):
        return len(self.entries)

    @property
    def support(self):
        return np.flatnonzero(self.entries)

    def to_json(self):
        return [float(x) for x in self.entries]

    def __repr__(self):
        return f"SeqVector({list(self.entries)})"


def as_vector(a) -> np.ndarray:
    """Coerce a SeqVector or array-like to a 1-D float array."""
    if isinstance(a, SeqVector):
        return a.entries
    return np.asarray(a, dtype=float).ravel()


# -- distribution and rearrangement -----------------------------------------

def distribution_function(f: StepFunction, tau: float) -> float:
    """Measure of the set where |f| exceeds tau."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    mask = np.abs(f.values) > tau
    return float(f.measures[mask].sum())


def decreasing_rearrangement(f: StepFunction) -> StepFunction:
    """Atoms of |f| sorted by decreasing value; equal values merged.

    The result is the canonical form: nonnegative, strictly decreasing
    values, positions dropped.  Idempotent.
    """
    if len(f) == 0:
        return StepFunction([])
    vals = np.abs(f.values)
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    meas = f.measures[order]
    merged = []
    for v, m in zip(vals, meas):
        if merged and abs(merged[-1][0] - v) <= TIE_TOL * max(1.0, v):
            merged[-1][1] += m
        else:
            merged.append([v, m])
    return StepFunction([(v, m) for v, m in merged], check_total=False)


def equimeasurable(f: StepFunction, g: StepFunction, tol: float = 1e-12) -> bool:
    """True iff the decreasing rearrangements agree atom-by-atom within tol."""
    rf = decreasing_rearrangement(f)
    rg = decreasing_rearrangement(g)
    if len(rf) != len(rg):
        return False
    for (v1, m1), (v2, m2) in zip(rf.atoms, rg.atoms):
        if abs(v1 - v2) > tol * max(1.0, abs(v1), abs(v2)):
            return False
        if abs(m1 - m2) > tol:
            return False
    return True


def rearrangement_partial_integral(f: StepFunction, t: float) -> float:
    """Integral of the decreasing rearrangement of f over [0, t]."""
    if t <= 0:
        return 0.0
    r = decreasing_rearrangement(f)
    out, used = 0.0, 0.0
    for v, m in r.atoms:
        take = min(m, t - used)
        if take <= 0:
            break
        out += v * take
        used += take
    return out
