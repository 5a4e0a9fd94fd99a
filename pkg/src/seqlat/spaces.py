"""Tagged descriptions of the concrete host lattices.

Supported kinds: lp (1 <= p <= inf), c0, lorentz (1 < p < inf, 1 <= q < inf),
orlicz_fn (Orlicz function space on [0,1]), orlicz_seq (Orlicz sequence
space) and weighted_lp.  JSON form is flat: {"kind": ..., ...params}, with
Orlicz parameters inlined.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidSpecError
from .orlicz import OrliczFunction

SEQUENCE_KINDS = ("lp", "c0", "orlicz_seq", "weighted_lp")
FUNCTION_KINDS = ("lorentz", "orlicz_fn")


class LatticeSpec:
    """One concrete host lattice."""

    __slots__ = ("kind", "p", "q", "orlicz", "weights")

    def __init__(self, kind, p=None, q=None, orlicz=None, weights=None):
        self.kind = kind
        self.p = p
        self.q = q
        self.orlicz = orlicz
        self.weights = None
        if kind == "lp":
            if p is None or p < 1:
                raise InvalidSpecError("lp needs p in [1, inf]")
        elif kind == "c0":
            pass
        elif kind == "lorentz":
            if p is None or not 1 < p < math.inf:
                raise InvalidSpecError("lorentz needs p in (1, inf)")
            if q is None or not 1 <= q < math.inf:
                raise InvalidSpecError("lorentz needs q in [1, inf)")
        elif kind in ("orlicz_fn", "orlicz_seq"):
            if not isinstance(orlicz, OrliczFunction):
                raise InvalidSpecError(f"{kind} needs an OrliczFunction")
        elif kind == "weighted_lp":
            if p is None or p < 1:
                raise InvalidSpecError("weighted_lp needs p in [1, inf]")
            w = np.asarray(weights, dtype=float).ravel()
            if w.size == 0 or np.any(w <= 0):
                raise InvalidSpecError("weights must be strictly positive")
            self.weights = w
        else:
            raise InvalidSpecError(f"unknown lattice kind {kind!r}")

    # -- constructors --------------------------------------------------------

    @classmethod
    def lp(cls, p):
        return cls("lp", p=float(p))

    @classmethod
    def c0(cls):
        return cls("c0")

    @classmethod
    def lorentz(cls, p, q):
        return cls("lorentz", p=float(p), q=float(q))

    @classmethod
    def orlicz_fn(cls, M):
        return cls("orlicz_fn", orlicz=M)

    @classmethod
    def orlicz_seq(cls, psi):
        return cls("orlicz_seq", orlicz=psi)

    @classmethod
    def weighted_lp(cls, p, weights):
        return cls("weighted_lp", p=float(p), weights=weights)

    # -- queries -------------------------------------------------------------

    @property
    def is_sequence_host(self):
        return self.kind in SEQUENCE_KINDS

    @property
    def is_function_host(self):
        return self.kind in FUNCTION_KINDS

    def label(self):
        if self.kind == "lp":
            return f"l_{self.p:g}"
        if self.kind == "c0":
            return "c_0"
        if self.kind == "lorentz":
            return f"L_({self.p:g},{self.q:g})"
        if self.kind == "orlicz_fn":
            return f"L_M[{self.orlicz!r}]"
        if self.kind == "orlicz_seq":
            return f"l_psi[{self.orlicz!r}]"
        return f"l_{self.p:g}(w)"

    def to_json(self):
        if self.kind == "lp":
            return {"kind": "lp", "p": _num(self.p)}
        if self.kind == "c0":
            return {"kind": "c0"}
        if self.kind == "lorentz":
            return {"kind": "lorentz", "p": self.p, "q": self.q}
        if self.kind in ("orlicz_fn", "orlicz_seq"):
            out = {"kind": self.kind}
            out.update(self.orlicz.to_json())
            return out
        return {
            "kind": "weighted_lp",
            "p": _num(self.p),
            "weights": [float(w) for w in self.weights],
        }

    @classmethod
    def from_json(cls, obj):
        kind = obj.get("kind")
        if kind == "lp":
            return cls.lp(_parse_num(obj["p"]))
        if kind == "c0":
            return cls.c0()
        if kind == "lorentz":
            return cls.lorentz(obj["p"], obj["q"])
        if kind in ("orlicz_fn", "orlicz_seq"):
            fn = {k: v for k, v in obj.items() if k != "kind"}
            return cls(kind, orlicz=OrliczFunction.from_json(fn))
        if kind == "weighted_lp":
            return cls.weighted_lp(_parse_num(obj["p"]), obj["weights"])
        raise InvalidSpecError(f"unknown lattice kind {kind!r}")

    def __repr__(self):
        return f"LatticeSpec({self.label()})"


def _num(p):
    return "inf" if math.isinf(p) else p


def _parse_num(p):
    if isinstance(p, str):
        if p.lower() in ("inf", "infinity"):
            return math.inf
        return float(p)
    return float(p)


class BetaSequence:
    """Scaling sequence for a Musielak-Orlicz sequence space.

    The budget sum(1/M(beta_k)) must stay at or below 1.
    """

    __slots__ = ("betas", "budget")

    def __init__(self, betas, M: OrliczFunction):
        self.betas = np.asarray(betas, dtype=float).ravel()
        if self.betas.size == 0 or np.any(self.betas <= 0):
            raise InvalidSpecError("beta entries must be positive")
        self.budget = float(np.sum(1.0 / M(self.betas)))
        if self.budget > 1.0 + 1e-12:
            raise InvalidSpecError(
                f"budget sum 1/M(beta_k) = {self.budget:g} exceeds 1"
            )

    def __len__(self):
        return len(self.betas)

    @classmethod
    def from_measures(cls, measures, M: OrliczFunction):
        """beta_k = M^{-1}(1/m_k) for a measure vector on the simplex."""
        m = np.asarray(measures, dtype=float).ravel()
        if np.any(m <= 0) or m.sum() > 1.0 + 1e-12:
            raise InvalidSpecError("measures must be positive with sum <= 1")
        betas = np.array([M.inverse(1.0 / mk) for mk in m])
        return cls(betas, M)
