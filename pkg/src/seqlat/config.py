"""Run configuration: seed, tolerance overrides, caps, output format.

A config can be loaded from JSON, with the path overridable through the
SEQLAT_CONFIG environment variable.  Identical configs and inputs yield
byte-identical JSON output.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

CONFIG_ENV_VAR = "SEQLAT_CONFIG"

DEFAULT_TOLERANCES = {
    "root_rtol": 1e-12,
    "opt_rtol": 1e-8,
    "luxemburg_rtol": 1e-10,
    "chain_slack": 1e-10,
    "shape_tol": 1e-9,
    "exactness": 1e-12,
}


@dataclass
class RunConfig:
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    n_cap: int = 8
    starts: int = 16
    max_parts: int = 3
    grid_points: int = 61
    output: str = "json"

    def tolerance(self, name: str) -> float:
        return float(self.tolerances.get(name, DEFAULT_TOLERANCES[name]))

    def optim(self):
        from .optimal import OptimConfig

        return OptimConfig(
            n_cap=self.n_cap,
            starts=self.starts,
            seed=self.seed,
            max_parts=self.max_parts,
        )

    def to_json(self):
        return {
            "seed": self.seed,
            "tolerances": dict(self.tolerances),
            "n_cap": self.n_cap,
            "starts": self.starts,
            "max_parts": self.max_parts,
            "grid_points": self.grid_points,
            "output": self.output,
        }

    @classmethod
    def from_json(cls, obj):
        known = {f for f in cls.__dataclass_fields__}
        return cls(**{k: v for k, v in obj.items() if k in known})

    @classmethod
    def load(cls, path=None):
        """Load from an explicit path, the env-var path, or defaults."""
        path = path or os.environ.get(CONFIG_ENV_VAR)
        if not path:
            return cls()
        with open(path) as fh:
            return cls.from_json(json.load(fh))
