"""Run configuration shared by the CLI and the verification suites."""

import os
from dataclasses import dataclass, field

import mpmath as mp

ENV_PREFIX = "MZSTAR_"

# tolerance tiers: formula-vs-formula checks at 256 bits, and the two
# truncation tiers for definition-vs-formula generating function checks
TIER1 = mp.mpf("1e-20")
TRUNC_TIER = {12: mp.mpf("1e-4"), 14: mp.mpf("1e-6")}


def _env(name, cast, default):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return default
    return cast(raw)


@dataclass
class RunConfig:
    precision_bits: int = 256
    samples: int = 100
    seed: int = 0
    max_weight: int = 12
    mzv_trunc_N: int = 100_000
    em_order: int = 8
    tier1: object = field(default_factory=lambda: TIER1)
    trunc_tier_12: object = field(default_factory=lambda: TRUNC_TIER[12])
    trunc_tier_14: object = field(default_factory=lambda: TRUNC_TIER[14])
    output_format: str = "text"

    def __post_init__(self):
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be >= 64")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.max_weight < 4:
            raise ValueError("max_weight must be >= 4")

    @classmethod
    def from_env(cls, **overrides):
        """Defaults, then MZSTAR_* environment variables, then overrides."""
        values = {
            "precision_bits": _env("PRECISION_BITS", int, 256),
            "samples": _env("SAMPLES", int, 100),
            "seed": _env("SEED", int, 0),
            "max_weight": _env("MAX_WEIGHT", int, 12),
            "mzv_trunc_N": _env("MZV_TRUNC_N", int, 100_000),
            "em_order": _env("EM_ORDER", int, 8),
            "output_format": _env("FORMAT", str, "text"),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def truncation_tier(self, max_weight):
        if max_weight >= 14:
            return self.trunc_tier_14
        return self.trunc_tier_12
