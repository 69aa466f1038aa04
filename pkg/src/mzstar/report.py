"""Structured verification reports with deterministic JSON rendering."""

from dataclasses import dataclass, field

import mpmath as mp


def num_str(x, digits=30):
    """Deterministic decimal rendering of numbers for reports."""
    if x is None:
        return None
    if isinstance(x, (int, str)):
        return str(x)
    return mp.nstr(mp.mpf(x), digits, strip_zeros=True)


@dataclass
class VerificationReport:
    identity_name: str
    inputs: dict
    lhs: object
    rhs: object
    residual: object
    tolerance: object
    precision_bits: int
    notes: dict = field(default_factory=dict)

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"

    @property
    def passed(self):
        return bool(self.residual <= self.tolerance)

    def to_json_dict(self):
        return {
            "identity": self.identity_name,
            "inputs": {k: num_str(v) for k, v in sorted(self.inputs.items())},
            "lhs": num_str(self.lhs),
            "rhs": num_str(self.rhs),
            "residual": num_str(self.residual, 12),
            "tolerance": num_str(self.tolerance, 6),
            "verdict": self.verdict,
            "precision_bits": self.precision_bits,
            "notes": {k: num_str(v) for k, v in sorted(self.notes.items())},
        }


def make_report(name, inputs, lhs, rhs, tolerance, precision_bits, notes=None):
    residual = abs(lhs - rhs)
    return VerificationReport(
        identity_name=name,
        inputs=inputs,
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        tolerance=tolerance,
        precision_bits=precision_bits,
        notes=notes or {},
    )
