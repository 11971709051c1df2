"""Intervals carrying the witnesses that certify each end."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ValidationError


@dataclass(frozen=True)
class CertifiedInterval:
    lower: float
    upper: float
    lower_certificate: dict = field(default_factory=dict)
    upper_certificate: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.lower > self.upper + 1e-9 * max(1.0, abs(self.upper)):
            raise ValidationError(f"interval lower {self.lower} exceeds upper {self.upper}")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value, tol=1e-9) -> bool:
        return self.lower - tol <= value <= self.upper + tol

    def to_json(self) -> dict:
        return {"lower": self.lower, "upper": self.upper,
                "lower_certificate": _jsonable(self.lower_certificate),
                "upper_certificate": _jsonable(self.upper_certificate)}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "tolist"):
        return obj.tolist()
    return obj
