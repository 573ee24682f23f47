"""Tunable constants for the constructive realizer."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, replace

from ..errors import InvalidParams

ASYMPTOTIC_A0 = 2.0**24


@dataclass(frozen=True)
class RealizerParams:
    """Constants of the deterministic construction.

    ``theta``, ``A`` and ``B`` describe the shape assumptions. ``A0`` bounds the
    cap handed to the wide stage (``k <= sqrt(n) / A0``) and ``A1`` fixes the
    meat-stage cap in strict mode. The practical defaults are far smaller
    than the asymptotic ones; every run is verified, so aggressive values can
    only turn success into NotApplicable.

    Practical-only knobs:

    * ``large_ladder`` scales ``B * sqrt(n)`` to give the successive large-part
      thresholds that are tried.
    * ``gate_shape`` makes failed shape assumptions fatal. Strict mode always gates.
    """

    theta: float = 0.25
    A: float = 8.0
    B: float = 4.0
    A0: float = 8.0
    A1: float | None = None
    strict_paper_constants: bool = False
    large_ladder: tuple[float, ...] = (1.0, 0.8, 0.6, 0.45)
    gate_shape: bool = False
    descent: str = "auto"
    extra: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.A1 is None:
            object.__setattr__(self, "A1", 3.0 / self.theta * self.A0**2)
        self.validate()

    def validate(self) -> None:
        if not 0.0 < self.theta < 1.0:
            raise InvalidParams(f"theta must lie in (0, 1), got {self.theta}")
        for name in ("A", "B", "A0", "A1"):
            if not getattr(self, name) > 0:
                raise InvalidParams(f"{name} must be positive")
        if not self.large_ladder or any(f <= 0 for f in self.large_ladder):
            raise InvalidParams("large_ladder must be a non-empty tuple of positive factors")
        if self.descent not in ("auto", "covers", "transfers"):
            raise InvalidParams(f"unknown descent method {self.descent!r}")
        if self.strict_paper_constants:
            if self.A < self.A0:
                raise InvalidParams("strict mode needs A >= A0")
            if self.A1 < 3.0 / self.theta * self.A0**2:
                raise InvalidParams("strict mode needs A1 >= 3 A0^2 / theta")

    @classmethod
    def practical(cls, **kw) -> "RealizerParams":
        return cls(**kw)

    @classmethod
    def asymptotic(cls, theta: float = 0.25, A: float = ASYMPTOTIC_A0, B: float = 4.0) -> "RealizerParams":
        return cls(theta=theta, A=A, B=B, A0=ASYMPTOTIC_A0, strict_paper_constants=True,
                   large_ladder=(1.0,), gate_shape=True)

    def with_(self, **kw) -> "RealizerParams":
        return replace(self, **kw)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("extra", None)
        d["large_ladder"] = list(self.large_ladder)
        return d

    def fingerprint(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:12]
