"""Constructive realizer for three-dimensional binary contingency tables."""

from .params import RealizerParams
from .pipeline import (check_shape_assumptions, realize_auto, realize_deterministic,
                       realize_transport)
from .state import Block, NotApplicable, RealizeOutcome, StageState
from .meat import apply_T1, realize_meat
from .wide import apply_T0, realize_wide

__all__ = [
    "RealizerParams", "check_shape_assumptions", "realize_auto", "realize_deterministic",
    "realize_transport", "Block", "NotApplicable", "RealizeOutcome", "StageState",
    "apply_T0", "apply_T1", "realize_meat", "realize_wide",
]
