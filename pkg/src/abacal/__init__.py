"""Abacus programs: terms, a counter-machine evaluator and a compiler from partial recursive functions."""

import sys

from .machine import (
    EqConfig,
    Halted,
    MachineState,
    OutOfFuel,
    evaluate,
    parse_state,
    semantic_eq,
    state,
)
from .poly import Polynomial, poly, poly_add, poly_mul
from .term import MorphismType, TermTypeError, infer_type, size

# derived terms nest deeply and both type inference and compilation recurse
if sys.getrecursionlimit() < 20_000:
    sys.setrecursionlimit(20_000)

__all__ = [
    "EqConfig",
    "Halted",
    "MachineState",
    "MorphismType",
    "OutOfFuel",
    "Polynomial",
    "TermTypeError",
    "evaluate",
    "infer_type",
    "parse_state",
    "poly",
    "poly_add",
    "poly_mul",
    "semantic_eq",
    "size",
    "state",
]
