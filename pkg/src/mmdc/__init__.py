"""Minimum-cost many-to-many matching with demands and capacities.

The instance is reduced to a single minimum-weight perfect matching on a
gadget graph, which is solved with the Hungarian method.
"""

__version__ = "0.1.0"

from .hungarian import Labeling, Matching, SolveStats, InvariantViolation, solve_assignment
from .model import (FeasibilityReport, InfeasibleInstanceError, MmdcInstance, NormalizedInstance,
                    normalize, validate)
from .oracle import brute_force_assignment, brute_force_mmdc, verify_solution
from .reduction import GadgetGraph, MmdcSolution, build_gadget, extract_solution, solve_mmdc

__all__ = [
    "FeasibilityReport", "GadgetGraph", "InfeasibleInstanceError", "InvariantViolation",
    "Labeling", "Matching", "MmdcInstance", "MmdcSolution", "NormalizedInstance", "SolveStats",
    "brute_force_assignment", "brute_force_mmdc", "build_gadget", "extract_solution",
    "normalize", "solve_assignment", "solve_mmdc", "validate", "verify_solution",
]
