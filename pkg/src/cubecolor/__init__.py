"""Completion of sparse partial proper edge colorings of hypercubes.

The library extends a partial proper d-edge coloring of the d-dimensional
hypercube to a full proper coloring while avoiding per-edge forbidden-color
lists, via color-permutation search, conflict promotion, and structured
4-cycle swaps, with a fast path for well-separated constraints and an exact
backtracking oracle for small dimensions.
"""

from .cube import Edge, FourCycle
from .generators import (
    density_profile,
    gen_combined,
    gen_random_instance,
    gen_unavoidable_lists,
    gen_unextendable_precoloring,
)
from .model import (
    ColorPermutation,
    Instance,
    ListAssignment,
    ParamSet,
    PartialColoring,
    Radii,
    TotalColoring,
    standard_coloring,
    verify_solution,
)
from .oracle import OracleResult, brute_force_solve, exact_solve
from .pipeline import Failure, Solution, Trace, replay, solve

__version__ = "0.1.0"

__all__ = [
    "Edge",
    "FourCycle",
    "ColorPermutation",
    "Instance",
    "ListAssignment",
    "ParamSet",
    "PartialColoring",
    "Radii",
    "TotalColoring",
    "standard_coloring",
    "verify_solution",
    "OracleResult",
    "brute_force_solve",
    "exact_solve",
    "Failure",
    "Solution",
    "Trace",
    "replay",
    "solve",
    "density_profile",
    "gen_combined",
    "gen_random_instance",
    "gen_unavoidable_lists",
    "gen_unextendable_precoloring",
    "__version__",
]
