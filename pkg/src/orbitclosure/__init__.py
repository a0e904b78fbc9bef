"""Orbit and orbit-closure containment for homogeneous forms under linear substitution."""

from .groebner import BudgetExceeded, ComputeBudget, Ideal
from .orbit import (
    ClosureCache,
    EliminationPlan,
    Form,
    GroupAnsatz,
    Outcome,
    Verdict,
    in_orbit,
    in_orbit_closure,
    sub_elim_sub,
)
from .degeneration import DegenerationFamily, verify_degeneration
from .invariants import (
    dimension_pretest,
    singular_invariants,
    stabilizer_orbit_dimension,
    tangent_orbit_dimension,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ClosureCache",
    "ComputeBudget",
    "DegenerationFamily",
    "EliminationPlan",
    "Form",
    "GroupAnsatz",
    "Ideal",
    "Outcome",
    "Verdict",
    "dimension_pretest",
    "in_orbit",
    "in_orbit_closure",
    "singular_invariants",
    "stabilizer_orbit_dimension",
    "sub_elim_sub",
    "tangent_orbit_dimension",
    "verify_degeneration",
]
