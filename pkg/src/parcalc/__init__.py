"""Exact computer algebra for Weil-Deligne cohomology, symmetric powers of
complexes, period and L-sheaf component tables, finite-group multiplicity
formulas and degree-normalized periods on curves over finite fields."""

from .scalars import ExactScalar, FieldCtx, make_field, q_power
from .laurent import FgModule, FieldRing, LaurentPoly, LaurentRing, smith_normal_form
from .complexes import Complex, cohomology, sym_power_fast, sym_power_oracle
from .weil_deligne import WDRep, tate_dual_rep, wd_cohomology
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "Complex", "ExactScalar", "FgModule", "FieldCtx", "FieldRing", "LaurentPoly", "LaurentRing",
    "Report", "WDRep", "cohomology", "make_field", "q_power", "smith_normal_form",
    "sym_power_fast", "sym_power_oracle", "tate_dual_rep", "wd_cohomology",
]
