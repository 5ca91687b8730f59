"""Exact-arithmetic invariants of central complex hyperplane arrangements.

The pipeline, bottom to top: exact integer linear algebra (`intlinalg`),
simple graphs (`graphs`), the matroid layer (`arrangement`), the integral
exterior algebra (`exterior`), Orlik-Solomon ideals and their quotients
(`osalgebra`), hypersolvable classification (`hypersolvable`), the second
nilpotent quotient of the first higher homotopy group (`homotopy`), and
reporting plus the CLI (`report`, `cli`).
"""

from .arrangement import Arrangement, build, from_graph
from .errors import InputError, InternalInvariantViolation, PreconditionError
from .exterior import ExteriorElement, basis, delta, monomial, wedge
from .graphs import Graph, make_graph
from .homotopy import (
    MuPresentation,
    NilpotentQuotient2,
    TorsionReport,
    gr0_rank,
    gr1_invariants,
    mu_presentation,
    second_nilpotent_quotient,
    torsion_and_rank_report,
)
from .hypersolvable import (
    Classification,
    CompositionSeries,
    classify,
    composition_series,
    is_supersolvable,
    p_order,
    solvable_extension_check,
)
from .intlinalg import (
    AbelianInvariants,
    FieldSpec,
    RATIONALS,
    hermite_basis,
    quotient_invariants,
    rank_over_field,
    smith_normal_form,
)
from .osalgebra import (
    IdealKind,
    chordless_span_check,
    hilbert,
    ideal_generators,
    ideal_membership,
    quotient_invariants_graded,
    r_table,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianInvariants",
    "Arrangement",
    "Classification",
    "CompositionSeries",
    "ExteriorElement",
    "FieldSpec",
    "Graph",
    "IdealKind",
    "InputError",
    "InternalInvariantViolation",
    "MuPresentation",
    "NilpotentQuotient2",
    "PreconditionError",
    "RATIONALS",
    "TorsionReport",
    "basis",
    "build",
    "chordless_span_check",
    "classify",
    "composition_series",
    "delta",
    "from_graph",
    "gr0_rank",
    "gr1_invariants",
    "hermite_basis",
    "hilbert",
    "ideal_generators",
    "ideal_membership",
    "is_supersolvable",
    "make_graph",
    "monomial",
    "mu_presentation",
    "p_order",
    "quotient_invariants",
    "quotient_invariants_graded",
    "r_table",
    "rank_over_field",
    "second_nilpotent_quotient",
    "smith_normal_form",
    "solvable_extension_check",
    "torsion_and_rank_report",
    "wedge",
]
