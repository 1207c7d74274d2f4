"""Classification of stable circle maps and of plane-to-plane map germs.

Stable circle maps are classified by associated tuples up to a dihedral
action; feasible hash tuples are exactly the realizable ones.  A finitely
determined germ ``(R^2, 0) -> (R^2, 0)`` is recognized up to topological
equivalence by the tuple of its restriction to a small level curve.
"""

from .enumeration import ClassListing, count_classes, enumerate_classes, iter_feasible
from .errors import (
    CapacityError,
    ClassificationError,
    DimensionError,
    DoublePointError,
    GermSyntaxError,
    InfeasibleTupleError,
    NonFoldError,
    NonMorseError,
    NotAGermError,
    NumericalError,
    RegularTypeError,
    StabilizationError,
    TracingError,
    VerificationError,
)
from .feasibility import (
    FeasibilityReport,
    abs_degree,
    alternating_sum,
    count_type2,
    cusp_parity,
    exists_type,
    is_feasible,
)
from .realization import RealizationSpec, eval_fA, sample_realization, verify_realization
from .recognition import (
    ClassReport,
    PolyGerm,
    RecognitionConfig,
    fold_check,
    germ_ast,
    germ_equiv,
    jacobian_det,
    parse_germ,
    trace_level_curve,
)
from .tuples import (
    AstTuple,
    HashTuple,
    LegalPerm,
    StarredTuple,
    Symbol,
    apply,
    ast_from_hash,
    canonical_ast,
    equivalent,
    hash_from_ast,
    orbit,
    star_indices,
)

__version__ = "0.1.0"

__all__ = [
    "AstTuple",
    "CapacityError",
    "ClassListing",
    "ClassReport",
    "ClassificationError",
    "DimensionError",
    "DoublePointError",
    "FeasibilityReport",
    "GermSyntaxError",
    "HashTuple",
    "InfeasibleTupleError",
    "LegalPerm",
    "NonFoldError",
    "NonMorseError",
    "NotAGermError",
    "NumericalError",
    "PolyGerm",
    "RealizationSpec",
    "RecognitionConfig",
    "RegularTypeError",
    "StabilizationError",
    "StarredTuple",
    "Symbol",
    "TracingError",
    "VerificationError",
    "abs_degree",
    "alternating_sum",
    "apply",
    "ast_from_hash",
    "canonical_ast",
    "count_classes",
    "count_type2",
    "cusp_parity",
    "enumerate_classes",
    "equivalent",
    "eval_fA",
    "exists_type",
    "fold_check",
    "germ_ast",
    "germ_equiv",
    "hash_from_ast",
    "is_feasible",
    "iter_feasible",
    "jacobian_det",
    "orbit",
    "parse_germ",
    "sample_realization",
    "star_indices",
    "trace_level_curve",
    "verify_realization",
]
