"""Exact adelic heights over Q and Q(t), a Roth-type inequality system, and
machine checks of its gap principles and counting bound.

The public surface mirrors the four layers of the library:

* curves:   :class:`RationalsCurve`, :class:`FunctionFieldCurve`, heights,
  the product-formula defect and the Liouville lower bound;
* system:   :class:`SystemSpec`, membership tests, exhaustive censuses and
  the normalized approximation sum;
* gaps:     ratio-gap and interval-cover checkers, matrix column weights,
  the certified integral cap, and the counting bound;
* cli:      the ``adelic-roth`` command (censuses and single checks).
"""

__version__ = "0.1.0"

from .curves import (
    AdelicCurve,
    FunctionFieldCurve,
    Place,
    RationalsCurve,
    arch_exponent,
    curve_by_name,
)
from .errors import (
    AdelicError,
    BadPartitionError,
    CapacityExceededError,
    ConfigError,
    DegenerateBetaError,
    DegenerateMatrixError,
    EqualElementsError,
    FiniteHeightBallError,
    NonpositiveDenominatorError,
    NonpositiveLogRhoError,
    NotSolutionsError,
    ParseError,
    SchemaError,
    UnknownPlaceError,
    ZeroElementError,
)
from .gaps import (
    CertificateReport,
    Gap2Params,
    GapMatrix,
    IntervalCover,
    big_solution_threshold,
    column_bounding_check,
    count_bound,
    dyson_bound,
    gap1_check,
    gap1_sweep,
    gap2_cover_check,
    gap2_params,
    h_gap_check,
    log_rho,
    ratio_gap_capacity,
    dyson_certificate,
)
from .logvalue import LogValue, Verdict, default_precision, set_default_precision
from .qpoly import QPoly, RationalFunction, ratfunc
from .system import (
    Census,
    SystemSpec,
    enumerate_solutions,
    is_solution,
    make_spec,
    nearest_alpha_assignment,
    roth_defect,
    roth_defect_check,
    validate_spec,
)

__all__ = [
    "__version__",
    "AdelicCurve",
    "RationalsCurve",
    "FunctionFieldCurve",
    "Place",
    "arch_exponent",
    "curve_by_name",
    "LogValue",
    "Verdict",
    "set_default_precision",
    "default_precision",
    "QPoly",
    "RationalFunction",
    "ratfunc",
    "SystemSpec",
    "Census",
    "make_spec",
    "validate_spec",
    "is_solution",
    "enumerate_solutions",
    "roth_defect",
    "roth_defect_check",
    "nearest_alpha_assignment",
    "GapMatrix",
    "Gap2Params",
    "IntervalCover",
    "CertificateReport",
    "big_solution_threshold",
    "gap1_check",
    "gap1_sweep",
    "log_rho",
    "h_gap_check",
    "column_bounding_check",
    "dyson_bound",
    "dyson_certificate",
    "gap2_params",
    "ratio_gap_capacity",
    "count_bound",
    "gap2_cover_check",
    "AdelicError",
    "ZeroElementError",
    "UnknownPlaceError",
    "EqualElementsError",
    "NotSolutionsError",
    "DegenerateBetaError",
    "NonpositiveDenominatorError",
    "CapacityExceededError",
    "DegenerateMatrixError",
    "BadPartitionError",
    "NonpositiveLogRhoError",
    "FiniteHeightBallError",
    "ConfigError",
    "ParseError",
    "SchemaError",
]
