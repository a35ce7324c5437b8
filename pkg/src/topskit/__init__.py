"""Fractal tops of graph-directed iterated function systems on the real line.

The package decides every geometric and symbolic question exactly:
numbers are rationals or real algebraic numbers, attractor hulls are
solved in closed form and certified, and shift-invariance of the set of
top addresses is decided through explicit region formulas.
"""

from .exactnum import (
    ExactReal,
    IncompatibleFieldsError,
    IntPoly,
    ValidationError,
    compare,
    format_exact,
    parse_exact,
    sign_at,
)
from .gifs import (
    AffineMap,
    ConfigError,
    Edge,
    GraphIFS,
    GraphValidationError,
    HullError,
    IntervalSet,
    PathError,
    UncertifiedHullError,
    ValidationReport,
    from_config,
    load_config,
    to_config,
)
from .rbw import (
    RbwEntry,
    RbwReport,
    alpha_poly,
    check_rho,
    conjecture_scan,
    endpoint,
    enumerate_rbw,
    first_rbw_length,
    is_reduced_banned,
    pattern_scan,
)
from .symbolic import (
    EmptySpaceError,
    EventuallyPeriodicString,
    avoids,
    compare_lex,
    eps,
    format_word,
    is_factor,
    metric,
    min_string,
    parse_word,
    reduce_banned,
    word_order,
)
from .tops import (
    Classification,
    InvarianceVerdict,
    OrderingReport,
    TopAddress,
    UpsilonRegion,
    classify,
    invariance_verdict,
    ordering_search,
    osc_check,
    top_address,
    upsilon_region,
)

__version__ = "0.1.0"

__all__ = [
    # exact numbers
    "ExactReal",
    "IncompatibleFieldsError",
    "IntPoly",
    "ValidationError",
    "compare",
    "format_exact",
    "parse_exact",
    "sign_at",
    # symbolic strings
    "EmptySpaceError",
    "EventuallyPeriodicString",
    "avoids",
    "compare_lex",
    "eps",
    "format_word",
    "is_factor",
    "metric",
    "min_string",
    "parse_word",
    "reduce_banned",
    "word_order",
    # graph-directed systems
    "AffineMap",
    "ConfigError",
    "Edge",
    "GraphIFS",
    "GraphValidationError",
    "HullError",
    "IntervalSet",
    "PathError",
    "UncertifiedHullError",
    "ValidationReport",
    "from_config",
    "load_config",
    "to_config",
    # fractal tops
    "Classification",
    "InvarianceVerdict",
    "OrderingReport",
    "TopAddress",
    "UpsilonRegion",
    "classify",
    "invariance_verdict",
    "ordering_search",
    "osc_check",
    "top_address",
    "upsilon_region",
    # reduced banned words
    "RbwEntry",
    "RbwReport",
    "alpha_poly",
    "check_rho",
    "conjecture_scan",
    "endpoint",
    "enumerate_rbw",
    "first_rbw_length",
    "is_reduced_banned",
    "pattern_scan",
    "__version__",
]
