"""Exact startpoint/endpoint analysis on finite quasi-pseudometric spaces."""

from mixpoint.core import (
    InputError,
    Space,
    ValidationReport,
    Violation,
    conjugate,
    diameter,
    fmt_rational,
    parse_rational,
    symmetrize,
    validate,
)
from mixpoint.hausdorff import hausdorff, point_to_set, set_to_point
from mixpoint.maps import (
    ApproxValues,
    Classification,
    MultiMap,
    SelfMap,
    approx_values,
    classify,
    eps_points,
)
from mixpoint.contraction import (
    Condition,
    PsiSpec,
    TheoremVerdict,
    check_condition,
    check_expansion,
    check_psi,
    fit_constants,
    theorem_verdict,
)
from mixpoint.cnsets import c_epsilon, lemma_bound, verify_bounds
from mixpoint.gen import GenConfig, gen_instance, gen_multimap, gen_selfmap, gen_space

__all__ = [
    "ApproxValues",
    "Classification",
    "Condition",
    "GenConfig",
    "InputError",
    "MultiMap",
    "PsiSpec",
    "SelfMap",
    "Space",
    "TheoremVerdict",
    "ValidationReport",
    "Violation",
    "approx_values",
    "c_epsilon",
    "check_condition",
    "check_expansion",
    "check_psi",
    "classify",
    "conjugate",
    "diameter",
    "eps_points",
    "fit_constants",
    "fmt_rational",
    "gen_instance",
    "gen_multimap",
    "gen_selfmap",
    "gen_space",
    "hausdorff",
    "lemma_bound",
    "parse_rational",
    "point_to_set",
    "set_to_point",
    "symmetrize",
    "theorem_verdict",
    "validate",
    "verify_bounds",
]

__version__ = "0.1.0"
