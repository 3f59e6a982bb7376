"""Exact arithmetic for residue classes with first order poles on
quasihomogeneous hypersurfaces: decide whether the class lifts to
intersection homology and, when it does not, produce the symbolic
obstruction and integrate it numerically over traced cycles."""

from .algebra import (
    AlgebraError,
    Monomial,
    Polynomial,
    RationalFunction,
    divide_with_remainder,
    divides,
)
from .criteria import (
    INCONCLUSIVE,
    ISOLATED,
    LIFTS,
    OBSTRUCTED,
    UNKNOWN,
    CriteriaError,
    CriterionDecision,
    CriterionWitness,
    LiftVerdict,
    ProbeReport,
    RemovablePoleError,
    SpectrumEntry,
    cover_image,
    lift_criterion,
    lift_verdict,
    obstruction_component,
    pullback_singularity_probe,
    spectrum_nonpositive,
)
from .forms import (
    DifferentialForm,
    FormError,
    basis_form,
    d_of_polynomial,
    differential,
    equal_mod_hypersurface,
    exterior_derivative,
    pullback,
    recombine_split,
    scalar_mod_hypersurface,
    split_du0,
    volume_form,
    wedge,
)
from .numint import (
    CurveTrace,
    DivergenceError,
    IntegralResult,
    NumericError,
    SeedingError,
    SingularPointError,
    export_trace_csv,
    integrate_1form,
    trace_real_curve,
)
from .parser import ParseError, parse_expression, parse_form, parse_polynomial
from .residue import (
    ChartForm,
    DegenerateChartError,
    ResidueError,
    ResidueReport,
    analyze,
    blowup_pullback,
    cover_pullback_form,
    leray_residue,
    residue_division,
    second_residue,
)
from .weights import (
    NonQuasihomogeneousError,
    UnnormalizedEquationError,
    WeightError,
    WeightSystem,
    euler_check,
    is_quasihomogeneous,
    quasi_decompose,
    rescaled_weights,
    valuation_form,
    valuation_poly,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "Monomial",
    "Polynomial",
    "RationalFunction",
    "divide_with_remainder",
    "divides",
    "INCONCLUSIVE",
    "ISOLATED",
    "LIFTS",
    "OBSTRUCTED",
    "UNKNOWN",
    "CriteriaError",
    "CriterionDecision",
    "CriterionWitness",
    "LiftVerdict",
    "ProbeReport",
    "RemovablePoleError",
    "SpectrumEntry",
    "cover_image",
    "lift_criterion",
    "lift_verdict",
    "obstruction_component",
    "pullback_singularity_probe",
    "spectrum_nonpositive",
    "DifferentialForm",
    "FormError",
    "basis_form",
    "d_of_polynomial",
    "differential",
    "equal_mod_hypersurface",
    "exterior_derivative",
    "pullback",
    "recombine_split",
    "scalar_mod_hypersurface",
    "split_du0",
    "volume_form",
    "wedge",
    "CurveTrace",
    "DivergenceError",
    "IntegralResult",
    "NumericError",
    "SeedingError",
    "SingularPointError",
    "export_trace_csv",
    "integrate_1form",
    "trace_real_curve",
    "ParseError",
    "parse_expression",
    "parse_form",
    "parse_polynomial",
    "ChartForm",
    "DegenerateChartError",
    "ResidueError",
    "ResidueReport",
    "analyze",
    "blowup_pullback",
    "cover_pullback_form",
    "leray_residue",
    "residue_division",
    "second_residue",
    "NonQuasihomogeneousError",
    "UnnormalizedEquationError",
    "WeightError",
    "WeightSystem",
    "euler_check",
    "is_quasihomogeneous",
    "quasi_decompose",
    "rescaled_weights",
    "valuation_form",
    "valuation_poly",
]
