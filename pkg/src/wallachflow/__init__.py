"""Numerics for the normalized Ricci flow on generalized Wallach spaces.

The library works with diagonal invariant metrics ``(x1, x2, x3)`` on
homogeneous spaces whose isotropy representation splits into three
irreducible modules, all sharing one parameter ``a`` in (0, 1/2).  It
provides the curvature positivity sets and their closed-form boundary
curves, the reduced flow with first-integral monitoring and boundary
crossing events, fixed-point classification on the unit-volume surface,
and verification suites that re-check every closed-form claim numerically.
"""

from .core import (
    BlowUpError,
    DomainError,
    KahlerParameterError,
    Metric,
    MissingDimensionsError,
    NonPositiveCoordinateError,
    NotAnEquilibriumError,
    SpaceParams,
    StepFailureError,
    Tolerances,
    WallachFlowError,
    normalize_to_sigma,
    validate_metric,
    volume,
)
from .curvature import (
    CurvatureLabel,
    CurvatureSigns,
    classify,
    principal_ricci,
    ricci_form,
    ricci_form_gradient,
    scalar_curvature,
    sectional_form,
    sectional_form_gradient,
    volume_gradient,
)
from .curves import (
    Branch,
    CurveId,
    CurveSample,
    Family,
    ONE_SIXTH,
    SECTIONAL_CONTACT_SCALE,
    kahler_scale,
    projection_residual,
    ricci_boundary_asymptote,
    ricci_domain_gap,
    ricci_intersection_point,
    ricci_scale,
    sample_curve,
    sample_invariant_curve,
    sample_kahler_curve,
    sample_ricci_boundary,
    sample_sectional_boundary,
    sectional_boundary_asymptote,
    sectional_invariant_intersection,
    sectional_scale,
)
from .equilibria import (
    EquilibriaRegionReport,
    Equilibrium,
    EquilibriumKind,
    classify_fixed_point,
    equilibrium_stretch,
    fixed_points,
    flow_jacobian,
    region_report,
)
from .flow import (
    CrossingEvent,
    IntegratorOptions,
    Trajectory,
    detect_crossings,
    flow_field,
    flow_field_general,
    integrate,
)
from .regions import (
    ConeGenerator,
    ConeIntersectionReport,
    InclusionReport,
    cone_generator,
    cone_intersection_report,
    generator_inclusion_margin,
    inclusion_report,
    positive_ricci,
    positive_sectional,
    sigma_positive_ricci,
    sigma_positive_sectional,
)
from .verify import CheckResult, VerifyReport, run_suite

__version__ = "0.1.0"
