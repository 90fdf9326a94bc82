"""Multiplicative generalized metric spaces and certified fixed points.

The package builds ternary multiplicative metrics (values >= 1, full
argument symmetry, a rectangle inequality), audits their axioms by
deterministic sampling, certifies contractive conditions for self-maps
on closed balls, and locates fixed points by Picard iteration with
residual and a-priori iteration certificates.  All distances are kept
in log-domain internally.
"""

from .metric import (
    SLACK,
    AxiomReport,
    ClosedBall,
    GMetric,
    Interval,
    LogDistance,
    MultMetric,
    Point,
    Witness,
    ball_contains,
    check_gm_axioms,
    check_gm_properties,
    check_mult_axioms,
    gm_from_exp,
    gm_from_product,
)
from .contraction import (
    CertificateReport,
    ContractionParams,
    EmptyRegion,
    SelfMap,
    certify_region,
    implicit_bound,
    implicit_contraction_holds,
    root_contraction_holds,
    seed_condition_holds,
)
from .solver import (
    NUMERIC_ORDER,
    DomainExit,
    FixedPointResult,
    MaxIterationsExceeded,
    OrderRelation,
    PicardTrace,
    RateOutOfRange,
    SeedConditionViolated,
    a_priori_iterations,
    converged,
    mu_class,
    mu_of,
    picard_trace,
    solve_fixed_point,
    step_bound,
)
from .fixtures import (
    EXP_ABS_METRIC,
    NamedFixture,
    PiecewiseRow,
    get_fixture,
    half_shift_map,
    load_fixture_config,
    piecewise_map,
    quarter_shift_map,
    registry,
    usual_metric,
)

__version__ = "0.1.0"

__all__ = [
    "SLACK",
    "AxiomReport",
    "CertificateReport",
    "ClosedBall",
    "ContractionParams",
    "DomainExit",
    "EmptyRegion",
    "EXP_ABS_METRIC",
    "FixedPointResult",
    "GMetric",
    "Interval",
    "LogDistance",
    "MaxIterationsExceeded",
    "MultMetric",
    "NamedFixture",
    "NUMERIC_ORDER",
    "OrderRelation",
    "PicardTrace",
    "PiecewiseRow",
    "Point",
    "RateOutOfRange",
    "SeedConditionViolated",
    "SelfMap",
    "Witness",
    "a_priori_iterations",
    "ball_contains",
    "certify_region",
    "check_gm_axioms",
    "check_gm_properties",
    "check_mult_axioms",
    "converged",
    "get_fixture",
    "gm_from_exp",
    "gm_from_product",
    "half_shift_map",
    "implicit_bound",
    "implicit_contraction_holds",
    "load_fixture_config",
    "mu_class",
    "mu_of",
    "picard_trace",
    "piecewise_map",
    "quarter_shift_map",
    "registry",
    "root_contraction_holds",
    "seed_condition_holds",
    "solve_fixed_point",
    "step_bound",
    "usual_metric",
]
