"""Exact arithmetic for tropical plane curves, their theta
characteristics and tritangents, with lifts to space sextics on a
smooth tropical quadric and a numerical search for totally-real
tritangent planes of explicit algebraic sextics."""

from tritrop.exceptions import (
    DegenerateCurveError,
    InputError,
    ReductionError,
    SolveError,
    TritropError,
)
from tritrop.intersection import (
    IntersectionDivisor,
    TangencyEvent,
    contact_components,
    stable_intersection,
    tangencies,
    tritangency_certificate,
)
from tritrop.metric_graph import (
    Divisor,
    GraphPoint,
    MetricGraph,
    canonical_divisor,
    genus,
    is_equivalent,
    rank,
    reduce_divisor,
    riemann_roch_residual,
)
from tritrop.plane_curve import (
    CurveEdge,
    DegreeProfile,
    PlaneCurve,
    Skeleton,
    TropicalPolynomial,
    curve_from_polynomial,
    degree_profile,
    is_smooth,
    skeleton,
)
from tritrop.real_counts import (
    CensusRow,
    EmchCensus,
    RealTopologyType,
    emch_census,
    lifting_multiplicity,
    odd_even_counts,
    real_theta_counts,
)
from tritrop.real_search import (
    AffineSextic,
    PlaneCandidate,
    classify_contacts,
    clebsch_sextic,
    emch_sextic,
    search,
    tritangent_system,
)
from tritrop.space_lift import (
    LiftMap,
    SpaceCurve,
    SpaceCurveEdge,
    TropicalPlane,
    is_smooth_quadric,
    lift_curve,
    lift_map,
    plane_curve_contact,
    plane_through,
    quadric_bounded_face,
    quadric_contains,
    tritangent_planes_of_lift,
)
from tritrop.theta import (
    ThetaCharacteristic,
    all_theta_characteristics,
    zharkov_effective,
    zharkov_non_effective,
)
from tritrop.tritangent import (
    OneOneCurve,
    TritangentClass,
    enumerate_tritangents,
    theta_class_of,
)

__all__ = [
    "AffineSextic",
    "CensusRow",
    "CurveEdge",
    "DegenerateCurveError",
    "DegreeProfile",
    "Divisor",
    "EmchCensus",
    "GraphPoint",
    "InputError",
    "IntersectionDivisor",
    "LiftMap",
    "MetricGraph",
    "OneOneCurve",
    "PlaneCandidate",
    "PlaneCurve",
    "RealTopologyType",
    "ReductionError",
    "Skeleton",
    "SolveError",
    "SpaceCurve",
    "SpaceCurveEdge",
    "TangencyEvent",
    "ThetaCharacteristic",
    "TritangentClass",
    "TritropError",
    "TropicalPlane",
    "TropicalPolynomial",
    "all_theta_characteristics",
    "canonical_divisor",
    "classify_contacts",
    "clebsch_sextic",
    "contact_components",
    "curve_from_polynomial",
    "degree_profile",
    "emch_census",
    "emch_sextic",
    "enumerate_tritangents",
    "genus",
    "is_equivalent",
    "is_smooth",
    "is_smooth_quadric",
    "lift_curve",
    "lift_map",
    "lifting_multiplicity",
    "odd_even_counts",
    "plane_curve_contact",
    "plane_through",
    "quadric_bounded_face",
    "quadric_contains",
    "rank",
    "real_theta_counts",
    "reduce_divisor",
    "riemann_roch_residual",
    "search",
    "skeleton",
    "stable_intersection",
    "tangencies",
    "theta_class_of",
    "tritangency_certificate",
    "tritangent_planes_of_lift",
    "tritangent_system",
    "zharkov_effective",
    "zharkov_non_effective",
]
