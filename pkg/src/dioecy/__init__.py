"""Dynamics of a two-sex population under viability selection at one diallelic locus."""
from .dynamics import (
    OrbitCertificate,
    SymmetricCase,
    Trajectory,
    Verdict,
    VerdictKind,
    certify_orbit_avoids_one,
    iterate,
    predict_symmetric_limit,
)
from .equilibria import (
    Eigenpair,
    FixedPointReport,
    StabilityClass,
    classify,
    classify_square,
    odds_jacobian,
    quadrant_fixed_points,
    square_fixed_points,
)
from .errors import (
    BackendMismatch,
    BoundaryState,
    DioecyError,
    InvalidParams,
    NotAFixedPoint,
    NotApplicable,
    NotSymmetric,
    Overflow,
    UndefinedImage,
    ZeroDenominator,
)
from .geometry import BasinLabel, BasinRaster, ManifoldCurve, scan_basins, stable_boundary, unstable_curve
from .model import (
    FitnessParams,
    QuadrantState,
    ReducedParams,
    SquareState,
    diagonal_map,
    evolve,
    male_update,
    odds_map,
    quadrant_to_square,
    reduce_params,
    square_to_quadrant,
)
from .numerics import Backend, Tolerance, exact_div, quadratic_roots

__all__ = [
    "OrbitCertificate",
    "SymmetricCase",
    "Trajectory",
    "Verdict",
    "VerdictKind",
    "certify_orbit_avoids_one",
    "iterate",
    "predict_symmetric_limit",
    "Eigenpair",
    "FixedPointReport",
    "StabilityClass",
    "classify",
    "classify_square",
    "odds_jacobian",
    "quadrant_fixed_points",
    "square_fixed_points",
    "BackendMismatch",
    "BoundaryState",
    "DioecyError",
    "InvalidParams",
    "NotAFixedPoint",
    "NotApplicable",
    "NotSymmetric",
    "Overflow",
    "UndefinedImage",
    "ZeroDenominator",
    "BasinLabel",
    "BasinRaster",
    "ManifoldCurve",
    "scan_basins",
    "stable_boundary",
    "unstable_curve",
    "FitnessParams",
    "QuadrantState",
    "ReducedParams",
    "SquareState",
    "diagonal_map",
    "evolve",
    "male_update",
    "odds_map",
    "quadrant_to_square",
    "reduce_params",
    "square_to_quadrant",
    "Backend",
    "Tolerance",
    "exact_div",
    "quadratic_roots",
]

__version__ = "0.1.0"
