"""Exact L-series of elliptic curves and Dirichlet characters over F_q(t)."""

from _ffl import (  # noqa: F401
    Cyclotomic,
    DirichletCharacter,
    EllipticSurfaceModel,
    FflError,
    FiniteField,
    FqPoly,
    GaloisAutomorphism,
    LValueReport,
    Place,
    ReductionData,
    ReductionType,
    UnitGroup,
    all_characters,
    count_monic_irreducibles,
    curve_l,
    dirichlet_l,
    equivariance_check,
    evaluate_leading,
    monic_irreducibles,
    pade_reconstruct,
    point_count,
    reduction_at,
    run_job,
    twisted_l,
    zeta_series,
)

__all__ = [
    "Cyclotomic",
    "DirichletCharacter",
    "EllipticSurfaceModel",
    "FflError",
    "FiniteField",
    "FqPoly",
    "GaloisAutomorphism",
    "LValueReport",
    "Place",
    "ReductionData",
    "ReductionType",
    "UnitGroup",
    "all_characters",
    "count_monic_irreducibles",
    "curve_l",
    "dirichlet_l",
    "equivariance_check",
    "evaluate_leading",
    "monic_irreducibles",
    "pade_reconstruct",
    "point_count",
    "reduction_at",
    "run_job",
    "twisted_l",
    "zeta_series",
]

__version__ = "0.1.0"
