"""Subadditive and (approximately) periodic sequences on finite prefixes."""
from ._backend import BACKEND
from .bounds import BoundsReport, hermite_hadamard_bounds, mean_and_height, ostrowski_check
from .core import (
    DEFAULT_TOL,
    DomainError,
    PreconditionError,
    Sequence,
    SequenceError,
    Tolerance,
    difference_bound_holds,
    is_nonneg_decreasing,
    is_subadditive,
)
from .envelope import EnvelopeResult, SandwichError, sandwich, subadditive_envelope, verify_maximality
from .generators import GeneratorSpec, generate
from .interpolant import (
    Interpolant,
    audit_subadditivity,
    eval_interpolant,
    fekete_estimate,
    mediant_bounds,
    ratio_infimum,
)
from .periodicity import (
    ConstantPartition,
    NotPeriodicError,
    PeriodicityReport,
    ResidueClasses,
    constant_partition,
    decompose,
    epsilon_for_period,
    merge_classes,
    partial_sum_profile,
    periodic_interpolant,
    split_classes,
    verify_converse_stability,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundsReport",
    "ConstantPartition",
    "DEFAULT_TOL",
    "DomainError",
    "EnvelopeResult",
    "GeneratorSpec",
    "Interpolant",
    "NotPeriodicError",
    "PeriodicityReport",
    "PreconditionError",
    "ResidueClasses",
    "SandwichError",
    "Sequence",
    "SequenceError",
    "Tolerance",
    "audit_subadditivity",
    "constant_partition",
    "decompose",
    "difference_bound_holds",
    "epsilon_for_period",
    "eval_interpolant",
    "fekete_estimate",
    "generate",
    "hermite_hadamard_bounds",
    "is_nonneg_decreasing",
    "is_subadditive",
    "mean_and_height",
    "mediant_bounds",
    "merge_classes",
    "ostrowski_check",
    "partial_sum_profile",
    "periodic_interpolant",
    "ratio_infimum",
    "sandwich",
    "split_classes",
    "subadditive_envelope",
    "verify_converse_stability",
    "verify_maximality",
]
