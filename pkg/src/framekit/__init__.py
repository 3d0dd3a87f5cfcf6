"""Tight frames, least-squares frame design, Neumark extensions, and rank-one
quantum measurements, all over dense complex matrices."""

from .errors import DomainError, FramekitError, NumericalError
from .frames import FrameReport, analyze_frame, expansion_coefficients, reconstruct
from .gu import (
    AbelianGroup,
    GroupMap,
    ft_matrix,
    generate_gu_set,
    gu_canonical,
    is_permuted_gram,
)
from .linalg import (
    SvdResult,
    gram_sqrt_pinv,
    hermitian_sqrt,
    numerical_rank,
    range_projector,
    svd,
)
from .lsq import LsfResult, PolarFactors, canonical, clsf, polar, squared_error, tpd, ulsf
from .measurement import (
    MeasurementMatrix,
    as_measurement,
    detection_error,
    least_squares_measurement,
    outcome_probabilities,
    povm_from_frame,
    sample_outcomes,
)
from .neumark import ExtensionCase, NeumarkExtension, extend, verify_extension

__all__ = [
    "AbelianGroup",
    "DomainError",
    "ExtensionCase",
    "FrameReport",
    "FramekitError",
    "GroupMap",
    "LsfResult",
    "MeasurementMatrix",
    "NeumarkExtension",
    "NumericalError",
    "PolarFactors",
    "SvdResult",
    "analyze_frame",
    "as_measurement",
    "canonical",
    "clsf",
    "detection_error",
    "expansion_coefficients",
    "extend",
    "ft_matrix",
    "generate_gu_set",
    "gram_sqrt_pinv",
    "gu_canonical",
    "hermitian_sqrt",
    "is_permuted_gram",
    "least_squares_measurement",
    "numerical_rank",
    "outcome_probabilities",
    "polar",
    "povm_from_frame",
    "range_projector",
    "reconstruct",
    "sample_outcomes",
    "squared_error",
    "svd",
    "tpd",
    "ulsf",
    "verify_extension",
]
