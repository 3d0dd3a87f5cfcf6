"""Frame verification and tight-frame expansions.

A set of column vectors is a tight frame for the subspace it spans when all
nonzero singular values of its matrix coincide; the common value is the frame
scale ``beta`` and ``F F* = beta^2 P`` for the projector ``P`` onto the span.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DomainError

#: Relative spread of the nonzero singular values tolerated when declaring tightness.
TIGHT_TOL = 1e-8

#: Relative residual tolerated when checking that a vector lies in a subspace.
SUBSPACE_TOL = 1e-8


@dataclass(frozen=True)
class FrameReport:
    """Tightness verdict with frame bounds and redundancy.

    ``lower_bound``/``upper_bound`` are the extreme nonzero singular values;
    ``beta`` is set (to the upper bound) only when the frame is tight;
    ``redundancy`` is vectors per spanned dimension, ``n / rank``.
    """

    is_tight: bool
    beta: float | None
    lower_bound: float
    upper_bound: float
    rank: int
    redundancy: float


def analyze_frame(f, tol: float = TIGHT_TOL, rank_tol: float = linalg.RANK_TOL) -> FrameReport:
    """Classify the columns of ``f`` as a frame for their span.

    The verdict is subspace-relative: a rank-deficient matrix is analyzed on
    the subspace its columns do span.  A zero matrix is rejected because it
    spans nothing.
    """
    m = linalg.as_matrix(f, "frame matrix")
    res = linalg.svd(m, rank_tol)
    if res.rank == 0:
        raise DomainError("no frame: vectors do not span a subspace (zero matrix)")
    n = m.shape[1]
    upper = float(res.singular_values[0])
    lower = float(res.nonzero[-1])
    is_tight = (upper - lower) <= tol * upper
    return FrameReport(
        is_tight=is_tight,
        beta=upper if is_tight else None,
        lower_bound=lower,
        upper_bound=upper,
        rank=res.rank,
        redundancy=n / res.rank,
    )


def expansion_coefficients(
    f,
    beta: float,
    x,
    tol: float = SUBSPACE_TOL,
    project: bool = False,
) -> np.ndarray:
    """Minimal-norm coefficients ``a = beta^-2 F* x`` of ``x`` in a tight frame.

    ``f`` must be a ``beta``-scaled tight frame (the caller verifies; see
    :func:`analyze_frame`).  ``x`` must lie in the span of the frame; a vector
    with a larger out-of-subspace component is rejected unless ``project`` is
    set, in which case it is first projected onto the span.
    """
    m = linalg.as_matrix(f, "frame matrix")
    vec = linalg.as_vector(x, "x")
    if vec.size != m.shape[0]:
        raise DomainError(f"x has length {vec.size}, expected {m.shape[0]}")
    if beta <= 0:
        raise DomainError("beta must be positive")
    p = linalg.range_projector(m)
    residual = float(np.linalg.norm(vec - p @ vec))
    if residual > tol * max(1.0, float(np.linalg.norm(vec))):
        if not project:
            raise DomainError(
                f"x lies outside the frame subspace (residual norm {residual:.3e}); "
                "project it first to expand anyway"
            )
        vec = p @ vec
    return m.conj().T @ vec / beta**2


def reconstruct(f, a) -> np.ndarray:
    """Synthesize ``F a`` from expansion coefficients."""
    m = linalg.as_matrix(f, "frame matrix")
    coeff = linalg.as_vector(a, "coefficients")
    if coeff.size != m.shape[1]:
        raise DomainError(f"got {coeff.size} coefficients for {m.shape[1]} frame vectors")
    return m @ coeff
