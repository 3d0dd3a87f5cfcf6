"""Least-squares tight frame constructions and polar decompositions.

Given vectors ``phi_i`` (columns of ``Phi``), the tight frame of fixed scale
``beta0`` closest in summed squared error is ``beta0 * U Z_r V*`` built from
the SVD of ``Phi``; freeing the scale gives the same frame scaled by the mean
nonzero singular value instead.  The scale-1 case is the canonical frame
``Phi ((Phi* Phi)^(1/2))^+``, which is also the projected isometry factor of
the polar decomposition of ``Phi``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DomainError, NumericalError

#: Relative gap under which singular values are treated as one degenerate group.
GROUP_TOL = 1e-12

#: Budget for the closed-form vs. direct residual cross-check.
RESIDUAL_CHECK_TOL = 1e-8


@dataclass(frozen=True)
class LsfResult:
    """An optimal tight frame with its scale and residual squared error."""

    frame: np.ndarray
    scale: float
    residual: float
    singular_values: np.ndarray


@dataclass(frozen=True)
class PolarFactors:
    """Factors ``H`` (isometry) and ``Y = (Phi* Phi)^(1/2)`` with ``H Y = Phi``.

    ``projected_isometry`` is the unique projection of ``H`` onto the column
    space, ``U Z_r V*``.  Truncated decompositions reuse this carrier with a
    rank-p partial isometry in place of ``H``.
    """

    isometry_part: np.ndarray
    hermitian_part: np.ndarray
    projected_isometry: np.ndarray


def squared_error(phi, f) -> float:
    """Sum of squared norms of the column differences, ``||Phi - F||_F^2``."""
    a = linalg.as_matrix(phi, "reference matrix")
    b = linalg.as_matrix(f, "frame matrix")
    if a.shape != b.shape:
        raise DomainError(f"shape mismatch: {a.shape} vs {b.shape}")
    d = a - b
    return float(np.real(np.sum(d.conj() * d)))


def clsf(phi, beta0: float) -> LsfResult:
    """Closest tight frame of fixed scale ``beta0`` to the columns of ``phi``.

    Returns ``beta0 * U Z_r V*`` with residual ``sum (beta0 - s_i)^2`` over the
    nonzero singular values.  When the columns are linearly independent the
    result has orthogonal columns of norm ``beta0``.
    """
    if beta0 <= 0:
        raise DomainError("beta0 must be positive")
    m = linalg.as_matrix(phi, "vector matrix")
    res = linalg.svd(m)
    if res.rank == 0:
        raise DomainError("cannot build a frame from a zero matrix")
    frame = beta0 * _partial_isometry(m, res.u, res.singular_values, res.rank)
    residual = float(np.sum((beta0 - res.nonzero) ** 2))
    _check_residual(m, frame, residual)
    return LsfResult(frame, beta0, residual, res.singular_values.copy())


def ulsf(phi) -> LsfResult:
    """Closest tight frame with free scale; the scale comes out as the mean
    nonzero singular value."""
    m = linalg.as_matrix(phi, "vector matrix")
    res = linalg.svd(m)
    if res.rank == 0:
        raise DomainError("cannot build a frame from a zero matrix")
    alpha = float(np.mean(res.nonzero))
    frame = alpha * _partial_isometry(m, res.u, res.singular_values, res.rank)
    residual = float(np.sum((alpha - res.nonzero) ** 2))
    # second closed form: trace(Phi* Phi) - r * alpha^2
    trace_form = float(np.sum(res.singular_values**2)) - res.rank * alpha**2
    scale_guard = max(1.0, float(np.sum(res.singular_values**2)))
    if abs(residual - trace_form) > RESIDUAL_CHECK_TOL * scale_guard:
        raise NumericalError(
            f"residual closed forms disagree: {residual:.12g} vs {trace_form:.12g}"
        )
    _check_residual(m, frame, residual)
    return LsfResult(frame, alpha, residual, res.singular_values.copy())


def canonical(phi) -> np.ndarray:
    """Canonical frame ``Phi ((Phi* Phi)^(1/2))^+``: the scale-1 optimum."""
    return clsf(phi, 1.0).frame


def polar(phi) -> PolarFactors:
    """Polar decomposition ``Phi = H Y`` for a matrix with rows >= columns."""
    m = linalg.as_matrix(phi, "matrix")
    k, n = m.shape
    if k < n:
        raise DomainError(
            "polar decomposition needs rows >= columns; "
            "for the projected isometry of a wide matrix use clsf(phi, 1)"
        )
    res = linalg.svd(m)
    h = res.u[:, :n] @ res.v.conj().T
    y = linalg.hermitian_sqrt(m.conj().T @ m)
    dev = float(np.linalg.norm(h @ y - m))
    if dev > RESIDUAL_CHECK_TOL * max(1.0, float(np.linalg.norm(m))):
        raise NumericalError(f"polar factor product misses the input by {dev:.3e}")
    h_u = _partial_isometry(m, res.u, res.singular_values, res.rank)
    return PolarFactors(h, y, h_u)


def tpd(phi, p: int) -> PolarFactors:
    """Order-``p`` truncated polar decomposition.

    Returns ``U Z_p V*`` and ``V diag(s_1..s_p) V*`` whose product is the
    projection of ``phi`` onto the span of its first ``p`` left singular
    vectors.  Requires ``1 <= p <= rank``.
    """
    m = linalg.as_matrix(phi, "matrix")
    res = linalg.svd(m)
    if not 1 <= p <= res.rank:
        raise DomainError(f"truncation order {p} outside [1, rank={res.rank}]")
    up = res.u[:, :p]
    vp = res.v[:, :p]
    h = up @ vp.conj().T
    y = (vp * res.singular_values[:p]) @ vp.conj().T
    return PolarFactors(h, y, h)


def _partial_isometry(phi: np.ndarray, u: np.ndarray, s: np.ndarray, rank: int) -> np.ndarray:
    """``U Z_r V*`` assembled as projector sums over degenerate singular groups.

    Within a group of (numerically) equal singular values only the eigenspace
    projector enters, so the result does not depend on how a particular SVD
    picked basis vectors inside the group.
    """
    out = np.zeros_like(phi)
    top = float(s[0])
    i = 0
    while i < rank:
        j = i + 1
        while j < rank and (s[j - 1] - s[j]) <= GROUP_TOL * top:
            j += 1
        block = u[:, i:j]
        mean = float(np.mean(s[i:j]))
        out += (block @ (block.conj().T @ phi)) / mean
        i = j
    return out


def _check_residual(phi: np.ndarray, frame: np.ndarray, closed_form: float) -> None:
    direct = squared_error(phi, frame)
    scale_guard = max(1.0, float(np.real(np.sum(phi.conj() * phi))))
    if abs(direct - closed_form) > RESIDUAL_CHECK_TOL * scale_guard:
        raise NumericalError(
            f"residual cross-check failed: closed form {closed_form:.12g}, "
            f"direct {direct:.12g}"
        )
