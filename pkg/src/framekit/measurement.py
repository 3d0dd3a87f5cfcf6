"""Rank-one POVMs over a subspace: validation, outcome statistics, sampling.

A matrix ``M`` of measurement vectors (columns) represents a rank-one POVM on
the subspace ``U`` it spans exactly when ``M M* = P_U``, i.e. when all nonzero
singular values of ``M`` equal 1.  Normalized tight frames are precisely such
matrices, which is what ties this module to the frame constructions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import frames, linalg, lsq
from .errors import DomainError

#: Tolerance for unit-norm and in-subspace checks on state vectors.
STATE_TOL = 1e-8


@dataclass(frozen=True)
class MeasurementMatrix:
    """Measurement vectors (columns) together with the subspace projector they resolve."""

    matrix: np.ndarray
    subspace_projector: np.ndarray


def as_measurement(m, tol: float = STATE_TOL) -> MeasurementMatrix:
    """Validate a raw matrix as a measurement matrix.

    All nonzero singular values must equal 1 within ``tol``.
    """
    mat = linalg.as_matrix(m, "measurement matrix")
    res = linalg.svd(mat)
    if res.rank == 0:
        raise DomainError("zero matrix is not a measurement matrix")
    dev = float(np.max(np.abs(res.nonzero - 1.0)))
    if dev > tol:
        raise DomainError(
            f"columns do not resolve a subspace identity: nonzero singular values "
            f"deviate from 1 by {dev:.3e}"
        )
    return MeasurementMatrix(mat, linalg.range_projector(mat))


def povm_from_frame(f, tol: float = frames.TIGHT_TOL) -> MeasurementMatrix:
    """Scale a tight frame down by its frame constant into a POVM."""
    mat = linalg.as_matrix(f, "frame matrix")
    report = frames.analyze_frame(mat, tol)
    if not report.is_tight:
        raise DomainError(
            f"not a tight frame: bounds [{report.lower_bound:.6g}, "
            f"{report.upper_bound:.6g}]"
        )
    scaled = mat / report.beta
    return MeasurementMatrix(scaled, linalg.range_projector(scaled))


def outcome_probabilities(m: MeasurementMatrix, phi, tol: float = STATE_TOL) -> np.ndarray:
    """Outcome distribution ``p(i) = |<mu_i, phi>|^2`` for a unit state in the subspace.

    States with a component outside the measured subspace are rejected; the
    missing probability mass would belong to an unmodeled complement outcome.
    """
    vec = linalg.as_vector(phi, "state")
    mat = m.matrix
    if vec.size != mat.shape[0]:
        raise DomainError(f"state has length {vec.size}, expected {mat.shape[0]}")
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > tol:
        raise DomainError(f"state is not normalized (norm {norm:.12g})")
    residual = float(np.linalg.norm(vec - m.subspace_projector @ vec))
    if residual > tol:
        raise DomainError(
            f"state lies outside the measured subspace (residual norm {residual:.3e})"
        )
    amps = mat.conj().T @ vec
    return np.abs(amps) ** 2


def detection_error(m: MeasurementMatrix, states, tol: float = STATE_TOL) -> float:
    """Error probability ``1 - mean |<mu_i, phi_i>|^2`` for equally likely states."""
    s = linalg.as_matrix(states, "states")
    mat = m.matrix
    if s.shape != mat.shape:
        raise DomainError(
            f"need one state per measurement vector: states {s.shape}, matrix {mat.shape}"
        )
    norms = np.linalg.norm(s, axis=0)
    if float(np.max(np.abs(norms - 1.0))) > tol:
        raise DomainError("state columns must be unit vectors")
    hits = np.abs(np.sum(mat.conj() * s, axis=0)) ** 2
    return max(0.0, 1.0 - float(np.mean(hits)))


def least_squares_measurement(states) -> MeasurementMatrix:
    """The POVM whose vectors are closest in summed squared error to the states.

    This is the normalized tight frame closest to the state set, i.e. the
    canonical frame of the state matrix.
    """
    return povm_from_frame(lsq.clsf(states, 1.0).frame)


def sample_outcomes(m: MeasurementMatrix, phi, trials: int, seed: int) -> np.ndarray:
    """Seeded i.i.d. outcome counts.

    Draws from ``outcome_probabilities(m, phi)`` using ``numpy``'s PCG64
    generator seeded with ``seed``, so identical inputs reproduce identical
    counts.  Returns one count per outcome, summing to ``trials``.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    p = outcome_probabilities(m, phi)
    rng = np.random.default_rng(seed)
    return rng.multinomial(trials, p / p.sum())
