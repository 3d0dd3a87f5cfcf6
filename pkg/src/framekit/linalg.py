"""Dense complex linear algebra: SVD with a fixed phase convention, numerical rank,
range projectors, and Hermitian square roots with pseudo-inverses.

Matrices are plain 2-D ``numpy`` arrays of ``complex`` dtype.  The inner product
convention throughout the package is ``<x, y> = x* y`` (conjugate-linear in the
first argument).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError

#: Relative tolerance deciding which singular values count as nonzero.
RANK_TOL = 1e-10


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce ``a`` to a 2-D complex array with finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim == 1:
        m = m[:, np.newaxis]
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise DomainError(f"{name} must be a nonempty 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError(f"{name} contains non-finite entries")
    return m


def as_vector(x, name: str = "vector") -> np.ndarray:
    """Coerce ``x`` to a 1-D complex array with finite entries."""
    v = np.asarray(x, dtype=complex).reshape(-1)
    if v.size == 0:
        raise DomainError(f"{name} must be nonempty")
    if not np.all(np.isfinite(v)):
        raise DomainError(f"{name} contains non-finite entries")
    return v


@dataclass(frozen=True)
class SvdResult:
    """Full SVD ``a = u @ diag(s) @ v*`` with a numerical rank decision.

    ``u`` is k-by-k unitary, ``v`` is n-by-n unitary, ``singular_values`` holds
    all ``min(k, n)`` values in descending order, and exactly ``rank`` of them
    exceed the rank threshold.
    """

    u: np.ndarray
    singular_values: np.ndarray
    v: np.ndarray
    rank: int

    @property
    def nonzero(self) -> np.ndarray:
        return self.singular_values[: self.rank]


def numerical_rank(singular_values, tol: float = RANK_TOL) -> int:
    """Count singular values above ``tol * max(largest value, 1)``.

    Expects a nonnegative, descending sequence and ``tol > 0``.
    """
    s = np.asarray(singular_values, dtype=float)
    if tol <= 0:
        raise DomainError("rank tolerance must be positive")
    if s.size == 0:
        return 0
    threshold = tol * max(float(s[0]), 1.0)
    return int(np.count_nonzero(s > threshold))


def svd(a, tol: float = RANK_TOL) -> SvdResult:
    """Deterministic full SVD of a complex matrix.

    The LAPACK factorization is post-processed with a fixed phase convention:
    for every right-singular vector the first entry of largest magnitude is
    rotated to be real nonnegative, and for the vectors paired through a
    nonzero singular value the left vector absorbs the same rotation.  Spare
    basis vectors (beyond the rank) are normalized the same way independently,
    so repeated calls on the same matrix reproduce identical factors.
    """
    m = as_matrix(a)
    k, n = m.shape
    try:
        u, s, vh = np.linalg.svd(m, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge for a {k}x{n} matrix") from exc
    v = vh.conj().T
    rank = numerical_rank(s, tol)

    u = u.copy()
    v = v.copy()
    for i in range(rank):
        phase = _leading_phase(v[:, i])
        v[:, i] *= phase.conjugate()
        u[:, i] *= phase.conjugate()
    for i in range(rank, n):
        v[:, i] *= _leading_phase(v[:, i]).conjugate()
    for i in range(rank, k):
        u[:, i] *= _leading_phase(u[:, i]).conjugate()

    s_full = np.zeros(min(k, n))
    s_full[: s.size] = np.maximum(s, 0.0)
    return SvdResult(u=u, singular_values=s_full, v=v, rank=rank)


def _leading_phase(col: np.ndarray) -> complex:
    # first entry of largest magnitude; argmax returns the first maximum
    j = int(np.argmax(np.abs(col)))
    mag = abs(col[j])
    return col[j] / mag if mag > 0 else 1.0


def range_projector(a, tol: float = RANK_TOL) -> np.ndarray:
    """Orthogonal projector onto the column space of ``a``."""
    res = svd(a, tol)
    ur = res.u[:, : res.rank]
    p = ur @ ur.conj().T
    return _hermitize(p)


def gram_sqrt_pinv(a, tol: float = RANK_TOL) -> np.ndarray:
    """Moore-Penrose pseudo-inverse of ``(a* a)^(1/2)``.

    Equals ``v @ diag(1/s on nonzero, 0) @ v*``; Hermitian and PSD on the row
    space of ``a``.
    """
    res = svd(a, tol)
    vr = res.v[:, : res.rank]
    inv = vr / res.nonzero
    return _hermitize(inv @ vr.conj().T)


def hermitian_sqrt(p, tol: float = RANK_TOL) -> np.ndarray:
    """Hermitian PSD square root of a Hermitian PSD matrix.

    Eigenvalues below ``-tol * max(|eigenvalue|, 1)`` raise ``DomainError``;
    smaller negative dust is clamped to zero before the square root.
    """
    m = as_matrix(p)
    if m.shape[0] != m.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {m.shape}")
    herm_dev = float(np.max(np.abs(m - m.conj().T)))
    scale = max(float(np.max(np.abs(m))), 1.0)
    if herm_dev > tol * scale:
        raise DomainError(f"matrix is not Hermitian (max deviation {herm_dev:.3e})")
    w, q = np.linalg.eigh(0.5 * (m + m.conj().T))
    floor = -tol * max(float(np.max(np.abs(w))), 1.0)
    if np.min(w) < floor:
        raise DomainError(f"matrix has a negative eigenvalue ({np.min(w):.3e})")
    w = np.clip(w, 0.0, None)
    return _hermitize((q * np.sqrt(w)) @ q.conj().T)


def _hermitize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)
