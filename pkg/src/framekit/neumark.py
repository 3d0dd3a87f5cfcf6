"""Constructive Neumark extension of tight frames.

Any rank-r tight frame matrix lifts to a matrix with equal-norm orthogonal
columns in a space of dimension ``max(k, n)`` whose projection onto the span
of the original columns recovers the original matrix.  The construction here
follows the SVD route: with ``F = beta * U Z_r V*``, the extension is
``beta * U Z_n V*`` when there are at least as many rows as columns, and
``beta * U~ V*`` after zero-padding and completing the span basis otherwise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import frames, linalg
from .errors import DomainError, NumericalError

#: Gram-Schmidt candidates closer than this to the current span are skipped.
COMPLETION_TOL = 1e-8


class ExtensionCase(enum.Enum):
    WITHIN_SPACE = "within-space"      # rows >= columns, no padding needed
    EXPANDED_SPACE = "expanded-space"  # rows < columns, original zero-padded


@dataclass(frozen=True)
class NeumarkExtension:
    """Orthogonal lift of a tight frame.

    ``extended`` has ``max(k, n)`` rows and satisfies
    ``extended* extended = beta^2 I``; projecting it onto the range of
    ``embedded_original`` (the input zero-padded to the same height) gives
    back ``embedded_original``.
    """

    extended: np.ndarray
    embedded_original: np.ndarray
    beta: float
    case: ExtensionCase


def extend(f, tol: float = frames.TIGHT_TOL) -> NeumarkExtension:
    """Lift a tight frame matrix to equal-norm orthogonal columns.

    Raises ``DomainError`` when the input is not tight within ``tol``.  In the
    rows < columns case the orthonormal completion of the span basis is a
    deterministic Gram-Schmidt sweep over the canonical basis, so results are
    reproducible; any unitary completion would do.
    """
    m = linalg.as_matrix(f, "frame matrix")
    k, n = m.shape
    report = frames.analyze_frame(m, tol)
    if not report.is_tight:
        spread = report.upper_bound - report.lower_bound
        raise DomainError(
            f"not a tight frame: singular values spread over [{report.lower_bound:.6g}, "
            f"{report.upper_bound:.6g}] (spread {spread:.3e} exceeds tolerance)"
        )
    beta = report.beta
    res = linalg.svd(m)
    r = res.rank

    if k >= n:
        extended = beta * (res.u[:, :n] @ res.v.conj().T)
        return NeumarkExtension(extended, m.copy(), beta, ExtensionCase.WITHIN_SPACE)

    padded_basis = np.zeros((n, r), dtype=complex)
    padded_basis[:k, :] = res.u[:, :r]
    u_ext = _complete_orthonormal(padded_basis)
    extended = beta * (u_ext @ res.v.conj().T)
    embedded = np.zeros((n, n), dtype=complex)
    embedded[:k, :] = m
    return NeumarkExtension(extended, embedded, beta, ExtensionCase.EXPANDED_SPACE)


def verify_extension(f, ext: NeumarkExtension, tol: float) -> bool:
    """Check both extension identities within ``tol`` (max-abs entrywise)."""
    gram_dev, proj_dev = extension_deviations(f, ext)
    return gram_dev <= tol and proj_dev <= tol


def extension_deviations(f, ext: NeumarkExtension) -> tuple[float, float]:
    """Max-abs deviations of the Gram identity and of the projection identity.

    The first value measures ``extended* extended - beta^2 I``; the second
    measures ``P extended - padded(f)`` where ``P`` projects onto the range of
    the padded original.
    """
    m = linalg.as_matrix(f, "frame matrix")
    ft = linalg.as_matrix(ext.extended, "extended matrix")
    kt, n = ft.shape
    if m.shape[1] != n or m.shape[0] > kt:
        raise DomainError(
            f"inconsistent shapes: original {m.shape}, extended {ft.shape}"
        )
    padded = np.zeros((kt, n), dtype=complex)
    padded[: m.shape[0], :] = m
    gram = ft.conj().T @ ft
    gram_dev = float(np.max(np.abs(gram - ext.beta**2 * np.eye(n))))
    p = linalg.range_projector(padded)
    proj_dev = float(np.max(np.abs(p @ ft - padded)))
    return gram_dev, proj_dev


def _complete_orthonormal(cols: np.ndarray) -> np.ndarray:
    """Extend orthonormal columns to a full orthonormal basis of their space."""
    dim, have = cols.shape
    basis = [cols[:, i] for i in range(have)]
    for j in range(dim):
        if len(basis) == dim:
            break
        cand = np.zeros(dim, dtype=complex)
        cand[j] = 1.0
        for _ in range(2):  # twice for numerical hygiene
            for b in basis:
                cand = cand - b * (b.conj() @ cand)
        norm = float(np.linalg.norm(cand))
        if norm > COMPLETION_TOL:
            basis.append(cand / norm)
    if len(basis) < dim:
        raise NumericalError("orthonormal completion failed to span the space")
    return np.column_stack(basis)
