"""Geometrically uniform vector sets and their closed-form canonical frames.

A vector set is geometrically uniform (GU) when it is the orbit of one vector
under a finite abelian group of unitary matrices.  Indexing the vectors by an
additive group ``Z_n1 x ... x Z_np`` isomorphic to the matrix group, the Gram
matrix becomes group-circulant, the group Fourier transform diagonalizes it,
and the canonical frame comes out in closed form from two Fourier transforms:
one of the inner-product sequence (giving the singular values) and one of the
vectors themselves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg, lsq
from .errors import DomainError, NumericalError

#: Largest group closure generate_gu_set will enumerate.
CLOSURE_CAP = 4096

#: Max-abs distance under which two group-element matrices are identified.
MATCH_TOL = 1e-8

#: Tolerance for unitarity/commutation checks and the permuted-Gram test.
GROUP_TOL = 1e-8

#: Transform values above this floor (relative) count as negative -> error.
SPECTRUM_FLOOR = 1e-10


@dataclass(frozen=True)
class AbelianGroup:
    """Direct product of cyclic groups ``Z_n1 x ... x Z_np``.

    Elements are enumerated lexicographically (last coordinate fastest), with
    index 0 the identity.  The empty factor list is the trivial group.
    """

    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(f) for f in self.factors))
        if any(f < 2 for f in self.factors):
            raise DomainError(f"cyclic factors must be >= 2, got {self.factors}")

    @property
    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f
        return out

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(f) for f in self.factors)))


@dataclass(frozen=True)
class GroupMap:
    """Bijection sending column ``i`` of an orbit matrix to its group element index."""

    permutation: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "permutation", tuple(int(p) for p in self.permutation))
        if sorted(self.permutation) != list(range(len(self.permutation))):
            raise DomainError("group map is not a permutation")


def ft_matrix(group: AbelianGroup) -> np.ndarray:
    """Unitary Fourier matrix of the group, entry ``exp(-2 pi i sum h_t g_t / n_t) / sqrt(n)``.

    Quarter-turn phases are produced exactly, so e.g. the ``Z_2 x Z_2`` matrix
    is the 4x4 Hadamard matrix over 2 with exact entries.
    """
    n = group.order
    elems = group.elements()
    weights = [n // f for f in group.factors]
    scale = 1.0 / np.sqrt(n)
    out = np.empty((n, n), dtype=complex)
    for a, h in enumerate(elems):
        for b, g in enumerate(elems):
            m = sum(ht * gt * w for ht, gt, w in zip(h, g, weights)) % n
            out[a, b] = scale * _unit_root(m, n)
    return out


def _unit_root(m: int, n: int) -> complex:
    # exp(-2 pi i m / n), exact on quarter turns
    m %= n
    if (4 * m) % n == 0:
        return (1.0, -1.0j, -1.0, 1.0j)[(4 * m) // n % 4]
    angle = -2.0 * np.pi * m / n
    return complex(np.cos(angle), np.sin(angle))


def is_permuted_gram(s, tol: float = GROUP_TOL) -> bool:
    """True when every row of ``s`` is a permutation of the first row within ``tol``."""
    m = linalg.as_matrix(s, "gram matrix")
    if m.shape[0] != m.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {m.shape}")
    base = np.sort_complex(m[0, :])
    for i in range(1, m.shape[0]):
        if float(np.max(np.abs(np.sort_complex(m[i, :]) - base))) > tol:
            return False
    return True


def generate_gu_set(generators, phi, cap: int = CLOSURE_CAP):
    """Orbit of ``phi`` under the abelian group generated by unitary matrices.

    Returns ``(orbit_matrix, group, group_map)``: the columns are the images
    of ``phi`` under every group element, enumerated so that column ``i``
    corresponds to group element index ``i`` (the map is the identity and the
    first column is ``phi`` itself).  The cyclic factor structure is inferred:
    independent generators contribute their own orders (first-listed generator
    varies fastest), and overlapping generators fall back to a basis extracted
    from the multiplication table, largest order first.

    Raises ``DomainError`` for non-unitary or non-commuting generators and
    when the closure would exceed ``cap`` elements.
    """
    vec = linalg.as_vector(phi, "phi")
    k = vec.size
    gens = []
    for idx, g in enumerate(generators):
        m = linalg.as_matrix(g, f"generator {idx}")
        if m.shape != (k, k):
            raise DomainError(
                f"generator {idx} has shape {m.shape}, expected ({k}, {k})"
            )
        dev = float(np.max(np.abs(m.conj().T @ m - np.eye(k))))
        if dev > GROUP_TOL:
            raise DomainError(f"generator {idx} is not unitary (deviation {dev:.3e})")
        gens.append(m)
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            dev = float(np.max(np.abs(gens[a] @ gens[b] - gens[b] @ gens[a])))
            if dev > GROUP_TOL:
                raise DomainError(
                    f"generators {a} and {b} do not commute: not abelian "
                    f"(deviation {dev:.3e})"
                )

    eye = np.eye(k, dtype=complex)
    gens = [g for g in gens if not _matches(g, eye)]
    if not gens:
        group = AbelianGroup(())
        return vec[:, np.newaxis].copy(), group, GroupMap((0,))

    orders = [_order_of(g, eye, cap) for g in gens]
    total = 1
    for o in orders:
        total *= o
        if total > cap:
            raise DomainError(f"group closure exceeds the cap of {cap} elements")

    # enumerate all exponent tuples, first generator fastest, and deduplicate
    elems: list[np.ndarray] = []
    exp_to_idx: dict[tuple[int, ...], int] = {}
    reps: list[tuple[int, ...]] = []
    for flat in range(total):
        exps, q = [], flat
        for o in orders:
            exps.append(q % o)
            q //= o
        mat = eye
        for g, e in zip(gens, exps):
            mat = mat @ np.linalg.matrix_power(g, e)
        idx = _find(elems, mat)
        if idx is None:
            idx = len(elems)
            elems.append(mat)
            reps.append(tuple(exps))
        exp_to_idx[tuple(exps)] = idx

    if len(elems) == total:
        # independent generators: their orders are the factors, reversed so
        # that lexicographic enumeration walks the first generator fastest
        basis = [(gens[t], orders[t]) for t in reversed(range(len(gens)))]
    else:
        basis = _basis_from_table(elems, reps, orders, exp_to_idx, gens)

    factors = tuple(o for _, o in basis)
    group = AbelianGroup(factors)
    n = group.order
    if n != len(elems):
        raise NumericalError("inferred factor structure does not match the closure size")

    cols = np.empty((k, n), dtype=complex)
    seen = []
    for i, g in enumerate(group.elements()):
        mat = eye
        for (b, _), e in zip(basis, g):
            mat = mat @ np.linalg.matrix_power(b, e)
        if _find(seen, mat) is not None:
            raise NumericalError("inferred basis does not enumerate the group bijectively")
        seen.append(mat)
        cols[:, i] = mat @ vec
    return cols, group, GroupMap(tuple(range(n)))


def gu_canonical(phi_matrix, group: AbelianGroup, gmap: GroupMap, tol: float = GROUP_TOL) -> np.ndarray:
    """Canonical frame of a GU vector set from group Fourier transforms.

    With columns reordered by ``gmap`` into group-element order, the transform
    of the inner-product sequence ``<phi(0), phi(g)>`` gives ``shat``; the
    singular values are ``n^(1/4) sqrt(shat(h))``, and the frame is assembled
    from the transformed columns divided by them.  The result is cross-checked
    against the SVD-based canonical frame and inherits the symmetry: output
    column ``i`` is the same group element applied to output column 0.

    Raises ``DomainError`` when the reordered Gram matrix is not a permuted
    matrix or the transformed sequence has negative values (both symptoms of a
    wrong map).
    """
    m = linalg.as_matrix(phi_matrix, "vector matrix")
    n = m.shape[1]
    if group.order != n:
        raise DomainError(f"group order {group.order} != number of columns {n}")
    if len(gmap.permutation) != n:
        raise DomainError("group map length does not match the number of columns")
    perm = list(gmap.permutation)

    ordered = np.empty_like(m)
    ordered[:, perm] = m
    gram = ordered.conj().T @ ordered
    if not is_permuted_gram(gram, tol):
        raise DomainError("reordered Gram matrix is not a permuted matrix: set is not GU under this map")

    ft = ft_matrix(group)
    seq = gram[0, :]  # <phi(0), phi(g)>
    shat = ft @ seq
    scale = max(1.0, float(np.max(np.abs(shat))))
    if float(np.max(np.abs(shat.imag))) > tol * scale:
        raise DomainError(
            "inner-product sequence not positive semidefinite under FT (wrong group map?)"
        )
    svals = shat.real.copy()
    if float(np.min(svals)) < -SPECTRUM_FLOOR * scale:
        raise DomainError(
            "inner-product sequence not positive semidefinite under FT (wrong group map?)"
        )
    svals = n**0.25 * np.sqrt(np.clip(svals, 0.0, None))

    transformed = ordered @ ft.T
    cutoff = linalg.RANK_TOL * max(float(np.max(svals)), 1.0)
    units = np.zeros_like(transformed)
    nz = svals > cutoff
    units[:, nz] = transformed[:, nz] / svals[nz]
    frame_ordered = units @ ft.conj().T

    out = frame_ordered[:, perm]
    reference = lsq.canonical(m)
    dev = float(np.max(np.abs(out - reference)))
    if dev > 1e-9 * max(1.0, float(np.max(np.abs(reference)))):
        raise NumericalError(
            f"group-transform frame disagrees with the SVD canonical frame by {dev:.3e}"
        )
    return out


def _matches(a: np.ndarray, b: np.ndarray, tol: float = MATCH_TOL) -> bool:
    return float(np.max(np.abs(a - b))) <= tol


def _find(elems: list[np.ndarray], mat: np.ndarray) -> int | None:
    for i, e in enumerate(elems):
        if _matches(e, mat):
            return i
    return None


def _order_of(g: np.ndarray, eye: np.ndarray, cap: int) -> int:
    power = g
    for o in range(1, cap + 1):
        if _matches(power, eye):
            return o
        power = power @ g
    raise DomainError(f"generator order exceeds the cap of {cap}")


def _basis_from_table(elems, reps, orders, exp_to_idx, gens):
    """Independent generating set for an abelian group given by matrices.

    Works on the abstract multiplication table (products resolved through
    representative exponent tuples), peeling off a maximal-order element and
    recursing on the quotient; the classic lift adjustment keeps the pieces
    independent.  Returns ``[(matrix, order), ...]`` with orders descending.
    """
    def mul(i: int, j: int) -> int:
        combined = tuple((a + b) % o for a, b, o in zip(reps[i], reps[j], orders))
        return exp_to_idx[combined]

    identity = exp_to_idx[tuple(0 for _ in orders)]
    table_basis = _abstract_basis(mul, len(elems), identity)
    out = []
    for idx, order in table_basis:
        mat = np.eye(elems[0].shape[0], dtype=complex)
        for g, e in zip(gens, reps[idx]):
            mat = mat @ np.linalg.matrix_power(g, e)
        out.append((mat, order))
    return out


def _abstract_basis(mul, size: int, identity: int) -> list[tuple[int, int]]:
    if size == 1:
        return []

    def order_of(x: int) -> int:
        o, y = 1, x
        while y != identity:
            y = mul(y, x)
            o += 1
        return o

    orders = [order_of(x) for x in range(size)]
    a = int(np.argmax(orders))
    m = orders[a]
    if m == size:
        return [(a, m)]

    powers = [identity]
    for _ in range(m - 1):
        powers.append(mul(powers[-1], a))
    coset_rep = [min(mul(x, s) for s in powers) for x in range(size)]
    rep_list = sorted(set(coset_rep))
    rep_index = {rep: i for i, rep in enumerate(rep_list)}

    def q_mul(i: int, j: int) -> int:
        return rep_index[coset_rep[mul(rep_list[i], rep_list[j])]]

    q_identity = rep_index[coset_rep[identity]]
    q_basis = _abstract_basis(q_mul, len(rep_list), q_identity)

    result = [(a, m)]
    for q_elem, o in q_basis:
        h = rep_list[q_elem]
        x = identity
        for _ in range(o):
            x = mul(x, h)
        s = powers.index(x)  # h^o = a^s, with o | s by maximality of m
        t = (m - s // o) % m
        for _ in range(t):
            h = mul(h, a)
        result.append((h, o))
    return result
