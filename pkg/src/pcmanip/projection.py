"""Orthogonal projection of an additive PCM onto a tie space.

Two independent routes are provided:

* ``project_to_tie`` runs the explicit construction: tie-space basis,
  un-normalized Gram-Schmidt orthogonalization under the Frobenius
  inner product, then coefficient expansion;
* ``hyperplane_oracle_project`` uses the closed form for projecting
  onto a codimension-1 subspace of the antisymmetric matrices.

They must agree to 1e-9; the test suite additionally checks both
against a generic equality-constrained least-squares solve.

Pairs with j = n fall outside the basis construction and are handled
by conjugating with an index transposition (a Frobenius isometry that
permutes row sums), projecting, and conjugating back.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import AdditivePcm, additive_values, frobenius_distance
from .errors import DegenerateBasisError, DimensionMismatchError
from .tiespace import AlternativePair, TieBasis, tie_basis, tie_gap

_MIN_SQ_NORM = 1e-12


@dataclass(frozen=True)
class OrthogonalBasis:
    """Pairwise Frobenius-orthogonal basis of one tie space.

    Elements are kept un-normalized so they match hand-computed
    fractional forms exactly.  ``flat`` stacks the elements as rows of
    a (dim, n*n) array for fast inner products.
    """

    pair: AlternativePair
    matrices: tuple[np.ndarray, ...]
    squared_norms: np.ndarray

    @property
    def flat(self) -> np.ndarray:
        return np.stack([h.ravel() for h in self.matrices])

    def __len__(self) -> int:
        return len(self.matrices)


@dataclass(frozen=True)
class Relabeling:
    """Index permutation applied before projecting; perm maps new -> old.

    ``apply`` conjugates a matrix into the relabeled frame, ``undo``
    conjugates back.  The identity permutation means no relabeling.
    """

    perm: tuple[int, ...]

    @property
    def is_identity(self) -> bool:
        return self.perm == tuple(range(len(self.perm)))

    def apply(self, values: np.ndarray) -> np.ndarray:
        idx = np.array(self.perm)
        return values[np.ix_(idx, idx)]

    def undo(self, values: np.ndarray) -> np.ndarray:
        inv = np.argsort(np.array(self.perm))
        return values[np.ix_(inv, inv)]


@dataclass(frozen=True)
class ProjectionResult:
    """Projection of an additive PCM onto a tie space."""

    original: AdditivePcm
    projected: AdditivePcm
    coefficients: np.ndarray
    distance: float
    pair: AlternativePair
    relabeling: Relabeling


def gram_schmidt(basis: TieBasis) -> OrthogonalBasis:
    """Classical Gram-Schmidt without normalization, order preserved."""
    n = basis.pair.n
    dim = len(basis)
    flat = np.stack([b.ravel() for b in basis.matrices])
    ortho = np.zeros_like(flat)
    sq_norms = np.zeros(dim)
    for k in range(dim):
        v = flat[k]
        if k:
            coeffs = ortho[:k] @ v / sq_norms[:k]
            v = v - coeffs @ ortho[:k]
        sq = float(v @ v)
        if sq < _MIN_SQ_NORM:
            raise DegenerateBasisError(k + 1, sq)
        ortho[k] = v
        sq_norms[k] = sq
    matrices = tuple(ortho[k].reshape(n, n) for k in range(dim))
    return OrthogonalBasis(basis.pair, matrices, sq_norms)


@lru_cache(maxsize=256)
def orthogonal_basis_for(n: int, i: int, j: int) -> OrthogonalBasis:
    """Cached basis + orthogonalization for a canonical pair (i < j < n)."""
    return gram_schmidt(tie_basis(AlternativePair(i, j, n)))


def projection_coefficients(a, h: OrthogonalBasis) -> np.ndarray:
    """Expansion coefficients <A,H_k> / <H_k,H_k> along the orthogonal basis."""
    values = additive_values(a)
    if values.shape != (h.pair.n, h.pair.n):
        raise DimensionMismatchError(values.shape[0], h.pair.n)
    return h.flat @ values.ravel() / h.squared_norms


def relabel_pair(a, pair: AlternativePair) -> tuple[np.ndarray, AlternativePair, Relabeling]:
    """Conjugate so the pair satisfies i < j < n.

    When j = n, index n is swapped with the largest index below n that
    is outside the pair; otherwise the identity is returned.
    """
    values = additive_values(a)
    n = pair.n
    if pair.j < n:
        return values, pair, Relabeling(tuple(range(n)))
    k = n - 1 if (n - 1) != pair.i else n - 2
    perm = list(range(n))
    perm[k - 1], perm[n - 1] = perm[n - 1], perm[k - 1]
    relabeling = Relabeling(tuple(perm))
    new_i, new_j = sorted((pair.i, k))
    return relabeling.apply(values), AlternativePair(new_i, new_j, n), relabeling


def project_to_tie(a, pair: AlternativePair) -> ProjectionResult:
    """Closest matrix to A (Frobenius) whose weights tie the given pair."""
    values = additive_values(a)
    n = pair.n
    if values.shape != (n, n):
        raise DimensionMismatchError(values.shape[0], n)
    if n == 2:
        # the tie space is {0}
        projected = np.zeros_like(values)
        coefficients = np.zeros(0)
        relabeling = Relabeling((0, 1))
        work_pair = pair
    else:
        work, work_pair, relabeling = relabel_pair(values, pair)
        h = orthogonal_basis_for(n, work_pair.i, work_pair.j)
        coefficients = projection_coefficients(work, h)
        projected = relabeling.undo((coefficients @ h.flat).reshape(n, n))
    return ProjectionResult(
        original=AdditivePcm(values),
        projected=AdditivePcm(projected),
        coefficients=coefficients,
        distance=frobenius_distance(values, projected),
        pair=pair,
        relabeling=relabeling,
    )


def tie_normal_matrix(pair: AlternativePair) -> np.ndarray:
    """Riesz representer of the row-sum gap functional on antisymmetric
    matrices: +-1 at the pair positions, +-1/2 along the pair's rows
    and columns, zero elsewhere.  Its squared Frobenius norm is n."""
    i, j, n = pair.i - 1, pair.j - 1, pair.n
    normal = np.zeros((n, n))
    normal[i, :] = 0.5
    normal[:, i] = -0.5
    normal[j, :] = -0.5
    normal[:, j] = 0.5
    normal[i, j] = 1.0
    normal[j, i] = -1.0
    normal[i, i] = normal[j, j] = 0.0
    return normal


def hyperplane_oracle_project(a, pair: AlternativePair) -> AdditivePcm:
    """Closed-form projection: A - (f/n) * N with f the row-sum gap and
    N the tie normal matrix.  Valid for every pair, including j = n."""
    values = additive_values(a)
    if values.shape != (pair.n, pair.n):
        raise DimensionMismatchError(values.shape[0], pair.n)
    f = tie_gap(values, pair)
    return AdditivePcm(values - (f / pair.n) * tie_normal_matrix(pair))
