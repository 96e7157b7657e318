"""Hermitian eigendecomposition with a deterministic vector convention.

Decompositions are delegated to LAPACK through :mod:`numpy.linalg`.  On top
of that this module pins down the parts LAPACK leaves arbitrary: eigenvalues
are returned ascending, and each eigenvector is rotated by a global phase so
that its largest-magnitude component (lowest index on ties) is real and
positive.  For a fixed input matrix the output is then fully deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .ensembles import HermitianMatrix
from .errors import DomainError, NumericError

__all__ = ["Spectrum", "eigh", "eigvalsh", "minor"]


@dataclass
class Spectrum:
    """Eigenvalues (ascending) and optionally matching eigenvectors.

    ``eigenvectors[:, k]`` is the unit eigenvector for ``eigenvalues[k]``.
    """

    n: int
    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        self.eigenvalues = np.asarray(self.eigenvalues, dtype=np.float64)
        if self.eigenvalues.shape != (self.n,):
            raise DomainError(
                f"eigenvalues must have shape ({self.n},), got {self.eigenvalues.shape}"
            )
        if self.eigenvectors is not None:
            self.eigenvectors = np.asarray(self.eigenvectors, dtype=np.complex128)
            if self.eigenvectors.shape != (self.n, self.n):
                raise DomainError(
                    f"eigenvectors must have shape ({self.n}, {self.n}), "
                    f"got {self.eigenvectors.shape}"
                )


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real positive.

    Ties in magnitude resolve to the lowest index (argmax convention).
    """
    lead = np.argmax(np.abs(vectors), axis=0)
    pivots = vectors[lead, np.arange(vectors.shape[1])]
    phases = pivots / np.abs(pivots)
    return vectors * phases.conj()


def eigh(matrix: HermitianMatrix) -> Spectrum:
    """Full eigendecomposition with eigenvectors."""
    try:
        vals, vecs = np.linalg.eigh(matrix.dense())
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed for n={matrix.n}: {exc}") from exc
    return Spectrum(n=matrix.n, eigenvalues=vals, eigenvectors=_fix_phases(vecs))


def eigvalsh(matrix: HermitianMatrix) -> Spectrum:
    """Eigenvalues only; cheaper when no vectors are needed."""
    try:
        vals = np.linalg.eigvalsh(matrix.dense())
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigenvalue computation failed for n={matrix.n}: {exc}") from exc
    return Spectrum(n=matrix.n, eigenvalues=vals)


def minor(matrix: HermitianMatrix, j: int) -> HermitianMatrix:
    """The ``(n-1) x (n-1)`` principal minor with row and column ``j`` removed.

    ``j`` is a 0-based index.  Entries keep their original scaling, so the
    minor of an ``n``-scaled Wigner matrix stays ``n``-scaled.
    """
    if not 0 <= j < matrix.n:
        raise DomainError(f"minor index must lie in [0, {matrix.n}), got {j}")
    if matrix.n == 1:
        raise DomainError("a 1 x 1 matrix has no proper minor")
    dense = matrix.dense()
    keep = np.arange(matrix.n) != j
    return HermitianMatrix._pack(dense[np.ix_(keep, keep)])
