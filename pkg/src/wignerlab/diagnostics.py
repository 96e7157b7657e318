"""Minor/overlap machinery for one removed row of a Hermitian matrix.

Removing row and column ``j`` from an ``N x N`` Hermitian matrix ``H``
leaves the minor ``B`` with eigenpairs ``(lambda_a, u_a)`` and exposes the
coupling vector ``a`` (column ``j`` of ``H`` without its diagonal entry).
The objects built here:

* overlaps ``xi_a = N |<u_a, a>|^2``, which satisfy the Parseval identity
  ``sum_a xi_a = N ||a||^2``;
* the Schur-complement identity for the diagonal resolvent entry,
  ``(H - z)^{-1}(j, j) = 1 / (h_jj - z - (1/N) sum_a xi_a/(lambda_a - z))``;
* spectral coefficients ``c_a``, ``d_a`` of the regularised inverse
  distance ``1/(N(lambda_a - E) - i eps)`` and their energy derivatives;
* the good event (at least eight minor eigenvalues at rescaled distance
  ``N |lambda - E| >= eps``) together with the selection of the closest
  eigenvalue ``beta_0``, eight more indices ``beta_1..beta_8`` in
  increasing eligible distance, and the span ``Delta = N |lambda_{beta_8} - E|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .eigensolver import eigh, minor
from .ensembles import HermitianMatrix
from .errors import DomainError, NumericError

__all__ = [
    "OverlapData",
    "overlaps",
    "schur_resolvent_residual",
    "Coefficients",
    "coefficients",
    "good_event",
    "Selection",
    "select_indices",
    "MinorDiagnostics",
    "minor_diagnostics",
]

GOOD_EVENT_COUNT = 8


class OverlapData(NamedTuple):
    """Minor eigenvalues (ascending) and the matching overlaps."""

    lam: np.ndarray
    xi: np.ndarray


def _removed_column(matrix: HermitianMatrix, j: int) -> np.ndarray:
    """Entries ``H[k, j]`` for ``k != j``: the vector coupling index ``j``
    to the minor (the conjugate of row ``j`` without its diagonal entry)."""
    column = matrix.dense()[:, j]
    return np.delete(column, j)


def overlaps(matrix: HermitianMatrix, j: int) -> OverlapData:
    """Eigenvalues of ``minor(H, j)`` and overlaps with the removed column."""
    if matrix.n < 2:
        raise DomainError("overlaps need matrix dimension at least 2")
    sub = eigh(minor(matrix, j))
    a = _removed_column(matrix, j)
    proj = sub.eigenvectors.conj().T @ a
    xi = matrix.n * np.abs(proj) ** 2
    return OverlapData(lam=sub.eigenvalues, xi=xi)


def schur_resolvent_residual(matrix: HermitianMatrix, j: int, z: complex) -> float:
    """Gap between the direct resolvent entry and its Schur-complement form.

    The direct value solves ``(H - z) x = e_j`` and reads off ``x_j``; the
    Schur form uses the minor eigenpairs through the overlaps.  Both sides
    agree analytically, so the return value measures numerical error only.
    """
    z = complex(z)
    if not z.imag > 0.0:
        raise DomainError(f"resolvent comparison needs Im z > 0, got z = {z}")
    if not 0 <= j < matrix.n:
        raise DomainError(f"row index must lie in [0, {matrix.n}), got {j}")
    dense = matrix.dense()
    n = matrix.n
    rhs = np.zeros(n, dtype=np.complex128)
    rhs[j] = 1.0
    try:
        direct = np.linalg.solve(dense - z * np.eye(n), rhs)[j]
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"resolvent solve failed at z = {z}: {exc}") from exc
    lam, xi = overlaps(matrix, j)
    schur = 1.0 / (dense[j, j] - z - np.sum(xi / (lam - z)) / n)
    return float(abs(direct - schur))


class Coefficients(NamedTuple):
    """Spectral coefficients and their energy derivatives."""

    c: np.ndarray
    d: np.ndarray
    c_prime: np.ndarray
    d_prime: np.ndarray


def _check_eps(eps: float) -> None:
    if not 0.0 < eps <= 1.0:
        raise DomainError(f"eps must lie in (0, 1], got {eps}")


def coefficients(lam: Sequence[float], E: float, eps: float, N: int) -> Coefficients:
    """Coefficients ``c_a``, ``d_a`` at energy ``E`` and their derivatives.

    With ``u_a = N^2 (lambda_a - E)^2 + eps^2``:

    * ``c_a = eps / u_a`` and ``d_a = N (lambda_a - E) / u_a``;
    * ``dc_a/dE = 2 eps N^2 (lambda_a - E) / u_a^2``;
    * ``dd_a/dE = N (N^2 (lambda_a - E)^2 - eps^2) / u_a^2``.

    ``N`` is the dimension of the full matrix, one more than the minor.
    """
    _check_eps(eps)
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    lam = np.asarray(lam, dtype=float)
    t = N * (lam - E)
    u = t * t + eps * eps
    c = eps / u
    d = t / u
    c_prime = 2.0 * eps * N * t / (u * u)
    d_prime = N * (t * t - eps * eps) / (u * u)
    return Coefficients(c=c, d=d, c_prime=c_prime, d_prime=d_prime)


def good_event(lam: Sequence[float], E: float, eps: float, N: int) -> bool:
    """True when at least 8 eigenvalues satisfy ``N |lambda - E| >= eps``.

    The boundary ``N |lambda - E| = eps`` counts as outside the excluded
    window, i.e. as eligible.
    """
    _check_eps(eps)
    lam = np.asarray(lam, dtype=float)
    return int(np.sum(N * np.abs(lam - E) >= eps)) >= GOOD_EVENT_COUNT


class Selection(NamedTuple):
    """Selected indices ``beta_0..beta_8`` and the span ``Delta``."""

    beta: np.ndarray
    delta: float


def select_indices(lam: Sequence[float], E: float, eps: float, N: int) -> Selection:
    """Pick the closest eigenvalue and eight eligible ones by distance.

    ``beta_0`` minimises ``|lambda - E|``; ``beta_1..beta_8`` are drawn in
    increasing ``|lambda - E|`` from the indices with
    ``N |lambda - E| >= eps`` that were not selected before.  Ties resolve
    to the lower index.  ``Delta = N |lambda_{beta_8} - E|``.  Requires the
    good event.
    """
    _check_eps(eps)
    lam = np.asarray(lam, dtype=float)
    if not good_event(lam, E, eps, N):
        raise DomainError(
            "index selection needs the good event: fewer than "
            f"{GOOD_EVENT_COUNT} eigenvalues at rescaled distance >= {eps}"
        )
    dist = N * np.abs(lam - E)
    order = np.argsort(dist, kind="stable")
    beta0 = int(order[0])
    rest = [int(i) for i in order if i != beta0 and dist[i] >= eps][:GOOD_EVENT_COUNT]
    beta = np.array([beta0] + rest, dtype=np.int64)
    return Selection(beta=beta, delta=float(dist[beta[-1]]))


@dataclass
class MinorDiagnostics:
    """Full per-sample record of the minor machinery at one ``(j, E, eps)``."""

    j: int
    lam: np.ndarray
    xi: np.ndarray
    c: np.ndarray
    d: np.ndarray
    c_prime: np.ndarray
    d_prime: np.ndarray
    omega: bool
    beta: Optional[np.ndarray]
    delta: Optional[float]
    E: float
    eps: float

    def to_json(self) -> dict:
        return {
            "j": int(self.j),
            "lambda": [float(v) for v in self.lam],
            "xi": [float(v) for v in self.xi],
            "c": [float(v) for v in self.c],
            "d": [float(v) for v in self.d],
            "c_prime": [float(v) for v in self.c_prime],
            "d_prime": [float(v) for v in self.d_prime],
            "omega": bool(self.omega),
            "beta": None if self.beta is None else [int(b) for b in self.beta],
            "delta": None if self.delta is None else float(self.delta),
            "E": float(self.E),
            "eps": float(self.eps),
        }


def minor_diagnostics(matrix: HermitianMatrix, j: int, E: float, eps: float) -> MinorDiagnostics:
    """Assemble the diagnostics record for one matrix and removed row."""
    lam, xi = overlaps(matrix, j)
    coef = coefficients(lam, E, eps, matrix.n)
    omega = good_event(lam, E, eps, matrix.n)
    beta = None
    delta = None
    if omega:
        sel = select_indices(lam, E, eps, matrix.n)
        beta, delta = sel.beta, sel.delta
    return MinorDiagnostics(
        j=j,
        lam=lam,
        xi=xi,
        c=coef.c,
        d=coef.d,
        c_prime=coef.c_prime,
        d_prime=coef.d_prime,
        omega=omega,
        beta=beta,
        delta=delta,
        E=E,
        eps=eps,
    )
