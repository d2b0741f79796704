"""Dense symmetric spectra and positive-semidefinite Cholesky factorization."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotPositiveSemidefiniteError
from .graph import SignedGraph

INTEGRALITY_TOL = 1e-6


def as_symmetric(M, *, atol: float = 1e-12) -> np.ndarray:
    """Validate and return ``M`` as a float64 symmetric square array."""
    A = np.asarray(M, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    scale = 1.0 + (np.abs(A).max() if A.size else 0.0)
    if not np.allclose(A, A.T, rtol=0.0, atol=atol * scale):
        raise ValueError("matrix is not symmetric")
    return A


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple
    tolerance: float

    @property
    def smallest(self) -> float:
        return self.eigenvalues[0]

    @property
    def largest(self) -> float:
        return self.eigenvalues[-1]

    def __len__(self):
        return len(self.eigenvalues)

    def __iter__(self):
        return iter(self.eigenvalues)

    def as_array(self) -> np.ndarray:
        return np.array(self.eigenvalues)


def jacobi_eigenvalues(M, *, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Cyclic Jacobi rotations; stops when the off-diagonal Frobenius norm < tol * ||M||_F.

    O(n^3) per sweep in numpy row/column updates, so intended for small
    matrices and as an independent check on :func:`eigenvalues`.
    """
    A = as_symmetric(M).copy()
    n = A.shape[0]
    if n == 0:
        return np.zeros(0)
    norm = np.linalg.norm(A)
    if norm == 0.0:
        return np.zeros(n)
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off < tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) < 1e-15 * norm:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.sort(np.diag(A))


def eigenvalues(M, *, method: str = "lapack") -> Spectrum:
    """All eigenvalues of a symmetric matrix in nondecreasing order.

    ``method="lapack"`` uses ``numpy.linalg.eigvalsh`` (default, any size);
    ``method="jacobi"`` uses :func:`jacobi_eigenvalues`.
    """
    A = as_symmetric(M)
    if method == "lapack":
        w = np.linalg.eigvalsh(A) if A.size else np.zeros(0)
    elif method == "jacobi":
        w = jacobi_eigenvalues(A)
    else:
        raise ValueError(f"unknown method {method!r}")
    scale = 1.0 + (np.linalg.norm(A, 2) if A.size else 0.0)
    return Spectrum(tuple(float(x) for x in np.sort(w)), 1e-10 * scale)


def adjacency_matrix(G: SignedGraph) -> np.ndarray:
    return G.adjacency_matrix()


def spectrum(G: SignedGraph, *, method: str = "lapack") -> Spectrum:
    return eigenvalues(G.adjacency_matrix(), method=method)


def smallest_eigenvalue(G: SignedGraph) -> float:
    if G.order == 0:
        raise ValueError("empty graph has no eigenvalues")
    return spectrum(G).smallest


def cholesky_psd(M, tol: float = 1e-9, *, return_pivots: bool = False):
    """Square factor ``F`` with ``F @ F.T == M`` for a positive semidefinite ``M``.

    Uses symmetric diagonal pivoting (largest remaining diagonal first).  Once
    every remaining pivot is at most ``tol`` the rest of the factor is zero, so
    rank-deficient inputs give zero columns.  ``F`` is lower triangular after
    the symmetric permutation ``perm``: ``F[perm]`` is lower triangular.

    Raises :class:`NotPositiveSemidefiniteError` naming the pivot (original
    index) when a pivot drops below ``-tol`` or the leftover block is not
    negligible.
    """
    A = as_symmetric(M).copy()
    n = A.shape[0]
    perm = np.arange(n)
    L = np.zeros((n, n))
    rank = n
    for k in range(n):
        j = k + int(np.argmax(np.diag(A)[k:]))
        d = A[j, j]
        if d <= tol:
            lo = k + int(np.argmin(np.diag(A)[k:]))
            if A[lo, lo] < -tol:
                raise NotPositiveSemidefiniteError(
                    f"not positive semidefinite: pivot {A[lo, lo]:.3e} at index {perm[lo]}", pivot=int(perm[lo])
                )
            rest = A[k:, k:]
            if rest.size and np.abs(rest).max() > 10.0 * tol:
                bad = k + int(np.argmax(np.abs(rest).max(axis=1)))
                raise NotPositiveSemidefiniteError(
                    f"not positive semidefinite: zero pivot with off-diagonal mass at index {perm[bad]}",
                    pivot=int(perm[bad]),
                )
            rank = k
            break
        if j != k:
            A[[k, j], :] = A[[j, k], :]
            A[:, [k, j]] = A[:, [j, k]]
            L[[k, j], :] = L[[j, k], :]
            perm[[k, j]] = perm[[j, k]]
        piv = math.sqrt(d)
        L[k, k] = piv
        L[k + 1:, k] = A[k + 1:, k] / piv
        A[k + 1:, k + 1:] -= np.outer(L[k + 1:, k], L[k + 1:, k])
        A[k, k:] = 0.0
        A[k:, k] = 0.0
    F = np.zeros((n, n))
    F[perm] = L
    if return_pivots:
        return F, perm, rank
    return F


def snap_integer(M, tol: float = INTEGRALITY_TOL) -> np.ndarray:
    """Round to an integer array, refusing entries further than ``tol`` from an integer."""
    A = np.asarray(M, dtype=np.float64)
    R = np.rint(A)
    if A.size and np.abs(A - R).max() > tol:
        raise ArithmeticError(f"matrix entries are not integral within {tol}")
    return R.astype(np.int64)


def ceil_shift(lambda_min: float, tol: float = INTEGRALITY_TOL) -> int:
    """``ceil(-lambda_min)``, treating eigenvalues within ``tol`` of an integer as that integer."""
    x = -lambda_min
    r = round(x)
    if abs(x - r) <= tol:
        return int(r)
    return int(math.ceil(x))
