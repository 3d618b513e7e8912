"""Dense complex linear algebra: SVD, eigenvalues, least squares.

Matrices are plain 2-D complex128 ndarrays. The heavy lifting is delegated
to LAPACK through numpy.linalg, which meets every accuracy contract here at
a fraction of the cost of a from-scratch kernel; this module owns input
validation, the rank-cutoff pseudoinverse policy, and error mapping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError

# Relative singular-value cutoff for rank decisions in lstsq:
# values below max(rows, cols) * sigma_max * RANK_RTOL are treated as zero.
RANK_RTOL = 1e-12

# eigenvalues() is sized for small pole matrices only.
MAX_EIG_SIDE = 256


@dataclass(frozen=True)
class SvdResult:
    """Thin SVD ``a = u @ diag(sigma) @ vh`` with sigma descending."""

    u: np.ndarray
    sigma: np.ndarray
    vh: np.ndarray


def _as_matrix(a, name: str) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.size == 0:
        raise ValueError(f"{name} must be a non-empty 2-D matrix")
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise ValueError(f"{name} must have finite entries")
    return a


def svd(a) -> SvdResult:
    """Thin singular value decomposition of a complex matrix.

    Returns min(rows, cols) singular values in descending order; u and vh
    have orthonormal columns/rows and reconstruct the input to machine
    precision.
    """
    a = _as_matrix(a, "a")
    try:
        u, sigma, vh = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"SVD did not converge for {a.shape[0]}x{a.shape[1]} matrix"
        ) from exc
    return SvdResult(u=u, sigma=sigma, vh=vh)


def lstsq(a, b) -> np.ndarray:
    """Least-squares solution x minimizing ||a @ x - b|| (Frobenius).

    Requires rows(a) >= cols(a) and matching row counts. Rank-deficient
    systems get the minimum-norm solution through an SVD pseudoinverse with
    the RANK_RTOL cutoff; b may be a vector or a matrix.
    """
    a = _as_matrix(a, "a")
    b = np.asarray(b, dtype=np.complex128)
    b_was_vector = b.ndim == 1
    if b_was_vector:
        b = b[:, None]
    b = _as_matrix(b, "b")
    if a.shape[0] < a.shape[1]:
        raise ValueError(
            f"system must not be underdetermined: a is {a.shape[0]}x{a.shape[1]}"
        )
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: a has {a.shape[0]} rows, b has {b.shape[0]}")
    dec = svd(a)
    cutoff = max(a.shape) * RANK_RTOL * (dec.sigma[0] if dec.sigma.size else 0.0)
    inv_sigma = np.where(dec.sigma > cutoff, 1.0 / np.where(dec.sigma > 0, dec.sigma, 1.0), 0.0)
    x = dec.vh.conj().T @ (inv_sigma[:, None] * (dec.u.conj().T @ b))
    return x[:, 0] if b_was_vector else x


def eigenvalues(a) -> np.ndarray:
    """All eigenvalues (with multiplicity) of a small square complex matrix."""
    a = _as_matrix(a, "a")
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got {a.shape[0]}x{a.shape[1]}")
    if a.shape[0] > MAX_EIG_SIDE:
        raise ValueError(f"matrix side {a.shape[0]} exceeds supported {MAX_EIG_SIDE}")
    try:
        return np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"eigenvalue iteration did not converge for {a.shape[0]}x{a.shape[0]} matrix"
        ) from exc
