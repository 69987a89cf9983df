"""Dense complex linear algebra helpers shared by the whole package.

Matrices are plain numpy arrays with dtype complex128.  Vectorization is
column-stacking throughout (``order="F"``), so the matrix of a linear map
``F -> C_L @ F @ C_R`` on vectorized input is ``C_R.T (x) C_L``.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "as_matrix",
    "kron",
    "swap_perm",
    "nullspace",
    "operator_norm",
    "factor_out_identity",
    "identity_factor_defect",
]


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix entries must be finite")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product with the left factor major.

    Entry ``(i*b.rows + k, j*b.cols + l)`` equals ``a[i, j] * b[k, l]``.
    """
    return np.kron(as_matrix(a), as_matrix(b))


def swap_perm(m: int, n: int) -> np.ndarray:
    """Permutation matrix for C^m (x) C^n -> C^n (x) C^m.

    Sends basis index ``i*n + j`` to ``j*m + i``; the matrix has a one at
    row ``j*m + i``, column ``i*n + j``.  ``swap_perm(n, m) @ swap_perm(m, n)``
    is exactly the identity.
    """
    if m < 1 or n < 1:
        raise ValueError("swap_perm needs positive dimensions")
    s = np.zeros((m * n, m * n), dtype=np.complex128)
    i = np.repeat(np.arange(m), n)
    j = np.tile(np.arange(n), m)
    s[j * m + i, i * n + j] = 1.0
    return s


def operator_norm(a) -> float:
    """Largest singular value of ``a`` (spectral norm)."""
    m = as_matrix(a)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def nullspace(a, tol: float = 1e-9, atol: float = 0.0) -> np.ndarray:
    """Orthonormal kernel basis of ``a`` as the columns of the result.

    Keeps right singular vectors whose singular values satisfy
    ``sigma <= max(atol, tol * sigma_max)``.  The zero matrix (and the
    degenerate zero-row case) returns the standard basis.  ``atol`` is an
    optional absolute floor for callers whose constraint matrices may be
    numerically zero; a purely relative cut misreads those.
    """
    m = as_matrix(a)
    rows, cols = m.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    if rows == 0 or not m.any():
        return np.eye(cols, dtype=np.complex128)
    # economy SVD already carries the full V when rows >= cols; the full
    # (and then huge) U is never needed
    _, s, vh = np.linalg.svd(m, full_matrices=rows < cols)
    sigma = np.zeros(cols)
    sigma[: s.size] = s
    cut = max(atol, tol * (s[0] if s.size else 0.0))
    keep = sigma <= cut
    return vh.conj().T[:, keep]


def factor_out_identity(a, dx: int, dy: int, dh: int, tol: float = 1e-9):
    """Strip a trailing identity tensor factor from ``a`` if one exists.

    ``a`` must be ``(dy*dh) x (dx*dh)``.  Returns the ``dy x dx`` matrix
    ``fhat`` with ``a = kron(fhat, eye(dh))`` when the relative residual
    ``norm(a - kron(fhat, eye(dh))) <= tol * max(1, norm(a))`` (operator
    norms), else None.  The candidate is the normalized partial trace over
    the minor factor, which is the orthogonal projection onto that slice.
    """
    m = as_matrix(a)
    if m.shape != (dy * dh, dx * dh):
        raise ValueError(f"expected shape {(dy * dh, dx * dh)}, got {m.shape}")
    fhat, resid = _identity_factor(m, dx, dy, dh)
    if resid <= tol * max(1.0, operator_norm(m)):
        return fhat
    return None


def identity_factor_defect(a, dx: int, dy: int, dh: int) -> float:
    """Operator-norm distance from ``a`` to the nearest ``fhat (x) eye(dh)``."""
    m = as_matrix(a)
    if m.shape != (dy * dh, dx * dh):
        raise ValueError(f"expected shape {(dy * dh, dx * dh)}, got {m.shape}")
    return _identity_factor(m, dx, dy, dh)[1]


def _identity_factor(m: np.ndarray, dx: int, dy: int, dh: int):
    blocks = m.reshape(dy, dh, dx, dh)
    fhat = np.trace(blocks, axis1=1, axis2=3) / dh
    resid = operator_norm(m - np.kron(fhat, np.eye(dh)))
    return fhat, resid
