"""Dense linear-algebra kernels for small Hermitian/symmetric matrices.

Everything here operates on plain numpy arrays: ``float64`` for the real
field, ``complex128`` for the complex field. Matrices are tiny (dimension
at most 64, typically 4-8), so the LAPACK drivers behind ``numpy.linalg``
satisfy the accuracy contracts below with orders of magnitude to spare;
the contracts themselves are enforced by the test suite.
"""

import numpy as np

MAX_DIM = 64

#: residual contracts, max-norm relative: ||H - V diag(w) V*|| and ||Q R - M||
EIG_RESIDUAL_TOL = 1e-12
QR_RESIDUAL_TOL = 1e-12


class DegenerateMatrixError(ValueError):
    """Input is numerically rank-deficient where full rank is required."""


def _check_square(a, name):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {a.shape}")
    if a.shape[0] > MAX_DIM:
        raise ValueError(f"{name} dimension {a.shape[0]} exceeds supported maximum {MAX_DIM}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def hermitian_eigensystem(h):
    """Eigendecomposition of a Hermitian (or real symmetric) matrix.

    Parameters
    ----------
    h : array_like, shape (d, d)
        Conjugate-symmetric matrix, d <= 64.

    Returns
    -------
    w : ndarray, shape (d,)
        Eigenvalues in ascending order.
    v : ndarray, shape (d, d)
        Unitary (orthogonal) matrix whose columns are the eigenvectors,
        so that ``h == v @ diag(w) @ v.conj().T`` up to the residual
        contract ``EIG_RESIDUAL_TOL``.
    """
    h = _check_square(h, "h")
    scale = max(1.0, float(np.abs(h).max()))
    dev = np.abs(h - h.conj().T).max()
    if dev > 1e-12 * scale:
        raise ValueError(f"matrix is not conjugate-symmetric (max asymmetry {dev:.3e})")
    w, v = np.linalg.eigh(h)
    return w, v


def qr_decompose(m):
    """QR decomposition of a square, numerically full-rank matrix.

    Returns (q, r) with q unitary/orthogonal and r upper-triangular such
    that ``q @ r == m`` up to ``QR_RESIDUAL_TOL``. Raises
    :class:`DegenerateMatrixError` when a diagonal entry of R underflows
    to working precision, which signals rank deficiency; Gaussian inputs
    hit this with probability zero and should simply be resampled.
    """
    m = _check_square(m, "m")
    q, r = np.linalg.qr(m)
    d = np.abs(np.diagonal(r))
    if d.min() <= m.shape[0] * np.finfo(np.float64).eps * max(d.max(), 1e-300):
        raise DegenerateMatrixError("matrix is rank-deficient to working precision")
    return q, r
