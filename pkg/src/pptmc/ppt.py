"""Partial transpose and the positive-partial-transpose (PPT) test.

For a bipartite matrix indexed by ``((i, a), (j, b))`` with ``i, j < m``
and ``a, b < n``, transposing subsystem B maps entry ``((i, a), (j, b))``
to ``((i, b), (j, a))``; transposing subsystem A maps it to
``((j, a), (i, b))``. The two maps differ by a full transpose, so they
share a spectrum and the PPT verdict does not depend on the choice.

A state is PPT when the smallest eigenvalue of its partial transpose is
no smaller than ``-PPT_TOL``. For 2x2 and 2x3 systems PPT is equivalent
to separability; for larger systems it is only necessary, and results
should be read as PPT probabilities.
"""

from dataclasses import dataclass

import numpy as np

#: states with min partial-transpose eigenvalue in (-PPT_TOL, 0) count as PPT;
#: the boundary has measure zero, so this does not bias probabilities.
PPT_TOL = 1e-10

SUBSYSTEMS = ("A", "B")


@dataclass(frozen=True)
class PptVerdict:
    """Outcome of the PPT test plus the determinant comparison inputs."""

    is_ppt: bool
    min_pt_eigenvalue: float
    det_rho: float
    det_pt: float


def partial_transpose(rho, dims, subsystem="B"):
    """Partial transpose of a bipartite matrix (or a stack of them).

    Parameters
    ----------
    rho : ndarray, shape (..., N, N)
    dims : (int, int)
        Subsystem dimensions (m, n) with m * n == N.
    subsystem : {"A", "B"}
        Which tensor factor to transpose.
    """
    rho = np.asarray(rho)
    m, n = int(dims[0]), int(dims[1])
    N = m * n
    if rho.ndim < 2 or rho.shape[-2:] != (N, N):
        raise ValueError(f"expected trailing dimensions ({N}, {N}) for dims {m}x{n}, got {rho.shape}")
    if subsystem not in SUBSYSTEMS:
        raise ValueError(f"subsystem must be one of {SUBSYSTEMS}, got {subsystem!r}")
    lead = rho.shape[:-2]
    L = len(lead)
    r4 = rho.reshape(lead + (m, n, m, n))
    if subsystem == "B":
        perm = tuple(range(L)) + (L + 0, L + 3, L + 2, L + 1)
    else:
        perm = tuple(range(L)) + (L + 2, L + 1, L + 0, L + 3)
    return r4.transpose(perm).reshape(lead + (N, N))


def verdict_batch(rhos, spectra, dims, tol=PPT_TOL, subsystem="B"):
    """Vectorized PPT verdicts for a stack of density matrices.

    ``spectra`` are the known eigenvalues of each state (used for the
    determinant of rho, as a product of eigenvalues). Returns arrays
    ``(is_ppt, min_pt_eigenvalue, det_rho, det_pt)``.
    """
    pt = partial_transpose(rhos, dims, subsystem)
    pt_eigs = np.linalg.eigvalsh(pt)
    min_pt = pt_eigs[..., 0]
    det_pt = np.prod(pt_eigs, axis=-1)
    det_rho = np.prod(spectra, axis=-1)
    return min_pt >= -tol, min_pt, det_rho, det_pt


def ppt_verdict(dm, tol=PPT_TOL, subsystem="B"):
    """PPT verdict for a single :class:`~pptmc.density.DensityMatrix`."""
    spectrum = dm.spectrum
    if spectrum is None:
        spectrum = np.linalg.eigvalsh(dm.matrix)
    is_ppt, min_pt, det_rho, det_pt = verdict_batch(
        dm.matrix[None], spectrum[None], (dm.shape.m, dm.shape.n), tol, subsystem
    )
    return PptVerdict(
        is_ppt=bool(is_ppt[0]),
        min_pt_eigenvalue=float(min_pt[0]),
        det_rho=float(det_rho[0]),
        det_pt=float(det_pt[0]),
    )
