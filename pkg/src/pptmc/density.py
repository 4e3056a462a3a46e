"""Random rank-k density matrices under Hilbert-Schmidt measure.

The sampling pipeline, for a bipartite system of total dimension
``N = m * n`` and target rank ``k``:

1. draw a Ginibre matrix of size ``k x (k + 2(N-k))`` (complex field) or
   ``k x (k + 1 + 2(N-k))`` (real field);
2. form the k x k Wishart product ``G @ G*`` and normalize it to unit
   trace;
3. take its eigenvalues;
4. embed them into an ``N x N`` diagonal matrix, padding with zeros in
   the trailing positions;
5. conjugate by an independent Haar-random unitary (orthogonal for the
   real field).

For ``k == N`` this reduces to the familiar full-rank Hilbert-Schmidt
ensemble ``G G* / tr(G G*)``; :func:`sample_density_direct_fullrank`
implements that short route directly and serves as an independent
cross-check of the pipeline above.
"""

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .randmat import FIELDS, haar_unitary, sample_ginibre

#: Wishart draws whose smallest eigenvalue falls below RANKDEF_TOL times the
#: largest are discarded and redrawn (almost surely never happens).
RANKDEF_TOL = 1e-13


@dataclass(frozen=True)
class BipartiteShape:
    """Subsystem dimensions, target rank and number field of an ensemble."""

    m: int
    n: int
    rank: int
    field: str = "complex"

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("subsystem dimensions must be positive")
        if self.field not in FIELDS:
            raise ValueError(f"field must be one of {FIELDS}, got {self.field!r}")
        if not 1 <= self.rank <= self.N:
            raise ValueError(f"rank must satisfy 1 <= rank <= {self.N}, got {self.rank}")

    @property
    def N(self):
        """Total Hilbert-space dimension m * n."""
        return self.m * self.n

    @property
    def ginibre_width(self):
        """Column count of the Ginibre factor for this rank and field."""
        k, N = self.rank, self.N
        w = k + 2 * (N - k)
        return w if self.field == "complex" else w + 1

    @property
    def is_complex(self):
        return self.field == "complex"

    def to_dict(self):
        return {"m": self.m, "n": self.n, "N": self.N, "rank": self.rank, "field": self.field}

    @classmethod
    def from_dict(cls, d):
        return cls(m=d["m"], n=d["n"], rank=d["rank"], field=d["field"])


@dataclass
class DensityMatrix:
    """Unit-trace positive-semidefinite matrix with a nominal rank.

    ``spectrum`` holds the N eigenvalues as constructed (the k Wishart
    eigenvalues in ascending order followed by the padding zeros); the
    rotation step does not change them.
    """

    matrix: np.ndarray
    shape: BipartiteShape
    spectrum: np.ndarray = dataclass_field(repr=False, default=None)

    @property
    def nominal_rank(self):
        return self.shape.rank

    def trace(self):
        return float(np.trace(self.matrix).real)


def _wishart_spectra(shape, count, stream, rankdef_tol):
    """Unit-trace Wishart eigenvalue vectors, ascending, shape (count, k).

    Returns ``(eigenvalues, resamples)`` where resamples counts discarded
    numerically rank-deficient draws.
    """
    k = shape.rank
    lam = np.empty((count, k))
    pending = np.arange(count)
    resamples = 0
    while pending.size:
        g = sample_ginibre(k, shape.ginibre_width, shape.field, stream, size=pending.size)
        w = g @ np.conj(np.swapaxes(g, -2, -1))
        w /= np.trace(w, axis1=-2, axis2=-1).real[:, None, None]
        vals = np.linalg.eigvalsh(w)
        ok = vals[:, 0] >= rankdef_tol * vals[:, -1]
        lam[pending[ok]] = vals[ok]
        resamples += int((~ok).sum())
        pending = pending[~ok]
    return lam, resamples


def sample_density_batch(shape, count, stream, rankdef_tol=RANKDEF_TOL):
    """Sample ``count`` density matrices in one vectorized pass.

    Returns
    -------
    rhos : ndarray, shape (count, N, N)
        Exactly conjugate-symmetric, unit-trace, PSD matrices.
    spectra : ndarray, shape (count, N)
        Eigenvalues as constructed: k ascending Wishart eigenvalues then
        N - k zeros.
    resamples : int
        Number of rank-deficient Wishart draws that were redrawn.
    """
    count = int(count)
    if count < 1:
        raise ValueError("count must be positive")
    N = shape.N
    lam, resamples = _wishart_spectra(shape, count, stream, rankdef_tol)
    spectra = np.zeros((count, N))
    spectra[:, : shape.rank] = lam
    u = haar_unitary(N, shape.field, stream, size=count)
    rhos = (u * spectra[:, None, :]) @ np.conj(np.swapaxes(u, -2, -1))
    rhos += np.conj(np.swapaxes(rhos, -2, -1))
    rhos *= 0.5  # symmetrize so conjugate symmetry holds exactly
    return rhos, spectra, resamples


def sample_density(shape, stream, rankdef_tol=RANKDEF_TOL):
    """Sample one random density matrix under Hilbert-Schmidt measure."""
    rhos, spectra, _ = sample_density_batch(shape, 1, stream, rankdef_tol)
    return DensityMatrix(matrix=rhos[0], shape=shape, spectrum=spectra[0])


def sample_density_direct_fullrank_batch(shape, count, stream):
    """Full-rank sampler without the diagonalize/pad/rotate detour.

    Only valid for ``rank == N``. Used as an independent oracle: its
    output distribution must match :func:`sample_density_batch` at full
    rank. The returned spectra come from diagonalizing the matrix itself.
    """
    if shape.rank != shape.N:
        raise ValueError("direct sampler requires rank == N")
    count = int(count)
    if count < 1:
        raise ValueError("count must be positive")
    g = sample_ginibre(shape.N, shape.ginibre_width, shape.field, stream, size=count)
    rhos = g @ np.conj(np.swapaxes(g, -2, -1))
    rhos /= np.trace(rhos, axis1=-2, axis2=-1).real[:, None, None]
    rhos += np.conj(np.swapaxes(rhos, -2, -1))
    rhos *= 0.5
    spectra = np.linalg.eigvalsh(rhos)
    return rhos, spectra


def sample_density_direct_fullrank(shape, stream):
    """One full-rank sample via the direct route (cross-check oracle)."""
    rhos, spectra = sample_density_direct_fullrank_batch(shape, 1, stream)
    return DensityMatrix(matrix=rhos[0], shape=shape, spectrum=spectra[0])
