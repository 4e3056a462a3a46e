"""Reproducible random streams and the random-matrix ensembles built on them.

The stream abstraction is a thin wrapper over numpy's counter-based Philox
generator. A stream is addressed by ``(seed, stream_id, position)``:

* distinct ``(seed, stream_id)`` keys yield statistically independent
  sequences (they select different 128-bit Philox keys);
* ``position`` is the Philox block counter (one block = four 64-bit words),
  so a stream rebuilt from a saved position continues the original
  sequence bit for bit.

This is what makes sharded and resumable Monte Carlo runs exactly
reproducible: batch ``b`` of a run always consumes the substream keyed by
``(seed, b)`` no matter how many workers execute it or where the run was
interrupted.
"""

import numpy as np

FIELDS = ("real", "complex")

_QR_PIVOT_TINY = 1e-12  # |r_jj| below this means the column phase is garbage


def _check_field(field):
    if field not in FIELDS:
        raise ValueError(f"field must be one of {FIELDS}, got {field!r}")


class RngStream:
    """Seedable, splittable random stream with an addressable position."""

    def __init__(self, seed, stream_id=0, position=0):
        seed, stream_id, position = int(seed), int(stream_id), int(position)
        if not 0 <= seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if not 0 <= stream_id < 2**64:
            raise ValueError("stream_id must fit in an unsigned 64-bit integer")
        if not 0 <= position < 2**128:
            raise ValueError("position must fit in an unsigned 128-bit counter")
        self.seed = seed
        self.stream_id = stream_id
        self._bitgen = np.random.Philox(key=np.array([seed, stream_id], dtype=np.uint64))
        if position:
            self._bitgen.advance(position)
        self.generator = np.random.Generator(self._bitgen)

    @property
    def position(self):
        """Number of counter blocks produced so far (128-bit integer)."""
        c = self._bitgen.state["state"]["counter"]
        return int(c[0]) | (int(c[1]) << 64)

    def save(self):
        """Return ``(seed, stream_id, position)`` suitable for restoring.

        Any partially consumed block is discarded first, so that
        continuing this stream and continuing a stream rebuilt from the
        returned triple produce identical output.
        """
        self._bitgen.advance(0)
        return self.seed, self.stream_id, self.position

    def standard_normal(self, size=None):
        return self.generator.standard_normal(size)

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id}, position={self.position})"


def sample_ginibre(rows, cols, field, stream, size=None):
    """Sample a matrix (or a stack of them) with i.i.d. standard-normal entries.

    Complex entries have independent N(0,1) real and imaginary parts; the
    overall scale is irrelevant downstream because every use is followed
    by trace normalization.

    Parameters
    ----------
    rows, cols : int
    field : {"real", "complex"}
    stream : RngStream
    size : int, optional
        When given, return ``size`` matrices stacked along axis 0. The
        stacked draw consumes the stream exactly like one big array draw
        (all real parts first, then all imaginary parts).
    """
    if rows < 1 or cols < 1:
        raise ValueError("matrix dimensions must be positive")
    _check_field(field)
    shape = (rows, cols) if size is None else (int(size), rows, cols)
    g = stream.generator
    if field == "complex":
        return g.standard_normal(shape) + 1j * g.standard_normal(shape)
    return g.standard_normal(shape)


def haar_unitary(dim, field, stream, size=None):
    """Sample a Haar-distributed unitary (complex) or orthogonal (real) matrix.

    Uses the QR construction: decompose a square Ginibre matrix and
    multiply column ``j`` of Q by ``r_jj / |r_jj|``, which fixes the
    decomposition to the unique one with a real-positive R diagonal and
    makes the result exactly Haar regardless of the QR driver's phase
    conventions. Degenerate pivots (a probability-zero event) are
    resampled internally.
    """
    if dim < 1:
        raise ValueError("dim must be positive")
    _check_field(field)
    count = 1 if size is None else int(size)
    q = np.empty((count, dim, dim), dtype=complex if field == "complex" else float)
    d = np.empty((count, dim), dtype=q.dtype)
    pending = np.arange(count)
    while pending.size:
        z = sample_ginibre(dim, dim, field, stream, size=pending.size)
        qz, rz = np.linalg.qr(z)
        dz = np.diagonal(rz, axis1=-2, axis2=-1)
        ok = (np.abs(dz) >= _QR_PIVOT_TINY).all(axis=-1)
        q[pending[ok]] = qz[ok]
        d[pending[ok]] = dz[ok]
        pending = pending[~ok]  # probability-zero degenerate pivots: redraw
    u = q * (d / np.abs(d))[..., None, :]
    return u[0] if size is None else u
