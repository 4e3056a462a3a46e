"""Batch Monte Carlo driver for PPT-probability estimation.

A run of ``trials`` samples is split into batches (default 10**5 trials
each). Batch ``b`` always consumes the random substream keyed by
``(seed, b)``, so the outcome is a pure function of
``(shape, trials, seed, batch_size, tolerances)`` -- independent of the
number of workers, the order batches happen to finish in, or where a run
was checkpointed and resumed. Aggregation is plain integer addition and
therefore exactly commutative.
"""

import json
import math
import os
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field as dataclass_field

from . import __version__
from .density import BipartiteShape, RANKDEF_TOL, sample_density_batch
from .ppt import PPT_TOL, verdict_batch
from .randmat import RngStream

DEFAULT_BATCH_SIZE = 100_000
DEFAULT_Z = 1.96

#: density-matrix PSD acceptance tolerance (diagnostic; echoed in reports)
PSD_TOL = 1e-10

_NAMESPACE_BITS = 40  # stream_id = (namespace << 40) | batch_id


class ConfigMismatchError(ValueError):
    """Checkpoint or configuration does not match the requested run."""


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerance knobs, echoed verbatim into every report."""

    psd: float = PSD_TOL
    ppt: float = PPT_TOL
    rankdef: float = RANKDEF_TOL

    def to_dict(self):
        return {"psd": self.psd, "ppt": self.ppt, "rankdef": self.rankdef}

    @classmethod
    def from_dict(cls, d):
        return cls(psd=d["psd"], ppt=d["ppt"], rankdef=d["rankdef"])


@dataclass
class Tally:
    """Aggregated trial counts plus per-batch records for trace emission."""

    trials: int = 0
    ppt_successes: int = 0
    det_split_pt_greater: int = 0
    resamples: int = 0
    batch_records: list = dataclass_field(default_factory=list)

    def add_batch(self, batch_id, trials, successes, det_greater, resamples):
        self.trials += trials
        self.ppt_successes += successes
        self.det_split_pt_greater += det_greater
        self.resamples += resamples
        self.batch_records.append((batch_id, trials, successes))

    def merge(self, other):
        """Combine two tallies; order of merging never changes totals."""
        out = Tally(
            trials=self.trials + other.trials,
            ppt_successes=self.ppt_successes + other.ppt_successes,
            det_split_pt_greater=self.det_split_pt_greater + other.det_split_pt_greater,
            resamples=self.resamples + other.resamples,
            batch_records=sorted(self.batch_records + other.batch_records),
        )
        return out

    def to_dict(self):
        return {
            "trials": self.trials,
            "successes": self.ppt_successes,
            "det_split": self.det_split_pt_greater,
            "resamples": self.resamples,
            "batch_records": [list(r) for r in self.batch_records],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            trials=d["trials"],
            ppt_successes=d["successes"],
            det_split_pt_greater=d["det_split"],
            resamples=d["resamples"],
            batch_records=[tuple(r) for r in d["batch_records"]],
        )


def wilson_interval(successes, trials, z=DEFAULT_Z):
    """Wilson score confidence interval, clamped to [0, 1].

    Well behaved even when ``successes`` is 0 or the success probability
    is a few parts in 10**5, where the normal-approximation interval is
    useless.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0 <= successes <= trials:
        raise ValueError("successes must lie in [0, trials]")
    if z <= 0:
        raise ValueError("z must be positive")
    n = float(trials)
    p = successes / n
    z2 = z * z
    denom = 1.0 + z2 / n
    center = (p + z2 / (2.0 * n)) / denom
    half = z * math.sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom
    return max(0.0, center - half), min(1.0, center + half)


@dataclass
class EstimateReport:
    """Result of a Monte Carlo run, self-describing enough to regenerate."""

    shape: BipartiteShape
    tally: Tally
    seed: int
    batch_size: int
    stream_namespace: int
    tolerances: Tolerances
    z: float
    complete: bool

    @property
    def trials(self):
        return self.tally.trials

    @property
    def successes(self):
        return self.tally.ppt_successes

    @property
    def p_hat(self):
        return self.successes / self.trials if self.trials else 0.0

    @property
    def wilson(self):
        return wilson_interval(self.successes, max(self.trials, 1), self.z)

    def to_dict(self):
        lo, hi = self.wilson
        return {
            "shape": self.shape.to_dict(),
            "trials": self.trials,
            "successes": self.successes,
            "p_hat": self.p_hat,
            "wilson": {"z": self.z, "lo": lo, "hi": hi},
            "det_split": {
                "pt_greater": self.tally.det_split_pt_greater,
                "total": self.successes,
            },
            "seed": self.seed,
            "batch_size": self.batch_size,
            "stream_namespace": self.stream_namespace,
            "tolerances": self.tolerances.to_dict(),
            "resamples": self.tally.resamples,
            "complete": self.complete,
            "version": __version__,
        }


@dataclass
class Checkpoint:
    """Everything needed to resume an interrupted run bit for bit."""

    seed: int
    shape: BipartiteShape
    batch_size: int
    trials_total: int
    stream_namespace: int
    next_batch_id: int
    tally: Tally
    tolerances: Tolerances

    def to_dict(self):
        return {
            "seed": self.seed,
            "shape": self.shape.to_dict(),
            "batch_size": self.batch_size,
            "trials_total": self.trials_total,
            "stream_namespace": self.stream_namespace,
            "next_batch_id": self.next_batch_id,
            "tally": self.tally.to_dict(),
            "tolerances": self.tolerances.to_dict(),
            "version": __version__,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            seed=d["seed"],
            shape=BipartiteShape.from_dict(d["shape"]),
            batch_size=d["batch_size"],
            trials_total=d["trials_total"],
            stream_namespace=d["stream_namespace"],
            next_batch_id=d["next_batch_id"],
            tally=Tally.from_dict(d["tally"]),
            tolerances=Tolerances.from_dict(d["tolerances"]),
        )


def save_checkpoint(ck, path):
    tmp = f"{path}.tmp"
    with open(tmp, "w") as f:
        json.dump(ck.to_dict(), f)
    os.replace(tmp, path)


def load_checkpoint(path):
    with open(path) as f:
        return Checkpoint.from_dict(json.load(f))


def write_report(report, path):
    with open(path, "w") as f:
        json.dump(report.to_dict(), f, indent=2)
        f.write("\n")


def _stream_id(namespace, batch_id):
    if not 0 <= batch_id < (1 << _NAMESPACE_BITS):
        raise ValueError("batch id out of range")
    if not 0 <= namespace < (1 << (64 - _NAMESPACE_BITS)):
        raise ValueError("stream namespace out of range")
    return (namespace << _NAMESPACE_BITS) | batch_id


def _batch_sizes(trials, batch_size):
    full, rem = divmod(trials, batch_size)
    return [batch_size] * full + ([rem] if rem else [])


def _batch_counts(shape, count, seed, stream_id, ppt_tol, rankdef_tol):
    """Run one batch on its own substream; returns integer counts only."""
    stream = RngStream(seed, stream_id)
    rhos, spectra, resamples = sample_density_batch(shape, count, stream, rankdef_tol)
    is_ppt, _, det_rho, det_pt = verdict_batch(rhos, spectra, (shape.m, shape.n), ppt_tol)
    successes = int(is_ppt.sum())
    det_greater = int((det_pt[is_ppt] > det_rho[is_ppt]).sum())
    return successes, det_greater, resamples


def run_trials(
    shape,
    trials,
    seed,
    batch_size=DEFAULT_BATCH_SIZE,
    workers=1,
    resume_from=None,
    checkpoint_path=None,
    stream_namespace=0,
    tolerances=None,
    z=DEFAULT_Z,
    max_batches=None,
):
    """Estimate the PPT probability of an ensemble by Monte Carlo.

    Parameters
    ----------
    shape : BipartiteShape
    trials : int
        Total number of valid samples to draw.
    seed : int
        Run seed; batch ``b`` uses the substream ``(seed, b)``.
    batch_size : int
        Trials per batch. Part of the run's identity: changing it changes
        which substream each trial consumes.
    workers : int
        Process-level parallelism. Results are bit-identical for any value.
    resume_from : Checkpoint or str, optional
        Continue an interrupted run; all configuration fields must match.
    checkpoint_path : str, optional
        Write a checkpoint after every completed batch.
    stream_namespace : int
        Reserved high bits of the stream id, letting callers run several
        independent estimations from one seed.
    max_batches : int, optional
        Stop after this many batches this call (for time-sliced runs);
        the returned report then has ``complete=False``.

    Returns
    -------
    EstimateReport
    """
    trials = int(trials)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    batch_size = int(batch_size)
    if batch_size < 1:
        raise ValueError("batch_size must be >= 1")
    workers = max(1, int(workers))
    tolerances = tolerances or Tolerances()

    sizes = _batch_sizes(trials, batch_size)
    n_batches = len(sizes)

    if resume_from is not None:
        ck = load_checkpoint(resume_from) if isinstance(resume_from, str) else resume_from
        expected = (seed, shape, batch_size, trials, stream_namespace, tolerances)
        actual = (ck.seed, ck.shape, ck.batch_size, ck.trials_total, ck.stream_namespace, ck.tolerances)
        if expected != actual:
            raise ConfigMismatchError(
                f"checkpoint does not match run configuration: expected {expected}, found {actual}"
            )
        tally = ck.tally
        start = ck.next_batch_id
    else:
        tally = Tally()
        start = 0

    stop = n_batches if max_batches is None else min(n_batches, start + int(max_batches))

    def fold(batch_id, counts):
        successes, det_greater, resamples = counts
        tally.add_batch(batch_id, sizes[batch_id], successes, det_greater, resamples)
        if checkpoint_path:
            save_checkpoint(
                Checkpoint(
                    seed=seed,
                    shape=shape,
                    batch_size=batch_size,
                    trials_total=trials,
                    stream_namespace=stream_namespace,
                    next_batch_id=batch_id + 1,
                    tally=tally,
                    tolerances=tolerances,
                ),
                checkpoint_path,
            )

    batch_ids = range(start, stop)
    if workers == 1 or len(batch_ids) <= 1:
        for b in batch_ids:
            fold(b, _batch_counts(shape, sizes[b], seed, _stream_id(stream_namespace, b),
                                  tolerances.ppt, tolerances.rankdef))
    else:
        # Fold strictly in batch-id order so every checkpoint is a valid
        # contiguous prefix; sums are commutative so totals never depend
        # on completion order anyway.
        done = {}
        next_to_fold = start
        with ProcessPoolExecutor(max_workers=min(workers, len(batch_ids))) as ex:
            futures = {
                ex.submit(_batch_counts, shape, sizes[b], seed,
                          _stream_id(stream_namespace, b), tolerances.ppt, tolerances.rankdef): b
                for b in batch_ids
            }
            pending = set(futures)
            while pending:
                finished, pending = wait(pending, return_when=FIRST_COMPLETED)
                for fut in finished:
                    done[futures[fut]] = fut.result()
                while next_to_fold in done:
                    fold(next_to_fold, done.pop(next_to_fold))
                    next_to_fold += 1

    return EstimateReport(
        shape=shape,
        tally=tally,
        seed=seed,
        batch_size=batch_size,
        stream_namespace=stream_namespace,
        tolerances=tolerances,
        z=z,
        complete=(len(tally.batch_records) == n_batches),
    )


# ---------------------------------------------------------------------------
# convergence traces

TRACE_HEADER = "trials,successes,p_hat,wilson_lo,wilson_hi"


def emit_trace(tally, stride=None, z=DEFAULT_Z):
    """Running-estimate rows suitable for plotting convergence.

    One row per ``stride`` trials (default: one row per batch), each row
    ``(trials, successes, p_hat, wilson_lo, wilson_hi)`` cumulative up to
    that point. The final row always equals the tally totals.
    """
    rows = []
    cum_t = cum_s = 0
    records = sorted(tally.batch_records)
    next_mark = stride if stride else 0
    for i, (_, t, s) in enumerate(records):
        cum_t += t
        cum_s += s
        last = i == len(records) - 1
        if stride is None or cum_t >= next_mark or last:
            lo, hi = wilson_interval(cum_s, cum_t, z)
            rows.append((cum_t, cum_s, cum_s / cum_t, lo, hi))
            if stride:
                while next_mark <= cum_t:
                    next_mark += stride
    return rows


def write_trace_csv(rows, path):
    with open(path, "w") as f:
        f.write(TRACE_HEADER + "\n")
        for t, s, p, lo, hi in rows:
            f.write(f"{t},{s},{p!r},{lo!r},{hi!r}\n")


# ---------------------------------------------------------------------------
# verification suites

#: Known or conjectured PPT/separability probabilities under
#: Hilbert-Schmidt measure, used by the known-values verification suite.
#: Keys are (m, n, rank, field); values are exact rationals as
#: (numerator, denominator). Reduced-rank entries at rank N-1 are half the
#: full-rank value; rank <= max(m, n) entries are exactly zero and are
#: covered by the zero-rank suite instead.
REFERENCE_TARGETS = {
    (2, 2, 4, "complex"): (8, 33),
    (2, 2, 4, "real"): (29, 64),
    (2, 2, 3, "complex"): (4, 33),
    (2, 2, 3, "real"): (29, 128),
    (2, 3, 6, "complex"): (27, 1000),
    (2, 3, 6, "real"): (860, 6561),
    (2, 3, 5, "complex"): (27, 2000),
    (2, 3, 5, "real"): (430, 6561),
    (2, 3, 4, "complex"): (7, 9900),
    (2, 3, 4, "real"): (387, 50000),
    (2, 4, 8, "complex"): (16, 12375),
    (2, 4, 6, "complex"): (169, 3093750),
}


@dataclass
class HalfTheoremResult:
    """Rank-(N-1) to rank-N probability ratio with propagated error."""

    full_report: EstimateReport
    reduced_report: EstimateReport
    ratio: float
    se: float
    target: float
    passed: bool


def verify_half_theorem(m, n, field, trials, seed, batch_size=DEFAULT_BATCH_SIZE,
                        workers=1, sigmas=4.0):
    """Check that the rank-(N-1) probability is half the full-rank one.

    Runs the two estimations on distinct stream namespaces, so a single
    seed still yields independent streams. The check passes when the
    ratio lies within ``sigmas`` propagated standard errors of 1/2.
    """
    N = m * n
    full = run_trials(BipartiteShape(m, n, N, field), trials, seed,
                      batch_size=batch_size, workers=workers, stream_namespace=0)
    reduced = run_trials(BipartiteShape(m, n, N - 1, field), trials, seed,
                         batch_size=batch_size, workers=workers, stream_namespace=1)
    pf, pr = full.p_hat, reduced.p_hat
    if pf <= 0 or pr <= 0:
        return HalfTheoremResult(full, reduced, 0.0, math.inf, 0.5, False)
    sf = math.sqrt(pf * (1 - pf) / full.trials)
    sr = math.sqrt(pr * (1 - pr) / reduced.trials)
    ratio = pr / pf
    se = ratio * math.sqrt((sf / pf) ** 2 + (sr / pr) ** 2)
    return HalfTheoremResult(full, reduced, ratio, se, 0.5,
                             abs(ratio - 0.5) <= sigmas * se)


@dataclass
class ZeroRankResult:
    """Low-rank states are almost surely entangled: expect zero PPT hits."""

    report: EstimateReport
    hits: int
    passed: bool


def verify_zero_rank(field, rank=3, trials=100_000, seed=0, m=2, n=3,
                     batch_size=DEFAULT_BATCH_SIZE, workers=1):
    """Expect exactly zero PPT hits for rank <= max(m, n)."""
    if rank > max(m, n):
        raise ValueError(f"zero-rank check requires rank <= max(m, n) = {max(m, n)}")
    report = run_trials(BipartiteShape(m, n, rank, field), trials, seed,
                        batch_size=batch_size, workers=workers)
    return ZeroRankResult(report, report.successes, report.successes == 0)


@dataclass
class DetSplitResult:
    """Among PPT states, fraction with det(PT) exceeding det(rho)."""

    report: EstimateReport
    fraction: float
    se: float
    passed: bool


def verify_det_split(trials, seed, field="complex", m=2, n=2,
                     batch_size=DEFAULT_BATCH_SIZE, workers=1, sigmas=4.0):
    """Check the even determinant split among PPT full-rank two-qubit states."""
    shape = BipartiteShape(m, n, m * n, field)
    report = run_trials(shape, trials, seed, batch_size=batch_size, workers=workers)
    total = report.successes
    if total == 0:
        return DetSplitResult(report, 0.0, math.inf, False)
    frac = report.tally.det_split_pt_greater / total
    se = math.sqrt(0.25 / total)
    return DetSplitResult(report, frac, se, abs(frac - 0.5) <= sigmas * se)


@dataclass
class KnownValueResult:
    shape: BipartiteShape
    target_num: int
    target_den: int
    estimate: float
    sigma: float
    passed: bool

    @property
    def target(self):
        return self.target_num / self.target_den


def verify_known_values(trials, seed, cases=None, batch_size=DEFAULT_BATCH_SIZE,
                        workers=1, sigmas=4.0):
    """Compare estimates against every reference target (or a subset)."""
    results = []
    for key in cases or REFERENCE_TARGETS:
        num, den = REFERENCE_TARGETS[key]
        m, n, rank, field = key
        shape = BipartiteShape(m, n, rank, field)
        report = run_trials(shape, trials, seed, batch_size=batch_size, workers=workers)
        p = num / den
        sigma = math.sqrt(p * (1 - p) / trials)
        results.append(
            KnownValueResult(shape, num, den, report.p_hat, sigma,
                             abs(report.p_hat - p) <= sigmas * sigma)
        )
    return results
