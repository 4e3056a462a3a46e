"""Monte Carlo PPT/separability probabilities for random density matrices.

The package samples rank-constrained density matrices of bipartite
systems under Hilbert-Schmidt measure, estimates the probability that a
sample passes the positive-partial-transpose test, and matches the
resulting estimates against simple small-prime rationals.
"""

__version__ = "0.1.0"

from .conjecture import (
    ExactRatio,
    RationalCandidate,
    conjecture_search,
    exact_ratio,
    factorize,
    format_factored,
    smooth_denominators,
)
from .density import (
    BipartiteShape,
    DensityMatrix,
    sample_density,
    sample_density_batch,
    sample_density_direct_fullrank,
    sample_density_direct_fullrank_batch,
)
from .estimator import (
    Checkpoint,
    ConfigMismatchError,
    EstimateReport,
    REFERENCE_TARGETS,
    Tally,
    Tolerances,
    emit_trace,
    load_checkpoint,
    run_trials,
    save_checkpoint,
    verify_det_split,
    verify_half_theorem,
    verify_known_values,
    verify_zero_rank,
    wilson_interval,
    write_report,
    write_trace_csv,
)
from .linalg import DegenerateMatrixError, hermitian_eigensystem, qr_decompose
from .ppt import PptVerdict, partial_transpose, ppt_verdict
from .randmat import RngStream, haar_unitary, sample_ginibre

__all__ = [
    "BipartiteShape",
    "Checkpoint",
    "ConfigMismatchError",
    "DegenerateMatrixError",
    "DensityMatrix",
    "EstimateReport",
    "ExactRatio",
    "PptVerdict",
    "REFERENCE_TARGETS",
    "RationalCandidate",
    "RngStream",
    "Tally",
    "Tolerances",
    "conjecture_search",
    "emit_trace",
    "exact_ratio",
    "factorize",
    "format_factored",
    "haar_unitary",
    "hermitian_eigensystem",
    "load_checkpoint",
    "partial_transpose",
    "ppt_verdict",
    "qr_decompose",
    "run_trials",
    "sample_density",
    "sample_density_batch",
    "sample_density_direct_fullrank",
    "sample_density_direct_fullrank_batch",
    "sample_ginibre",
    "save_checkpoint",
    "smooth_denominators",
    "verify_det_split",
    "verify_half_theorem",
    "verify_known_values",
    "verify_zero_rank",
    "wilson_interval",
    "write_report",
    "write_trace_csv",
]
