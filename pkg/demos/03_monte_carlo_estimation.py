"""A complete Monte Carlo estimation run, start to finish.

Estimates the PPT probability of full-rank two-qubit states (known to be
8/33), writes the JSON report and the convergence trace, and shows that
worker count and checkpoint/resume leave the result bit-identical.
"""

import json
import tempfile
from pathlib import Path

from pptmc import (
    BipartiteShape,
    emit_trace,
    load_checkpoint,
    run_trials,
    wilson_interval,
    write_report,
    write_trace_csv,
)

TRIALS = 200_000
SEED = 42

shape = BipartiteShape(2, 2, 4, "complex")
print(f"estimating PPT probability: {shape} with {TRIALS} trials, seed {SEED}")
report = run_trials(shape, TRIALS, SEED, batch_size=20_000)

target = 8 / 33
lo, hi = report.wilson
print(f"  p_hat  = {report.p_hat:.6f}   (8/33 = {target:.6f})")
print(f"  wilson = [{lo:.6f}, {hi:.6f}]  (z = {report.z})")
print(f"  det split among PPT states: "
      f"{report.tally.det_split_pt_greater}/{report.successes} "
      f"= {report.tally.det_split_pt_greater / report.successes:.4f}")

workdir = Path(tempfile.mkdtemp(prefix="pptmc_demo_"))
report_path = workdir / "report.json"
trace_path = workdir / "trace.csv"
write_report(report, report_path)
rows = emit_trace(report.tally)
write_trace_csv(rows, trace_path)
print(f"\nwrote {report_path} and {trace_path} ({len(rows)} trace rows)")
print("last trace rows (cumulative):")
for row in rows[-3:]:
    print(f"  trials={row[0]:>7} p_hat={row[2]:.6f} band=[{row[3]:.6f}, {row[4]:.6f}]")

print("\nreproducibility:")
again = run_trials(shape, TRIALS, SEED, batch_size=20_000, workers=2)
print(f"  two workers, same seed: identical report = {again.to_dict() == report.to_dict()}")

ck_path = workdir / "ck.json"
run_trials(shape, TRIALS, SEED, batch_size=20_000, checkpoint_path=str(ck_path), max_batches=4)
ck = load_checkpoint(str(ck_path))
print(f"  interrupted after batch {ck.next_batch_id - 1}, resuming...")
resumed = run_trials(shape, TRIALS, SEED, batch_size=20_000, resume_from=str(ck_path))
print(f"  resumed run identical = {resumed.to_dict() == report.to_dict()}")

print("\nwhy Wilson intervals: at p ~ 5e-5 the normal interval collapses")
for successes, trials in [(0, 1000), (5, 100_000)]:
    lo, hi = wilson_interval(successes, trials)
    print(f"  successes={successes:>2}/{trials}: wilson=[{lo:.2e}, {hi:.2e}]")
