"""What happens to the PPT probability as the rank drops.

Three regimes, demonstrated at desk scale on 2x2 and 2x3 systems:

* full rank: the probability matches the known/conjectured targets;
* rank N-1: exactly half the full-rank probability;
* rank <= max(m, n): exactly zero (such states are almost surely
  entangled), so the estimator should never record a hit.
"""

from pptmc import REFERENCE_TARGETS, BipartiteShape, run_trials, verify_half_theorem, verify_zero_rank

SEED = 7
TRIALS = 100_000

print("=" * 72)
print(f"PPT probability vs rank, qubit-qutrit, complex field ({TRIALS} trials each)")
print("=" * 72)
print(f"{'rank':>4} {'p_hat':>10} {'reference':>12}")
for rank in range(1, 7):
    report = run_trials(BipartiteShape(2, 3, rank, "complex"), TRIALS, SEED)
    key = (2, 3, rank, "complex")
    if rank <= 3:
        ref = "0 exactly"
    elif key in REFERENCE_TARGETS:
        num, den = REFERENCE_TARGETS[key]
        ref = f"{num}/{den} = {num / den:.6f}"
    print(f"{rank:>4} {report.p_hat:>10.6f} {ref:>32}")

print()
print("=" * 72)
print("The rank-(N-1) halving, two-qubit complex (200k trials per rank)")
print("=" * 72)
res = verify_half_theorem(2, 2, "complex", 200_000, SEED)
print(f"  full rank (4): p_hat = {res.full_report.p_hat:.5f}")
print(f"  rank 3       : p_hat = {res.reduced_report.p_hat:.5f}")
print(f"  ratio = {res.ratio:.4f} +- {res.se:.4f}  (target 0.5, passed={res.passed})")

print()
print("=" * 72)
print("Zero-probability ranks on 2x3 (100k trials each)")
print("=" * 72)
for field in ("complex", "real"):
    res = verify_zero_rank(field, rank=3, trials=TRIALS, seed=SEED)
    print(f"  rank 3, {field:7s}: hits = {res.hits} (expected 0, passed={res.passed})")
