"""From a Monte Carlo estimate to a rational conjecture.

Given a converged estimate and its trial count, enumerate every reduced
fraction with a small-prime-smooth denominator inside the confidence
window and rank them by closeness. The showcase inputs are the reference
estimates this package reproduces; the searches below recover their
published rational targets.
"""

from pptmc import conjecture_search, exact_ratio, format_factored

CASES = [
    # estimate, trials, primes, max denominator, label
    ("0.00774006", 8e8, (2, 3, 5), 10**5, "rebit-retrit rank 4"),
    ("0.000707020", 4e8, (2, 3, 5, 7, 11, 13), 10**4, "qubit-qutrit rank 4"),
    ("0.1310775", 1.85e9, (2, 3, 5, 7, 11, 13), 10**4, "rebit-retrit full rank"),
    ("0.242424", None, (2, 3, 5, 7, 11, 13), 10**3, "two-qubit full rank"),
]

for estimate, trials, primes, max_den, label in CASES:
    kwargs = dict(den_primes=primes, max_denominator=max_den)
    if trials:
        cands = conjecture_search(estimate, trials=trials, **kwargs)
    else:
        # no trial count: use the printed precision of the estimate as window
        from fractions import Fraction

        half = Fraction(1, 2) * Fraction(1, 10 ** len(estimate.split(".")[1]))
        center = Fraction(estimate)
        cands = conjecture_search(estimate, lo=center - half, hi=center + half, **kwargs)
    print("=" * 72)
    print(f"{label}: estimate {estimate}" + (f" from {trials:.3g} trials" if trials else ""))
    print("=" * 72)
    for rank_i, c in enumerate(cands[:5], 1):
        print(f"  #{rank_i}: {format_factored(c.numerator, c.denominator)}"
              f"   (value {c.value:.9f}, distance {c.distance:.2e})")
    print()

print("=" * 72)
print("Exact ratio arithmetic between conjectured values")
print("=" * 72)
for (a, b), label in [
    (((387, 50000), (860, 6561)), "rank-4 / rank-6, real 2x3"),
    (((7, 9900), (27, 1000)), "rank-4 / rank-6, complex 2x3"),
    (((169, 3093750), (16, 12375)), "rank-6 / rank-8, complex 2x4"),
]:
    r = exact_ratio(a, b)
    print(f"  {label}: ({a[0]}/{a[1]}) / ({b[0]}/{b[1]}) = {r}")
