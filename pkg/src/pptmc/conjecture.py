"""Exact rational arithmetic for matching estimates to simple fractions.

The search enumerates every reduced fraction whose denominator is
"smooth" (all prime factors drawn from a small configured set) up to a
denominator cap, keeps those inside a confidence window around the
estimate, and ranks them by closeness. All bookkeeping is exact integer
arithmetic; floats appear only in the reported convenience fields.

Decimal inputs are interpreted as decimals: passing ``0.3`` (or ``"0.3"``)
means the rational 3/10, not the nearest binary double. That is what
makes a degenerate window (``lo == hi``) an exact-match search.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

DEFAULT_DEN_PRIMES = (2, 3, 5, 7, 11, 13)
DEFAULT_MAX_DENOMINATOR = 10**6
MAX_DENOMINATOR_CAP = 10**9
DEFAULT_Z = 4.0

_FACTOR_LIMIT = 2**63


def _to_fraction(x):
    """Exact rational from int/str/Fraction; floats go via their shortest
    decimal representation so that 0.3 means 3/10."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError("value must be finite")
        return Fraction(str(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a rational")


def factorize(n):
    """Prime-exponent map of an integer in [1, 2**63], by trial division."""
    n = int(n)
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    if n > _FACTOR_LIMIT:
        raise ValueError("factorize supports n <= 2**63")
    factors = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    p = 5
    # trial division with the 6k +- 1 wheel
    while p * p <= n:
        for q in (p, p + 2):
            while n % q == 0:
                factors[q] = factors.get(q, 0) + 1
                n //= q
        p += 6
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def format_factored(numerator, denominator):
    """Render a fraction in factored form, e.g. ``387/50000 = 3^2*43 / 2^4*5^5``."""

    def side(n):
        if n == 1:
            return "1"
        return "*".join(
            f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(factorize(n).items())
        )

    return f"{numerator}/{denominator} = {side(numerator)} / {side(denominator)}"


def smooth_denominators(primes, limit):
    """All integers in [1, limit] whose prime factors lie in ``primes``."""
    limit = int(limit)
    if limit < 1:
        raise ValueError("limit must be >= 1")
    out = {1}
    for p in primes:
        for s in list(out):
            v = s * p
            while v <= limit:
                out.add(v)
                v *= p
    return sorted(out)


@dataclass(frozen=True)
class RationalCandidate:
    """One reduced fraction inside the search window."""

    numerator: int
    denominator: int
    value: float
    distance: float
    num_factors: dict
    den_factors: dict
    score: tuple  # ranking key: (distance, denominator, numerator)

    def to_dict(self):
        return {
            "num": self.numerator,
            "den": self.denominator,
            "value": self.value,
            "distance": self.distance,
            "num_factors": {str(p): e for p, e in sorted(self.num_factors.items())},
            "den_factors": {str(p): e for p, e in sorted(self.den_factors.items())},
        }

    def __str__(self):
        return format_factored(self.numerator, self.denominator)


def _is_prime(p):
    return p >= 2 and all(p % q for q in range(2, int(math.isqrt(p)) + 1))


def wilson_halfwidth(p_hat, trials, z=DEFAULT_Z):
    """Half-width of the Wilson window around an estimate (float helper)."""
    p = float(p_hat)
    n = float(trials)
    z2 = z * z
    half = z * math.sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n)
    return half


def conjecture_search(
    p_hat,
    lo=None,
    hi=None,
    den_primes=DEFAULT_DEN_PRIMES,
    max_denominator=DEFAULT_MAX_DENOMINATOR,
    trials=None,
    z=DEFAULT_Z,
    max_results=None,
):
    """Reduced fractions with smooth denominators near an estimate.

    Parameters
    ----------
    p_hat : float, str or Fraction
        The estimate; decimal interpretation (see module docstring).
    lo, hi : optional
        Explicit window bounds. When omitted, both default to the Wilson
        window at ``z`` standard scores derived from ``trials``.
    den_primes : iterable of int
        Allowed prime factors of candidate denominators. Numerators are
        unrestricted (a good conjecture may well have a large prime on top).
    max_denominator : int
        Denominator cap; at most ``10**9``.
    max_results : int, optional
        Truncate the ranked list.

    Returns
    -------
    list of RationalCandidate
        Sorted by ``(distance from p_hat, denominator, numerator)``,
        all of whose values lie inside ``[lo, hi]``. Empty when nothing
        qualifies.
    """
    p = _to_fraction(p_hat)
    primes = tuple(sorted(set(int(q) for q in den_primes)))
    if not primes:
        raise ValueError("den_primes must be nonempty")
    for q in primes:
        if not _is_prime(q):
            raise ValueError(f"den_primes must contain primes only, got {q}")
    max_denominator = int(max_denominator)
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    if max_denominator > MAX_DENOMINATOR_CAP:
        raise ValueError(f"max_denominator is capped at {MAX_DENOMINATOR_CAP}")

    if lo is None or hi is None:
        if trials is None:
            raise ValueError("provide either an explicit [lo, hi] window or trials")
        half = Fraction(str(wilson_halfwidth(p, trials, z)))
        lo_f = p - half if lo is None else _to_fraction(lo)
        hi_f = p + half if hi is None else _to_fraction(hi)
    else:
        lo_f, hi_f = _to_fraction(lo), _to_fraction(hi)
    if not lo_f <= p <= hi_f:
        raise ValueError("window must contain p_hat")

    found = []
    for d in smooth_denominators(primes, max_denominator):
        n_lo = math.ceil(lo_f * d)
        n_hi = math.floor(hi_f * d)
        for num in range(max(n_lo, 0), n_hi + 1):
            if math.gcd(num, d) == 1:
                found.append((abs(Fraction(num, d) - p), d, num))
    found.sort()
    if max_results is not None:
        found = found[: int(max_results)]
    return [
        RationalCandidate(
            numerator=num,
            denominator=d,
            value=num / d,
            distance=float(dist),
            num_factors=factorize(num) if num >= 1 else {},
            den_factors=factorize(d),
            score=(float(dist), d, num),
        )
        for dist, d, num in found
    ]


@dataclass(frozen=True)
class ExactRatio:
    """Reduced quotient of two rationals, with factored parts."""

    numerator: int
    denominator: int
    num_factors: dict
    den_factors: dict

    @property
    def fraction(self):
        return Fraction(self.numerator, self.denominator)

    def __str__(self):
        return format_factored(self.numerator, self.denominator)


def exact_ratio(a, b):
    """Exact reduced ratio a / b of two rationals, with factorizations.

    Accepts Fractions, ``(num, den)`` pairs, decimal strings, ints, or
    floats (decimal interpretation).
    """

    def parse(x):
        if isinstance(x, tuple):
            return Fraction(int(x[0]), int(x[1]))
        return _to_fraction(x)

    fa, fb = parse(a), parse(b)
    if fb == 0:
        raise ValueError("cannot take a ratio with a zero denominator value")
    q = fa / fb
    return ExactRatio(
        numerator=q.numerator,
        denominator=q.denominator,
        num_factors=factorize(abs(q.numerator)) if q.numerator != 0 else {},
        den_factors=factorize(q.denominator),
    )
