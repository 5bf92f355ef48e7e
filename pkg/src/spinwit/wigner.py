"""Wigner 6-j symbols and the partial-transpose coefficient map.

The 6-j symbol is evaluated with the Racah single-sum formula over exact
big-integer factorials: the four squared triangle coefficients and the
alternating sum are accumulated as Fractions, and a single square root is
taken at the very end. That removes the catastrophic cancellation the
formula is notorious for; at the modest angular momenta used here the
result is accurate to machine precision.

All angular momentum arguments are passed doubled (twice the j value), so
half-integers stay integers end to end.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .numerics import ValidationError
from .spin_ops import SpinLabel


def _triad_ok(ta: int, tb: int, tc: int) -> bool:
    if (ta + tb + tc) % 2 != 0:
        return False
    return abs(ta - tb) <= tc <= ta + tb


def _delta_sq(ta: int, tb: int, tc: int) -> Fraction:
    # squared triangle coefficient, exact
    return Fraction(
        math.factorial((ta + tb - tc) // 2)
        * math.factorial((ta - tb + tc) // 2)
        * math.factorial((-ta + tb + tc) // 2),
        math.factorial((ta + tb + tc) // 2 + 1),
    )


@lru_cache(maxsize=None)
def six_j(tj1: int, tj2: int, tj3: int, tj4: int, tj5: int, tj6: int) -> float:
    """{j1 j2 j3; j4 j5 j6} with all arguments doubled.

    Returns 0.0 for any input violating a triangle or integer-perimeter
    condition, following the usual convention.
    """
    tjs = (tj1, tj2, tj3, tj4, tj5, tj6)
    if any(t < 0 for t in tjs):
        return 0.0
    triads = (
        (tj1, tj2, tj3),
        (tj1, tj5, tj6),
        (tj4, tj2, tj6),
        (tj4, tj5, tj3),
    )
    if not all(_triad_ok(*t) for t in triads):
        return 0.0

    t_lo = max((a + b + c) // 2 for a, b, c in triads)
    t_hi = min(
        (tj1 + tj2 + tj4 + tj5) // 2,
        (tj2 + tj3 + tj5 + tj6) // 2,
        (tj3 + tj1 + tj6 + tj4) // 2,
    )
    total = Fraction(0)
    for t in range(t_lo, t_hi + 1):
        den = (
            math.factorial(t - (tj1 + tj2 + tj3) // 2)
            * math.factorial(t - (tj1 + tj5 + tj6) // 2)
            * math.factorial(t - (tj4 + tj2 + tj6) // 2)
            * math.factorial(t - (tj4 + tj5 + tj3) // 2)
            * math.factorial((tj1 + tj2 + tj4 + tj5) // 2 - t)
            * math.factorial((tj2 + tj3 + tj5 + tj6) // 2 - t)
            * math.factorial((tj3 + tj1 + tj6 + tj4) // 2 - t)
        )
        term = Fraction(math.factorial(t + 1), den)
        total += -term if t % 2 else term
    if total == 0:
        return 0.0
    radicand = Fraction(1)
    for a, b, c in triads:
        radicand *= _delta_sq(a, b, c)
    return float(total) * math.sqrt(float(radicand))


@lru_cache(maxsize=None)
def _theta_entries(twice_spin: int) -> np.ndarray:
    n = twice_spin + 1
    th = np.zeros((n, n))
    for f in range(n):
        for k in range(n):
            th[f, k] = math.sqrt((2 * f + 1) * (2 * k + 1)) * six_j(
                twice_spin, twice_spin, 2 * f, twice_spin, twice_spin, 2 * k
            )
    th.setflags(write=False)
    return th


def theta_matrix(s: SpinLabel) -> np.ndarray:
    """Symmetric involution mapping channel coefficients under partial transpose.

    Entry (F, K) is sqrt((2F+1)(2K+1)) {s s F; s s K}.
    """
    return _theta_entries(s.twice_spin)


def alpha_prime(theta: np.ndarray, alpha) -> "AlphaVector":
    """Apply the coefficient map: the channel vector of the transposed state."""
    from .su2_states import AlphaVector

    theta = np.asarray(theta)
    if theta.shape != (len(alpha.values), len(alpha.values)):
        raise ValidationError(
            f"theta is {theta.shape}, alpha has {len(alpha.values)} channels"
        )
    return AlphaVector(alpha.twice_spin, theta @ alpha.values)
