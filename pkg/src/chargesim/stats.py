"""Small statistical helpers used across the simulator."""

from __future__ import annotations

import math

# two-sided 95%
Z_95 = 1.959963984540054


def wilson_interval(k: int, n: int, z: float = Z_95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Preferred over the normal approximation because scenario targets sit
    near p = 0, where the Wald interval collapses to a point.
    """
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"bad counts: k={k}, n={n}")
    if n == 0:
        return (0.0, 1.0)
    p = k / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1.0 - p) / n + z * z / (4 * n * n)) / denom
    # k = 0 and k = n pin the bounds exactly; the formula leaves float dust
    lo = 0.0 if k == 0 else max(0.0, center - half)
    hi = 1.0 if k == n else min(1.0, center + half)
    return (lo, hi)


def wilson_upper(k: int, n: int, z: float = Z_95) -> float:
    return wilson_interval(k, n, z)[1]
