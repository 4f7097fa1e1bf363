"""Associated Laguerre polynomials and integer-order Bessel functions J_q.

Both are computed by recurrence: Laguerre upward in the degree (the explicit
alternating sum cancels badly for large n), Bessel downward with Miller
normalization (upward recurrence is unstable once q exceeds x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_RESCALE_AT = 1e250


def laguerre(n: int, k: int, x):
    """Associated Laguerre polynomial L_n^k(x).

    Accepts scalar or array ``x``; returns the same shape.

    Uses ``(m+1) L_{m+1} = (2m+1+k-x) L_m - (m+k) L_{m-1}``.
    """
    if n < 0 or k < 0:
        raise ValueError("laguerre needs n >= 0 and k >= 0")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + k - x
    for m in range(1, n):
        prev, cur = cur, ((2 * m + 1 + k - x) * cur - (m + k) * prev) / (m + 1)
    return cur if cur.ndim else float(cur)


def log_factorial(n: int) -> float:
    """ln(n!) by direct summation of logarithms."""
    if n < 0:
        raise ValueError("log_factorial needs n >= 0")
    if n <= 20:
        return math.log(math.factorial(n))
    return math.fsum(math.log(j) for j in range(2, n + 1))


@dataclass(frozen=True)
class BesselSequence:
    x: float
    values: np.ndarray

    def __getitem__(self, q):
        return self.values[q]

    def __len__(self):
        return len(self.values)


def _start_order(qmax: int, x: float) -> int:
    base = max(qmax, math.ceil(x))
    return base + max(20, math.ceil(10.0 * math.sqrt(base)))


def bessel_j_sequence(qmax: int, x: float) -> BesselSequence:
    """J_0(x) .. J_qmax(x) by Miller's downward recurrence.

    The recurrence ``J_{q-1} = (2q/x) J_q - J_{q+1}`` is seeded with
    ``J_start = tiny, J_{start+1} = 0`` well above ``max(qmax, x)`` and the
    result scaled so that ``J_0 + 2 sum_k J_{2k} = 1``.
    """
    if qmax < 0:
        raise ValueError("qmax must be >= 0")
    x = float(x)
    if x < 0:
        raise ValueError("bessel_j_sequence is defined here for x >= 0")
    if x == 0.0:
        out = np.zeros(qmax + 1)
        out[0] = 1.0
        return BesselSequence(x, out)

    start = _start_order(qmax, x)
    if start % 2:
        start += 1
    vals = np.zeros(start + 2)
    vals[start] = 1e-300
    two_over_x = 2.0 / x
    for q in range(start, 0, -1):
        vals[q - 1] = q * two_over_x * vals[q] - vals[q + 1]
        if abs(vals[q - 1]) > _RESCALE_AT:
            vals[q - 1 :] /= _RESCALE_AT
    norm = vals[0] + 2.0 * math.fsum(vals[2::2])
    return BesselSequence(x, vals[: qmax + 1] / norm)
