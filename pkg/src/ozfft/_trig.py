"""Accurate roots of unity ``exp(-2 pi i m / d)`` for power-of-two ``d``.

The integer ``m`` is reduced exactly to the first octant before any floating
point work, so the phase is never rounded at large arguments.
"""
import numpy as np

# 2*pi = _TWO_PI_HI + _TWO_PI_LO (+ ~7e-26); the head has 30 significant bits
# so _TWO_PI_HI * t is exact for t = r/d with r < 2^23.
_TWO_PI_HI = float.fromhex("0x1.921fb54000000p+2")
_TWO_PI_LO = float.fromhex("0x1.10b4611a62633p-28")


def _sincos_first_octant(r, d):
    # angle 2*pi*r/d in [0, pi/4]
    t = r.astype(np.float64) / d
    a_hi = _TWO_PI_HI * t
    a_lo = _TWO_PI_LO * t
    s, c = np.sin(a_hi), np.cos(a_hi)
    return c - s * a_lo, s + c * a_lo


def octant_reduce(m, d: int):
    """Write ``m/d`` (mod 1) as ``q/4 + rr/d`` or ``(q+1)/4 - rr/d`` with ``0 <= rr <= d/8``.

    Returns ``(q, rr, flip)``; ``flip`` selects the second form. Needs ``d >= 4``.
    """
    m = np.mod(np.asarray(m, dtype=np.int64), d)
    q = (4 * m) // d  # quadrant
    r = m - q * (d // 4)  # [0, d/4)
    flip = 8 * r > d
    return q, np.where(flip, d // 4 - r, r), flip


def unit_roots(m, d: int) -> np.ndarray:
    """``exp(-2 pi i m / d)`` for integer array ``m``; ``d`` a power of two."""
    if d < 1 or d & (d - 1):
        raise ValueError("denominator must be a power of two")
    m = np.mod(np.asarray(m, dtype=np.int64), d)
    if d < 4:
        # d = 1: 1; d = 2: +-1
        return np.where(2 * m == d, -1.0, 1.0) + 0j
    if d // 4 >= 2**23:
        raise ValueError("denominator too large for exact phase splitting")
    q, rr, flip = octant_reduce(m, d)
    c0, s0 = _sincos_first_octant(rr, d)
    c = np.where(flip, s0, c0)
    s = np.where(flip, c0, s0)
    # rotate (c, s) by q quarter turns
    cq = np.choose(q, [c, -s, -c, s])
    sq = np.choose(q, [s, c, -s, -c])
    return cq - 1j * sq
