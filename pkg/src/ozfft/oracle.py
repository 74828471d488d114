"""Reference DFT in double-double arithmetic and the two error metrics.

The reference is the direct O(n^2) sum with every product formed exactly
(Dekker splitting) and accumulated in a double-double register, which keeps
about 104 significant bits. Twiddles are evaluated with mpmath at 128 bits
and stored as (hi, lo) pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numba
import numpy as np

from ._trig import octant_reduce

MAX_N = 2**16
_SPLITTER = 134217729.0  # 2^27 + 1


# ---------------------------------------------------------------------------
# pair arithmetic (scalar, jit-compiled)
# ---------------------------------------------------------------------------

@numba.njit(inline="always")
def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@numba.njit(inline="always")
def fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


@numba.njit(inline="always")
def split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


@numba.njit(inline="always")
def two_prod_split(a, ah, al, b, bh, bl):
    # exact a*b = p + e given Dekker splits of both factors
    p = a * b
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


@numba.njit(inline="always")
def dd_add(xh, xl, yh, yl):
    # accurate double-double addition
    sh, se = two_sum(xh, yh)
    th, te = two_sum(xl, yl)
    se += th
    sh, se = fast_two_sum(sh, se)
    se += te
    return fast_two_sum(sh, se)


@numba.njit(cache=True)
def dd_sum(values):
    """Sum doubles in a double-double accumulator."""
    h = 0.0
    l = 0.0
    for v in values:
        h, l = dd_add(h, l, v, 0.0)
    return h, l


@numba.njit(cache=True)
def _dft_kernel(xr, xi, wrh, wrl, wih, wil, out):
    n = xr.shape[0]
    mask = n - 1
    xrh = np.empty(n)
    xrl = np.empty(n)
    xih = np.empty(n)
    xil = np.empty(n)
    for j in range(n):
        xrh[j], xrl[j] = split(xr[j])
        xih[j], xil[j] = split(xi[j])
    wrs_h = np.empty(n)
    wrs_l = np.empty(n)
    wis_h = np.empty(n)
    wis_l = np.empty(n)
    for j in range(n):
        wrs_h[j], wrs_l[j] = split(wrh[j])
        wis_h[j], wis_l[j] = split(wih[j])
    for k in range(n):
        rh = 0.0
        rl = 0.0
        rc = 0.0
        ih = 0.0
        il = 0.0
        ic = 0.0
        for j in range(n):
            m = (j * k) & mask
            a, ah, al = xr[j], xrh[j], xrl[j]
            b, bh, bl = xi[j], xih[j], xil[j]
            # (a + ib)(c + id), c = wr, d = wi; lo parts enter as plain products
            p1, e1 = two_prod_split(a, ah, al, wrh[m], wrs_h[m], wrs_l[m])
            p2, e2 = two_prod_split(b, bh, bl, wih[m], wis_h[m], wis_l[m])
            p3, e3 = two_prod_split(a, ah, al, wih[m], wis_h[m], wis_l[m])
            p4, e4 = two_prod_split(b, bh, bl, wrh[m], wrs_h[m], wrs_l[m])
            e1 += a * wrl[m]
            e2 += b * wil[m]
            e3 += a * wil[m]
            e4 += b * wrl[m]
            # real: p1 - p2, imag: p3 + p4
            # the low words are summed with their own compensation
            s, t = two_sum(p1, -p2)
            rh, u = two_sum(rh, s)
            rl, c = two_sum(rl, u + t + (e1 - e2))
            rc += c
            s, t = two_sum(p3, p4)
            ih, u = two_sum(ih, s)
            il, c = two_sum(il, u + t + (e3 + e4))
            ic += c
            if (j & 255) == 255:
                rh, rl = fast_two_sum(rh, rl)
                ih, il = fast_two_sum(ih, il)
        out[0, k], out[1, k] = fast_two_sum(rh, rl + rc)
        out[2, k], out[3, k] = fast_two_sum(ih, il + ic)


# ---------------------------------------------------------------------------
# twiddles
# ---------------------------------------------------------------------------

def _dd(v: mpmath.mpf) -> tuple[float, float]:
    hi = float(v)
    return hi, float(v - hi)


@lru_cache(maxsize=8)
def dd_twiddles(n: int) -> tuple[np.ndarray, ...]:
    """``exp(-2 pi i m / n)`` for ``m < n`` as (re_hi, re_lo, im_hi, im_lo)."""
    m = np.arange(n)
    if n < 4:
        re = np.where(2 * m == n, -1.0, 1.0)
        z = np.zeros(n)
        return re, z, z.copy(), z.copy()
    base = n // 8 + 1
    c_tab = np.empty((2, base))
    s_tab = np.empty((2, base))
    with mpmath.workprec(128):
        for r in range(base):
            a = 2 * mpmath.pi * r / n
            c_tab[:, r] = _dd(mpmath.cos(a))
            s_tab[:, r] = _dd(mpmath.sin(a))
    q, rr, flip = octant_reduce(m, n)
    c = np.where(flip, s_tab[:, rr], c_tab[:, rr])
    s = np.where(flip, c_tab[:, rr], s_tab[:, rr])
    cq = np.choose(q, [c, -s, -c, s])
    sq = np.choose(q, [s, c, -s, -c])
    # exp(-i theta) = cos - i sin
    out = (cq[0], cq[1], -sq[0], -sq[1])
    for a in out:
        a.setflags(write=False)
    return out


# ---------------------------------------------------------------------------
# reference and metrics
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ExtComplexVector:
    """Complex vector with double-double parts: value = hi + lo per part."""

    re_hi: np.ndarray
    re_lo: np.ndarray
    im_hi: np.ndarray
    im_lo: np.ndarray

    def __len__(self):
        return self.re_hi.size

    def to_complex(self) -> np.ndarray:
        return (self.re_hi + self.re_lo) + 1j * (self.im_hi + self.im_lo)


def reference_dft(x) -> ExtComplexVector:
    x = np.ascontiguousarray(x, dtype=np.complex128)
    n = x.size
    if x.ndim != 1 or n < 1 or n & (n - 1):
        raise ValueError("expected a 1-D vector of power-of-two length")
    if n > MAX_N:
        raise OverflowError(f"n={n} exceeds the O(n^2) oracle guard {MAX_N}")
    wrh, wrl, wih, wil = dd_twiddles(n)
    out = np.empty((4, n))
    _dft_kernel(x.real.copy(), x.imag.copy(), wrh, wrl, wih, wil, out)
    return ExtComplexVector(out[0], out[1], out[2], out[3])


@dataclass(frozen=True)
class ErrorReport:
    max_rel: float
    rel_l2: float
    excluded_parts: int = 0  # reference parts equal to zero, left out of max_rel


def error_metrics(y_test, y_ref: ExtComplexVector) -> ErrorReport:
    """Max per-part relative error and relative l2 error against the reference."""
    y = np.asarray(y_test, dtype=np.complex128)
    if y.shape != (len(y_ref),):
        raise ValueError("length mismatch")
    # errors formed against the unrounded (hi + lo) reference
    d_re = (y.real - y_ref.re_hi) - y_ref.re_lo
    d_im = (y.imag - y_ref.im_hi) - y_ref.im_lo
    ref_re = y_ref.re_hi
    ref_im = y_ref.im_hi
    nz_re = ref_re != 0
    nz_im = ref_im != 0
    rel = np.concatenate([np.abs(d_re[nz_re] / ref_re[nz_re]),
                          np.abs(d_im[nz_im] / ref_im[nz_im])])
    excluded = int((~nz_re).sum() + (~nz_im).sum())
    max_rel = float(rel.max()) if rel.size else 0.0
    num = np.sqrt(np.sum(d_re**2) + np.sum(d_im**2))
    den = np.sqrt(np.sum((ref_re + y_ref.re_lo) ** 2) + np.sum((ref_im + y_ref.im_lo) ** 2))
    rel_l2 = float(num / den) if den > 0 else (0.0 if num == 0 else float("inf"))
    return ErrorReport(max_rel, rel_l2, excluded)
