"""Comparison FFTs: radix-2 Stockham and Bluestein, in binary64 and in TS."""
from __future__ import annotations

import enum
from functools import lru_cache

import numpy as np

from ._trig import unit_roots
from .bluestein import chirp_table
from .ts import TsComplexVector, ts_scale2, tsc_add, tsc_mul, tsc_sub


class BaselineKind(str, enum.Enum):
    F64_STOCKHAM = "f64_stockham"
    F64_BLUESTEIN = "f64_bluestein"
    TS_STOCKHAM = "ts_stockham"
    TS_BLUESTEIN = "ts_bluestein"


@lru_cache(maxsize=32)
def _twiddles(n: int) -> np.ndarray:
    w = unit_roots(np.arange(max(n // 2, 1)), n)
    w.setflags(write=False)
    return w


def _check_len(x) -> int:
    n = x.shape[-1]
    if n < 1 or n & (n - 1):
        raise ValueError(f"length must be a power of two, got {n}")
    return n


# ---------------------------------------------------------------------------
# Stockham, binary64
# ---------------------------------------------------------------------------

def stockham_f64(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    n = _check_len(x)
    tw = _twiddles(n)
    a = x
    s = 1
    while s < n:
        half = n // (2 * s)
        u = a.reshape(2, half, s)
        w = tw[: n // 2 : s][:, None]
        y = np.empty((half, 2, s), np.complex128)
        y[:, 0, :] = u[0] + u[1]
        y[:, 1, :] = (u[0] - u[1]) * w
        a = y.reshape(n)
        s *= 2
    return a


def _ts_cview(v: TsComplexVector, shape) -> TsComplexVector:
    return TsComplexVector(v.re.reshape((3,) + shape), v.im.reshape((3,) + shape))


def stockham_ts(x: TsComplexVector) -> TsComplexVector:
    """Stockham FFT with every butterfly in TS arithmetic."""
    n = len(x)
    _check_len(x.re)
    tw = _twiddles(n)
    a = x
    s = 1
    while s < n:
        half = n // (2 * s)
        top = TsComplexVector(a.re.reshape(3, 2, half, s)[:, 0], a.im.reshape(3, 2, half, s)[:, 0])
        bot = TsComplexVector(a.re.reshape(3, 2, half, s)[:, 1], a.im.reshape(3, 2, half, s)[:, 1])
        # twiddles converted exactly from binary64
        w = TsComplexVector.from_complex(np.broadcast_to(tw[: n // 2 : s][:, None], (half, s)))
        y0 = tsc_add(top, bot)
        y1 = tsc_mul(tsc_sub(top, bot), w)
        re = np.stack([y0.re, y1.re], axis=2).reshape(3, n)
        im = np.stack([y0.im, y1.im], axis=2).reshape(3, n)
        a = TsComplexVector(re, im)
        s *= 2
    return a


def _ts_ifft(y: TsComplexVector) -> TsComplexVector:
    n = len(y)
    r = stockham_ts(y.conj()).conj()
    e = n.bit_length() - 1
    return TsComplexVector(ts_scale2(r.re, -e), ts_scale2(r.im, -e))


# ---------------------------------------------------------------------------
# Bluestein with floating-point convolution
# ---------------------------------------------------------------------------

def bluestein_f64(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    n = _check_len(x)
    w = chirp_table(n)
    fx = stockham_f64(x * w)
    fw = stockham_f64(np.conj(w))
    conv = np.conj(stockham_f64(np.conj(fx * fw))) / n
    return conv * w


def bluestein_ts(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    n = _check_len(x)
    w = chirp_table(n)
    wt = TsComplexVector.from_complex(w)
    xp = tsc_mul(TsComplexVector.from_complex(x), wt)
    fx = stockham_ts(xp)
    fw = stockham_ts(TsComplexVector.from_complex(np.conj(w)))
    yp = _ts_ifft(tsc_mul(fx, fw))
    return tsc_mul(yp, wt).to_complex()


def fft_baseline(kind: BaselineKind | str, x) -> np.ndarray:
    kind = BaselineKind(kind)
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim != 1:
        raise ValueError("expected a 1-D vector")
    if kind is BaselineKind.F64_STOCKHAM:
        return stockham_f64(x)
    if kind is BaselineKind.F64_BLUESTEIN:
        return bluestein_f64(x)
    if kind is BaselineKind.TS_STOCKHAM:
        return stockham_ts(TsComplexVector.from_complex(x)).to_complex()
    return bluestein_ts(x)
