"""Triple-single (TS) arithmetic.

A TS value is the exact sum of three binary32 numbers ``t0 + t1 + t2`` with
``|t_s| <= ulp(t_{s-1}) / 2`` whenever ``t_{s-1} != 0``. Values produced here
are also kept in a strong normal form: a zero component is followed only by
zeros.

Arrays carry the components on the leading axis, so a TS vector of length n
is a ``float32`` array of shape ``(3, n)`` and a TS scalar has shape ``(3,)``.
All operations broadcast over the trailing axes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

F32 = np.float32
U32 = 2.0**-24


# ---------------------------------------------------------------------------
# error-free transformations (binary32)
# ---------------------------------------------------------------------------

def fast_two_sum(x, y):
    """``a = fl(x + y)``, ``b = x + y - a`` exactly. Requires ``|x| >= |y|``."""
    a = x + y
    b = y - (a - x)
    return a, b


def fast_two_sum_ordered(x, y):
    """FastTwoSum after swapping the operands so the larger magnitude comes first."""
    swap = np.abs(x) < np.abs(y)
    return fast_two_sum(np.where(swap, y, x), np.where(swap, x, y))


def two_sum(x, y):
    """Knuth's branch-free TwoSum; no ordering precondition."""
    a = x + y
    yv = a - x
    b = (x - (a - yv)) + (y - yv)
    return a, b


def two_prod(x, y):
    """Exact product of binary32 numbers as an unevaluated pair (hi, lo).

    The 48-bit product is formed exactly in binary64 and then split.
    """
    p = np.asarray(x, np.float64) * np.asarray(y, np.float64)
    hi = p.astype(F32)
    lo = (p - hi.astype(np.float64)).astype(F32)
    return hi, lo


# ---------------------------------------------------------------------------
# renormalization
# ---------------------------------------------------------------------------

def _sort_by_magnitude(terms: np.ndarray) -> np.ndarray:
    order = np.argsort(-np.abs(terms), axis=0, kind="stable")
    return np.take_along_axis(terms, order, axis=0)


def _vec_sum(terms: np.ndarray) -> np.ndarray:
    # bottom-up TwoSum chain; error-free
    e = np.empty_like(terms)
    s = terms[-1]
    for i in range(terms.shape[0] - 2, -1, -1):
        s, e[i + 1] = two_sum(terms[i], s)
    e[0] = s
    return e


def _vec_sum_err_branch(e: np.ndarray, m: int = 3) -> np.ndarray:
    # Compresses an expansion into m ulp-nonoverlapping terms, truncating the tail.
    shape = e.shape[1:]
    r = np.zeros((m,) + shape, dtype=e.dtype)
    j = np.zeros(shape, dtype=np.intp)
    active = np.ones(shape, dtype=bool)
    eps = e[0]
    for i in range(e.shape[0] - 1):
        s, err = two_sum(eps, e[i + 1])
        np.put_along_axis(r, j[None], np.where(active, s, np.take_along_axis(r, j[None], 0)[0])[None], 0)
        nz = err != 0
        full = active & nz & (j >= m - 1)
        active &= ~full
        j = j + (active & nz)
        eps = np.where(nz, err, s)
    tail = active & (eps != 0)
    np.put_along_axis(r, j[None], np.where(tail, eps, np.take_along_axis(r, j[None], 0)[0])[None], 0)
    return r


def _normalize3(t0, t1, t2):
    # Enforce |t_s| <= ulp(t_{s-1})/2 and zero-tail form. Usually one pass suffices.
    for _ in range(3):
        t0, t1 = two_sum(t0, t1)
        t1, t2 = two_sum(t1, t2)
        n0, n1 = two_sum(t0, t1)
        if np.array_equal(n0, t0) and np.array_equal(n1, t1):
            break
        t0, t1 = n0, n1
    return np.stack([t0, t1, t2])


def renormalize(terms) -> np.ndarray:
    """Round an arbitrary list of binary32 terms (leading axis) to a TS value."""
    terms = np.asarray(terms, dtype=F32)
    if terms.shape[0] < 3:
        pad = np.zeros((3 - terms.shape[0],) + terms.shape[1:], F32)
        terms = np.concatenate([terms, pad])
    with np.errstate(invalid="ignore", over="ignore"):
        e = _vec_sum(_sort_by_magnitude(terms))
        r = _vec_sum_err_branch(e, 3)
        return _normalize3(r[0], r[1], r[2])


# ---------------------------------------------------------------------------
# conversions
# ---------------------------------------------------------------------------

def ts_from_double(d) -> np.ndarray:
    """Exact split of binary64 values into TS (when the exponent fits binary32)."""
    d = np.asarray(d, dtype=np.float64)
    with np.errstate(over="ignore"):
        t0 = d.astype(F32)
    if np.any(np.isinf(t0) & np.isfinite(d)):
        raise OverflowError("value exceeds the binary32 exponent range")
    r = d - t0.astype(np.float64)
    t1 = r.astype(F32)
    t2 = (r - t1.astype(np.float64)).astype(F32)
    return np.stack([t0, t1, t2])


def ts_to_double(t) -> np.ndarray:
    """Correctly rounded ``fl64(t0 + t1 + t2)``."""
    t = np.asarray(t)
    # t0 + t1 is exact in binary64 for non-overlapping components
    return (t[0].astype(np.float64) + t[1].astype(np.float64)) + t[2].astype(np.float64)


def ts_conversion_inexact(d) -> np.ndarray:
    """Mask of doubles that do not survive the TS round trip (binary32 underflow)."""
    d = np.asarray(d, dtype=np.float64)
    return ts_to_double(ts_from_double(d)) != d


def ts_from_int64(v, exp2: int = 0) -> np.ndarray:
    """TS value of ``v * 2^exp2`` for int64 ``v``; exact unless the scaled value underflows."""
    v = np.asarray(v, dtype=np.int64)
    parts = []
    r = v
    for _ in range(3):
        # the last part has at most 64 - 48 = 16 significant bits
        t = r.astype(np.float64).astype(F32)
        parts.append(t)
        r = r - t.astype(np.int64)
    out = _normalize3(*parts)
    if exp2:
        out = np.ldexp(out, np.int32(exp2)).astype(F32)
    return out


def ts_zeros(shape) -> np.ndarray:
    if isinstance(shape, int):
        shape = (shape,)
    return np.zeros((3,) + tuple(shape), dtype=F32)


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

def ts_neg(a) -> np.ndarray:
    return -np.asarray(a, dtype=F32)


def ts_add(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=F32)
    b = np.asarray(b, dtype=F32)
    a, b = np.broadcast_arrays(a, b)
    return renormalize(np.concatenate([a, b]))


def ts_sub(a, b) -> np.ndarray:
    return ts_add(a, ts_neg(b))


def ts_mul(a, b) -> np.ndarray:
    """TS product keeping all partial products down to order 2^-48 relative."""
    a = np.asarray(a, dtype=F32)
    b = np.asarray(b, dtype=F32)
    a, b = np.broadcast_arrays(a, b)
    h00, l00 = two_prod(a[0], b[0])
    h01, l01 = two_prod(a[0], b[1])
    h10, l10 = two_prod(a[1], b[0])
    with np.errstate(over="ignore", under="ignore"):
        p02 = (a[0].astype(np.float64) * b[2]).astype(F32)
        p11 = (a[1].astype(np.float64) * b[1]).astype(F32)
        p20 = (a[2].astype(np.float64) * b[0]).astype(F32)
    return renormalize(np.stack([h00, h01, h10, l00, l01, l10, p02, p11, p20]))


def ts_scale2(a, e: int) -> np.ndarray:
    """Exact multiplication by ``2^e`` (barring over/underflow)."""
    return np.ldexp(np.asarray(a, F32), np.int32(e)).astype(F32)


def ulp32(x) -> np.ndarray:
    """ulp of binary32 numbers; subnormal spacing for zero and subnormals."""
    x = np.abs(np.asarray(x, dtype=F32))
    return np.spacing(x).astype(F32)


def is_nonoverlapping(t) -> np.ndarray:
    """Elementwise check of the TS invariant plus the zero-tail form."""
    t = np.asarray(t, dtype=F32)
    ok = np.ones(t.shape[1:], dtype=bool)
    for s in (1, 2):
        prev, cur = t[s - 1], t[s]
        half = ulp32(prev).astype(np.float64) / 2
        ok &= np.where(prev != 0, np.abs(cur.astype(np.float64)) <= half, cur == 0)
    return ok


# ---------------------------------------------------------------------------
# complex TS vectors
# ---------------------------------------------------------------------------

@dataclass
class TsComplexVector:
    re: np.ndarray
    im: np.ndarray

    def __post_init__(self):
        if self.re.shape != self.im.shape or self.re.shape[0] != 3:
            raise ValueError("re and im must be TS arrays of equal shape")

    def __len__(self):
        return self.re.shape[1]

    @classmethod
    def from_complex(cls, z) -> "TsComplexVector":
        z = np.asarray(z, dtype=np.complex128)
        return cls(ts_from_double(z.real), ts_from_double(z.imag))

    def to_complex(self) -> np.ndarray:
        return ts_to_double(self.re) + 1j * ts_to_double(self.im)

    def conj(self) -> "TsComplexVector":
        return TsComplexVector(self.re, ts_neg(self.im))

    def __getitem__(self, idx) -> "TsComplexVector":
        return TsComplexVector(self.re[:, idx], self.im[:, idx])


def tsc_add(a: TsComplexVector, b: TsComplexVector) -> TsComplexVector:
    return TsComplexVector(ts_add(a.re, b.re), ts_add(a.im, b.im))


def tsc_sub(a: TsComplexVector, b: TsComplexVector) -> TsComplexVector:
    return TsComplexVector(ts_sub(a.re, b.re), ts_sub(a.im, b.im))


def tsc_mul(a: TsComplexVector, b: TsComplexVector) -> TsComplexVector:
    """Complex TS product: (ar br - ai bi) + i(ar bi + ai br)."""
    re = ts_sub(ts_mul(a.re, b.re), ts_mul(a.im, b.im))
    im = ts_add(ts_mul(a.re, b.im), ts_mul(a.im, b.re))
    return TsComplexVector(re, im)
