"""Double-precision FFT from 32-bit NTTs: Bluestein's chirp form with the
cyclic convolution carried out by the Ozaki scheme in TS arithmetic.

For power-of-two ``n`` the chirp convolution is already cyclic of length ``n``,
so no zero padding is needed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._trig import unit_roots
from .crt import CrtPair, default_pair
from .ntt import count_ntts, plan_ntt
from .ozaki_conv import (
    ComplexSplit,
    ConvConfig,
    split_complex,
    ts_complex_conv,
    ts_conv_accumulated,
)
from .split import SplitConfig
from .ts import TsComplexVector, tsc_mul


def chirp_table(n: int) -> np.ndarray:
    """``w(j) = exp(-pi i j^2 / n)``, phase reduced exactly as ``j^2 mod 2n``."""
    if n < 1 or n & (n - 1):
        raise ValueError("n must be a power of two")
    j = np.arange(n, dtype=np.int64)
    return unit_roots((j * j) % (2 * n), 2 * n)


@dataclass(frozen=True, eq=False)
class BluesteinPlan:
    n: int
    K: int | None
    L: int
    cfg: ConvConfig
    chirp: np.ndarray = field(repr=False)
    chirp_ts: TsComplexVector = field(repr=False)
    chirp_conj_splits: ComplexSplit = field(repr=False)
    cached_ntt: int = 0  # forward NTTs spent on the chirp splits

    @property
    def alpha(self) -> int:
        return self.cfg.split_cfg.alpha

    @property
    def ntt_plans(self):
        return self.cfg.plans


def plan_bluestein(n: int, K: int | None = None, L: int = 1, pair: CrtPair | None = None) -> BluesteinPlan:
    """Build (or fetch) the plan; splitting the conjugate chirp happens once here."""
    pair = pair or default_pair()
    if n < 1 or n & (n - 1):
        raise ValueError(f"n must be a power of two, got {n}")
    cap = 2 ** min(pair.m0.two_adicity, pair.m1.two_adicity)
    if n > cap:
        raise ValueError(f"n={n} exceeds the NTT capacity {cap} of the moduli")
    if K is not None and K < 1:
        raise ValueError("K must be positive or None")
    return _plan_cached(n, K, L, pair)


@lru_cache(maxsize=32)
def _plan_cached(n, K, L, pair) -> BluesteinPlan:
    plans = (plan_ntt(n, pair.m0), plan_ntt(n, pair.m1))
    cfg = ConvConfig(SplitConfig.for_length(pair, n, K, L), pair, plans)
    w = chirp_table(n)
    with count_ntts() as c:
        splits = split_complex(TsComplexVector.from_complex(np.conj(w)), cfg)
    return BluesteinPlan(
        n=n,
        K=K,
        L=L,
        cfg=cfg,
        chirp=w,
        chirp_ts=TsComplexVector.from_complex(w),
        chirp_conj_splits=splits,
        cached_ntt=c.total,
    )


@dataclass
class FftInfo:
    alpha: int
    kx: tuple[int, int]
    kw: tuple[int, int]
    fwd_ntt: int
    inv_ntt: int
    plan_cached_ntt: int
    residual_max: float  # largest residual dropped by the K cap in x'


def fft_proposed(plan: BluesteinPlan, x, return_info: bool = False, conv=ts_conv_accumulated):
    """DFT ``y(k) = sum_j x(j) exp(-2 pi i jk/n)`` of a complex double vector."""
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (plan.n,):
        raise ValueError(f"expected a vector of length {plan.n}, got shape {x.shape}")
    with count_ntts() as c:
        xp = tsc_mul(TsComplexVector.from_complex(x), plan.chirp_ts)
        xs = split_complex(xp, plan.cfg)
        yp = ts_complex_conv(xs, plan.chirp_conj_splits, plan.cfg, conv)
        y = tsc_mul(yp, plan.chirp_ts).to_complex()
    if not return_info:
        return y
    info = FftInfo(
        alpha=plan.alpha,
        kx=xs.ks,
        kw=plan.chirp_conj_splits.ks,
        fwd_ntt=c.fwd,
        inv_ntt=c.inv,
        plan_cached_ntt=plan.cached_ntt,
        residual_max=max(xs.re.residual_max, xs.im.residual_max),
    )
    return y, info


def ifft_proposed(plan: BluesteinPlan, y) -> np.ndarray:
    """Inverse DFT as ``conj(fft(conj(y))) / n`` (the division is exact)."""
    y = np.asarray(y, dtype=np.complex128)
    return np.conj(fft_proposed(plan, np.conj(y))) / plan.n
