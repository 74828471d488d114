"""Cyclic convolution of TS vectors from exact split-component convolutions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .crt import CrtPair, garner2
from .fp_mod import add_mod
from .ntt import NttPlan, ntt_inverse, pointwise_mul_mod
from .split import SplitConfig, SplitSet, compute_alpha, split_ts_and_ntt
from .ts import TsComplexVector, ts_add, ts_from_int64, ts_sub, ts_zeros


@dataclass(frozen=True)
class ConvConfig:
    split_cfg: SplitConfig
    pair: CrtPair
    plans: tuple[NttPlan, NttPlan]

    def __post_init__(self):
        p0, p1 = self.plans
        if p0.n != p1.n:
            raise ValueError("plan lengths differ")
        if (p0.modulus, p1.modulus) != (self.pair.m0, self.pair.m1):
            raise ValueError("plans do not match the CRT pair")
        limit = compute_alpha(self.pair, p0.n, self.split_cfg.L)
        if self.split_cfg.alpha > limit:
            raise ValueError(
                f"alpha={self.split_cfg.alpha} exceeds {limit}, the exact limit for "
                f"n={p0.n}, L={self.split_cfg.L}"
            )

    @property
    def n(self) -> int:
        return self.plans[0].n

    @classmethod
    def build(cls, pair: CrtPair, plans, K=None, L: int = 1) -> "ConvConfig":
        return cls(SplitConfig.for_length(pair, plans[0].n, K, L), pair, tuple(plans))


def _check_operands(xs: SplitSet, ys: SplitSet, cfg: ConvConfig, L: int):
    n = cfg.n
    if xs.n != n or ys.n != n:
        raise ValueError("split sets and plans have different lengths")
    limit = compute_alpha(cfg.pair, n, L)
    if max(xs.alpha, ys.alpha) > limit:
        raise ValueError(
            f"split width {max(xs.alpha, ys.alpha)} is too wide for {L} accumulated terms "
            f"(limit {limit}); reconstruction would not be exact"
        )


def _flush(Z0, Z1, scale_exp: int, cfg: ConvConfig) -> np.ndarray:
    z0 = ntt_inverse(cfg.plans[0], Z0)
    z1 = ntt_inverse(cfg.plans[1], Z1)
    z = garner2(z0, z1, cfg.pair)
    # division by c_x c_y is a pure exponent shift
    return ts_from_int64(z, -scale_exp)


def ts_conv_allpairs(xs: SplitSet, ys: SplitSet, cfg: ConvConfig) -> np.ndarray:
    """One exact product convolution per component pair (2 kx ky inverse NTTs).

    Terms are added in ascending ``s + t``, i.e. largest contributions first.
    """
    _check_operands(xs, ys, cfg, 1)
    m0, m1 = cfg.plans[0].modulus, cfg.plans[1].modulus
    z = ts_zeros(cfg.n)
    pairs = sorted(((s, t) for s in range(xs.k) for t in range(ys.k)),
                   key=lambda st: (st[0] + st[1], st[0]))
    for s, t in pairs:
        Z0 = pointwise_mul_mod(xs.ntt0[s], ys.ntt0[t], m0)
        Z1 = pointwise_mul_mod(xs.ntt1[s], ys.ntt1[t], m1)
        z = ts_add(z, _flush(Z0, Z1, xs.c_exp[s] + ys.c_exp[t], cfg))
    return z


def ts_conv_accumulated(xs: SplitSet, ys: SplitSet, cfg: ConvConfig) -> np.ndarray:
    """Convolution with products of equal scale summed in the NTT domain.

    Up to ``L`` pointwise products share one pair of inverse NTTs. Anti-diagonals
    are visited from the smallest scale (``s + t = kx + ky - 2``) up to ``0``.
    """
    L = cfg.split_cfg.L
    _check_operands(xs, ys, cfg, L)
    kx, ky = xs.k, ys.k
    z = ts_zeros(cfg.n)
    if kx == 0 or ky == 0:
        return z
    m0, m1 = cfg.plans[0].modulus, cfg.plans[1].modulus
    Z0 = np.zeros(cfg.n, np.uint64)
    Z1 = np.zeros(cfg.n, np.uint64)
    c = xs.c_exp[kx - 1] + ys.c_exp[ky - 1]
    l = 0
    for k in range(kx + ky - 2, -1, -1):
        for s in range(max(0, k - ky + 1), min(kx - 1, k) + 1):
            t = k - s
            ct = xs.c_exp[s] + ys.c_exp[t]
            if l >= L or c != ct:
                if l:
                    z = ts_add(z, _flush(Z0, Z1, c, cfg))
                Z0 = np.zeros(cfg.n, np.uint64)
                Z1 = np.zeros(cfg.n, np.uint64)
                c = ct
                l = 0
            Z0 = add_mod(Z0, pointwise_mul_mod(xs.ntt0[s], ys.ntt0[t], m0), m0)
            Z1 = add_mod(Z1, pointwise_mul_mod(xs.ntt1[s], ys.ntt1[t], m1), m1)
            l += 1
            assert l <= L
    return ts_add(z, _flush(Z0, Z1, c, cfg))


# ---------------------------------------------------------------------------
# complex
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexSplit:
    re: SplitSet
    im: SplitSet

    @property
    def ks(self) -> tuple[int, int]:
        return self.re.k, self.im.k


def split_complex(x: TsComplexVector, cfg: ConvConfig) -> ComplexSplit:
    """Split real and imaginary parts independently (4 k forward NTTs in total)."""
    return ComplexSplit(
        split_ts_and_ntt(x.re, cfg.plans, cfg.split_cfg),
        split_ts_and_ntt(x.im, cfg.plans, cfg.split_cfg),
    )


RealConv = Callable[[SplitSet, SplitSet, ConvConfig], np.ndarray]


def ts_complex_conv(x, w, cfg: ConvConfig, conv: RealConv = ts_conv_accumulated) -> TsComplexVector:
    """Complex cyclic convolution as four real ones.

    ``x`` and ``w`` may be ``TsComplexVector`` or precomputed ``ComplexSplit``;
    each operand is split once and reused.
    """
    xs = x if isinstance(x, ComplexSplit) else split_complex(x, cfg)
    ws = w if isinstance(w, ComplexSplit) else split_complex(w, cfg)
    rr = conv(xs.re, ws.re, cfg)
    ii = conv(xs.im, ws.im, cfg)
    ir = conv(xs.im, ws.re, cfg)
    ri = conv(xs.re, ws.im, cfg)
    return TsComplexVector(ts_sub(rr, ii), ts_add(ir, ri))
