"""Ozaki-style splitting of TS vectors into bounded integer components.

Each component is an integer vector scaled by a power of two; its NTT images
under both moduli are kept so that convolutions of components can be formed
exactly by pointwise products.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .crt import CrtPair
from .fp_mod import to_residues
from .ntt import NttPlan, ntt_forward
from .ts import F32, fast_two_sum

LOG2_INV_U32 = 24


# ---------------------------------------------------------------------------
# split widths
# ---------------------------------------------------------------------------

def _floor_half_log2_ratio(num: int, den: int) -> int:
    """``floor(log2(num/den) / 2)`` exactly: the largest ``a`` with ``den * 4^a <= num``."""
    if num < den:
        a = -1
        while num * 4 ** (-a) < den:
            a -= 1
        return a
    a = (num // den).bit_length() // 2
    while den * 4**a > num:
        a -= 1
    while den * 4 ** (a + 1) <= num:
        a += 1
    return a


def compute_alpha(pair: CrtPair, n: int, L: int = 1) -> int:
    """Bits per split component so that ``L`` accumulated component convolutions
    of length ``n`` stay inside ``[-p0 p1/2, p0 p1/2)``.

    ``floor((log2(p0 p1 / 2) - log2(L n)) / 2)``, evaluated with integers.
    """
    if n < 1 or L < 1:
        raise ValueError("n and L must be positive")
    # floor(log2(P / (2 L n)) / 2)
    return _floor_half_log2_ratio(pair.product, 2 * L * n)


@dataclass(frozen=True)
class AlphaVariants:
    original: int
    fft: int
    ntt_single: int
    ntt_crt: int


def _log2_percival_excess(n: int, u: float) -> float:
    # log2((1+u)^3n (1+u sqrt5)^(3n+1) (1+u/sqrt2)^3n - 1) without cancellation
    s = (3 * n * math.log1p(u)
         + (3 * n + 1) * math.log1p(u * math.sqrt(5.0))
         + 3 * n * math.log1p(u / math.sqrt(2.0)))
    return math.log2(math.expm1(s))


def alpha_variants(n: int, u: float, p: int, pair: CrtPair) -> AlphaVariants:
    """The four split widths: original Ozaki, floating FFT convolution (Percival
    bound), single-prime NTT and two-prime NTT with CRT."""
    log2_inv_u = -math.log2(u)
    log2_n = math.log2(n)
    original = math.floor((log2_inv_u - log2_n) / 2)
    fft = math.floor(-0.5 * (1 + log2_n + _log2_percival_excess(n, u)))
    single = _floor_half_log2_ratio(p, 2 * n)
    return AlphaVariants(original, fft, single, compute_alpha(pair, n, 1))


def split_count_bound(max_abs: float, min_abs: float, u: float, alpha: int) -> int:
    if not max_abs >= min_abs > 0:
        raise ValueError("need max_abs >= min_abs > 0")
    if alpha < 2:
        raise ValueError("alpha must be at least 2")
    num = math.log2(max_abs) - math.log2(min_abs) - math.log2(u) - 1
    return math.ceil(num / (alpha - 1))


# ---------------------------------------------------------------------------
# splitting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplitConfig:
    alpha: int
    K: int | None = None  # None: split until the residual vanishes
    L: int = 1

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError(f"alpha={self.alpha} leaves no bits per component")
        # rho < 0 (alpha > 24, small n) still extracts exactly: sigma stays a
        # multiple of the leading ulp as long as rho > -24
        if self.rho <= -LOG2_INV_U32:
            raise ValueError(f"alpha={self.alpha} too wide for binary32 extraction")
        if self.L < 1:
            raise ValueError("L must be >= 1")
        if self.K is not None and self.K < 1:
            raise ValueError("K must be >= 1 or None")

    @property
    def rho(self) -> int:
        return LOG2_INV_U32 - self.alpha

    @classmethod
    def for_length(cls, pair: CrtPair, n: int, K: int | None = None, L: int = 1) -> "SplitConfig":
        # only the leading binary32 word is rounded per split, so a split never
        # gains more than ~24 bits; wider components buy nothing and void the
        # alpha - 1 bits-per-split guarantee behind split_count_bound
        return cls(min(compute_alpha(pair, n, L), LOG2_INV_U32), K, L)


@dataclass(frozen=True, eq=False)
class SplitSet:
    """NTT images of the scaled split components of one real TS vector.

    Component ``j`` equals ``ints[j] / c[j]`` with ``c[j] = 2**c_exp[j]``.
    """

    n: int
    alpha: int
    ntt0: list[np.ndarray] = field(repr=False)
    ntt1: list[np.ndarray] = field(repr=False)
    c_exp: list[int]
    exhausted: bool
    ints: list[np.ndarray] = field(repr=False, default_factory=list)
    residual_max: float = 0.0  # max |r0| left behind when K capped the split

    @property
    def k(self) -> int:
        return len(self.c_exp)

    @property
    def c(self) -> list[float]:
        return [2.0**e for e in self.c_exp]


def _ceil_log2(mu: float) -> int:
    m, e = math.frexp(mu)  # mu = m * 2^e, m in [0.5, 1)
    return e - 1 if m == 0.5 else e


def split_ts_and_ntt(x, plans: tuple[NttPlan, NttPlan], cfg: SplitConfig) -> SplitSet:
    """Split a real TS vector (shape ``(3, n)``) and transform each component mod both primes.

    Issues two forward NTTs per component.
    """
    x = np.asarray(x, dtype=F32)
    n = plans[0].n
    if x.shape != (3, n):
        raise ValueError(f"expected a TS vector of shape (3, {n}), got {x.shape}")
    r0, r1, r2 = (x[i].copy() for i in range(3))
    bound = 2**cfg.alpha
    ntt0, ntt1, c_exp, ints = [], [], [], []
    mu = float(np.abs(r0).max(initial=0))
    while mu > 0 and (cfg.K is None or len(c_exp) < cfg.K):
        sigma_exp = _ceil_log2(mu) + cfg.rho
        sigma = np.ldexp(F32(1), sigma_exp)
        xk = (r0 + sigma) - sigma
        r0, t = fast_two_sum(r0 - xk, r1)
        r1, r2 = fast_two_sum(t, r2)
        # a zero head with a live tail would be dropped by the mu test
        if np.any((r0 == 0) & ((r1 != 0) | (r2 != 0))):
            raise AssertionError("residual left with a zero leading component")
        e = LOG2_INV_U32 - sigma_exp  # c = 1 / (u32 * sigma)
        comp = np.ldexp(xk.astype(np.float64), e).astype(np.int64)
        if int(np.abs(comp).max()) > bound:
            raise AssertionError("split component exceeds 2^alpha")
        for plan, out in zip(plans, (ntt0, ntt1)):
            out.append(ntt_forward(plan, to_residues(comp, plan.modulus)))
        c_exp.append(e)
        ints.append(comp)
        mu = float(np.abs(r0).max())
    return SplitSet(
        n=n,
        alpha=cfg.alpha,
        ntt0=ntt0,
        ntt1=ntt1,
        c_exp=c_exp,
        exhausted=mu == 0,
        ints=ints,
        residual_max=mu,
    )
