"""Radix-2 Stockham NTT over a 32-bit prime field, with invocation counters."""
from __future__ import annotations

import contextlib
import contextvars
import threading
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .fp_mod import (
    Modulus,
    add_mod,
    get_modulus,
    mod_inv,
    mont_mul,
    root_of_unity,
    shoup_mul,
    shoup_precompute,
    sub_mod,
)


# ---------------------------------------------------------------------------
# counters
# ---------------------------------------------------------------------------

@dataclass
class NttCounter:
    fwd: int = 0
    inv: int = 0

    @property
    def total(self) -> int:
        return self.fwd + self.inv


_lock = threading.Lock()
GLOBAL_COUNTER = NttCounter()
_scoped: contextvars.ContextVar[tuple[NttCounter, ...]] = contextvars.ContextVar(
    "ozfft_ntt_scopes", default=()
)


def _tally(kind: str):
    with _lock:
        setattr(GLOBAL_COUNTER, kind, getattr(GLOBAL_COUNTER, kind) + 1)
    for c in _scoped.get():
        setattr(c, kind, getattr(c, kind) + 1)


def reset_counters():
    with _lock:
        GLOBAL_COUNTER.fwd = 0
        GLOBAL_COUNTER.inv = 0


@contextlib.contextmanager
def count_ntts():
    """Collect the transforms issued inside the block (this context only)."""
    c = NttCounter()
    token = _scoped.set(_scoped.get() + (c,))
    try:
        yield c
    finally:
        _scoped.reset(token)


# ---------------------------------------------------------------------------
# plans
# ---------------------------------------------------------------------------

def _powers(w: int, count: int, m: Modulus) -> np.ndarray:
    out = np.ones(count, dtype=np.uint64)
    filled = 1
    while filled < count:
        step = min(filled, count - filled)
        factor = np.uint64(pow(w, filled, m.p))
        out[filled:filled + step] = (out[:step] * factor) % m.np_p
        filled += step
    return out


@dataclass(frozen=True, eq=False)
class NttPlan:
    """Twiddle tables hold ``w^j`` and ``w^-j`` for ``j < max(n/2, 1)``, all a
    radix-2 Stockham pass ever reads."""

    n: int
    modulus: Modulus
    fwd_twiddles: np.ndarray = field(repr=False)
    inv_twiddles: np.ndarray = field(repr=False)
    n_inv: int = 0
    _fwd_shoup: np.ndarray = field(default=None, repr=False)
    _inv_shoup: np.ndarray = field(default=None, repr=False)
    # n_inv folded into the inverse transform's last stage
    _n_inv_shoup: np.ndarray = field(default=None, repr=False)


def plan_ntt(n: int, m: Modulus | int) -> NttPlan:
    if not isinstance(m, Modulus):
        m = get_modulus(int(m))
    if n < 1 or n & (n - 1):
        raise ValueError(f"NTT length must be a power of two, got {n}")
    if n > 2**m.two_adicity:
        raise ValueError(
            f"n={n} exceeds 2^{m.two_adicity}, the largest power-of-two length mod {m.p}"
        )
    return _plan_cached(n, m)


@lru_cache(maxsize=64)
def _plan_cached(n: int, m: Modulus) -> NttPlan:
    w = root_of_unity(n, m)
    half = max(n // 2, 1)
    fwd = _powers(w, half, m)
    inv = _powers(mod_inv(w, m), half, m)
    for arr in (fwd, inv):
        arr.setflags(write=False)
    n_inv = mod_inv(n, m)
    return NttPlan(
        n=n,
        modulus=m,
        fwd_twiddles=fwd,
        inv_twiddles=inv,
        n_inv=n_inv,
        _fwd_shoup=shoup_precompute(fwd, m),
        _inv_shoup=shoup_precompute(inv, m),
        _n_inv_shoup=shoup_precompute(np.array([n_inv], np.uint64), m),
    )


def _stockham(x: np.ndarray, tw: np.ndarray, tw_sh: np.ndarray, m: Modulus,
              scale: tuple[np.ndarray, np.ndarray] | None = None) -> np.ndarray:
    n = x.size
    s = 1
    a = x
    while s < n:
        half = n // (2 * s)
        u = a.reshape(2, half, s)
        top, bot = u[0], u[1]
        y = np.empty((half, 2, s), dtype=np.uint64)
        w = tw[: n // 2 : s][:, None]
        wsh = tw_sh[: n // 2 : s][:, None]
        last = 2 * s == n
        if last and scale is not None:
            c, c_sh = scale
            y[:, 0, :] = shoup_mul(add_mod(top, bot, m), c, c_sh, m)
            # last stage twiddle is w^0 = 1
            y[:, 1, :] = shoup_mul(sub_mod(top, bot, m), c, c_sh, m)
        else:
            y[:, 0, :] = add_mod(top, bot, m)
            y[:, 1, :] = shoup_mul(sub_mod(top, bot, m), w, wsh, m)
        a = y.reshape(n)
        s *= 2
    return a


def _as_residues(x, plan: NttPlan) -> np.ndarray:
    x = np.asarray(x)
    if x.ndim != 1 or x.size != plan.n:
        raise ValueError(f"expected a vector of length {plan.n}, got shape {x.shape}")
    x = x.astype(np.uint64, copy=True)
    if x.size and int(x.max()) >= plan.modulus.p:
        raise ValueError("input is not reduced mod p")
    return x


def ntt_forward(plan: NttPlan, x) -> np.ndarray:
    """Exact modular DFT ``y(k) = sum_j x(j) w^(jk) mod p``."""
    a = _as_residues(x, plan)
    _tally("fwd")
    if plan.n == 1:
        return a
    return _stockham(a, plan.fwd_twiddles, plan._fwd_shoup, plan.modulus)


def ntt_inverse(plan: NttPlan, y) -> np.ndarray:
    a = _as_residues(y, plan)
    _tally("inv")
    if plan.n == 1:
        return a
    c = np.uint64(plan.n_inv)
    return _stockham(a, plan.inv_twiddles, plan._inv_shoup, plan.modulus,
                     scale=(c, plan._n_inv_shoup[0]))


def pointwise_mul_mod(a, b, m: Modulus) -> np.ndarray:
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return mont_mul(a, b, m)
