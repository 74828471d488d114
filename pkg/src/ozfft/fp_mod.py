"""Prime-field arithmetic for 32-bit NTT moduli.

Residues are plain non-negative integers (Python ints or ``uint64`` arrays)
in canonical form ``[0, p)``. Montgomery and Shoup reductions are used
internally for vectorized multiplication but never leak into the API.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

P0 = 2_130_706_433  # 127 * 2^24 + 1
P1 = 2_113_929_217  # 63 * 2^25 + 1

_MASK32 = np.uint64(0xFFFFFFFF)
_SHIFT32 = np.uint64(32)

# p - 1 factorizations for the default primes.
_KNOWN_FACTORS = {
    P0: (2, 127),
    P1: (2, 3, 7),
}


def sym_mod(a, m):
    """Symmetric remainder ``a - m * floor(a/m + 1/2)``, in ``[-m/2, m/2)``.

    Works on Python ints and integer numpy arrays.
    """
    if isinstance(a, np.ndarray):
        m = int(m)
        r = np.mod(a, m)  # canonical, sign of m
        # r >= ceil(m/2) maps to r - m; this is the same as r - m*floor(r/m + 1/2).
        return np.where(2 * r >= m, r - m, r)
    if m < 1:
        raise ValueError("modulus must be positive")
    return a - m * ((2 * a + m) // (2 * m))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for p < 3.4e14
    for a in (2, 3, 5, 7, 11, 13, 17):
        if a % p == 0:
            continue
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return tuple(out)


@dataclass(frozen=True)
class Modulus:
    """A prime ``p < 2^32`` with its primitive root and reduction constants."""

    p: int
    two_adicity: int = field(init=False)
    generator: int = field(init=False)
    factors: tuple[int, ...] = field(init=False, repr=False)
    # Montgomery, radix R = 2^32
    mont_neg_inv: int = field(init=False, repr=False)  # -p^-1 mod R
    mont_r2: int = field(init=False, repr=False)  # R^2 mod p

    def __post_init__(self):
        p = self.p
        if not (2 < p < 2**32) or not _is_prime(p):
            raise ValueError(f"{p} is not an odd prime below 2^32")
        t = 0
        while (p - 1) % (2 ** (t + 1)) == 0:
            t += 1
        factors = _KNOWN_FACTORS.get(p) or _prime_factors(p - 1)
        gen = next(
            g for g in range(2, p)
            if all(pow(g, (p - 1) // q, p) != 1 for q in factors)
        )
        object.__setattr__(self, "two_adicity", t)
        object.__setattr__(self, "generator", gen)
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "mont_neg_inv", (-pow(p, -1, 2**32)) % 2**32)
        object.__setattr__(self, "mont_r2", pow(2, 64, p))

    @property
    def np_p(self) -> np.uint64:
        return np.uint64(self.p)

    def __int__(self):
        return self.p


@lru_cache(maxsize=None)
def get_modulus(p: int) -> Modulus:
    return Modulus(p)


def _check_canonical(a: int, m: Modulus):
    if not 0 <= a < m.p:
        raise ValueError(f"{a} is not a canonical residue mod {m.p}")


def mod_arith(a: int, b: int, m: Modulus, op: str) -> int:
    """``a op b mod p`` for canonical scalar residues, ``op`` in add/sub/mul."""
    _check_canonical(a, m)
    _check_canonical(b, m)
    p = m.p
    if op == "add":
        s = a + b
        return s - p if s >= p else s
    if op == "sub":
        s = a - b
        return s + p if s < 0 else s
    if op == "mul":
        return int(mont_mul(np.array([a], np.uint64), np.array([b], np.uint64), m)[0])
    raise ValueError(f"unknown op {op!r}")


def mod_pow(a: int, e: int, m: Modulus) -> int:
    if e < 0:
        raise ValueError("negative exponent; use mod_inv")
    return pow(a, e, m.p)


def mod_inv(a: int, m: Modulus) -> int:
    a %= m.p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    return pow(a, m.p - 2, m.p)


def root_of_unity(n: int, m: Modulus) -> int:
    """Primitive ``n``-th root of unity ``g^((p-1)/n)``."""
    if n < 1 or (m.p - 1) % n:
        raise ValueError(f"n={n} does not divide p-1 for p={m.p}")
    return pow(m.generator, (m.p - 1) // n, m.p)


# ---------------------------------------------------------------------------
# vectorized kernels (uint64 arrays of canonical residues)
# ---------------------------------------------------------------------------

def to_residues(v, m: Modulus) -> np.ndarray:
    """Lift signed integers to canonical residues as ``uint64``."""
    v = np.asarray(v, dtype=np.int64)
    return np.mod(v, np.int64(m.p)).astype(np.uint64)


def add_mod(a: np.ndarray, b: np.ndarray, m: Modulus) -> np.ndarray:
    s = a + b
    p = m.np_p
    return np.where(s >= p, s - p, s)


def sub_mod(a: np.ndarray, b: np.ndarray, m: Modulus) -> np.ndarray:
    p = m.np_p
    s = a + p - b
    return np.where(s >= p, s - p, s)


def _redc(t: np.ndarray, m: Modulus) -> np.ndarray:
    # t < p * 2^32; needs p < 2^31 so that t + q*p stays below 2^64.
    p = m.np_p
    q = ((t & _MASK32) * np.uint64(m.mont_neg_inv)) & _MASK32
    u = (t + q * p) >> _SHIFT32
    return np.where(u >= p, u - p, u)


def mont_mul(a: np.ndarray, b: np.ndarray, m: Modulus) -> np.ndarray:
    """Elementwise ``a*b mod p`` on canonical residues (Montgomery)."""
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    if m.p >= 2**31:
        return reference_mul(a, b, m)
    return _redc(_redc(a * b, m) * np.uint64(m.mont_r2), m)


def reference_mul(a: np.ndarray, b: np.ndarray, m: Modulus) -> np.ndarray:
    """64-bit widening product reduced by ``%``; the bit-exact reference."""
    return (np.asarray(a, np.uint64) * np.asarray(b, np.uint64)) % m.np_p


def shoup_precompute(w: np.ndarray, m: Modulus) -> np.ndarray:
    """``floor(w * 2^32 / p)`` for constant multiplicands ``w < p``."""
    w = np.asarray(w, dtype=np.uint64)
    # w*2^32 // p == w*(2^32 // p) + (w*(2^32 % p)) // p; both products fit in 64 bits.
    q0 = np.uint64((1 << 32) // m.p)
    r0 = np.uint64((1 << 32) % m.p)
    return w * q0 + (w * r0) // m.np_p


def shoup_mul(a: np.ndarray, w: np.ndarray, w_shoup: np.ndarray, m: Modulus) -> np.ndarray:
    """``a*w mod p`` with precomputed ``w_shoup = floor(w 2^32 / p)``."""
    p = m.np_p
    q = (a * w_shoup) >> _SHIFT32
    r = a * w - q * p  # wraps mod 2^64; true value lies in [0, 2p)
    return np.where(r >= p, r - p, r)
