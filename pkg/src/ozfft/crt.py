"""Two-prime Garner reconstruction and exact integer cyclic convolution."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fp_mod import P0, P1, Modulus, get_modulus, mod_inv, sym_mod, to_residues
from .ntt import NttPlan, ntt_forward, ntt_inverse, pointwise_mul_mod


@dataclass(frozen=True)
class CrtPair:
    m0: Modulus
    m1: Modulus
    inv_p0_mod_p1: int = field(init=False)
    product: int = field(init=False)

    def __post_init__(self):
        p0, p1 = self.m0.p, self.m1.p
        if p0 == p1:
            raise ValueError("moduli must be distinct")
        if p0 * p1 >= 2**63:
            raise ValueError("p0*p1 must be below 2^63")
        object.__setattr__(self, "inv_p0_mod_p1", mod_inv(p0 % p1, self.m1))
        object.__setattr__(self, "product", p0 * p1)

    @property
    def p0(self) -> int:
        return self.m0.p

    @property
    def p1(self) -> int:
        return self.m1.p

    @property
    def product_log2(self) -> float:
        return math.log2(self.product)

    @classmethod
    def of(cls, p0: int, p1: int) -> "CrtPair":
        return cls(get_modulus(p0), get_modulus(p1))


def default_pair() -> CrtPair:
    return CrtPair.of(P0, P1)


def garner2(z0, z1, pair: CrtPair):
    """Unique ``v`` in ``[-p0 p1 / 2, p0 p1 / 2)`` with ``v = z0 mod p0``, ``v = z1 mod p1``.

    Accepts Python ints or arrays of canonical residues; arrays come back as int64.
    """
    p0, p1, P = pair.p0, pair.p1, pair.product
    if isinstance(z0, np.ndarray) or isinstance(z1, np.ndarray):
        a0 = np.asarray(z0).astype(np.int64)
        a1 = np.asarray(z1).astype(np.int64)
        h = np.mod(a1 - a0, np.int64(p1))  # [0, p1)
        h = np.mod(h * np.int64(pair.inv_p0_mod_p1), np.int64(p1))
        v = a0 + h * np.int64(p0)  # [0, P), P < 2^63
        return np.where(v > P // 2, v - np.int64(P), v)
    h = ((z1 - z0) * pair.inv_p0_mod_p1) % p1
    return sym_mod(z0 + h * p0, P)


def check_conv_bound(n: int, x_max: int, y_max: int, pair: CrtPair, terms: int = 1):
    """Raise if ``terms * n * x_max * y_max`` may reach ``p0 p1 / 2``."""
    # exact integer test; 2*bound < P is the same as bound < P/2 for odd P
    if 2 * terms * n * int(x_max) * int(y_max) >= pair.product:
        raise OverflowError(
            f"convolution bound {terms}*{n}*{x_max}*{y_max} reaches p0*p1/2"
        )


def exact_cyclic_conv(x, y, plans: tuple[NttPlan, NttPlan], pair: CrtPair) -> np.ndarray:
    """Integer cyclic convolution ``x (*) y`` via NTTs mod both primes and Garner.

    Performs four forward and two inverse transforms.
    """
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    n = plans[0].n
    if x.shape != (n,) or y.shape != (n,):
        raise ValueError(f"expected two vectors of length {n}")
    check_conv_bound(n, np.abs(x).max(initial=0), np.abs(y).max(initial=0), pair)
    z = []
    for plan in plans:
        m = plan.modulus
        fx = ntt_forward(plan, to_residues(x, m))
        fy = ntt_forward(plan, to_residues(y, m))
        z.append(ntt_inverse(plan, pointwise_mul_mod(fx, fy, m)))
    return garner2(z[0], z[1], pair)
