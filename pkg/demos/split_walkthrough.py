"""Walk through one split of a TS vector and one exact convolution.

Shows the component scales, the integer ranges that keep the NTT products
below the CRT range, and that the reassembled result is exact.
"""
from fractions import Fraction

import numpy as np

from ozfft.crt import default_pair
from ozfft.ntt import count_ntts, plan_ntt
from ozfft.ozaki_conv import ConvConfig, ts_conv_accumulated, ts_conv_allpairs
from ozfft.split import compute_alpha, split_ts_and_ntt
from ozfft.ts import ts_from_double

n = 256
pair = default_pair()
plans = (plan_ntt(n, pair.m0), plan_ntt(n, pair.m1))
print(f"P = p0 p1 = {pair.product} (~2^{pair.product.bit_length() - 1})")
for L in (1, 3):
    print(f"exact width for n={n}, L={L}: alpha = {compute_alpha(pair, n, L)}")

rng = np.random.default_rng(0)
x = ts_from_double((rng.random(n) - 0.5) * np.exp(2 * rng.standard_normal(n)))
cfg = ConvConfig.build(pair, plans, L=3)
xs = split_ts_and_ntt(x, plans, cfg.split_cfg)
print(f"\nalpha used = {xs.alpha}, splits k = {xs.k}, scales 2^{xs.c_exp}")
for j, v in enumerate(xs.ints):
    print(f"  component {j}: max |int| = 2^{np.log2(np.abs(v).max()):.2f}")

# reassemble: sum of ints / 2^c_exp equals the input exactly
i = int(np.argmax(np.abs(x[0])))
val = sum(Fraction(float(w)) for w in x[:, i])
rec = sum(Fraction(int(v[i]), 1) * Fraction(2) ** -e for v, e in zip(xs.ints, xs.c_exp))
print(f"entry {i}: reconstruction exact -> {val == rec}")

y = ts_from_double(np.cos(np.pi * (np.arange(n) ** 2 % (2 * n)) / n))
ys = split_ts_and_ntt(y, plans, cfg.split_cfg)
for name, conv in (("all pairs", ts_conv_allpairs), ("accumulated", ts_conv_accumulated)):
    with count_ntts() as c:
        conv(xs, ys, cfg)
    print(f"{name:>12}: {c.inv} inverse NTTs for kx={xs.k}, ky={ys.k}")
