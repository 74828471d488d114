"""Compare the NTT-based Bluestein FFT with the floating-point baselines.

Run: python3 demos/accuracy_tour.py [log2_n]
"""
import sys

import numpy as np

from ozfft import fft_baseline, fft_proposed, plan_bluestein
from ozfft.harness import gen_input
from ozfft.oracle import error_metrics, reference_dft

e = int(sys.argv[1]) if len(sys.argv) > 1 else 10
n = 2**e
print(f"n = {n}")
for phi in (0.0, 1.0, 4.0):
    x = gen_input(n, phi, 1)
    ref = reference_dft(x)  # O(n^2) double-double sum, about 100 bits
    print(f"\nphi = {phi}: input magnitudes span 2^{np.log2(np.abs(x.real).max() / np.abs(x.real).min()):.0f}")
    for K, L in ((None, 1), (3, 1), (3, 3)):
        y, info = fft_proposed(plan_bluestein(n, K, L), x, return_info=True)
        rep = error_metrics(y, ref)
        print(f"  proposed K={K or 'inf':>3} L={L}  rel_l2 {rep.rel_l2:.2e}  max_rel {rep.max_rel:.2e}"
              f"  splits x'={info.kx}  NTTs {info.fwd_ntt}+{info.inv_ntt} (+{info.plan_cached_ntt} cached)")
    for kind in ("f64_stockham", "f64_bluestein", "ts_stockham", "ts_bluestein"):
        rep = error_metrics(fft_baseline(kind, x), ref)
        print(f"  {kind:<19} rel_l2 {rep.rel_l2:.2e}  max_rel {rep.max_rel:.2e}")
