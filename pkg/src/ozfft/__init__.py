"""Double-precision FFT built from 32-bit NTTs via Ozaki splitting of the
Bluestein convolution, with baselines, a double-double oracle and a harness."""

from .baselines import BaselineKind, fft_baseline
from .bluestein import BluesteinPlan, chirp_table, fft_proposed, ifft_proposed, plan_bluestein
from .crt import CrtPair, default_pair, exact_cyclic_conv, garner2
from .fp_mod import P0, P1, Modulus, get_modulus, mod_arith, mod_inv, mod_pow, root_of_unity, sym_mod
from .ntt import NttPlan, count_ntts, ntt_forward, ntt_inverse, plan_ntt, pointwise_mul_mod
from .oracle import ErrorReport, ExtComplexVector, error_metrics, reference_dft
from .ozaki_conv import ConvConfig, ts_complex_conv, ts_conv_accumulated, ts_conv_allpairs
from .split import SplitConfig, SplitSet, alpha_variants, compute_alpha, split_count_bound, split_ts_and_ntt
from .ts import TsComplexVector

__version__ = "0.1.0"
