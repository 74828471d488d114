import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from ozfft.crt import CrtPair, garner2
from ozfft.fp_mod import P0
from ozfft.ntt import count_ntts, ntt_inverse, plan_ntt
from ozfft.split import (
    SplitConfig, alpha_variants, compute_alpha, split_count_bound, split_ts_and_ntt,
)
from ozfft.ts import ts_add, ts_from_double, ts_zeros

U32 = 2.0**-24


def plans_for(n, pair):
    return plan_ntt(n, pair.m0), plan_ntt(n, pair.m1)


def ts_exact(t):
    return [sum(Fraction(float(t[s, i])) for s in range(3)) for i in range(t.shape[1])]


def recon(ss):
    # sum of components ints[j] / 2^c_exp[j], exactly
    n = ss.n
    return [sum(Fraction(int(ss.ints[j][i]), 2 ** ss.c_exp[j]) if ss.c_exp[j] >= 0
                else Fraction(int(ss.ints[j][i]) * 2 ** -ss.c_exp[j]) for j in range(ss.k))
            for i in range(n)]


def phi_vector(rng, n, phi):
    return (1 - rng.random(n) - 0.5) * np.exp(phi * rng.standard_normal(n))


# ---------------------------------------------------------------------------
# widths
# ---------------------------------------------------------------------------

def test_alpha_reference_values(pair):
    assert compute_alpha(pair, 2**20, 1) == 20
    assert compute_alpha(pair, 2**18, 1) == 21
    assert compute_alpha(pair, 2**18, 3) == 20
    assert compute_alpha(pair, 2**17, 3) == 21
    v = alpha_variants(2**20, U32, P0, pair)
    assert v.original == 2 and v.ntt_crt == 20
    for e in range(10, 21):
        assert alpha_variants(2**e, U32, P0, pair).fft < 0


@pytest.mark.parametrize("L", [1, 2, 3, 5, 8])
def test_alpha_matches_high_precision_logs(pair, L):
    with mpmath.workprec(200):
        for e in range(0, 25):
            n = 2**e
            want = mpmath.floor((mpmath.log(mpmath.mpf(pair.product) / 2, 2) - mpmath.log(L * n, 2)) / 2)
            assert compute_alpha(pair, n, L) == int(want)


def test_alpha_variants_against_mpmath(pair):
    with mpmath.workprec(300):
        u = mpmath.mpf(2) ** -24
        for e in range(1, 21):
            n = 2**e
            got = alpha_variants(n, float(u), P0, pair)
            f = ((1 + u) ** (3 * n) * (1 + u * mpmath.sqrt(5)) ** (3 * n + 1)
                 * (1 + u / mpmath.sqrt(2)) ** (3 * n) - 1)
            fft = mpmath.floor((-mpmath.log(2 * n * f, 2)) / 2)
            orig = mpmath.floor((24 - e) / mpmath.mpf(2))
            single = mpmath.floor((mpmath.log(mpmath.mpf(P0) / 2, 2) - e) / 2)
            assert (got.original, got.fft, got.ntt_single) == (int(orig), int(fft), int(single))


def test_alpha_small_pair_can_be_nonpositive():
    tiny = CrtPair.of(7, 11)
    assert compute_alpha(tiny, 64, 1) <= 0
    with pytest.raises(ValueError):
        SplitConfig.for_length(tiny, 64)


def test_split_count_bound_examples():
    assert split_count_bound(1.0, 1.0, U32, 20) == 2
    assert split_count_bound(2.0**19, 1.0, U32, 20) == 3
    with pytest.raises(ValueError):
        split_count_bound(1.0, 2.0, U32, 20)
    with pytest.raises(ValueError):
        split_count_bound(1.0, 1.0, U32, 1)


def test_split_config():
    c = SplitConfig(20, K=3, L=2)
    assert c.rho == 4
    assert SplitConfig(25).rho == -1
    for bad in (dict(alpha=0), dict(alpha=48), dict(alpha=10, L=0), dict(alpha=10, K=0)):
        with pytest.raises(ValueError):
            SplitConfig(**bad)


# ---------------------------------------------------------------------------
# splitting
# ---------------------------------------------------------------------------

def test_zero_vector(pair):
    plans = plans_for(16, pair)
    with count_ntts() as c:
        ss = split_ts_and_ntt(ts_zeros(16), plans, SplitConfig.for_length(pair, 16))
    assert ss.k == 0 and ss.exhausted and c.total == 0


def test_single_bit_entries(pair, rng):
    n = 64
    plans = plans_for(n, pair)
    x = rng.choice([-1.0, 1.0], n) * 2.0**-5
    ss = split_ts_and_ntt(ts_from_double(x), plans, SplitConfig.for_length(pair, n))
    assert ss.k == 1 and ss.exhausted
    z = garner2(ntt_inverse(plans[0], ss.ntt0[0]), ntt_inverse(plans[1], ss.ntt1[0]), pair)
    assert np.array_equal(np.ldexp(z.astype(np.float64), -ss.c_exp[0]), x)


@pytest.mark.parametrize("log_n,phi", [(4, 0.0), (8, 1.0), (10, 0.0), (10, 4.0)])
@pytest.mark.parametrize("L", [1, 3])
def test_reconstruction_and_invariants(pair, rng, log_n, phi, L):
    n = 2**log_n
    plans = plans_for(n, pair)
    cfg = SplitConfig.for_length(pair, n, None, L)
    d = phi_vector(rng, n, phi)
    x = ts_from_double(d)
    with count_ntts() as c:
        ss = split_ts_and_ntt(x, plans, cfg)
    assert ss.exhausted and c.fwd == 2 * ss.k and c.inv == 0
    assert recon(ss) == ts_exact(x)
    for j in range(ss.k):
        assert int(np.abs(ss.ints[j]).max()) <= 2**cfg.alpha
        z = garner2(ntt_inverse(plans[0], ss.ntt0[j]), ntt_inverse(plans[1], ss.ntt1[j]), pair)
        assert np.array_equal(z, ss.ints[j])
    # each power-of-two scale shrinks the residual by at least 2^(alpha-1)
    steps = np.diff(ss.c_exp)
    assert (steps >= cfg.alpha - 1).all() or cfg.alpha > 24
    # count bound, with the unit roundoff of the binary64 data carried
    bound = split_count_bound(np.abs(d).max(), np.abs(d).min(), 2.0**-53, cfg.alpha)
    assert ss.k <= bound


def test_residual_shrinks(pair, rng):
    n = 512
    plans = plans_for(n, pair)
    cfg = SplitConfig.for_length(pair, n, None, 3)
    x = ts_add(ts_from_double(phi_vector(rng, n, 1.0)), ts_from_double(rng.standard_normal(n) * 2.0**-40))
    ss = split_ts_and_ntt(x, plans, cfg)
    mus = [float(np.abs(np.ldexp(v.astype(np.float64), -e)).max()) for v, e in zip(ss.ints, ss.c_exp)]
    # max |component k+1| <= 2^-(alpha-1) * max |component k| (up to the half-ulp overhang)
    for a, b in zip(mus, mus[1:]):
        assert b <= 2.0 ** -(cfg.alpha - 2) * a


def test_k_cap(pair, rng):
    n = 256
    plans = plans_for(n, pair)
    x = ts_from_double(phi_vector(rng, n, 4.0))
    full = split_ts_and_ntt(x, plans, SplitConfig.for_length(pair, n))
    capped = split_ts_and_ntt(x, plans, SplitConfig.for_length(pair, n, K=2))
    assert full.k > 2 and capped.k == 2 and not capped.exhausted
    assert capped.residual_max > 0
    assert capped.c_exp == full.c_exp[:2]
    for a, b in zip(capped.ints, full.ints):
        assert np.array_equal(a, b)
    # scales are powers of two
    assert all(c == 2.0**e for c, e in zip(capped.c, capped.c_exp))


def test_deterministic(pair, rng):
    n = 128
    plans = plans_for(n, pair)
    x = ts_from_double(phi_vector(rng, n, 1.0))
    cfg = SplitConfig.for_length(pair, n)
    a, b = split_ts_and_ntt(x, plans, cfg), split_ts_and_ntt(x, plans, cfg)
    assert a.c_exp == b.c_exp
    assert all(np.array_equal(u, v) for u, v in zip(a.ntt0 + a.ntt1, b.ntt0 + b.ntt1))


def test_shape_mismatch(pair):
    with pytest.raises(ValueError):
        split_ts_and_ntt(ts_zeros(8), plans_for(16, pair), SplitConfig(20))


@given(st.integers(0, 2**32 - 1), st.sampled_from([0.0, 1.0, 4.0]), st.integers(3, 7))
def test_reconstruction_property(seed, phi, log_n):
    from ozfft.crt import default_pair
    pair = default_pair()
    r = np.random.default_rng(seed)
    n = 2**log_n
    d = phi_vector(r, n, phi)
    d[r.random(n) < 0.2] = 0.0  # zeros in the data are fine too
    x = ts_from_double(d)
    ss = split_ts_and_ntt(x, plans_for(n, pair), SplitConfig.for_length(pair, n, None, 2))
    assert ss.exhausted
    assert recon(ss) == ts_exact(x)
