import mpmath
import numpy as np
import pytest

from ozfft.baselines import BaselineKind, fft_baseline
from ozfft.bluestein import fft_proposed, plan_bluestein
from ozfft.harness import gen_input
from ozfft.oracle import error_metrics, reference_dft

KINDS = list(BaselineKind)
TOL = {BaselineKind.F64_STOCKHAM: 1e-13, BaselineKind.F64_BLUESTEIN: 1e-13,
       BaselineKind.TS_STOCKHAM: 1e-15, BaselineKind.TS_BLUESTEIN: 1e-15}


def naive_dft(x):
    n = len(x)
    j = np.arange(n)
    w = np.exp(-2j * np.pi * np.outer(j, j) / n)
    return w @ x


def rel_l2(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", [1, 2, 16, 2**10])
def test_impulse_and_constant(kind, n):
    e = np.zeros(n, complex)
    e[0] = 1
    assert np.abs(fft_baseline(kind, e) - 1).max() <= TOL[kind]
    y = fft_baseline(kind, np.full(n, 2.0 - 1j))
    assert abs(y[0] - n * (2 - 1j)) <= TOL[kind] * n * abs(2 - 1j)
    assert np.abs(y[1:]).max(initial=0) <= TOL[kind] * n * abs(2 - 1j)


@pytest.mark.parametrize("kind", KINDS)
def test_naive_dft(kind, rng):
    x = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    assert rel_l2(fft_baseline(kind, x), naive_dft(x)) <= 1e-13


@pytest.mark.parametrize("kind", KINDS)
def test_against_mpmath_small(kind):
    n = 16
    x = gen_input(n, 1.0, 2)
    with mpmath.workprec(160):
        ref = np.array([complex(sum(mpmath.mpc(x[j].real, x[j].imag) * mpmath.expjpi(mpmath.mpf(-2 * j * k) / n)
                                    for j in range(n))) for k in range(n)])
    assert rel_l2(fft_baseline(kind, x), ref) <= TOL[kind]


@pytest.mark.parametrize("kind", KINDS)
def test_parseval(kind):
    n = 2**10
    x = gen_input(n, 0.0, 3)
    y = fft_baseline(kind, x)
    rhs = n * np.sum(np.abs(x) ** 2)
    assert abs(np.sum(np.abs(y) ** 2) - rhs) <= max(TOL[kind], 1e-14) * rhs


def test_ts_kinds_more_accurate_than_double():
    n = 2**10
    x = gen_input(n, 0.0, 1)
    ref = reference_dft(x)
    err = {k: error_metrics(fft_baseline(k, x), ref).rel_l2 for k in KINDS}
    assert err[BaselineKind.TS_STOCKHAM] < err[BaselineKind.F64_STOCKHAM]
    assert err[BaselineKind.TS_BLUESTEIN] < err[BaselineKind.F64_BLUESTEIN]


def test_ts_bluestein_worse_than_proposed():
    n = 2**12
    x = gen_input(n, 0.0, 1)
    ref = reference_dft(x)
    e_ts = error_metrics(fft_baseline("ts_bluestein", x), ref).rel_l2
    e_prop = error_metrics(fft_proposed(plan_bluestein(n), x), ref).rel_l2
    assert e_ts > e_prop


def test_errors():
    with pytest.raises(ValueError):
        fft_baseline("f64_stockham", np.ones(12))
    with pytest.raises(ValueError):
        fft_baseline("nope", np.ones(8))
    with pytest.raises(ValueError):
        fft_baseline("ts_stockham", np.ones((2, 4)))
