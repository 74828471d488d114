"""Experiment runner: seeded inputs, method dispatch, errors, NTT counts, CSV."""
from __future__ import annotations

import csv
import itertools
import math
import time
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .baselines import BaselineKind, fft_baseline
from .bluestein import fft_proposed, plan_bluestein
from .crt import default_pair
from .fp_mod import P0
from .ntt import count_ntts
from .oracle import MAX_N, ExtComplexVector, error_metrics, reference_dft
from .split import alpha_variants

PROPOSED = "proposed"
METHODS = (PROPOSED,) + tuple(k.value for k in BaselineKind)

CSV_COLUMNS = (
    "method", "n", "phi", "seed", "K", "L", "alpha",
    "kx_re", "kx_im", "kw_re", "kw_im",
    "fwd_ntt", "inv_ntt", "plan_cached_ntt",
    "max_rel_err", "rel_l2_err", "excluded_parts", "time_ns",
)
# K = infinity is written as 0
K_INF_CSV = 0


class GuardError(ValueError):
    """A request outside the desk-scale limits (size guard of the oracle etc.)."""


@dataclass(frozen=True)
class ExperimentSpec:
    n: int
    phi: float = 0.0
    seed: int = 1
    K: int | None = None  # None: unbounded splitting
    L: int = 1
    method: str = PROPOSED
    repeats: int = 1

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; choose from {METHODS}")
        if self.n < 2 or self.n & (self.n - 1):
            raise ValueError(f"n must be a power of two >= 2, got {self.n}")
        if self.n > MAX_N:
            raise GuardError(f"n={self.n} exceeds the desk-scale limit {MAX_N}")
        if not self.phi >= 0:
            raise ValueError("phi must be non-negative")
        if self.K is not None and self.K < 1:
            raise ValueError("K must be positive or None")
        if self.L < 1 or self.repeats < 1:
            raise ValueError("L and repeats must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


@dataclass
class Counters:
    fwd_ntt: int = 0
    inv_ntt: int = 0
    plan_cached_ntt: int = 0
    kx: tuple[int, int] = (0, 0)
    kw: tuple[int, int] = (0, 0)

    @property
    def runtime_total(self) -> int:
        return self.fwd_ntt + self.inv_ntt

    @property
    def grand_total(self) -> int:
        return self.runtime_total + self.plan_cached_ntt


def gen_input(n: int, phi: float, seed: int) -> np.ndarray:
    """``(rand - 0.5) * exp(phi * randn)`` for every real and imaginary part.

    ``rand`` is uniform on (0, 1]. Draw order: 2n uniforms, then 2n normals,
    from numpy's PCG64 seeded with ``seed``; real parts take the first n.
    """
    if phi < 0:
        raise ValueError("phi must be non-negative")
    rng = np.random.Generator(np.random.PCG64(seed))
    rand = 1.0 - rng.random(2 * n)
    randn = rng.standard_normal(2 * n)
    v = (rand - 0.5) * np.exp(phi * randn)
    return v[:n] + 1j * v[n:]


@lru_cache(maxsize=64)
def cached_reference(n: int, phi: float, seed: int) -> ExtComplexVector:
    return reference_dft(gen_input(n, phi, seed))


def _run_method(spec: ExperimentSpec, x: np.ndarray, plan):
    if spec.method == PROPOSED:
        return fft_proposed(plan, x, return_info=True)
    return fft_baseline(spec.method, x), None


def run_experiment(spec: ExperimentSpec) -> dict:
    """Run one cell and return its CSV row as a dict."""
    x = gen_input(spec.n, spec.phi, spec.seed)
    ref = cached_reference(spec.n, spec.phi, spec.seed)
    # plan setup (including the chirp splits) is neither timed nor tallied
    plan = plan_bluestein(spec.n, spec.K, spec.L, default_pair()) if spec.method == PROPOSED else None
    times = []
    for _ in range(spec.repeats):
        with count_ntts() as tally:
            t0 = time.perf_counter_ns()
            y, info = _run_method(spec, x, plan)
            times.append(time.perf_counter_ns() - t0)
    rep = error_metrics(y, ref)
    row = dict.fromkeys(CSV_COLUMNS, "")
    row.update(method=spec.method, n=spec.n, phi=spec.phi, seed=spec.seed,
               max_rel_err=rep.max_rel, rel_l2_err=rep.rel_l2,
               excluded_parts=rep.excluded_parts, time_ns=min(times))
    if info is not None:
        # scoped tally and the per-call info must agree
        assert (tally.fwd, tally.inv) == (info.fwd_ntt, info.inv_ntt)
        c = Counters(info.fwd_ntt, info.inv_ntt, info.plan_cached_ntt, info.kx, info.kw)
        row.update(K=K_INF_CSV if spec.K is None else spec.K, L=spec.L, alpha=info.alpha,
                   kx_re=c.kx[0], kx_im=c.kx[1], kw_re=c.kw[0], kw_im=c.kw[1],
                   fwd_ntt=c.fwd_ntt, inv_ntt=c.inv_ntt, plan_cached_ntt=c.plan_cached_ntt)
    return row


def grid_specs(ns, phis, methods, kls, seed: int, repeats: int = 1) -> list[ExperimentSpec]:
    """Cells in grid order. Baselines ignore (K, L) and get one cell each."""
    ns, phis, methods, kls = list(ns), list(phis), list(methods), list(kls)
    if not (ns and phis and methods):
        raise ValueError("empty grid")
    if PROPOSED in methods and not kls:
        raise ValueError("the proposed method needs at least one (K, L) pair")
    out = []
    for n, phi, m in itertools.product(ns, phis, methods):
        if m == PROPOSED:
            out += [ExperimentSpec(n, phi, seed, K, L, m, repeats) for K, L in kls]
        else:
            out.append(ExperimentSpec(n, phi, seed, None, 1, m, repeats))
    return out


def write_csv(rows, path, fields=CSV_COLUMNS) -> Path:
    path = Path(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            w = csv.DictWriter(fh, fieldnames=fields)
            w.writeheader()
            w.writerows(rows)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc
    return path


def sweep(ns, phis, methods, kls, seed: int, csv_path=None, repeats: int = 1) -> list[dict]:
    rows = [run_experiment(s) for s in grid_specs(ns, phis, methods, kls, seed, repeats)]
    if csv_path is not None:
        write_csv(rows, csv_path)
    return rows


def alpha_table(n_min_log2: int, n_max_log2: int, u: float = 2.0**-24) -> list[dict]:
    """Split widths of the four convolution strategies, one row per n."""
    if n_min_log2 > n_max_log2 or n_min_log2 < 0:
        raise ValueError("need 0 <= n_min <= n_max")
    pair = default_pair()
    rows = []
    for e in range(n_min_log2, n_max_log2 + 1):
        a = alpha_variants(2**e, u, P0, pair)
        rows.append(dict(n=2**e, log2_n=e, alpha_original=a.original, alpha_fft=a.fft,
                         alpha_ntt_single=a.ntt_single, alpha_ntt_crt=a.ntt_crt))
    return rows


def rel_l2(rows, **match) -> list[float]:
    """Pick ``rel_l2_err`` of the rows matching all given column values."""
    return [r["rel_l2_err"] for r in rows
            if all(r[k] == v or (isinstance(v, float) and math.isclose(r[k], v)) for k, v in match.items())]
