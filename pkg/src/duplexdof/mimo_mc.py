"""Rayleigh MIMO channel sampling and ergodic log-det rate estimation.

Rates are E[log2 det(I + (Gamma/n_tx) H H*)] with H having i.i.d. unit-variance
circularly-symmetric complex Gaussian entries. Estimation is Monte-Carlo over
deterministic seeded chunks, so results are bit-for-bit reproducible for a
fixed (seed, chunk_size, n_samples) regardless of how many worker threads run.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np


class NumericalFailure(RuntimeError):
    """Cholesky factorization lost positive-definiteness (implementation bug)."""


@dataclass(frozen=True)
class ChannelSample:
    """One draw of an n_rx x n_tx Rayleigh channel matrix."""

    entries: np.ndarray
    n_rx: int
    n_tx: int


@dataclass(frozen=True)
class McConfig:
    """Monte-Carlo sampling configuration."""

    n_samples: int = 20_000
    seed: int = 1234
    chunk_size: int = 4096

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be >= 1, got {self.n_samples}")
        if self.chunk_size < 1:
            raise ValueError(f"chunk_size must be >= 1, got {self.chunk_size}")


@dataclass(frozen=True)
class RateEstimate:
    """Monte-Carlo mean rate in bits per channel use, with standard error."""

    mean_rate: float
    std_err: float
    n_samples: int


def max_threads() -> int:
    """Worker-thread cap from DUPLEX_DOF_THREADS (default 1 = sequential)."""
    raw = os.environ.get("DUPLEX_DOF_THREADS", "").strip()
    if not raw:
        return 1
    return max(1, int(raw))


def derive_seed(seed: int, *keys: int) -> int:
    """Stable 64-bit sub-seed for an independent stream (e.g. one per link)."""
    ss = np.random.SeedSequence([int(seed), *map(int, keys)])
    return int(ss.generate_state(1, np.uint64)[0])


def chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    """RNG for one chunk, a pure function of (seed, chunk_index)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(chunk_index)])))


def sample_channel(n_rx: int, n_tx: int, rng: np.random.Generator) -> ChannelSample:
    """Draw one channel with i.i.d. CN(0, 1) entries (components variance 1/2)."""
    if n_rx < 1 or n_tx < 1:
        raise ValueError("antenna counts must be >= 1")
    h = sample_channel_batch(n_rx, n_tx, rng, 1)[0]
    return ChannelSample(entries=h, n_rx=n_rx, n_tx=n_tx)


def sample_channel_batch(n_rx: int, n_tx: int, rng: np.random.Generator, count: int) -> np.ndarray:
    """(count, n_rx, n_tx) stack of i.i.d. CN(0, 1) channel draws."""
    re = rng.standard_normal((count, n_rx, n_tx))
    im = rng.standard_normal((count, n_rx, n_tx))
    return (re + 1j * im) / math.sqrt(2.0)


def logdet2_pd(m: np.ndarray) -> np.ndarray:
    """log2 det of a (stack of) Hermitian positive-definite matrices via Cholesky."""
    try:
        chol = np.linalg.cholesky(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"argument is not positive definite: {exc}") from exc
    diag = np.diagonal(chol, axis1=-2, axis2=-1).real
    return 2.0 * np.log2(diag).sum(axis=-1)


def instantaneous_rate(h: ChannelSample, gamma_sinr: float) -> float:
    """log2 det(I + (Gamma/n_tx) H H*) for one channel draw."""
    if gamma_sinr < 0:
        raise ValueError(f"gamma_sinr must be >= 0, got {gamma_sinr}")
    return float(rate_from_batch(h.entries[None, :, :], gamma_sinr)[0])


def rate_from_batch(h: np.ndarray, gamma_sinr: float) -> np.ndarray:
    """Per-sample log-det rates for a (count, n_rx, n_tx) channel stack.

    Uses the smaller-side Gram matrix (det(I + c H H*) = det(I + c H* H)),
    which stays full rank almost surely and keeps the Cholesky factorization
    well conditioned even at extreme SINR where the tall-side Gram is
    rank deficient.
    """
    count, n_rx, n_tx = h.shape
    if gamma_sinr == 0.0:
        return np.zeros(count)
    if n_rx <= n_tx:
        gram = np.einsum("cij,ckj->cik", h, h.conj())
    else:
        gram = np.einsum("cji,cjk->cik", h.conj(), h)
    m = np.eye(min(n_rx, n_tx)) + (gamma_sinr / n_tx) * gram
    return logdet2_pd(m)


def mc_expectation(
    per_sample: Callable[[np.random.Generator, int], np.ndarray], cfg: McConfig
) -> RateEstimate:
    """Chunked Monte-Carlo mean of a per-sample statistic.

    per_sample(rng, count) must return `count` i.i.d. values drawn from rng.
    Chunks are seeded independently from (cfg.seed, chunk_index) and reduced
    in chunk-index order, so the estimate does not depend on the thread count.
    """
    n = cfg.n_samples
    counts = [cfg.chunk_size] * (n // cfg.chunk_size)
    if n % cfg.chunk_size:
        counts.append(n % cfg.chunk_size)

    def run_chunk(idx_count):
        idx, count = idx_count
        vals = np.asarray(per_sample(chunk_rng(cfg.seed, idx), count), dtype=float)
        if vals.shape != (count,):
            raise ValueError(f"per_sample returned shape {vals.shape}, expected ({count},)")
        return vals.sum(), np.square(vals).sum()

    jobs = list(enumerate(counts))
    workers = max_threads()
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run_chunk, jobs))
    else:
        partials = [run_chunk(job) for job in jobs]

    total = 0.0
    total_sq = 0.0
    for s, sq in partials:  # fixed reduction order
        total += float(s)
        total_sq += float(sq)
    mean = total / n
    if n > 1:
        var = max(0.0, (total_sq - n * mean * mean) / (n - 1))
        std_err = math.sqrt(var / n)
    else:
        std_err = 0.0
    return RateEstimate(mean_rate=mean, std_err=std_err, n_samples=n)


def ergodic_rate(n_rx: int, n_tx: int, gamma_sinr: float, cfg: McConfig) -> RateEstimate:
    """Monte-Carlo estimate of E[log2 det(I + (Gamma/n_tx) H H*)] over Rayleigh fading."""
    if n_rx < 1 or n_tx < 1:
        raise ValueError("antenna counts must be >= 1")
    if gamma_sinr < 0:
        raise ValueError(f"gamma_sinr must be >= 0, got {gamma_sinr}")

    def per_sample(rng, count):
        h = sample_channel_batch(n_rx, n_tx, rng, count)
        return rate_from_batch(h, gamma_sinr)

    return mc_expectation(per_sample, cfg)


def ergodic_rate_curve(
    n_rx: int, n_tx: int, gammas: np.ndarray, cfg: McConfig
) -> list[RateEstimate]:
    """Ergodic rates on a whole SINR grid sharing one set of channel draws.

    The channel Gram eigenvalues are computed once per sample and the
    log-det rate log2 det(I + (G/n_tx) H H*) = sum_i log2(1 + (G/n_tx) l_i)
    is evaluated for every G, so all grid points see common random numbers.
    Seeding and chunking match ergodic_rate.
    """
    gammas = np.asarray(gammas, dtype=float)
    if (gammas < 0).any():
        raise ValueError("gammas must be >= 0")
    n = cfg.n_samples
    counts = [cfg.chunk_size] * (n // cfg.chunk_size)
    if n % cfg.chunk_size:
        counts.append(n % cfg.chunk_size)

    k = min(n_rx, n_tx)

    def run_chunk(idx_count):
        idx, count = idx_count
        h = sample_channel_batch(n_rx, n_tx, chunk_rng(cfg.seed, idx), count)
        if n_rx <= n_tx:  # eigenvalues of the smaller Gram matrix
            gram = np.einsum("cij,ckj->cik", h, h.conj())
        else:
            gram = np.einsum("cji,cjk->cik", h.conj(), h)
        eig = np.clip(np.linalg.eigvalsh(gram), 0.0, None)  # (count, k)
        rates = np.log2(1.0 + eig[:, :, None] * (gammas / n_tx)).sum(axis=1)
        return rates.sum(axis=0), np.square(rates).sum(axis=0)

    jobs = list(enumerate(counts))
    workers = max_threads()
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run_chunk, jobs))
    else:
        partials = [run_chunk(job) for job in jobs]

    total = np.zeros_like(gammas)
    total_sq = np.zeros_like(gammas)
    for s, sq in partials:
        total += s
        total_sq += sq
    means = total / n
    if n > 1:
        var = np.clip((total_sq - n * means * means) / (n - 1), 0.0, None)
        errs = np.sqrt(var / n)
    else:
        errs = np.zeros_like(means)
    return [RateEstimate(float(m), float(e), n) for m, e in zip(means, errs)]
