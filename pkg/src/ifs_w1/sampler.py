"""Chaos-game sampling of stationary measures and empirical W1.

Independent of the staircase code: points come from random iteration
``x <- f_I(x)`` with ``I ~ p``.  Several chains run side by side; each one
burns in from ``x = 1/2`` before it records.  Chains are grouped into 16
batches so the batch-means standard error uses independent batches.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .maps import Affine, IFSystem, QuarterSine, WeightVector

ALGORITHM = "numpy.random.PCG64/chaos-game-v1"
N_BATCHES = 16
MAX_CHAINS = 1024


@dataclass(frozen=True, eq=False)
class SampleSet:
    points: np.ndarray  # sorted ascending
    seed: int
    burn_in: int
    count: int
    raw: np.ndarray     # generation order, chain-major
    algorithm: str = ALGORITHM

    def __len__(self):
        return self.count


def _step(s: IFSystem, x: np.ndarray, idx: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    for i, m in enumerate(s):
        sel = idx == i
        if sel.any():
            out[sel] = m.apply(x[sel])
    return out


def _n_chains(count: int) -> int:
    if count >= N_BATCHES * 64:
        return min(MAX_CHAINS, N_BATCHES * (count // (N_BATCHES * 64)))
    return min(count, N_BATCHES)


def chaos_game(s: IFSystem, p: WeightVector, count: int, burn_in: int = 64,
               seed: int = 0) -> SampleSet:
    """Draw ``count`` points from the stationary measure of ``(s, p)``."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if burn_in < 32:
        raise ValueError("burn_in must be >= 32")
    if len(p) != s.k:
        raise ValueError(f"{len(p)} weights for {s.k} maps")
    rng = np.random.Generator(np.random.PCG64(seed))
    chains = _n_chains(count)
    steps = -(-count // chains)
    cum = np.cumsum(p.as_array())
    cum[-1] = 1.0
    x = np.full(chains, 0.5)
    for _ in range(burn_in):
        x = _step(s, x, np.searchsorted(cum, rng.random(chains), side="right"))
    rec = np.empty((steps, chains))
    for t in range(steps):
        x = _step(s, x, np.searchsorted(cum, rng.random(chains), side="right"))
        rec[t] = x
    raw = rec.T.reshape(-1)[:count]
    return SampleSet(np.sort(raw), seed, burn_in, count, raw)


def _w1_sorted(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.mean(np.abs(a - b)))


def w1_empirical(A: SampleSet, B: SampleSet):
    """``(estimate, std_error)`` of W1 from two equal-size samples.

    The estimate pairs order statistics: ``mean |x_(i) - y_(i)|``.  The
    standard error comes from 16 batch estimates built the same way.
    """
    if A.count != B.count:
        raise ValueError(f"sample sizes differ: {A.count} != {B.count}")
    est = _w1_sorted(A.points, B.points)
    n = A.count
    if n < N_BATCHES:
        return est, float("nan")
    size = n // N_BATCHES
    batch = [
        _w1_sorted(np.sort(A.raw[j * size:(j + 1) * size]), np.sort(B.raw[j * size:(j + 1) * size]))
        for j in range(N_BATCHES)
    ]
    return est, float(np.std(batch, ddof=1) / np.sqrt(N_BATCHES))


def write_samples_csv(S: SampleSet, fh) -> None:
    fh.write(f"# seed={S.seed}\n")
    fh.write(f"# burn_in={S.burn_in}\n")
    fh.write(f"# algorithm={S.algorithm}\n")
    fh.write("x\n")
    for v in S.points.tolist():
        fh.write(f"{v!r}\n")


def empirical_cdf(S: SampleSet, xs) -> np.ndarray:
    return np.searchsorted(S.points, np.asarray(xs, dtype=float), side="right") / S.count
