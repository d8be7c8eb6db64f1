"""Deterministic random streams.

Every replicate draws from its own generator, seeded as ``mix64(master_seed,
rep_index)``. The mix is the SplitMix64 output function applied to
``master_seed + rep_index * GOLDEN``; streams for distinct replicates are
therefore decorrelated and can be generated in any order (or in parallel)
without changing the result.

Standard normals are produced by applying the inverse normal CDF to uniforms
read from the stream. The uniforms are taken on the centered dyadic lattice
``(k + 1/2) / 2**53``, which avoids the endpoints of (0, 1) exactly, so the
transform never overflows. The method is fixed: batches are reproducible
bit for bit for a given (master_seed, rep_index).
"""

import numpy as np
from scipy.special import ndtri

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(master_seed: int, index: int) -> int:
    """Derive the 64-bit stream seed for one replicate (SplitMix64 finalizer)."""
    z = (int(master_seed) + int(index) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def stream(master_seed: int, index: int) -> np.random.Generator:
    """Generator for replicate ``index`` of a batch with the given master seed."""
    return np.random.Generator(np.random.PCG64(mix64(master_seed, index)))


def standard_normal(rng: np.random.Generator, size) -> np.ndarray:
    """Inverse-CDF standard normals from ``rng`` (fixed, documented method)."""
    lattice = rng.integers(0, 1 << 53, size=size, dtype=np.uint64)
    return ndtri((lattice.astype(np.float64) + 0.5) * 2.0 ** -53)
