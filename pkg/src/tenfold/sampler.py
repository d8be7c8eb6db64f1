"""Gaussian sampling of the structured ensembles.

A draw from the ensemble GE(sigma2_eff) places independent centered normals
on the free coordinates: variance sigma2_eff on generic coordinates and
2 sigma2_eff on coordinates that sit on the diagonal of a symmetric or
Hermitian block. With those variances the matrix density is exactly
exp(-Tr X^2 / (phi sigma2_eff)) times a constant, which is what
``log_density_unnormalized`` evaluates and what the per-coordinate
factorization tests pin down.

Replicate r of a batch draws from its own stream seeded by
``mix64(master_seed, r)``, so batches are reproducible bit for bit and can
be generated in any order or across any number of worker threads without
changing the result.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._rng import standard_normal, stream
from .errors import InvalidReps
from .structure import build, layout
from .ensembles import EnsembleSpec


@dataclass(frozen=True)
class SampleBatch:
    """A reproducible batch of draws from one ensemble."""

    ensemble: EnsembleSpec
    master_seed: int
    matrices: tuple

    def __len__(self):
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)


def param_variances(ensemble):
    """Per-coordinate variances of the Gaussian draw, in layout order."""
    segs = layout(ensemble.label, ensemble.n, s=ensemble.s)
    v = ensemble.sigma2_eff
    parts = [np.full(seg.length, 2.0 * v if seg.doubled else v) for seg in segs]
    return np.concatenate(parts) if parts else np.empty(0)


def draw_params(ensemble, master_seed, rep):
    """Parameter vector of replicate ``rep`` (pure function of its stream)."""
    rng = stream(master_seed, rep)
    sd = np.sqrt(param_variances(ensemble))
    return standard_normal(rng, sd.size) * sd


def draw_matrix(ensemble, master_seed, rep):
    """One structured draw, replicate ``rep`` of the batch."""
    params = draw_params(ensemble, master_seed, rep)
    return build(ensemble.label, ensemble.n, params, s=ensemble.s)


def sample(ensemble, master_seed, reps, threads=1):
    """Draw ``reps`` matrices from the ensemble.

    Parameters
    ----------
    ensemble : EnsembleSpec
    master_seed : int
        Master seed of the batch; replicate streams derive from it.
    reps : int
        Number of replicates, must be >= 1 (InvalidReps).
    threads : int
        Worker threads. The output is identical for every value.
    """
    if not isinstance(reps, (int, np.integer)) or isinstance(reps, bool) or reps < 1:
        raise InvalidReps(f"reps must be a positive integer, got {reps!r}")
    draw = lambda r: draw_matrix(ensemble, master_seed, r)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            mats = tuple(pool.map(draw, range(reps)))
    else:
        mats = tuple(draw(r) for r in range(reps))
    return SampleBatch(ensemble, int(master_seed), mats)


def log_density_unnormalized(matrix, ensemble):
    """log of the matrix density up to its normalizing constant.

    Equals -Tr(X^2) / (phi sigma2_eff); by the variance rule this is also
    the sum over free coordinates of -p_i^2 / (2 v_i).
    """
    dense = getattr(matrix, "matrix", matrix)
    tr2 = float(np.sum(np.abs(dense) ** 2))
    return -tr2 / (ensemble.spec.phi * ensemble.sigma2_eff)
