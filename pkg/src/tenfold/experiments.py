"""Desk-scale verification experiments for the spectral limit laws.

Three probes, in increasing order of what they assume:

- :func:`convergence_experiment` pools reduced spectra over growing n and
  tracks the Kolmogorov-Smirnov distance to the class's equilibrium
  curve, the law-of-large-numbers picture.
- :func:`decay_experiment` counts how often a single replicate's
  empirical measure strays more than a KS radius delta from the
  equilibrium, whose probability decays at speed n^2; at desk scale only
  the qualitative decrease in n is observable.
- :func:`density_oracle` checks the reduced joint density exactly where
  it can be checked: at the smallest sizes with p(n) = 2, by binning the
  two reduced eigenvalues over a box and comparing against the
  closed-form density normalized over the same box.

Every experiment is a pure function of its argument tuple. Replicate
streams derive from the seed exactly as in the sampler, each n gets its
own sub-master seed, and aggregation is order-independent, so the thread
count never changes any reported number. Wall times are measured for
reporting but carry no information about the inputs; they are excluded
from report equality.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from time import perf_counter
from types import MappingProxyType

import numpy as np
from scipy.special import ndtri

from ._rng import mix64, stream
from .densities import joint_log_density
from .ensembles import CHIRAL, ClassLabel, class_spec, make_ensemble
from .equilibrium import equilibrium_for
from .errors import DegenerateSpectrum, InvalidParams, InvalidReps
from .sampler import param_variances, sample
from .spectra import (
    COLLAPSE_TOL,
    PAIR_TOL,
    _DOUBLED,
    empirical_measure,
    reduced_spectrum,
)
from .structure import build, free_dim

_CHUNK = 32768


@dataclass(frozen=True)
class ConvergenceEntry:
    """One row of a convergence experiment.

    ``wall_time`` (seconds spent on this n) is measurement metadata and
    does not participate in equality.
    """

    n: int
    reps: int
    ks_distance: float
    wall_time: float = field(compare=False)


@dataclass(frozen=True)
class ConvergenceReport:
    """KS distances to the equilibrium curve along an n sweep.

    Attributes
    ----------
    descriptor : mapping
        Ensemble description: label, sigma2, and the s value used at
        each n (None for non-chiral classes).
    entries : tuple of ConvergenceEntry
        One per n, in the given (strictly increasing) order.
    seed : int
        Master seed of the whole experiment.
    """

    descriptor: MappingProxyType
    entries: tuple
    seed: int


@dataclass(frozen=True)
class DecayEntry:
    """One row of a decay experiment.

    ``estimate`` is -log(hit_count / reps) / n^2, or None when censored
    (no hits observed, so the probability is below 1/reps resolution).
    """

    n: int
    reps: int
    hit_count: int
    estimate: float
    censored: bool


@dataclass(frozen=True)
class DecayReport:
    """Frequencies of large-deviation events along an n sweep.

    Attributes
    ----------
    descriptor : mapping
        Ensemble description, as in ConvergenceReport.
    delta : float
        KS radius of the deviation event {KS(L_n, mu*) > delta}.
    entries : tuple of DecayEntry
    seed : int
    """

    descriptor: MappingProxyType
    delta: float
    entries: tuple
    seed: int


def ks_distance(empirical, curve):
    """Kolmogorov-Smirnov distance between an atomic measure and a curve.

    The supremum of |F_emp - F_curve| is attained at an atom (from either
    side) or at a support endpoint of the curve; all are checked.

    Parameters
    ----------
    empirical : EmpiricalMeasure
    curve : DensityCurve

    Returns
    -------
    float
        Value in [0, 1].
    """
    atoms = empirical.atoms
    count = atoms.size
    steps = np.arange(1, count + 1) / count
    at_atoms = curve.cdf(atoms)
    worst = np.maximum(
        np.abs(steps - at_atoms), np.abs(steps - 1.0 / count - at_atoms)
    ).max()
    below_lo = np.count_nonzero(atoms <= curve.lo) / count
    below_hi = np.count_nonzero(atoms <= curve.hi) / count
    return float(max(worst, below_lo, 1.0 - below_hi))


def _descriptor(label, sigma2, s_values):
    return MappingProxyType(
        {"label": str(label), "sigma2": float(sigma2), "s": s_values}
    )


def _checked_sweep(label, n_list, s_rule):
    label = ClassLabel.parse(label) if not isinstance(label, ClassLabel) else label
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise ValueError("n_list must not be empty")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError(f"n_list must be strictly increasing, got {n_list}")
    chiral = class_spec(label).family == CHIRAL
    if chiral and s_rule is None:
        raise ValueError(f"class {label} needs an s_rule fixing s(n)")
    s_values = tuple(int(s_rule(n)) for n in n_list) if chiral else None
    return label, n_list, s_values


def convergence_experiment(
    label, sigma2, n_list, s_rule=None, reps=20, seed=0, threads=1
):
    """Pooled-spectrum KS distance to the equilibrium along an n sweep.

    For each n the experiment draws ``reps`` matrices, pools their
    reduced spectra (each matrix passing the structural checks of
    :func:`~tenfold.spectra.spectrum`), and reports the KS distance of
    the pooled empirical measure to the equilibrium curve built with the
    finite-n kappa = p(n)/n.

    Parameters
    ----------
    label : ClassLabel or str
    sigma2 : float
        Standard-scaled variance parameter.
    n_list : sequence of int
        Strictly increasing sizes.
    s_rule : callable, optional
        s(n) for chiral classes; ignored otherwise.
    reps : int
        Replicates per n.
    seed : int
        Master seed; each n derives its own sub-master stream.
    threads : int
        Worker threads for sampling; never affects the result.

    Returns
    -------
    ConvergenceReport
    """
    label, n_list, s_values = _checked_sweep(label, n_list, s_rule)
    entries = []
    for idx, n in enumerate(n_list):
        started = perf_counter()
        s = s_values[idx] if s_values is not None else None
        ens = make_ensemble(label, n, s=s, sigma2=sigma2)
        batch = sample(ens, mix64(seed, n), reps, threads=threads)
        pooled = np.concatenate([reduced_spectrum(sm) for sm in batch])
        ks = ks_distance(empirical_measure(pooled), equilibrium_for(ens))
        entries.append(ConvergenceEntry(n, reps, ks, perf_counter() - started))
    return ConvergenceReport(
        _descriptor(label, sigma2, s_values), tuple(entries), int(seed)
    )


def decay_experiment(label, sigma2, delta, n_list, reps, seed=0, s_rule=None, threads=1):
    """Estimate the frequency of large KS deviations along an n sweep.

    For each n the experiment counts replicates whose single-matrix
    empirical measure sits farther than ``delta`` from the equilibrium
    curve in KS distance and reports -log(hit_count/reps)/n^2 where any
    hits occur. Rows with zero hits are censored: the event probability
    is below the 1/reps resolution.

    Parameters
    ----------
    label : ClassLabel or str
    sigma2 : float
    delta : float
        KS radius of the deviation event, > 0. Radii in [0.05, 0.12]
        are rare enough to decay yet observable near n = 10.
    n_list : sequence of int
        Strictly increasing sizes.
    reps : int
        Replicates per n.
    seed : int
    s_rule : callable, optional
        s(n) for chiral classes.
    threads : int
        Worker threads for sampling; never affects the result.

    Returns
    -------
    DecayReport
    """
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta!r}")
    label, n_list, s_values = _checked_sweep(label, n_list, s_rule)
    entries = []
    for idx, n in enumerate(n_list):
        s = s_values[idx] if s_values is not None else None
        ens = make_ensemble(label, n, s=s, sigma2=sigma2)
        curve = equilibrium_for(ens)
        batch = sample(ens, mix64(seed, n), reps, threads=threads)
        hits = 0
        for sm in batch:
            measure = empirical_measure(reduced_spectrum(sm))
            if ks_distance(measure, curve) > delta:
                hits += 1
        if hits:
            estimate = -math.log(hits / reps) / n**2 + 0.0
            entries.append(DecayEntry(n, reps, hits, estimate, False))
        else:
            entries.append(DecayEntry(n, reps, 0, None, True))
    return DecayReport(
        _descriptor(label, sigma2, s_values), float(delta), tuple(entries), int(seed)
    )


def _param_basis(ensemble):
    # the parametrization is linear, so probing it with unit vectors
    # yields an exact matrix-valued basis for vectorized assembly
    dim = free_dim(ensemble.label, ensemble.n, s=ensemble.s)
    probes = []
    for k in range(dim):
        unit = np.zeros(dim)
        unit[k] = 1.0
        probes.append(build(ensemble.label, ensemble.n, unit, s=ensemble.s).matrix)
    return np.stack(probes)


def _reduce_batch(ensemble, vals, scale):
    # vectorized mirror of spectra.spectrum over rows of ascending
    # eigenvalues; same tolerances, same DegenerateSpectrum failures
    label = ensemble.label
    spec = ensemble.spec
    p = ensemble.p
    doubled = label in _DOUBLED
    if spec.gamma == 1:
        if doubled:
            a, b = vals[:, 0::2], vals[:, 1::2]
            tol = COLLAPSE_TOL * np.maximum(
                1.0, np.maximum(np.abs(a), np.abs(b))
            )
            if np.any(np.abs(a - b) > tol):
                raise DegenerateSpectrum(
                    f"class {label}: multiplicity-2 pattern unresolved"
                )
            reduced = (a + b) / 2
        else:
            reduced = vals
        return reduced[:, ::-1]
    mirror = np.abs(vals + vals[:, ::-1]).max(axis=1)
    if np.any(mirror > PAIR_TOL * scale):
        raise DegenerateSpectrum(f"class {label}: +/- pairing violated")
    tau0 = COLLAPSE_TOL * scale
    npos = (2 * p) if doubled else p
    zeros = vals.shape[1] - 2 * npos
    pos = vals[:, -npos:]
    if np.any(pos <= tau0[:, None]):
        raise DegenerateSpectrum(f"class {label}: positive block touches zero")
    if zeros and np.any(np.abs(vals[:, npos : npos + zeros]) > tau0[:, None]):
        raise DegenerateSpectrum(f"class {label}: structural zeros missing")
    if doubled:
        a, b = pos[:, 0::2], pos[:, 1::2]
        tol = COLLAPSE_TOL * np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
        if np.any(np.abs(a - b) > tol):
            raise DegenerateSpectrum(
                f"class {label}: multiplicity-2 pattern unresolved"
            )
        pos = (a + b) / 2
    if pos.shape[1] != p:
        raise DegenerateSpectrum(
            f"class {label}: expected {p} reduced eigenvalues, got {pos.shape[1]}"
        )
    return pos[:, ::-1]


def _oracle_counts(ensemble, basis, deviations, bins, box, start, stop, seed):
    dim = basis.shape[0]
    lattice = np.empty((stop - start, dim), dtype=np.uint64)
    for row, rep in enumerate(range(start, stop)):
        lattice[row] = stream(seed, rep).integers(
            0, 1 << 53, size=dim, dtype=np.uint64
        )
    params = ndtri((lattice.astype(np.float64) + 0.5) * 2.0**-53) * deviations
    mats = np.tensordot(params, basis, axes=(1, 0))
    vals = np.linalg.eigvalsh(mats)
    scale = np.maximum(1.0, np.abs(vals).max(axis=1))
    pairs = _reduce_batch(ensemble, vals, scale)
    counts, _, _ = np.histogram2d(
        pairs[:, 0], pairs[:, 1], bins=bins, range=[box, box]
    )
    return counts.astype(np.int64)


def density_oracle(
    label,
    n_small,
    sigma2,
    bins,
    reps,
    seed=0,
    s=None,
    raw=True,
    box=None,
    threads=1,
):
    """Sup-norm check of the reduced joint density at p(n) = 2.

    Bins the two reduced eigenvalues of ``reps`` replicates over a square
    box (both orderings, so the histogram is symmetric like the density),
    and compares bin probabilities against exp(joint_log_density) at bin
    centers, normalized over the same binned box.

    Parameters
    ----------
    label : ClassLabel or str
    n_small : int
        Size with exactly two reduced eigenvalues (AI needs n = 2,
        C needs n = 2, AIII needs n = 4 with s = 2, ...).
    sigma2 : float
        Variance parameter.
    bins : int
        Bins per axis.
    reps : int
        Replicates; every replicate passes the structural spectral
        checks before it is binned.
    seed : int
    s : int, optional
        Chiral block split.
    raw : bool
        Use the raw (n-independent) variance scaling; default True, the
        natural regime at fixed small n.
    box : pair of float, optional
        Axis interval; defaults to [-4, 4] for gamma = 1 classes and
        [0, 4] for gamma = 2.
    threads : int
        Worker threads over replicate chunks; never affects the result.

    Returns
    -------
    float
        max over bins of |empirical probability - density probability|.
    """
    if not isinstance(reps, (int, np.integer)) or isinstance(reps, bool) or reps < 1:
        raise InvalidReps(f"reps must be a positive integer, got {reps!r}")
    ens = make_ensemble(label, n_small, s=s, sigma2=sigma2, raw=raw)
    if ens.p != 2:
        raise InvalidParams(
            f"the oracle needs p(n) = 2, but {ens.label} at n = {n_small} "
            f"has p = {ens.p}"
        )
    if box is None:
        box = (0.0, 4.0) if ens.spec.gamma == 2 else (-4.0, 4.0)
    lo, hi = float(box[0]), float(box[1])
    if not lo < hi:
        raise InvalidParams(f"box must be an interval, got {box!r}")
    bins = int(bins)
    basis = _param_basis(ens)
    deviations = np.sqrt(param_variances(ens))
    edges = [(start, min(start + _CHUNK, reps)) for start in range(0, reps, _CHUNK)]

    def run(chunk):
        return _oracle_counts(
            ens, basis, deviations, bins, (lo, hi), chunk[0], chunk[1], seed
        )

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            counts = sum(pool.map(run, edges))
    else:
        counts = sum(run(chunk) for chunk in edges)
    counts = counts + counts.T
    if counts.sum() == 0:
        raise InvalidParams("no replicate landed inside the box")
    observed = counts / counts.sum()
    centers = lo + (np.arange(bins) + 0.5) * (hi - lo) / bins
    logs = np.empty((bins, bins))
    for i, x in enumerate(centers):
        for j in range(i + 1):
            logs[i, j] = logs[j, i] = joint_log_density(ens, (x, centers[j]))
    weights = np.exp(logs - logs.max())
    predicted = weights / weights.sum()
    return float(np.abs(observed - predicted).max())
