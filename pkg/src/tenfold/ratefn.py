"""Large-deviation rate functional on discretized spectral measures.

The empirical measure of the reduced spectrum concentrates, at speed n^2,
around the minimizer of

    I(mu) = (beta/2) kappa^2 * E(mu) - kappa * F(mu) - c

where E is the logarithmic energy with kernel log|x^gamma - y^gamma|^(-1),
F is the external-field integral of the limiting weight log w against mu,
and c is the additive constant that makes the infimum zero. c equals the
free-energy limit of the normalization and has no closed form in general,
so it defaults to 0 and is fixed numerically by :func:`calibrate` against
the known minimizer of the family.

Measures enter either as histograms with equal-width cells
(:class:`GridMeasure`, read as a piecewise-constant density) or as finite
atomic measures (:class:`~tenfold.spectra.EmpiricalMeasure`). An atom has
infinite logarithmic self-energy, so :func:`log_energy` and :func:`rate`
return ``inf`` for atomic measures; smooth them first through
:func:`grid_from_samples`. :func:`field_term` is the exception: it stays
finite on atoms away from the weight's zeros and is evaluated there as a
plain average.

Against a piecewise-constant density both integrals have closed forms, and
no quadrature error enters beyond the discretization of mu itself. The
energy uses the exact double integral of log|x - y| over every pair of
cells, obtained as a second difference of the double antiderivative of
log; the integral is finite on diagonal cells because the singularity is
integrable. For gamma = 2 the kernel splits as
log|x^2 - y^2| = log|x - y| + log(x + y) and the second part is again a
second difference, evaluated along antidiagonals. The field term uses the
exact cell integrals of log x and x^2. Nothing here is stochastic.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import xlogy

from .densities import log_weight, weight_for
from .errors import (
    DivergentField,
    EmptyInput,
    InvalidParams,
    OutOfRange,
    OutOfSupport,
    UnsupportedGamma,
)
from .spectra import EmpiricalMeasure

DEFAULT_CELLS = 2048

MASS_ATOL = 1e-12


def _freeze(arr):
    arr = np.ascontiguousarray(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GridMeasure:
    """Probability measure with piecewise-constant density on equal cells.

    Cell k covers [lo + k h, lo + (k+1) h] with h = (hi - lo) / m and
    carries density masses[k] / h.

    Attributes
    ----------
    lo, hi : float
        Support interval endpoints.
    masses : ndarray
        Nonnegative cell masses summing to 1 (within 1e-12 at
        construction). Stored read-only.
    """

    lo: float
    hi: float
    masses: np.ndarray

    def __post_init__(self):
        masses = np.asarray(self.masses, dtype=float)
        if masses.ndim != 1 or masses.size == 0:
            raise InvalidParams("masses must be a nonempty 1-d array")
        if not self.lo < self.hi:
            raise InvalidParams("need lo < hi")
        if np.any(masses < 0):
            raise InvalidParams("cell masses must be nonnegative")
        total = masses.sum()
        if abs(total - 1.0) > MASS_ATOL:
            raise InvalidParams(f"cell masses sum to {total!r}, not 1")
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        object.__setattr__(self, "masses", _freeze(masses))

    @property
    def m(self):
        """Number of cells."""
        return self.masses.size

    @property
    def h(self):
        """Cell width."""
        return (self.hi - self.lo) / self.masses.size

    @property
    def edges(self):
        """Cell edges, length m + 1."""
        return np.linspace(self.lo, self.hi, self.masses.size + 1)

    @property
    def centers(self):
        """Cell midpoints, length m."""
        edges = self.edges
        return 0.5 * (edges[:-1] + edges[1:])


@dataclass(frozen=True)
class RateFunctional:
    """The rate functional I of one symmetry family.

    Attributes
    ----------
    beta : int
        Repulsion exponent.
    gamma : int
        Kernel exponent, 1 or 2.
    kappa : float
        Limiting fraction of reduced eigenvalues per matrix dimension,
        in (0, 1].
    weight : WeightSpec
        Limiting weight w whose log is the external field.
    c : float or None
        Additive constant; None means uncalibrated and is read as 0.
        :func:`calibrate` returns a copy with c set so the known
        minimizer has rate 0.
    """

    beta: int
    gamma: int
    kappa: float
    weight: object
    c: float = None

    def __post_init__(self):
        if self.gamma not in (1, 2):
            raise InvalidParams(f"gamma must be 1 or 2, got {self.gamma!r}")
        if not 0.0 < self.kappa <= 1.0:
            raise InvalidParams(f"kappa must lie in (0, 1], got {self.kappa!r}")
        half = self.weight.support == "half_line"
        if half != (self.gamma == 2):
            raise InvalidParams(
                "weight support does not match the kernel: gamma = 2 pairs "
                "with the half line, gamma = 1 with the real line"
            )


def functional_for(ensemble):
    """Uncalibrated rate functional of an ensemble's symmetry class."""
    spec = ensemble.spec
    return RateFunctional(
        beta=spec.beta,
        gamma=spec.gamma,
        kappa=ensemble.kappa,
        weight=weight_for(ensemble),
    )


def grid_from_curve(curve, m):
    """Discretize a density curve into m equal cells of exact cdf mass.

    Parameters
    ----------
    curve : DensityCurve
        Curve to discretize; its support becomes the grid support.
    m : int
        Number of cells, at least 16.

    Returns
    -------
    GridMeasure
        Cell masses are the curve's cdf increments, renormalized to
        sum exactly to 1.
    """
    m = int(m)
    if m < 16:
        raise ValueError(f"need at least 16 cells, got {m}")
    increments = np.diff(curve.cdf(np.linspace(curve.lo, curve.hi, m + 1)))
    increments = np.clip(increments, 0.0, None)
    return GridMeasure(curve.lo, curve.hi, increments / increments.sum())


def grid_from_samples(values, lo, hi, m):
    """Histogram sample values into a grid measure on [lo, hi].

    Parameters
    ----------
    values : array_like
        Sample values, all inside [lo, hi].
    lo, hi : float
        Support interval, lo < hi.
    m : int
        Number of cells.

    Returns
    -------
    GridMeasure

    Raises
    ------
    EmptyInput
        If no values are given.
    OutOfRange
        If any value falls outside [lo, hi].
    """
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        raise EmptyInput("no values to bin")
    if not lo < hi:
        raise ValueError("need lo < hi")
    if values.min() < lo or values.max() > hi:
        raise OutOfRange(
            f"values span [{values.min()!r}, {values.max()!r}], "
            f"outside [{lo!r}, {hi!r}]"
        )
    counts, _ = np.histogram(values, bins=int(m), range=(float(lo), float(hi)))
    return GridMeasure(float(lo), float(hi), counts / values.size)


def _log_antideriv2(u):
    # H with H'' = log|u|, H = H' = 0 at 0; second differences of H over
    # the cell lattice give exact cell-pair integrals of log|x - y|.
    u = np.asarray(u, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = u * u * (2.0 * np.log(np.abs(u)) - 3.0) / 4.0
    return np.where(u == 0.0, 0.0, out)


def log_energy(mu, gamma):
    """Logarithmic energy of a measure for the |x^gamma - y^gamma| kernel.

    Parameters
    ----------
    mu : GridMeasure or EmpiricalMeasure
        Probability measure. Atomic measures have infinite energy.
    gamma : int
        1 for the plain kernel, 2 for the squared-variable kernel,
        which requires support in [0, inf).

    Returns
    -------
    float
        The double integral of log|x^gamma - y^gamma|^(-1) against
        mu x mu; ``inf`` for an EmpiricalMeasure.

    Raises
    ------
    UnsupportedGamma
        If gamma is neither 1 nor 2.
    OutOfSupport
        If gamma = 2 and the support extends below 0.
    """
    if gamma not in (1, 2):
        raise UnsupportedGamma(f"gamma must be 1 or 2, got {gamma!r}")
    if isinstance(mu, EmpiricalMeasure):
        return math.inf
    masses = mu.masses
    m = masses.size
    h = mu.h
    # cell-pair integral of log|x - y| depends on the index offset only
    lattice = _log_antideriv2(np.arange(-m, m + 1) * h)
    pair = lattice[2:] - 2.0 * lattice[1:-1] + lattice[:-2]
    total = masses @ np.convolve(masses, pair)[m - 1 : 2 * m - 1]
    if gamma == 2:
        if mu.lo < 0:
            raise OutOfSupport("gamma = 2 needs support in [0, inf)")
        # log(x + y) part: constant along antidiagonals k + l
        lattice = _log_antideriv2(2.0 * mu.lo + np.arange(2 * m + 1) * h)
        cross = lattice[2:] - 2.0 * lattice[1:-1] + lattice[:-2]
        total += np.convolve(masses, masses) @ cross
    return -float(total) / (h * h)


def _field_on_atoms(mu, weight):
    logs = log_weight(weight, mu.atoms, at_limit=True)
    if np.any(np.isneginf(logs)):
        raise DivergentField("an atom sits on a zero of the weight")
    return float(np.mean(logs))


def field_term(mu, weight):
    """Integral of log w against a measure, for the limiting weight w.

    Evaluated in closed form on grid measures: the x^power factor
    contributes power * (u log u - u) cell differences and the Gaussian
    factor contributes exact cell integrals of x^2. On atomic measures
    the value is the average of log w over the atoms.

    Parameters
    ----------
    mu : GridMeasure or EmpiricalMeasure
    weight : WeightSpec

    Returns
    -------
    float

    Raises
    ------
    OutOfSupport
        If the measure charges negative values but the weight lives on
        the half line.
    DivergentField
        If an atom of an EmpiricalMeasure sits exactly on a zero of w.
    """
    if isinstance(mu, EmpiricalMeasure):
        return _field_on_atoms(mu, weight)
    if weight.support == "half_line" and mu.lo < 0:
        raise OutOfSupport("this weight lives on [0, inf)")
    edges = mu.edges
    a, b = edges[:-1], edges[1:]
    cell = -(b**3 - a**3) / (3.0 * weight.psi * weight.sigma2)
    if weight.limit_power != 0.0:
        cell = cell + weight.limit_power * ((xlogy(b, b) - b) - (xlogy(a, a) - a))
    return float(mu.masses @ cell) / mu.h


def rate(mu, functional):
    """Evaluate I(mu) = (beta/2) kappa^2 E - kappa F - c.

    Parameters
    ----------
    mu : GridMeasure or EmpiricalMeasure
        Atomic measures have rate ``inf`` (infinite energy).
    functional : RateFunctional

    Returns
    -------
    float
    """
    if isinstance(mu, EmpiricalMeasure):
        return math.inf
    energy = log_energy(mu, functional.gamma)
    field = field_term(mu, functional.weight)
    c = 0.0 if functional.c is None else functional.c
    return (
        0.5 * functional.beta * functional.kappa**2 * energy
        - functional.kappa * field
        - c
    )


def calibrate(functional, reference, m=DEFAULT_CELLS):
    """Fix the additive constant so the reference curve has rate zero.

    The rate functional attains its infimum 0 exactly at the family's
    equilibrium curve, so evaluating the uncalibrated functional there
    recovers the free-energy constant. Calibrating twice is idempotent.

    Parameters
    ----------
    functional : RateFunctional
    reference : DensityCurve
        The known minimizer for this functional.
    m : int
        Cells used to discretize the reference.

    Returns
    -------
    RateFunctional
        Copy of ``functional`` with c set.
    """
    uncalibrated = replace(functional, c=None)
    return replace(functional, c=rate(grid_from_curve(reference, m), uncalibrated))
