"""Joint eigenvalue densities and the per-class weight functions.

The reduced spectrum of every class follows, up to normalization,

    q_n(x) = prod_{i<j} |x_i^gamma - x_j^gamma|^beta * prod_j w_n(x_j)^n

with the finite-n weight

    w_n(x) = x^(alpha/n) * exp(-x^2 / (psi * n * sigma2_eff))

(alpha = 0 when gamma = 1). Its n -> infinity limit replaces the vanishing
exponent alpha/n by the surviving chiral power beta (1 - 2 kappa):

    w(x) = x^power * exp(-x^2 / (psi sigma2)),  power = beta (1 - 2 kappa)

for the chiral family and power = 0 otherwise. The limiting weight is the
external field of the rate functional.

All evaluation happens in log space; coordinates where the density
vanishes (coincident values, or 0 under a positive power) give -inf rather
than an error.
"""

from dataclasses import dataclass

import numpy as np

from .ensembles import CHIRAL, class_spec
from .errors import OutOfSupport, WrongLength


@dataclass(frozen=True)
class WeightSpec:
    """Weight function of one ensemble, finite-n and limiting forms.

    Attributes
    ----------
    family : str
        ``"wigner_dyson"``, ``"chiral"``, or ``"bdg"``.
    sigma2 : float
        Variance parameter entering the Gaussian factor; for a raw-scaled
        ensemble this is n * sigma2_eff so that w_n^n reproduces the matrix
        density exactly in either mode.
    psi : int
        Trace constant of the class.
    alpha : float
        Zero exponent at finite n (0 for the Wigner-Dyson family).
    n : int
        Matrix size parameter (the finite-n weight carries alpha / n).
    limit_power : float
        x-exponent of the limiting weight: beta (1 - 2 kappa) for chiral
        classes, 0 otherwise.
    support : str
        ``"real_line"`` or ``"half_line"``.
    """

    family: str
    sigma2: float
    psi: int
    alpha: float
    n: int
    limit_power: float
    support: str


def weight_for(ensemble):
    """WeightSpec of an ensemble."""
    spec = ensemble.spec
    alpha = ensemble.alpha if spec.gamma == 2 else 0.0
    power = spec.beta * (1.0 - 2.0 * ensemble.kappa) if spec.family == CHIRAL else 0.0
    return WeightSpec(
        family=spec.family,
        sigma2=ensemble.n * ensemble.sigma2_eff,
        psi=spec.psi,
        alpha=float(alpha),
        n=ensemble.n,
        limit_power=power,
        support=spec.support,
    )


def _check_support(weight, x):
    if weight.support == "half_line" and np.any(x < 0):
        raise OutOfSupport("this class's spectrum lives on [0, inf)")


def log_weight(weight, x, at_limit=False):
    """log w_n(x) (or log w(x) with ``at_limit``), elementwise; -inf at zeros."""
    x = np.asarray(x, dtype=float)
    _check_support(weight, x)
    power = weight.limit_power if at_limit else weight.alpha / weight.n
    quad = -(x * x) / (weight.psi * weight.sigma2)
    if power == 0.0:
        return quad
    with np.errstate(divide="ignore"):
        return power * np.log(np.abs(x)) + quad


def weight_eval(weight, x, at_limit=False):
    """The weight itself: exp of :func:`log_weight` (0 where it is -inf)."""
    scalar = np.isscalar(x)
    lw = log_weight(weight, x, at_limit=at_limit)
    out = np.exp(lw)
    return float(out) if scalar else out


def joint_log_density(ensemble, xs):
    """Unnormalized log density of the reduced spectrum at the tuple xs.

    Expects exactly p(n) coordinates (WrongLength), within the support of
    the class (OutOfSupport for gamma = 2 and negative entries). Returns
    -inf where the density vanishes: coincident coordinates, or a zero
    coordinate under a positive power.
    """
    spec = ensemble.spec
    xs = np.asarray(xs, dtype=float).ravel()
    if xs.size != ensemble.p:
        raise WrongLength(
            f"class {ensemble.label}, n={ensemble.n}: expected p={ensemble.p} "
            f"coordinates, got {xs.size}"
        )
    if spec.gamma == 2 and np.any(xs < 0):
        raise OutOfSupport("this class's spectrum lives on [0, inf)")
    g = xs ** spec.gamma
    i, j = np.triu_indices(xs.size, 1)
    with np.errstate(divide="ignore"):
        pair = np.sum(np.log(np.abs(g[i] - g[j]))) if i.size else 0.0
        zero_pow = (
            float(ensemble.alpha) * np.sum(np.log(np.abs(xs)))
            if spec.gamma == 2 and ensemble.alpha
            else 0.0
        )
    quad = np.sum(xs * xs) / (spec.psi * ensemble.sigma2_eff)
    return float(spec.beta * pair + zero_pow - quad)
