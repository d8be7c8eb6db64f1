"""Closed-form equilibrium measures of the three families.

The limiting empirical spectral measures are known in closed form:

* Wigner-Dyson: the semicircle of radius 2 sqrt(sigma2 beta).
* Chiral: the square-root pushforward T_{1/2} nu_{s, lam} of the Laguerre
  minimizer nu_{s, lam} with s = 1/(2 kappa) - 1 and
  lam = 1 / (2 sigma2 beta kappa); its density is
  sqrt((x^2 - a)(b - x^2)) / (sigma2 beta kappa pi x) on [sqrt(a), sqrt(b)]
  with a, b = 2 sigma2 beta (1/2 -+ sqrt(kappa (1 - kappa))).
* BdG: the quarter circle, which is the same pushforward at s = 0 with
  lam = 1 / (psi sigma2 beta kappa).

Each curve integrates itself once on a theta grid with x = lo + (hi - lo)
sin^2(theta); the substitution absorbs the square-root endpoint behavior
(and the x^{-1/2} left edge of the s = 0 Laguerre law), so cumulative
Simpson on the theta grid delivers the CDF to well below the 1e-8 mass
tolerance. Forward and inverse CDF interpolants are monotone cubics
(PCHIP) in the theta variable, where both maps are smooth.
"""

import math
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import PchipInterpolator

from .ensembles import BDG, CHIRAL, WIGNER_DYSON
from .errors import InvalidParams, UnsupportedTransform

DEFAULT_GRID = 2048


@dataclass(frozen=True)
class DensityCurve:
    """A probability density on [lo, hi] with CDF/quantile/sampling support.

    Attributes
    ----------
    lo, hi : float
        Support endpoints.
    pdf : callable
        Vectorized density evaluator (0 outside [lo, hi]).
    grid : ndarray
        m uniformly spaced nodes spanning the support.
    pdf_values, cdf_values : ndarray
        Density and CDF cached on ``grid``.
    mass : float
        Raw quadrature mass before normalization (1 within tolerance).
    descriptor : mapping
        The family and parameters that produced the curve.
    """

    lo: float
    hi: float
    pdf: object
    grid: np.ndarray
    pdf_values: np.ndarray
    cdf_values: np.ndarray
    mass: float
    descriptor: object
    _cdf_fn: object = field(repr=False)
    _quantile_fn: object = field(repr=False)

    @property
    def m(self):
        return self.grid.size

    def cdf(self, x):
        """CDF, clamped to 0 below lo and 1 above hi."""
        x = np.asarray(x, dtype=float)
        out = self._cdf_fn(x)
        return float(out) if out.ndim == 0 else out

    def quantile(self, q):
        """Inverse CDF; q must lie in [0, 1]."""
        q = np.asarray(q, dtype=float)
        if np.any(q < 0) or np.any(q > 1):
            raise ValueError("quantile levels must lie in [0, 1]")
        out = self._quantile_fn(q)
        return float(out) if out.ndim == 0 else out

    def sample(self, rng, size):
        """Inverse-CDF sampling with uniforms from ``rng``."""
        return self.quantile(rng.random(size))


def _freeze(arr):
    arr = np.asarray(arr, dtype=float)
    arr.flags.writeable = False
    return arr


def _curve_from_theta(lo, hi, pdf, g_theta, m, descriptor):
    """Assemble a DensityCurve from its theta-substituted integrand."""
    width = hi - lo
    theta = np.linspace(0.0, math.pi / 2, 2 * m + 1)
    raw = cumulative_simpson(g_theta(theta), x=theta, initial=0.0)
    mass = float(raw[-1])
    cdf_t = np.minimum.accumulate((np.maximum.accumulate(raw) / mass)[::-1])[::-1]
    cdf_t[0], cdf_t[-1] = 0.0, 1.0
    forward = PchipInterpolator(theta, cdf_t, extrapolate=False)
    keep = np.concatenate([[True], np.diff(cdf_t) > 0])
    inverse = PchipInterpolator(cdf_t[keep], theta[keep], extrapolate=False)

    def cdf_fn(x):
        u = np.clip((np.asarray(x, dtype=float) - lo) / width, 0.0, 1.0)
        return np.asarray(forward(np.arcsin(np.sqrt(u))))

    def quantile_fn(q):
        th = np.asarray(inverse(np.clip(q, cdf_t[keep][0], cdf_t[keep][-1])))
        return lo + width * np.sin(th) ** 2

    grid = np.linspace(lo, hi, m)
    return DensityCurve(
        lo=float(lo),
        hi=float(hi),
        pdf=pdf,
        grid=_freeze(grid),
        pdf_values=_freeze(pdf(grid)),
        cdf_values=_freeze(cdf_fn(grid)),
        mass=mass,
        descriptor=MappingProxyType(dict(descriptor)),
        _cdf_fn=cdf_fn,
        _quantile_fn=quantile_fn,
    )


def semicircle(sigma2, beta, m=DEFAULT_GRID):
    """Semicircle law of radius 2 sqrt(sigma2 beta)."""
    if sigma2 <= 0 or beta <= 0:
        raise InvalidParams("semicircle needs sigma2 > 0 and beta > 0")
    v = sigma2 * beta
    radius = 2.0 * math.sqrt(v)

    def pdf(x):
        x = np.asarray(x, dtype=float)
        inside = np.clip(4.0 * v - x * x, 0.0, None)
        return np.sqrt(inside) / (2.0 * math.pi * v)

    def g_theta(theta):
        return (4.0 / math.pi) * np.sin(2.0 * theta) ** 2

    return _curve_from_theta(
        -radius,
        radius,
        pdf,
        g_theta,
        m,
        {"family": "semicircle", "sigma2": float(sigma2), "beta": float(beta)},
    )


def _laguerre_edges(s, lam):
    if s < 0 or lam <= 0:
        raise InvalidParams(f"Laguerre minimizer needs s >= 0, lam > 0; got {s}, {lam}")
    root = math.sqrt(2.0 * s + 1.0)
    return (s + 1.0 - root) / lam, (s + 1.0 + root) / lam


def laguerre_minimizer(s, lam, m=DEFAULT_GRID):
    """Minimizer nu_{s, lam}: density (lam / (pi x)) sqrt((x - a)(b - x))."""
    a, b = _laguerre_edges(s, lam)

    def pdf(x):
        x = np.asarray(x, dtype=float)
        inside = np.clip((x - a) * (b - x), 0.0, None)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = lam * np.sqrt(inside) / (math.pi * x)
        return np.where(x == 0.0, 0.0 if a > 0 else np.inf, out)

    def g_theta(theta):
        st2 = np.sin(theta) ** 2
        if a == 0.0:
            return (2.0 * lam * b / math.pi) * (1.0 - st2)
        x = a + (b - a) * st2
        return (lam * (b - a) ** 2 / (2.0 * math.pi)) * np.sin(2.0 * theta) ** 2 / x

    return _curve_from_theta(
        a, b, pdf, g_theta, m,
        {"family": "laguerre", "s": float(s), "lam": float(lam)},
    )


def sqrt_laguerre(s, lam, m=DEFAULT_GRID):
    """T_{1/2} nu_{s, lam}: density (2 lam / (pi x)) sqrt((x^2 - a)(b - x^2)).

    The chiral equilibrium measure, and at s = 0 the quarter circle.
    """
    a, b = _laguerre_edges(s, lam)
    lo, hi = math.sqrt(a), math.sqrt(b)
    coef = 2.0 * lam / math.pi

    def pdf(x):
        x = np.asarray(x, dtype=float)
        x2 = x * x
        inside = np.clip((x2 - a) * (b - x2), 0.0, None)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = coef * np.sqrt(inside) / x
        limit = coef * math.sqrt(b) if a == 0.0 else 0.0
        return np.where(x == 0.0, limit, out)

    def g_theta(theta):
        sin_t, cos_t = np.sin(theta), np.cos(theta)
        w = hi - lo
        x = lo + w * sin_t ** 2
        if a == 0.0:
            # sin^2/x == 1/w exactly; one power of sqrt(x) stays smooth in theta
            return 2.0 * coef * w * cos_t ** 2 * np.sqrt(x * (hi + x))
        outer = np.sqrt((x + lo) * (hi + x))
        return 2.0 * coef * w * w * sin_t ** 2 * cos_t ** 2 * outer / x

    return _curve_from_theta(
        lo, hi, pdf, g_theta, m,
        {"family": "sqrt_laguerre", "s": float(s), "lam": float(lam)},
    )


def quarter_circle(scale, m=DEFAULT_GRID):
    """Quarter circle on [0, sqrt(2 * scale)]: the BdG equilibrium law.

    ``scale`` is psi sigma2 beta kappa; the density is
    (2 / (pi scale)) sqrt(2 scale - x^2).
    """
    if scale <= 0:
        raise InvalidParams(f"quarter circle needs scale > 0, got {scale}")
    return sqrt_laguerre(0.0, 1.0 / scale, m=m)


def equilibrium_for(ensemble, m=DEFAULT_GRID):
    """Equilibrium curve of an ensemble, using the finite-n kappa = p(n)/n."""
    spec = ensemble.spec
    sigma2 = ensemble.n * ensemble.sigma2_eff
    kappa = ensemble.kappa
    if spec.family == WIGNER_DYSON:
        return semicircle(sigma2, spec.beta, m=m)
    if kappa <= 0:
        raise InvalidParams(
            f"class {ensemble.label}, n={ensemble.n}: empty reduced spectrum"
        )
    if spec.family == CHIRAL:
        s_lag = 1.0 / (2.0 * kappa) - 1.0
        lam = 1.0 / (2.0 * sigma2 * spec.beta * kappa)
        return sqrt_laguerre(s_lag, lam, m=m)
    if spec.family == BDG:
        return quarter_circle(spec.psi * sigma2 * spec.beta * kappa, m=m)
    raise AssertionError(spec.family)


def pushforward_power(curve, r, m=None):
    """Law of X^r when X follows ``curve``.

    Exact closed forms are returned when the transform is recognized
    (r = 1; Laguerre -> its square-root law at r = 1/2 and back at r = 2);
    otherwise the transform is carried by CDF composition, which preserves
    the mass exactly. Curves whose support extends below 0 only admit
    r = 1 (UnsupportedTransform).
    """
    r = float(r)
    if not r > 0:
        raise UnsupportedTransform(f"exponent must be positive, got {r}")
    if r == 1.0:
        return curve
    if curve.lo < 0:
        raise UnsupportedTransform(
            "pushforward by a non-unit power needs support in [0, inf)"
        )
    fam = curve.descriptor.get("family")
    size = m or curve.m
    if fam == "laguerre" and abs(r - 0.5) < 1e-12:
        return sqrt_laguerre(curve.descriptor["s"], curve.descriptor["lam"], m=size)
    if fam == "sqrt_laguerre" and abs(r - 2.0) < 1e-12:
        return laguerre_minimizer(curve.descriptor["s"], curve.descriptor["lam"], m=size)
    return _transformed_curve(curve, r, size)


def _transformed_curve(base, r, m):
    lo, hi = base.lo ** r, base.hi ** r
    rinv = 1.0 / r

    jac0 = 1.0 if rinv == 1.0 else (0.0 if rinv > 1.0 else np.inf)

    def pdf(y):
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            x = np.clip(y, 0.0, None) ** rinv
            jac = np.where(y > 0, y ** (rinv - 1.0), jac0)
            out = base.pdf(x) * rinv * jac
        return np.where((y < lo) | (y > hi), 0.0, out)

    def cdf_fn(y):
        y = np.asarray(y, dtype=float)
        return base.cdf(np.clip(y, 0.0, None) ** rinv)

    def quantile_fn(q):
        return np.asarray(base.quantile(q)) ** r

    grid = np.linspace(lo, hi, m)
    return DensityCurve(
        lo=float(lo),
        hi=float(hi),
        pdf=pdf,
        grid=_freeze(grid),
        pdf_values=_freeze(pdf(grid)),
        cdf_values=_freeze(cdf_fn(grid)),
        mass=base.mass,
        descriptor=MappingProxyType(
            {"family": "pushforward", "r": r, "base": dict(base.descriptor)}
        ),
        _cdf_fn=cdf_fn,
        _quantile_fn=quantile_fn,
    )


def quantile(curve, q):
    """Module-level alias for ``curve.quantile(q)``."""
    return curve.quantile(q)
