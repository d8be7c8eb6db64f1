"""Rate functional: grid measures, energy, field, calibration, minimality."""

import math
from dataclasses import replace

import numpy as np
import pytest

from tenfold import (
    GridMeasure,
    RateFunctional,
    calibrate,
    empirical_measure,
    equilibrium_for,
    field_term,
    functional_for,
    grid_from_curve,
    grid_from_samples,
    log_energy,
    make_ensemble,
    pushforward_power,
    quarter_circle,
    rate,
    reduced_spectrum,
    sample,
    semicircle,
    weight_for,
)
from tenfold.densities import WeightSpec
from tenfold.errors import (
    DivergentField,
    EmptyInput,
    InvalidParams,
    OutOfRange,
    OutOfSupport,
    UnsupportedGamma,
)


def widened_mixture(curve, t, margin, m):
    """(1-t) curve + t uniform, on a common grid over a widened box."""
    lo = max(0.0, curve.lo - margin) if curve.lo >= 0 else curve.lo - margin
    hi = curve.hi + margin
    edges = np.linspace(lo, hi, m + 1)
    base = np.clip(np.diff(curve.cdf(edges)), 0.0, None)
    mix = (1.0 - t) * base / base.sum() + t / m
    return GridMeasure(lo, hi, mix / mix.sum())


def test_grid_measure_geometry():
    mu = GridMeasure(0.0, 1.0, [0.25] * 4)
    assert mu.m == 4
    assert mu.h == pytest.approx(0.25)
    assert np.allclose(mu.edges, [0.0, 0.25, 0.5, 0.75, 1.0], atol=0)
    assert np.allclose(mu.centers, [0.125, 0.375, 0.625, 0.875], atol=0)


@pytest.mark.parametrize("lo,hi,masses", [
    (0.0, 1.0, [0.5, 0.4]),          # mass deficit
    (0.0, 1.0, [1.5, -0.5]),         # negative cell
    (1.0, 0.0, [0.5, 0.5]),          # reversed interval
    (0.0, 1.0, []),                  # no cells
])
def test_grid_measure_rejects_bad_input(lo, hi, masses):
    with pytest.raises(InvalidParams):
        GridMeasure(lo, hi, masses)


def test_rate_functional_validates_parameters():
    w_real = weight_for(make_ensemble("AI", 4, sigma2=0.5))
    w_half = weight_for(make_ensemble("C", 4))
    with pytest.raises(InvalidParams):
        RateFunctional(beta=1, gamma=3, kappa=1.0, weight=w_real)
    with pytest.raises(InvalidParams):
        RateFunctional(beta=1, gamma=1, kappa=0.0, weight=w_real)
    with pytest.raises(InvalidParams):
        RateFunctional(beta=1, gamma=2, kappa=1.0, weight=w_real)
    with pytest.raises(InvalidParams):
        RateFunctional(beta=1, gamma=1, kappa=1.0, weight=w_half)


def test_grid_from_curve_masses_are_symmetric_for_even_curves():
    mu = grid_from_curve(semicircle(0.5, 1), 256)
    assert abs(float(mu.masses.sum()) - 1.0) <= 1e-15
    assert np.max(np.abs(mu.masses - mu.masses[::-1])) <= 1e-10
    with pytest.raises(ValueError):
        grid_from_curve(semicircle(0.5, 1), 8)


def test_grid_from_curve_reproduces_first_moment():
    mu = grid_from_curve(quarter_circle(4.0), 256)
    mean = float(mu.masses @ mu.centers)
    assert abs(mean - 8.0 * math.sqrt(2.0) / (3.0 * math.pi)) <= 1e-4


def test_grid_from_samples_binning():
    mu = grid_from_samples([0.37] * 50, 0.0, 1.0, 20)
    assert mu.masses[7] == 1.0
    assert float(mu.masses.sum()) == 1.0
    even = grid_from_samples((np.arange(1000) + 0.5) / 1000, 0.0, 1.0, 10)
    assert np.allclose(even.masses, 0.1, atol=0)
    with pytest.raises(EmptyInput):
        grid_from_samples([], 0.0, 1.0, 10)
    with pytest.raises(OutOfRange):
        grid_from_samples([1.5], 0.0, 1.0, 10)
    with pytest.raises(ValueError):
        grid_from_samples([0.5], 1.0, 1.0, 10)


def test_two_cell_energy_closed_form():
    mu = GridMeasure(0.0, 2.0, [0.5, 0.5])
    assert log_energy(mu, 1) == pytest.approx(1.5 - math.log(2.0), abs=1e-12)


def test_energy_grows_as_support_shrinks():
    # all mass in one cell of width 1/m: energy = 3/2 + log m
    values = [log_energy(GridMeasure(0.0, 1.0, [1.0] + [0.0] * (m - 1)), 1)
              for m in (16, 32, 64)]
    assert values[0] < values[1] < values[2]
    assert values[0] == pytest.approx(1.5 + math.log(16.0), abs=1e-12)


@pytest.mark.parametrize("sigma2,beta,expected", [
    (1.0, 1.0, 0.25),                          # radius 2
    (0.5, 1.0, 0.25 + 0.5 * math.log(2.0)),    # radius sqrt(2)
])
def test_semicircle_energy_closed_form(sigma2, beta, expected):
    mu = grid_from_curve(semicircle(sigma2, beta), 2048)
    assert log_energy(mu, 1) == pytest.approx(expected, abs=1e-5)


def test_energy_input_validation():
    with pytest.raises(UnsupportedGamma):
        log_energy(GridMeasure(0.0, 1.0, [1.0]), 3)
    with pytest.raises(OutOfSupport):
        log_energy(GridMeasure(-1.0, 1.0, [0.5, 0.5]), 2)
    assert log_energy(empirical_measure([1.0, 2.0]), 1) == math.inf


def test_squared_kernel_energy_matches_pushforward():
    qc = quarter_circle(2.0)
    e2 = log_energy(grid_from_curve(qc, 1024), 2)
    e1 = log_energy(grid_from_curve(pushforward_power(qc, 2), 1024), 1)
    assert abs(e2 - e1) <= 5e-3


def test_field_term_closed_forms():
    ens = make_ensemble("AI", 6, sigma2=0.5)
    w = weight_for(ens)
    mu = grid_from_curve(equilibrium_for(ens), 2048)
    assert field_term(mu, w) == pytest.approx(-0.25, abs=1e-5)

    flat = WeightSpec(family="wigner_dyson", sigma2=math.inf, psi=4,
                      alpha=0.0, n=1, limit_power=0.0, support="real_line")
    assert field_term(GridMeasure(-1.0, 3.0, [0.25] * 4), flat) == 0.0

    chiral = WeightSpec(family="chiral", sigma2=0.5, psi=2,
                        alpha=0.0, n=1, limit_power=1.0, support="half_line")
    single = GridMeasure(0.0, 1.0, [1.0])
    # exact: power term (x log x - x) differences give -1, Gaussian -1/3
    assert field_term(single, chiral) == pytest.approx(-4.0 / 3.0, abs=1e-14)


def test_field_term_on_atoms():
    w = weight_for(make_ensemble("AI", 6, sigma2=0.5))
    assert field_term(empirical_measure([1.0, 2.0]), w) == pytest.approx(-1.25)
    chiral = weight_for(make_ensemble("AIII", 8, s=2))
    with pytest.raises(DivergentField):
        field_term(empirical_measure([0.0, 1.0]), chiral)
    grid_at_zero = grid_from_curve(quarter_circle(1.0), 64)
    assert math.isfinite(field_term(grid_at_zero, chiral))


def test_field_term_rejects_signed_support_for_half_line_weight():
    w = weight_for(make_ensemble("C", 4))
    with pytest.raises(OutOfSupport):
        field_term(GridMeasure(-1.0, 1.0, [0.5, 0.5]), w)


def test_rate_constant_shifts_and_atomic_measures():
    ens = make_ensemble("AI", 6, sigma2=0.5)
    f = functional_for(ens)
    assert f.c is None
    mu = grid_from_curve(equilibrium_for(ens), 512)
    base = rate(mu, f)
    assert rate(mu, replace(f, c=0.3)) == pytest.approx(base - 0.3, abs=1e-14)
    assert rate(empirical_measure([0.5]), f) == math.inf


def test_calibration_constant_closed_form():
    ens = make_ensemble("AI", 6, sigma2=0.5)
    f = calibrate(functional_for(ens), equilibrium_for(ens))
    assert f.c == pytest.approx(0.375 + 0.25 * math.log(2.0), abs=1e-8)
    # calibrating again from the already-calibrated functional is a no-op
    again = calibrate(f, equilibrium_for(ens))
    assert again.c == pytest.approx(f.c, abs=1e-12)
    # the reference discretization itself sits exactly at zero
    assert rate(grid_from_curve(equilibrium_for(ens), 2048), f) == 0.0


def test_shifted_semicircle_rate_closed_form():
    ens = make_ensemble("AI", 6, sigma2=0.5)
    f = calibrate(functional_for(ens), equilibrium_for(ens))
    mu = grid_from_curve(equilibrium_for(ens), 2048)
    shifted = GridMeasure(mu.lo + 0.5, mu.hi + 0.5, mu.masses)
    assert rate(shifted, f) == pytest.approx(0.125, abs=1e-6)


def test_dilated_quarter_circle_pays_rate():
    ens = make_ensemble("C", 8, sigma2=1.0)
    f = calibrate(functional_for(ens), equilibrium_for(ens))
    mu = grid_from_curve(equilibrium_for(ens), 2048)
    assert rate(mu, f) == 0.0
    dilated = GridMeasure(1.2 * mu.lo, 1.2 * mu.hi, mu.masses)
    assert rate(dilated, f) > 0.01


def test_inside_support_mixture_pays_rate():
    ens = make_ensemble("AI", 6, sigma2=0.5)
    f = calibrate(functional_for(ens), equilibrium_for(ens))
    curve = equilibrium_for(ens)
    mu = grid_from_curve(curve, 2048)
    ucdf = np.clip((mu.edges + 1.0) / 2.0, 0.0, 1.0)
    mix = 0.8 * mu.masses + 0.2 * np.diff(ucdf)
    mixture = GridMeasure(mu.lo, mu.hi, mix / mix.sum())
    assert rate(mixture, f) > 1e-4


@pytest.mark.parametrize("label,n,s,sigma2", [
    ("AI", 6, None, 0.5),
    ("AIII", 8, 2, 1.0),
    ("D", 8, None, 1.0),
])
def test_rate_is_nonnegative_near_the_minimizer(label, n, s, sigma2):
    ens = make_ensemble(label, n, s=s, sigma2=sigma2)
    curve = equilibrium_for(ens)
    f = calibrate(functional_for(ens), curve, m=1024)
    base = grid_from_curve(curve, 1024)
    perturbations = []
    for k in range(7):
        c = 0.85 + 0.075 * k
        perturbations.append(GridMeasure(c * base.lo, c * base.hi, base.masses))
    for k in range(7):
        perturbations.append(widened_mixture(curve, 0.03 * (k + 1), 0.4, 1024))
    for k in range(6):
        d = 0.5 + 0.1 * k
        perturbations.append(GridMeasure(base.lo + d, base.hi + d, base.masses))
    assert len(perturbations) == 20
    worst = min(rate(mu, f) for mu in perturbations)
    assert worst >= -2e-3


def test_rate_converges_under_grid_refinement():
    ens = make_ensemble("AI", 6, sigma2=0.5)
    f = calibrate(functional_for(ens), equilibrium_for(ens))
    curve = semicircle(0.6, 1)
    r = [rate(grid_from_curve(curve, m), f) for m in (512, 1024, 2048)]
    d1, d2 = abs(r[1] - r[0]), abs(r[2] - r[1])
    assert d2 <= 0.5 * d1


def test_rate_is_representation_independent():
    ens = make_ensemble("AI", 6, sigma2=0.5)
    f = calibrate(functional_for(ens), equilibrium_for(ens))
    curve = semicircle(0.6, 1)
    from_curve = grid_from_curve(curve, 512)
    q = (np.arange(100_000) + 0.5) / 100_000
    from_samples = grid_from_samples(curve.quantile(q), curve.lo, curve.hi, 512)
    assert abs(rate(from_curve, f) - rate(from_samples, f)) <= 5e-3


def test_sampled_grid_measure_tracks_equilibrium():
    ens = make_ensemble("A", 200, sigma2=1.0)
    curve = equilibrium_for(ens)
    pooled = np.concatenate(
        [reduced_spectrum(sm) for sm in sample(ens, master_seed=5, reps=50)]
    )
    lo = min(curve.lo, float(pooled.min())) - 1e-9
    hi = max(curve.hi, float(pooled.max())) + 1e-9
    mu = grid_from_samples(pooled, lo, hi, 200)
    gap = np.max(np.abs(np.cumsum(mu.masses) - curve.cdf(mu.edges[1:])))
    assert gap <= 0.05
