"""Eigenvalues, reduced spectra, and empirical measures.

The full spectrum of a class matrix carries structural redundancy: classes
with gamma = 2 come in +/- pairs (with alpha structural zeros), and the
quaternionic classes AII, CII, DIII double every eigenvalue. The reduced
spectrum keeps one representative per group, p(n) values in all, which is
the object the joint density and the large-deviation machinery live on.

Reduction never invents structure: when the expected pairing or
multiplicity pattern is not resolved within tolerance the matrix is
rejected with DegenerateSpectrum (carrying the offending gaps) rather than
silently collapsed.
"""

from dataclasses import dataclass

import numpy as np

from .ensembles import ClassLabel, class_spec
from .errors import DegenerateSpectrum, EmptyInput, NoConvergence

_DOUBLED = {ClassLabel.AII, ClassLabel.CII, ClassLabel.DIII_EVEN, ClassLabel.DIII_ODD}
COLLAPSE_TOL = 1e-8
PAIR_TOL = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Full and reduced eigenvalues of one structured matrix.

    ``full`` has length d(n), nonincreasing. ``reduced`` has length p(n):
    sign-collapsed and multiplicity-collapsed, nonincreasing, positive for
    gamma = 2 classes.
    """

    label: ClassLabel
    n: int
    s: int | None
    full: np.ndarray
    reduced: np.ndarray


@dataclass(frozen=True)
class EmpiricalMeasure:
    """Uniform atoms; the empirical spectral measure of one replicate."""

    atoms: np.ndarray

    @property
    def size(self):
        return self.atoms.size


def eigenvalues(sm):
    """Eigenvalues of a structured matrix, nonincreasing."""
    try:
        lam = np.linalg.eigvalsh(sm.matrix)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigensolver failed: {exc}") from exc
    return lam[::-1].copy()


def _collapse_pairs(values, label):
    """Collapse a nonincreasing array of doubled eigenvalues pairwise.

    Each consecutive pair must agree within 1e-8 * max(1, |a|, |b|);
    the pair mean is kept.
    """
    if values.size % 2:
        raise DegenerateSpectrum(
            f"class {label}: odd count {values.size} cannot be doubled"
        )
    a = values[0::2]
    b = values[1::2]
    gaps = np.abs(a - b)
    tol = COLLAPSE_TOL * np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
    bad = gaps > tol
    if np.any(bad):
        raise DegenerateSpectrum(
            f"class {label}: multiplicity-2 pattern unresolved", gaps[bad]
        )
    return (a + b) / 2


def spectrum(sm):
    """Full + reduced spectrum with the structural checks of the class.

    Checks, within tolerance of the matrix scale: +/- pairing for gamma=2
    classes, even multiplicities for the quaternionic classes, and the
    expected count of structural zeros. Violations raise DegenerateSpectrum.
    """
    spec = class_spec(sm.label)
    lam = eigenvalues(sm)
    scale = max(1.0, float(np.max(np.abs(lam))) if lam.size else 0.0)
    tau0 = COLLAPSE_TOL * scale
    p = spec.p(sm.n, sm.s)
    if spec.gamma == 1:
        reduced = _collapse_pairs(lam, sm.label) if sm.label in _DOUBLED else lam
        if reduced.size != p:
            raise DegenerateSpectrum(
                f"class {sm.label}: expected {p} reduced eigenvalues, "
                f"got {reduced.size}"
            )
        return Spectrum(sm.label, sm.n, sm.s, lam, reduced)
    # gamma = 2: the spectrum is symmetric about 0
    mirror = np.abs(lam + lam[::-1])
    worst = float(np.max(mirror)) if mirror.size else 0.0
    if worst > PAIR_TOL * scale:
        raise DegenerateSpectrum(
            f"class {sm.label}: +/- pairing violated", np.array([worst])
        )
    pos = lam[lam > tau0]
    zeros = int(np.count_nonzero(np.abs(lam) <= tau0))
    doubled = sm.label in _DOUBLED
    expect_zeros = lam.size - (4 * p if doubled else 2 * p)
    if zeros != expect_zeros:
        raise DegenerateSpectrum(
            f"class {sm.label}: expected {expect_zeros} structural zeros, "
            f"found {zeros}"
        )
    reduced = _collapse_pairs(pos, sm.label) if doubled else pos
    if reduced.size != p:
        raise DegenerateSpectrum(
            f"class {sm.label}: expected {p} reduced eigenvalues, got {reduced.size}"
        )
    return Spectrum(sm.label, sm.n, sm.s, lam, reduced)


def reduced_spectrum(sm):
    """Reduced spectrum only (see :func:`spectrum`)."""
    return spectrum(sm).reduced


def empirical_measure(values):
    """Empirical measure with one atom of mass 1/N per value."""
    atoms = np.sort(np.asarray(values, dtype=float).ravel())
    if atoms.size == 0:
        raise EmptyInput("an empirical measure needs at least one atom")
    atoms.flags.writeable = False
    return EmpiricalMeasure(atoms)
