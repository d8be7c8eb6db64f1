"""The ten symmetry classes and their Gaussian ensembles.

Each class label names one family of Hermitian random matrices carrying the
symmetries of a classical symmetric space. A :class:`ClassSpec` records the
structural data of one class: ambient dimension d(n), reduced eigenvalue
count p(n), the zero-exponent alpha, the repulsion exponents beta and gamma,
and the Gaussian trace constants (phi, psi) tying the matrix density
exp(-Tr X^2 / (phi sigma2_eff)) to the eigenvalue weight through
Tr X^2 / phi = sum_j lambda_j^2 / psi over the reduced spectrum.

The parity-split orthogonal classes are exposed as distinct labels: B and D
(ambient dimension 2n+1 and 2n), and DIII_even / DIII_odd (n even / odd).
``resolve_label`` maps the generic spellings "B/D" and "DIII" onto them.

An :class:`EnsembleSpec` fixes a class at a concrete size: n, the block
split s for chiral classes, and the variance parameter sigma2. By default
the matrix entries scale with sigma2_eff = sigma2 / n, which keeps the
spectrum bounded as n grows; ``raw=True`` disables the 1/n scaling for
fixed-n studies.
"""

import enum
from dataclasses import dataclass

from .errors import (
    InvalidS,
    MissingS,
    NonPositiveSigma,
    ParityMismatch,
    UnexpectedS,
)

WIGNER_DYSON = "wigner_dyson"
CHIRAL = "chiral"
BDG = "bdg"


class ClassLabel(enum.Enum):
    """The twelve class labels (ten classes; B/D and DIII parity-split)."""

    A = "A"
    AI = "AI"
    AII = "AII"
    AIII = "AIII"
    BDI = "BDI"
    CII = "CII"
    B = "B"
    D = "D"
    C = "C"
    CI = "CI"
    DIII_EVEN = "DIII_even"
    DIII_ODD = "DIII_odd"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text):
        """Parse a label case-insensitively; round-trips with ``str``."""
        if isinstance(text, cls):
            return text
        want = str(text).strip().lower()
        for label in cls:
            if label.value.lower() == want:
                return label
        raise KeyError(f"unknown class label {text!r}")


_CHIRAL_LABELS = {ClassLabel.AIII, ClassLabel.BDI, ClassLabel.CII}
_DIII_LABELS = {ClassLabel.DIII_EVEN, ClassLabel.DIII_ODD}


@dataclass(frozen=True)
class ClassSpec:
    """Structural data of one symmetry class.

    Attributes
    ----------
    label : ClassLabel
    family : str
        One of ``"wigner_dyson"``, ``"chiral"``, ``"bdg"``.
    beta : int
        Eigenvalue repulsion exponent.
    gamma : int
        1 when the reduced spectrum lives on the real line, 2 when the
        interaction couples +/- pairs and the reduced spectrum is positive.
    phi, psi : int
        Gaussian trace constants (see module docstring).
    dim_formula, p_formula, alpha_formula : str
        Human-readable formulas for the table display.
    """

    label: ClassLabel
    family: str
    beta: int
    gamma: int
    phi: int
    psi: int
    dim_formula: str
    p_formula: str
    alpha_formula: str

    @property
    def has_split(self):
        """Whether the class carries the chiral block split (s, t)."""
        return self.label in _CHIRAL_LABELS

    @property
    def support(self):
        """Support of the reduced spectrum: the real line or [0, inf)."""
        return "real_line" if self.gamma == 1 else "half_line"

    def d(self, n, s=None):
        """Ambient matrix dimension at size parameter n."""
        lbl = self.label
        if lbl in (ClassLabel.A, ClassLabel.AI, ClassLabel.AIII, ClassLabel.BDI):
            return n
        if lbl is ClassLabel.B:
            return 2 * n + 1
        return 2 * n

    def p(self, n, s=None):
        """Number of reduced (distinct, sign-collapsed) eigenvalues."""
        lbl = self.label
        if lbl in _CHIRAL_LABELS:
            return min(s, n - s)
        if lbl in _DIII_LABELS:
            return n // 2
        return n

    def alpha(self, n, s=None):
        """Exponent of the x^alpha factor in the joint density (None if gamma=1)."""
        lbl = self.label
        if self.gamma == 1:
            return None
        if lbl is ClassLabel.AIII:
            return 2 * abs(n - 2 * s) + 1
        if lbl is ClassLabel.BDI:
            return abs(n - 2 * s)
        if lbl is ClassLabel.CII:
            return 4 * abs(n - 2 * s) + 3
        return {
            ClassLabel.B: 2,
            ClassLabel.D: 0,
            ClassLabel.C: 2,
            ClassLabel.CI: 1,
            ClassLabel.DIII_EVEN: 1,
            ClassLabel.DIII_ODD: 5,
        }[lbl]


_CATALOG = (
    ClassSpec(ClassLabel.A, WIGNER_DYSON, 2, 1, 4, 4, "n", "n", "-"),
    ClassSpec(ClassLabel.AI, WIGNER_DYSON, 1, 1, 4, 4, "n", "n", "-"),
    ClassSpec(ClassLabel.AII, WIGNER_DYSON, 4, 1, 8, 4, "2n", "n", "-"),
    ClassSpec(ClassLabel.AIII, CHIRAL, 2, 2, 4, 2, "n", "min(s,t)", "2|t-s|+1"),
    ClassSpec(ClassLabel.BDI, CHIRAL, 1, 2, 4, 2, "n", "min(s,t)", "|t-s|"),
    ClassSpec(ClassLabel.CII, CHIRAL, 4, 2, 8, 2, "2n", "min(s,t)", "4|t-s|+3"),
    ClassSpec(ClassLabel.B, BDG, 2, 2, 4, 2, "2n+1", "n", "2"),
    ClassSpec(ClassLabel.D, BDG, 2, 2, 4, 2, "2n", "n", "0"),
    ClassSpec(ClassLabel.C, BDG, 2, 2, 8, 4, "2n", "n", "2"),
    ClassSpec(ClassLabel.CI, BDG, 1, 2, 8, 4, "2n", "n", "1"),
    ClassSpec(ClassLabel.DIII_EVEN, BDG, 4, 2, 8, 2, "2n", "floor(n/2)", "1"),
    ClassSpec(ClassLabel.DIII_ODD, BDG, 4, 2, 8, 2, "2n", "floor(n/2)", "5"),
)

_BY_LABEL = {spec.label: spec for spec in _CATALOG}


def class_catalog():
    """All twelve class specs in canonical order."""
    return _CATALOG


def class_spec(label):
    """Spec for one label (str or ClassLabel)."""
    return _BY_LABEL[ClassLabel.parse(label)]


def gauss_constants(label):
    """Trace constants (phi, psi) of one class."""
    spec = class_spec(label)
    return spec.phi, spec.psi


def resolve_label(text, n):
    """Resolve a possibly generic label spelling to (label, n).

    The strict twelve labels pass through unchanged. ``"B/D"`` reads n as
    the ambient skew dimension and picks B (odd) or D (even) with the
    matching size parameter; ``"DIII"`` picks the parity label from n.
    """
    want = str(text).strip().lower()
    if want in ("b/d", "bd"):
        if n < 2:
            raise ParityMismatch(f"B/D needs ambient dimension >= 2, got {n}")
        if n % 2:
            return ClassLabel.B, (n - 1) // 2
        return ClassLabel.D, n // 2
    if want == "diii":
        return (ClassLabel.DIII_ODD if n % 2 else ClassLabel.DIII_EVEN), n
    return ClassLabel.parse(text), n


@dataclass(frozen=True)
class EnsembleSpec:
    """A symmetry class at a concrete size with a Gaussian variance.

    Attributes
    ----------
    spec : ClassSpec
    n : int
        Size parameter of the class (table parameter, not the ambient dim).
    s : int or None
        Chiral block split; None for classes without one. s <= t = n - s.
    sigma2 : float
        Variance parameter of the ensemble.
    raw : bool
        When True the 1/n scaling is disabled and sigma2_eff = sigma2.
    """

    spec: ClassSpec
    n: int
    s: int | None
    sigma2: float
    raw: bool = False

    @property
    def label(self):
        return self.spec.label

    @property
    def d(self):
        return self.spec.d(self.n, self.s)

    @property
    def p(self):
        return self.spec.p(self.n, self.s)

    @property
    def t(self):
        return None if self.s is None else self.n - self.s

    @property
    def alpha(self):
        return self.spec.alpha(self.n, self.s)

    @property
    def kappa(self):
        """Finite-n surrogate p(n)/n for the limiting eigenvalue fraction."""
        return self.p / self.n

    @property
    def sigma2_eff(self):
        """Per-entry variance scale actually used by the sampler."""
        return self.sigma2 if self.raw else self.sigma2 / self.n


def make_ensemble(label, n, s=None, sigma2=1.0, raw=False):
    """Validated ensemble constructor.

    Parameters
    ----------
    label : str or ClassLabel
        One of the twelve class labels (case-insensitive).
    n : int
        Size parameter, n >= 1.
    s : int, optional
        Block split for the chiral classes AIII, BDI, CII. Required there
        (MissingS), rejected elsewhere (UnexpectedS), and constrained to
        1 <= s <= n - s (InvalidS).
    sigma2 : float
        Must be strictly positive (NonPositiveSigma).
    raw : bool
        Disable the 1/n scaling of sigma2 (fixed-n studies).
    """
    spec = class_spec(label)
    n = int(n)
    if n < 1:
        raise ValueError(f"size parameter n must be >= 1, got {n}")
    if spec.has_split:
        if s is None:
            raise MissingS(f"class {spec.label} needs the block split s")
        s = int(s)
        if not 1 <= s <= n - s:
            raise InvalidS(
                f"class {spec.label} needs 1 <= s <= n - s; got s={s}, n={n}"
            )
    elif s is not None:
        raise UnexpectedS(f"class {spec.label} has no block split, drop s")
    if spec.label is ClassLabel.DIII_EVEN and n % 2:
        raise ParityMismatch(f"DIII_even needs even n, got {n}")
    if spec.label is ClassLabel.DIII_ODD and not n % 2:
        raise ParityMismatch(f"DIII_odd needs odd n, got {n}")
    if spec.p(n, s) < 1:
        raise ValueError(f"class {spec.label} has no reduced eigenvalues at n = {n}")
    sigma2 = float(sigma2)
    if not sigma2 > 0:
        raise NonPositiveSigma(f"sigma2 must be > 0, got {sigma2}")
    return EnsembleSpec(spec, n, s, sigma2, bool(raw))
