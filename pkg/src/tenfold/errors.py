"""Exception types raised by the tenfold package.

Everything derives from :class:`TenfoldError` so callers can catch the
package's failures with one handler while letting programming errors
(TypeError and friends) propagate.
"""


class TenfoldError(Exception):
    """Base class for all errors raised by this package."""


# --- ensemble construction ------------------------------------------------

class MissingS(TenfoldError):
    """A chiral class was requested without the block split parameter s."""


class UnexpectedS(TenfoldError):
    """s was supplied for a class that has no block split."""


class InvalidS(TenfoldError):
    """s is outside 1 <= s <= n - s (the convention fixes s <= t)."""


class NonPositiveSigma(TenfoldError):
    """sigma2 must be strictly positive."""


class ParityMismatch(TenfoldError):
    """A parity-split label (DIII_even / DIII_odd) got an n of the wrong parity."""


# --- structured matrices ---------------------------------------------------

class WrongParamCount(TenfoldError):
    """Parameter vector length differs from the free dimension of the class."""


class StructureViolation(TenfoldError):
    """A dense matrix does not satisfy the class constraints."""


class UnsupportedClass(TenfoldError):
    """No certified stabilizer embedding is available for the request."""


# --- sampling ---------------------------------------------------------------

class InvalidReps(TenfoldError):
    """Replicate count must be a positive integer."""


# --- spectra ----------------------------------------------------------------

class NoConvergence(TenfoldError):
    """The eigenvalue solver failed to converge."""


class DegenerateSpectrum(TenfoldError):
    """Reduction could not resolve the expected pairing / multiplicity pattern.

    Carries the offending gaps in ``args[1]`` when available.
    """


class EmptyInput(TenfoldError):
    """An empirical measure needs at least one point."""


# --- densities ---------------------------------------------------------------

class WrongLength(TenfoldError):
    """Coordinate tuple length differs from the reduced count p(n)."""


class OutOfSupport(TenfoldError):
    """A coordinate lies outside the support of the class's spectrum."""


# --- equilibrium --------------------------------------------------------------

class InvalidParams(TenfoldError):
    """Equilibrium family parameters outside their admissible range."""


class UnsupportedTransform(TenfoldError):
    """Pushforward not defined for this (curve, exponent) combination."""


# --- rate functional -----------------------------------------------------------

class UnsupportedGamma(TenfoldError):
    """The log-energy kernel is only defined for gamma in {1, 2}."""


class DivergentField(TenfoldError):
    """The field integral diverges (an atom sits on a zero of the weight)."""


class OutOfRange(TenfoldError):
    """Sample values fall outside the requested grid window."""
