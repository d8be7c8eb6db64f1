"""Free parametrizations of the ten Hermitian matrix classes.

Every class is a real vector space of structured Hermitian matrices. This
module fixes, for each class, an explicit linear bijection between that
space and R^free_dim: ``build`` assembles the dense matrix from a parameter
vector, ``extract`` reads the parameters back (an exact left inverse), and
``validate`` reports how far a dense candidate sits from the space, one
named constraint at a time.

The parameter layout is a sequence of segments. Each segment records
whether its coordinates sit on the diagonal of a symmetric or Hermitian
block; those coordinates appear in Tr X^2 with half the coefficient of the
generic off-diagonal ones, which is exactly the variance-doubling rule the
sampler applies.

Block conventions (sizes s + t = n where a split applies, s <= t):

====== =====================================================================
A      X complex Hermitian n x n
AI     X real symmetric n x n
AII    [[X1, X2], [-conj(X2), conj(X1)]], X1 Hermitian, X2 complex skew
AIII   [[0, Z], [Z*, 0]], Z complex s x t
BDI    [[0, iY], [(iY)*, 0]], Y real s x t
CII    [[0, X], [X*, 0]], X = [[U, V], [-conj(V), conj(U)]], U, V in C^{s x t}
B, D   X = iY, Y real skew, ambient 2n+1 (B) or 2n (D)
DIII   [[iY1, iY2], [iY2, -iY1]], Y1, Y2 real skew n x n
C      [[X1, X2], [conj(X2), -conj(X1)]], X1 Hermitian, X2 complex symmetric
CI     [[A, B], [B, -A]], A, B real symmetric n x n
====== =====================================================================
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from ._rng import standard_normal, stream
from .ensembles import ClassLabel, class_spec
from .errors import StructureViolation, WrongParamCount

ATOL_FACTOR = 1e-12


@dataclass(frozen=True)
class Segment:
    """One contiguous run of parameters with a shared variance rule."""

    name: str
    length: int
    doubled: bool  # sits on the diagonal of a (skew-)symmetric/Hermitian block


@dataclass(frozen=True)
class Violation:
    """A failed structural constraint and the size of the failure."""

    constraint: str
    residual: float


@dataclass(frozen=True)
class StructuredMatrix:
    """A dense Hermitian matrix certified to lie in its class.

    Construct through :func:`build` or :meth:`from_dense`; the ``matrix``
    array is frozen read-only.
    """

    label: ClassLabel
    n: int
    s: int | None
    matrix: np.ndarray

    @classmethod
    def from_dense(cls, label, n, dense, s=None):
        """Wrap a dense array after checking the class constraints."""
        label = ClassLabel.parse(label)
        dense = np.asarray(dense, dtype=complex)
        problems = validate(label, n, dense, s=s)
        if problems:
            detail = "; ".join(
                f"{v.constraint} (residual {v.residual:.3e})" for v in problems
            )
            raise StructureViolation(f"class {label}, n={n}: {detail}")
        dense = dense.copy()
        dense.flags.writeable = False
        return cls(label, n, s, dense)

    @property
    def d(self):
        return self.matrix.shape[0]

    @property
    def scale(self):
        """max(1, largest absolute entry): the unit for all tolerances."""
        top = float(np.max(np.abs(self.matrix))) if self.matrix.size else 0.0
        return max(1.0, top)


def _sealed(dense):
    dense.flags.writeable = False
    return dense


def _upper_count(n):
    return n * (n - 1) // 2


def layout(label, n, s=None):
    """Parameter segments of one class, in build/extract order."""
    label = ClassLabel.parse(label)
    m = _upper_count(n)
    if label is ClassLabel.A:
        return (
            Segment("diag", n, True),
            Segment("off_re", m, False),
            Segment("off_im", m, False),
        )
    if label is ClassLabel.AI:
        return (Segment("diag", n, True), Segment("off", m, False))
    if label is ClassLabel.AII:
        return (
            Segment("x1_diag", n, True),
            Segment("x1_off_re", m, False),
            Segment("x1_off_im", m, False),
            Segment("x2_off_re", m, False),
            Segment("x2_off_im", m, False),
        )
    if label is ClassLabel.AIII:
        st = s * (n - s)
        return (Segment("z_re", st, False), Segment("z_im", st, False))
    if label is ClassLabel.BDI:
        return (Segment("y", s * (n - s), False),)
    if label is ClassLabel.CII:
        st = s * (n - s)
        return (
            Segment("u_re", st, False),
            Segment("u_im", st, False),
            Segment("v_re", st, False),
            Segment("v_im", st, False),
        )
    if label in (ClassLabel.B, ClassLabel.D):
        d = class_spec(label).d(n)
        return (Segment("y_upper", _upper_count(d), False),)
    if label in (ClassLabel.DIII_EVEN, ClassLabel.DIII_ODD):
        return (Segment("y1_upper", m, False), Segment("y2_upper", m, False))
    if label is ClassLabel.C:
        return (
            Segment("x1_diag", n, True),
            Segment("x1_off_re", m, False),
            Segment("x1_off_im", m, False),
            Segment("x2_diag_re", n, True),
            Segment("x2_diag_im", n, True),
            Segment("x2_off_re", m, False),
            Segment("x2_off_im", m, False),
        )
    if label is ClassLabel.CI:
        return (
            Segment("a_diag", n, True),
            Segment("a_off", m, False),
            Segment("b_diag", n, True),
            Segment("b_off", m, False),
        )
    raise AssertionError(label)


def free_dim(label, n, s=None):
    """Real dimension of the class as a vector space."""
    return sum(seg.length for seg in layout(label, n, s=s))


def _split_segments(label, n, s, params):
    segs = layout(label, n, s=s)
    params = np.asarray(params, dtype=float).ravel()
    want = sum(seg.length for seg in segs)
    if params.size != want:
        raise WrongParamCount(
            f"class {ClassLabel.parse(label)}, n={n}: expected {want} "
            f"parameters, got {params.size}"
        )
    out = {}
    pos = 0
    for seg in segs:
        out[seg.name] = params[pos : pos + seg.length]
        pos += seg.length
    return out


def _hermitian(diag, up_re, up_im, n):
    x = np.zeros((n, n), dtype=complex)
    iu = np.triu_indices(n, 1)
    x[iu] = up_re + 1j * up_im
    x = x + x.conj().T
    x[np.arange(n), np.arange(n)] = diag
    return x


def _real_symmetric(diag, upper, n):
    a = np.zeros((n, n))
    iu = np.triu_indices(n, 1)
    a[iu] = upper
    a = a + a.T
    a[np.arange(n), np.arange(n)] = diag
    return a


def _real_skew(upper, n):
    y = np.zeros((n, n))
    iu = np.triu_indices(n, 1)
    y[iu] = upper
    return y - y.T


def _complex_skew(up_re, up_im, n):
    z = np.zeros((n, n), dtype=complex)
    iu = np.triu_indices(n, 1)
    z[iu] = up_re + 1j * up_im
    return z - z.T


def _complex_symmetric(diag_re, diag_im, up_re, up_im, n):
    z = np.zeros((n, n), dtype=complex)
    iu = np.triu_indices(n, 1)
    z[iu] = up_re + 1j * up_im
    z = z + z.T
    z[np.arange(n), np.arange(n)] = diag_re + 1j * diag_im
    return z


def _chiral_wrap(block, s, t):
    d = s + t
    x = np.zeros((d, d), dtype=complex)
    x[:s, s:] = block
    x[s:, :s] = block.conj().T
    return x


def _assemble(label, n, s, seg):
    if label is ClassLabel.A:
        return _hermitian(seg["diag"], seg["off_re"], seg["off_im"], n)
    if label is ClassLabel.AI:
        return _real_symmetric(seg["diag"], seg["off"], n).astype(complex)
    if label is ClassLabel.AII:
        x1 = _hermitian(seg["x1_diag"], seg["x1_off_re"], seg["x1_off_im"], n)
        x2 = _complex_skew(seg["x2_off_re"], seg["x2_off_im"], n)
        return np.block([[x1, x2], [-x2.conj(), x1.conj()]])
    if label is ClassLabel.AIII:
        t = n - s
        z = (seg["z_re"] + 1j * seg["z_im"]).reshape(s, t)
        return _chiral_wrap(z, s, t)
    if label is ClassLabel.BDI:
        t = n - s
        y = seg["y"].reshape(s, t)
        return _chiral_wrap(1j * y, s, t)
    if label is ClassLabel.CII:
        t = n - s
        u = (seg["u_re"] + 1j * seg["u_im"]).reshape(s, t)
        v = (seg["v_re"] + 1j * seg["v_im"]).reshape(s, t)
        x = np.block([[u, v], [-v.conj(), u.conj()]])
        return _chiral_wrap(x, 2 * s, 2 * t)
    if label in (ClassLabel.B, ClassLabel.D):
        d = class_spec(label).d(n)
        return 1j * _real_skew(seg["y_upper"], d)
    if label in (ClassLabel.DIII_EVEN, ClassLabel.DIII_ODD):
        y1 = 1j * _real_skew(seg["y1_upper"], n)
        y2 = 1j * _real_skew(seg["y2_upper"], n)
        return np.block([[y1, y2], [y2, -y1]])
    if label is ClassLabel.C:
        x1 = _hermitian(seg["x1_diag"], seg["x1_off_re"], seg["x1_off_im"], n)
        x2 = _complex_symmetric(
            seg["x2_diag_re"], seg["x2_diag_im"], seg["x2_off_re"], seg["x2_off_im"], n
        )
        return np.block([[x1, x2], [x2.conj(), -x1.conj()]])
    if label is ClassLabel.CI:
        a = _real_symmetric(seg["a_diag"], seg["a_off"], n)
        b = _real_symmetric(seg["b_diag"], seg["b_off"], n)
        return np.block([[a, b], [b, -a]]).astype(complex)
    raise AssertionError(label)


def _read(label, n, s, x):
    """Read the free coordinates out of a dense matrix, no validation."""
    iu = np.triu_indices(n, 1)
    if label is ClassLabel.A:
        return {
            "diag": np.diag(x).real.copy(),
            "off_re": x[iu].real,
            "off_im": x[iu].imag,
        }
    if label is ClassLabel.AI:
        return {"diag": np.diag(x).real.copy(), "off": x[iu].real}
    if label is ClassLabel.AII:
        x1 = x[:n, :n]
        x2 = x[:n, n:]
        return {
            "x1_diag": np.diag(x1).real.copy(),
            "x1_off_re": x1[iu].real,
            "x1_off_im": x1[iu].imag,
            "x2_off_re": x2[iu].real,
            "x2_off_im": x2[iu].imag,
        }
    if label is ClassLabel.AIII:
        z = x[:s, s:]
        return {"z_re": z.real.ravel().copy(), "z_im": z.imag.ravel().copy()}
    if label is ClassLabel.BDI:
        return {"y": x[:s, s:].imag.ravel().copy()}
    if label is ClassLabel.CII:
        t = n - s
        blk = x[: 2 * s, 2 * s :]
        u = blk[:s, :t]
        v = blk[:s, t:]
        return {
            "u_re": u.real.ravel().copy(),
            "u_im": u.imag.ravel().copy(),
            "v_re": v.real.ravel().copy(),
            "v_im": v.imag.ravel().copy(),
        }
    if label in (ClassLabel.B, ClassLabel.D):
        d = class_spec(label).d(n)
        iud = np.triu_indices(d, 1)
        return {"y_upper": x[iud].imag}
    if label in (ClassLabel.DIII_EVEN, ClassLabel.DIII_ODD):
        return {
            "y1_upper": x[:n, :n][iu].imag,
            "y2_upper": x[:n, n:][iu].imag,
        }
    if label is ClassLabel.C:
        x1 = x[:n, :n]
        x2 = x[:n, n:]
        return {
            "x1_diag": np.diag(x1).real.copy(),
            "x1_off_re": x1[iu].real,
            "x1_off_im": x1[iu].imag,
            "x2_diag_re": np.diag(x2).real.copy(),
            "x2_diag_im": np.diag(x2).imag.copy(),
            "x2_off_re": x2[iu].real,
            "x2_off_im": x2[iu].imag,
        }
    if label is ClassLabel.CI:
        a = x[:n, :n]
        b = x[:n, n:]
        return {
            "a_diag": np.diag(a).real.copy(),
            "a_off": a[iu].real,
            "b_diag": np.diag(b).real.copy(),
            "b_off": b[iu].real,
        }
    raise AssertionError(label)


def build(label, n, params, s=None):
    """Assemble the class matrix with the given free coordinates.

    Linear and injective; ``extract(build(params)) == params`` exactly.
    Raises WrongParamCount when the vector length is not free_dim.
    """
    label = ClassLabel.parse(label)
    seg = _split_segments(label, n, s, params)
    dense = _sealed(_assemble(label, n, s, seg))
    return StructuredMatrix(label, n, s, dense)


def extract(sm):
    """Free coordinates of a structured matrix, in layout order.

    Exact left inverse of :func:`build`. Takes a StructuredMatrix; wrap raw
    arrays with ``StructuredMatrix.from_dense`` first so violations surface
    as errors instead of silently dropped coordinates.
    """
    seg = _read(sm.label, sm.n, sm.s, sm.matrix)
    return np.concatenate(
        [seg[s_.name] for s_ in layout(sm.label, sm.n, s=sm.s)]
        or [np.empty(0)]
    )


def _block_views(x, rows, cols):
    return x[:rows, :cols], x[:rows, cols:], x[rows:, :cols], x[rows:, cols:]


def _max_abs(a):
    return float(np.max(np.abs(a))) if a.size else 0.0


def validate(label, n, dense, s=None):
    """Check a dense candidate against the class constraints.

    Returns a list of :class:`Violation` (empty when the matrix belongs to
    the class). Residuals are compared against 1e-12 * scale with
    scale = max(1, largest absolute entry).
    """
    label = ClassLabel.parse(label)
    x = np.asarray(dense, dtype=complex)
    d = class_spec(label).d(n)
    if x.ndim != 2 or x.shape != (d, d):
        return [Violation(f"shape must be ({d}, {d})", float("inf"))]
    scale = max(1.0, _max_abs(x))
    tol = ATOL_FACTOR * scale
    checks = [("hermitian", _max_abs(x - x.conj().T))]
    if label is ClassLabel.AI:
        checks.append(("real entries", _max_abs(x.imag)))
    elif label is ClassLabel.AII:
        x1, x2, x3, x4 = _block_views(x, n, n)
        checks += [
            ("upper-right block skew-symmetric", _max_abs(x2 + x2.T)),
            ("lower-left block = -conj(upper-right)", _max_abs(x3 + x2.conj())),
            ("lower-right block = conj(upper-left)", _max_abs(x4 - x1.conj())),
        ]
    elif label in (ClassLabel.AIII, ClassLabel.BDI, ClassLabel.CII):
        rows = s if label is not ClassLabel.CII else 2 * s
        x1, x2, x3, x4 = _block_views(x, rows, rows)
        checks += [
            ("upper-left block zero", _max_abs(x1)),
            ("lower-right block zero", _max_abs(x4)),
        ]
        if label is ClassLabel.BDI:
            checks.append(("off-diagonal block purely imaginary", _max_abs(x2.real)))
        if label is ClassLabel.CII:
            t = n - s
            u = x2[:s, :t]
            v = x2[:s, t:]
            checks += [
                ("off-block lower-left = -conj(V)", _max_abs(x2[s:, :t] + v.conj())),
                ("off-block lower-right = conj(U)", _max_abs(x2[s:, t:] - u.conj())),
            ]
    elif label in (ClassLabel.B, ClassLabel.D):
        y = x.imag
        checks += [
            ("purely imaginary", _max_abs(x.real)),
            ("imaginary part skew-symmetric", _max_abs(y + y.T)),
        ]
    elif label in (ClassLabel.DIII_EVEN, ClassLabel.DIII_ODD):
        x1, x2, x3, x4 = _block_views(x, n, n)
        checks += [
            ("upper-left block purely imaginary", _max_abs(x1.real)),
            ("upper-right block purely imaginary", _max_abs(x2.real)),
            ("lower-left block = upper-right", _max_abs(x3 - x2)),
            ("lower-right block = -upper-left", _max_abs(x4 + x1)),
        ]
    elif label is ClassLabel.C:
        x1, x2, x3, x4 = _block_views(x, n, n)
        checks += [
            ("upper-right block symmetric", _max_abs(x2 - x2.T)),
            ("lower-left block = conj(upper-right)", _max_abs(x3 - x2.conj())),
            ("lower-right block = -conj(upper-left)", _max_abs(x4 + x1.conj())),
        ]
    elif label is ClassLabel.CI:
        x1, x2, x3, x4 = _block_views(x, n, n)
        checks += [
            ("real entries", _max_abs(x.imag)),
            ("upper-right block symmetric", _max_abs(x2 - x2.T)),
            ("lower-left block = upper-right", _max_abs(x3 - x2)),
            ("lower-right block = -upper-left", _max_abs(x4 + x1)),
        ]
    return [Violation(name, res) for name, res in checks if res > tol]


def _anti_hermitian(rng, n):
    g = standard_normal(rng, (n, n)) + 1j * standard_normal(rng, (n, n))
    return (g - g.conj().T) / 2


def _skew(rng, n):
    g = standard_normal(rng, (n, n))
    return (g - g.T) / 2


def _unitary_as_real(u):
    """U(n) -> SO(2n) intertwiner u = u_R + i u_I -> [[u_R, u_I], [-u_I, u_R]]."""
    return np.block([[u.real, u.imag], [-u.imag, u.real]])


def _symplectic(rng, n):
    """A member of Sp(n) in U(2n): exp of a quaternionic anti-Hermitian."""
    s1 = _anti_hermitian(rng, n)
    g2 = standard_normal(rng, (n, n)) + 1j * standard_normal(rng, (n, n))
    s2 = (g2 + g2.T) / 2
    return expm(np.block([[s1, s2], [-s2.conj(), s1.conj()]]))


def _stabilizer_element(label, n, s, rng):
    """Seeded element of the stabilizer group of the class, as a unitary.

    Elements are exp(S) with S a Gaussian element of the stabilizer Lie
    algebra; exactly in-group, approximately Haar (sufficient for the
    invariance checks this op feeds).
    """
    if label is ClassLabel.A:
        return expm(_anti_hermitian(rng, n))
    if label is ClassLabel.AI:
        return expm(_skew(rng, n)).astype(complex)
    if label is ClassLabel.AII:
        return _symplectic(rng, n)
    if label is ClassLabel.AIII:
        t = n - s
        ks = expm(_anti_hermitian(rng, s))
        kt = expm(_anti_hermitian(rng, t))
        out = np.zeros((n, n), dtype=complex)
        out[:s, :s] = ks
        out[s:, s:] = kt
        return out
    if label is ClassLabel.BDI:
        t = n - s
        ks = expm(_skew(rng, s))
        kt = expm(_skew(rng, t))
        out = np.zeros((n, n), dtype=complex)
        out[:s, :s] = ks
        out[s:, s:] = kt
        return out
    if label is ClassLabel.CII:
        t = n - s
        ks = _symplectic(rng, s)
        kt = _symplectic(rng, t)
        out = np.zeros((2 * n, 2 * n), dtype=complex)
        out[: 2 * s, : 2 * s] = ks
        out[2 * s :, 2 * s :] = kt
        return out
    if label in (ClassLabel.B, ClassLabel.D):
        d = class_spec(label).d(n)
        return expm(_skew(rng, d)).astype(complex)
    if label in (ClassLabel.DIII_EVEN, ClassLabel.DIII_ODD, ClassLabel.CI):
        u = expm(_anti_hermitian(rng, n))
        return _unitary_as_real(u).astype(complex)
    if label is ClassLabel.C:
        return _symplectic(rng, n)
    raise AssertionError(label)


def stabilizer_conjugate(sm, seed):
    """Conjugate by a seeded stabilizer element: k X k^*.

    The result stays in the class with the spectrum unchanged (both up to
    floating-point error well under 1e-9 * scale). The conjugated matrix is
    reprojected onto its free coordinates so the returned StructuredMatrix
    is exactly structural.
    """
    rng = stream(seed, 0)
    k = _stabilizer_element(sm.label, sm.n, sm.s, rng)
    rotated = k @ sm.matrix @ k.conj().T
    seg = _read(sm.label, sm.n, sm.s, rotated)
    params = np.concatenate(
        [seg[s_.name] for s_ in layout(sm.label, sm.n, s=sm.s)] or [np.empty(0)]
    )
    return build(sm.label, sm.n, params, s=sm.s)
