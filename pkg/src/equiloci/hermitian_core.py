"""Hermitian form of signature (2,1) on C^3 and basic projective helpers.

The form is <u, v> = v^H J u with J = diag(1, 1, -1).  It is linear in the
first slot and conjugate linear in the second.  Points of the projective
plane are represented by any nonzero vector; routines that return points
return the canonical representative produced by :func:`normalize`.
"""

import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import expm

from .errors import (
    IllConditionedWarning,
    NonNegativePoint,
    ValidationError,
)

J = np.diag([1.0, 1.0, -1.0]).astype(complex)

SIGNATURE_TOL = 1e-9
RANK_TOL = 1e-9
PROJECTIVE_TOL = 1e-18
EIGEN_RESIDUAL_TOL = 1e-10


class SignatureTag(Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    ISOTROPIC = "Isotropic"


@dataclass(frozen=True)
class Signature:
    tag: SignatureTag
    value: float

    @property
    def is_negative(self):
        return self.tag is SignatureTag.NEGATIVE

    @property
    def is_positive(self):
        return self.tag is SignatureTag.POSITIVE

    @property
    def is_isotropic(self):
        return self.tag is SignatureTag.ISOTROPIC


def as_vector(p):
    """Coerce to a complex 3-vector, rejecting the zero vector."""
    v = np.asarray(p, dtype=complex).reshape(-1)
    if v.shape != (3,):
        raise ValidationError(f"expected a 3-vector, got shape {np.shape(p)}")
    if not np.all(np.isfinite(v)):
        raise ValidationError("vector has non-finite entries")
    if np.linalg.norm(v) == 0.0:
        raise ValidationError("the zero vector is not a projective point")
    return v


def as_matrix(h):
    m = np.asarray(h, dtype=complex)
    if m.shape != (3, 3):
        raise ValidationError(f"expected a 3x3 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix has non-finite entries")
    return m


def inner(u, v):
    """Hermitian product <u, v> = v^H J u."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    return complex(np.conj(v) @ (J @ u))


def norm_sq(u):
    """<u, u>, always real."""
    return inner(u, u).real


def normalize(p):
    """Canonical representative: unit Euclidean norm, and the first
    coordinate of (numerically) largest modulus made real positive."""
    v = as_vector(p)
    v = v / np.linalg.norm(v)
    mods = np.abs(v)
    k = int(np.argmax(mods >= mods.max() * (1.0 - 1e-12)))
    return v * (np.conj(v[k]) / mods[k])


def projective_distance(u, v):
    """Sine of the Euclidean angle between the complex lines through u and v.

    Uses the Lagrange identity so that nearly equal points give an accurate
    small number instead of a cancelled difference.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    wedge = np.outer(u, v) - np.outer(v, u)
    num = np.sum(np.abs(wedge) ** 2) / 2.0
    den = np.vdot(u, u).real * np.vdot(v, v).real
    return float(np.sqrt(max(num / den, 0.0)))


def projectively_equal(u, v, tol=PROJECTIVE_TOL):
    """True when the squared sine of the angle between u and v is <= tol."""
    return projective_distance(u, v) ** 2 <= tol


def point_signature(p, tol=SIGNATURE_TOL):
    """Sign of <p, p> for the unit-norm representative of p."""
    v = as_vector(p)
    v = v / np.linalg.norm(v)
    value = norm_sq(v)
    if value > tol:
        tag = SignatureTag.POSITIVE
    elif value < -tol:
        tag = SignatureTag.NEGATIVE
    else:
        tag = SignatureTag.ISOTROPIC
    return Signature(tag, value)


def distance(p1, p2):
    """Hyperbolic distance between two negative points.

    cosh^2 d = <p1,p2><p2,p1> / (<p1,p1><p2,p2>).
    """
    for p in (p1, p2):
        if not point_signature(p).is_negative:
            raise NonNegativePoint("distance needs two negative points")
    p1 = as_vector(p1) / np.linalg.norm(p1)
    p2 = as_vector(p2) / np.linalg.norm(p2)
    c2 = abs(inner(p1, p2)) ** 2 / (norm_sq(p1) * norm_sq(p2))
    return float(np.arccosh(np.sqrt(max(c2, 1.0))))


def adjoint(h):
    """Adjoint with respect to the form: h* = J^-1 h^H J."""
    h = as_matrix(h)
    return J @ h.conj().T @ J


def is_self_adjoint(h, tol=1e-9):
    h = as_matrix(h)
    scale = max(np.linalg.norm(h), 1e-300)
    return np.linalg.norm(h - adjoint(h)) <= tol * scale


def rank_kernel(h, tol=RANK_TOL):
    """Numerical rank and an orthonormal kernel basis (columns).

    Singular values below tol * largest singular value count as zero.
    """
    m = np.asarray(h, dtype=complex)
    _, s, vh = np.linalg.svd(m)
    if s[0] == 0.0:
        return 0, np.eye(m.shape[1], dtype=complex)
    rank = int(np.sum(s > tol * s[0]))
    kernel = vh[rank:].conj().T
    return rank, kernel


def null_vector(m):
    """Right singular vector for the smallest singular value."""
    _, _, vh = np.linalg.svd(np.asarray(m, dtype=complex))
    return vh[-1].conj()


def orthogonal_point(u, v):
    """A vector x with <x, u> = <x, v> = 0 (the polar of the line uv)."""
    rows = np.array([np.conj(J @ np.asarray(u, complex)),
                     np.conj(J @ np.asarray(v, complex))])
    return null_vector(rows)


def _cbrt(z):
    return complex(z) ** (1.0 / 3.0) if z != 0 else 0j


def cubic_roots(coeffs):
    """All three roots of a*t^3 + b*t^2 + c*t + d with a != 0.

    One root from the closed form, polished, then deflation to a quadratic.
    Exact double and triple roots are detected from the depressed cubic so
    that they come out to full precision rather than to cube-root accuracy.
    """
    a, b, c, d = (complex(x) for x in coeffs)
    if a == 0:
        raise ValueError("leading coefficient must be nonzero")
    b, c, d = b / a, c / a, d / a
    shift = b / 3.0
    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d
    scale = max(abs(b), abs(c) ** 0.5, abs(d) ** (1.0 / 3.0), 1e-300)
    real_input = all(abs(z.imag) == 0.0 for z in (b, c, d))

    if abs(p) <= 1e-11 * scale ** 2 and abs(q) <= 1e-11 * scale ** 3:
        t = np.array([0j, 0j, 0j])
        return t - shift
    disc_terms = 4.0 * abs(p) ** 3 + 27.0 * abs(q) ** 2
    disc = 4.0 * p ** 3 + 27.0 * q ** 2
    if abs(disc) <= 1e-11 * disc_terms and p != 0:
        double = -1.5 * q / p
        single = 3.0 * q / p
        t = np.array([double, double, single])
        if real_input:
            t = t.real.astype(complex)
        return t - shift

    def f(x):
        return ((x + b) * x + c) * x + d

    def df(x):
        return (3.0 * x + 2.0 * b) * x + c

    sq = np.sqrt(complex((q / 2.0) ** 2 + (p / 3.0) ** 3))
    u3 = -q / 2.0 + sq if abs(-q / 2.0 + sq) >= abs(-q / 2.0 - sq) else -q / 2.0 - sq
    u = _cbrt(u3)
    omega = np.exp(2j * np.pi / 3.0)
    cands = []
    for k in range(3):
        uk = u * omega ** k
        cands.append(uk - p / (3.0 * uk) - shift if uk != 0 else -shift)
    if real_input:
        r0 = min(cands, key=lambda z: abs(z.imag))
        r0 = complex(r0.real) if abs(r0.imag) <= 1e-7 * (1 + abs(r0)) else r0
    else:
        r0 = cands[0]
    for _ in range(3):
        g = df(r0)
        if g == 0:
            break
        step = f(r0) / g
        r0 = r0 - step
        if abs(step) <= 1e-16 * (1 + abs(r0)):
            break
    # deflate: t^3 + b t^2 + c t + d = (t - r0)(t^2 + B t + C)
    B = b + r0
    C = c + r0 * B
    disc2 = np.sqrt(complex(B * B - 4.0 * C))
    den = -B - disc2 if abs(-B - disc2) >= abs(-B + disc2) else -B + disc2
    if den == 0:
        r1 = r2 = 0j
    else:
        r1 = den / 2.0
        r2 = 2.0 * C / den
    roots = []
    for r in (r0, r1, r2):
        g = df(r)
        if g != 0 and abs(f(r) / g) < 1e-3 * (1 + abs(r)):
            r = r - f(r) / g
        roots.append(r)
    return np.array(roots)


def eigen3(h):
    """Eigenpairs of a 3x3 matrix.

    Eigenvalues from the closed-form cubic with Newton polish; eigenvectors
    from the smallest singular vector of h - lambda I.  Returns a list of
    (eigenvalue, unit eigenvector) pairs.  Emits IllConditionedWarning when
    some pair misses the residual target.
    """
    h = as_matrix(h)
    tr = np.trace(h)
    minors = (h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0]
              + h[0, 0] * h[2, 2] - h[0, 2] * h[2, 0]
              + h[1, 1] * h[2, 2] - h[1, 2] * h[2, 1])
    det = np.linalg.det(h)
    values = cubic_roots([1.0, -tr, minors, -det])
    scale = max(np.linalg.norm(h, 2), 1e-300)
    pairs = []
    worst = 0.0
    for lam in values:
        m = h - lam * np.eye(3)
        _, s, vh = np.linalg.svd(m)
        vec = vh[-1].conj()
        pairs.append((complex(lam), vec))
        worst = max(worst, float(np.linalg.norm(h @ vec - lam * vec)) / scale)
    if worst > EIGEN_RESIDUAL_TOL:
        warnings.warn(f"eigen3 residual {worst:.2e} above target",
                      IllConditionedWarning, stacklevel=2)
    return pairs


def hermitian_basis():
    """Nine Hermitian 3x3 matrices forming a real basis of Herm(3)."""
    basis = []
    for i in range(3):
        e = np.zeros((3, 3), complex)
        e[i, i] = 1.0
        basis.append(e)
    for i in range(3):
        for j in range(i + 1, 3):
            e = np.zeros((3, 3), complex)
            e[i, j] = e[j, i] = 1.0
            basis.append(e)
            e = np.zeros((3, 3), complex)
            e[i, j] = 1j
            e[j, i] = -1j
            basis.append(e)
    return basis


def selfadjoint_basis():
    """Real basis of the 9-dimensional space of self-adjoint maps."""
    return [J @ e for e in hermitian_basis()]


def realify(h):
    """Real 18-vector of a 3x3 complex matrix."""
    m = np.asarray(h, dtype=complex).reshape(-1)
    return np.concatenate([m.real, m.imag])


def unrealify(x):
    x = np.asarray(x, dtype=float)
    return (x[:9] + 1j * x[9:]).reshape(3, 3)


def random_unitary_21(rng, scale=1.0):
    """Random element of U(2,1): exponential of i times a self-adjoint map."""
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    herm = (a + a.conj().T) / 2.0
    return expm(1j * scale * (J @ herm))


def random_point(rng, kind="negative"):
    """Random vector of the requested signature, unit Euclidean norm."""
    while True:
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        if kind == "isotropic":
            v[2] = np.linalg.norm(v[:2]) * np.exp(1j * rng.uniform(0, 2 * np.pi))
            return v / np.linalg.norm(v)
        v = v / np.linalg.norm(v)
        s = norm_sq(v)
        if kind == "negative" and s < -0.05:
            return v
        if kind == "positive" and s > 0.05:
            return v
