"""Bisectors as self-adjoint traceless maps of rank two.

A map h with h* = h, tr h = 0 and rank 2 determines the bisector
B_h = {x : <hx, x> = 0}.  Its focus is ker h and its complex spine is the
projectivized image hV, the polar line of the focus.  The kind is read off
from the signature of the focus.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    CoincidentPoints,
    DegenerateSpan,
    FocusInput,
    IsotropicInput,
    NonNegativePoint,
    NotOnBisector,
    NotOnComplexSpine,
    NotParabolic,
    NotRankTwo,
    NotSelfAdjoint,
    NotTraceless,
    OnComplexSpine,
    OnRealSpine,
    ToleranceFailure,
    ValidationError,
)
from .hermitian_core import (
    J,
    as_matrix,
    as_vector,
    eigen3,
    inner,
    is_self_adjoint,
    norm_sq,
    normalize,
    null_vector,
    point_signature,
    projective_distance,
    rank_kernel,
)

MEMBERSHIP_TOL = 1e-9
GRAM_REAL_TOL = 1e-9


class Kind(Enum):
    HYPERBOLIC = "Hyperbolic"
    SPHERICAL = "Spherical"
    PARABOLIC = "Parabolic"


def rank_one_map(p):
    """The map x -> <x, p> p as a matrix, i.e. p p^H J."""
    p = np.asarray(p, dtype=complex)
    return np.outer(p, np.conj(p) @ J)


class BisectorMap:
    """A validated bisector map, scaled to unit Frobenius norm.

    Parameters
    ----------
    h : array_like, shape (3, 3)
        Self-adjoint, traceless, rank 2.  The sign is kept as given.
    """

    def __init__(self, h, tol=1e-9):
        h = as_matrix(h)
        scale = np.linalg.norm(h)
        if scale == 0:
            raise NotRankTwo("zero map")
        h = h / scale
        if not is_self_adjoint(h, tol):
            raise NotSelfAdjoint("map is not self-adjoint for the form")
        if abs(np.trace(h)) > tol:
            raise NotTraceless(f"trace {abs(np.trace(h)):.3e} is not zero")
        rank, kernel = rank_kernel(h)
        if rank != 2:
            raise NotRankTwo(f"map has rank {rank}, expected 2")
        self.h = h
        self.focus = normalize(kernel[:, 0])
        sig = point_signature(self.focus)
        if sig.is_positive:
            self.kind = Kind.HYPERBOLIC
        elif sig.is_negative:
            self.kind = Kind.SPHERICAL
        else:
            self.kind = Kind.PARABOLIC

    def __repr__(self):
        return f"BisectorMap(kind={self.kind.value}, focus={np.round(self.focus, 6)})"

    def __neg__(self):
        return BisectorMap(-self.h)

    def form(self, x):
        """The real number <hx, x>."""
        x = np.asarray(x, dtype=complex)
        return inner(self.h @ x, x).real

    @property
    def complex_spine_basis(self):
        """Two columns spanning hV, the polar line of the focus."""
        u, _, _ = np.linalg.svd(self.h)
        return u[:, :2]


@dataclass
class Geodesic:
    """Real span of two vectors whose Gram matrix is real.

    Its projectivization is a geodesic in a complex line (hyperbolic,
    spherical or euclidean according to the signature of the span).
    """

    w: np.ndarray
    w_prime: np.ndarray

    def __post_init__(self):
        self.w = as_vector(self.w)
        self.w_prime = as_vector(self.w_prime)
        basis = np.stack([self.w, self.w_prime], axis=1)
        real = np.concatenate([basis.real, basis.imag])
        if np.linalg.matrix_rank(real, tol=1e-10 * np.linalg.norm(real)) < 2:
            raise DegenerateSpan("geodesic vectors are real-proportional")
        g = self.gram()
        scale = np.linalg.norm(self.w) * np.linalg.norm(self.w_prime)
        if np.max(np.abs(g.imag)) > GRAM_REAL_TOL * scale:
            raise ValidationError("geodesic Gram matrix is not real")

    def gram(self):
        vs = (self.w, self.w_prime)
        return np.array([[inner(a, b) for b in vs] for a in vs])

    def points(self, n, offset=0.0):
        """n points cos(t) w + sin(t) w' spread over a half turn."""
        ts = offset + np.pi * np.arange(n) / n
        return [np.cos(t) * self.w + np.sin(t) * self.w_prime for t in ts]


@dataclass
class Slice:
    polar: np.ndarray
    focus: np.ndarray
    point: np.ndarray


@dataclass
class Meridian:
    """Real 3-dimensional span with real Gram matrix (an R-plane)."""

    basis: tuple

    def gram(self):
        return np.array([[inner(a, b) for b in self.basis] for a in self.basis])


@dataclass
class ParabolicBasis:
    p: np.ndarray
    hp: np.ndarray
    h2p: np.ndarray

    def gram(self):
        vs = (self.p, self.hp, self.h2p)
        return np.array([[inner(a, b) for b in vs] for a in vs])


def bisector_matrix(p1, p2):
    """Unnormalized map of the bisector of two negative points.

    <hx, y> = <x,p1><p1,y>/<p1,p1> - <x,p2><p2,y>/<p2,p2>.  Swapping the
    points negates h, and h12 + h23 = h13 holds exactly.
    """
    p1, p2 = as_vector(p1), as_vector(p2)
    return rank_one_map(p1) / norm_sq(p1) - rank_one_map(p2) / norm_sq(p2)


def bisector_from_points(p1, p2):
    """Bisector of two distinct negative points."""
    for p in (p1, p2):
        sig = point_signature(p)
        if sig.is_isotropic:
            raise IsotropicInput("points must be negative, got an isotropic point")
        if not sig.is_negative:
            raise NonNegativePoint("points must be negative")
    if projective_distance(p1, p2) <= 1e-9:
        raise CoincidentPoints("the two points coincide")
    return BisectorMap(bisector_matrix(p1, p2))


def contains(b, p, tol=MEMBERSHIP_TOL):
    """Whether p lies on the bisector: |<hp, p>| <= tol |h| |p|^2."""
    p = as_vector(p)
    h = b.h if isinstance(b, BisectorMap) else as_matrix(b)
    val = abs(inner(h @ p, p))
    return val <= tol * np.linalg.norm(h) * np.vdot(p, p).real


def same_bisector(b1, b2, tol=1e-9):
    """Equal as bisectors: unit-normalized maps agree up to sign."""
    h1 = b1.h if isinstance(b1, BisectorMap) else as_matrix(b1)
    h2 = b2.h if isinstance(b2, BisectorMap) else as_matrix(b2)
    if not (is_self_adjoint(h1) and is_self_adjoint(h2)):
        return False
    h1 = h1 / np.linalg.norm(h1)
    h2 = h2 / np.linalg.norm(h2)
    return min(np.linalg.norm(h1 - h2), np.linalg.norm(h1 + h2)) <= tol


def parabolic_normal_basis(b, seed=0):
    """Basis (p, hp, h^2 p) of a parabolic bisector with antidiagonal Gram.

    p is an isotropic point of B_h off the complex spine, scaled so that
    the Gram matrix is [[0,0,1],[0,1,0],[1,0,0]].  Then h^2 p spans the
    focus, hp and i h^2 p span the real spine.
    """
    if b.kind is not Kind.PARABOLIC:
        raise NotParabolic(f"bisector is {b.kind.value}")
    h, f = b.h, b.focus
    h2 = h @ h
    rng = np.random.default_rng(seed)
    for _ in range(50):
        d = rng.normal(size=3) + 1j * rng.normal(size=3)
        d /= np.linalg.norm(d)
        if abs(inner(d, f)) < 0.1 or abs(inner(h2 @ d, d)) < 1e-3:
            continue
        # move along hd to land on B_h, then along f to become isotropic
        r = -inner(h @ d, d).real / (2.0 * inner(h2 @ d, d).real)
        p = d + r * (h @ d)
        t = -norm_sq(p) / (2.0 * inner(f, p))
        p = p + t * f
        c = inner(h @ p, h @ p).real
        if c <= 0:
            continue
        p = p / np.sqrt(c)
        basis = ParabolicBasis(p, h @ p, h2 @ p)
        target = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
        if np.max(np.abs(basis.gram() - target)) <= 1e-9:
            return basis
    raise ToleranceFailure("could not build a parabolic normal basis")


def real_spine(b):
    """The real spine of a bisector as a :class:`Geodesic`."""
    if b.kind is Kind.PARABOLIC:
        nb = parabolic_normal_basis(b)
        return Geodesic(nb.hp, 1j * nb.h2p)
    pairs = sorted(eigen3(b.h), key=lambda t: -abs(t[0]))[:2]
    v1, v2 = pairs[0][1], pairs[1][1]
    if b.kind is Kind.HYPERBOLIC:
        g = inner(v1, v2)
        v2 = v2 * (g / abs(g))
        return Geodesic(v1, v2)
    v1 = v1 / np.sqrt(norm_sq(v1))
    v2 = v2 / np.sqrt(norm_sq(v2))
    return Geodesic(v1 + v2, 1j * (v2 - v1))


def bisector_from_spine(g):
    """Bisector whose real spine is the geodesic g.

    h = <-, w> i w' - <-, w'> i w.
    """
    if projective_distance(g.w, g.w_prime) <= 1e-9:
        raise DegenerateSpan("geodesic vectors span a single point")
    w, wp = g.w, g.w_prime
    h = 1j * np.outer(wp, np.conj(w) @ J) - 1j * np.outer(w, np.conj(wp) @ J)
    return BisectorMap(h)


def preimage(b, c):
    """Some q with hq = c (least squares), and the residual of the solve."""
    q, *_ = np.linalg.lstsq(b.h, c, rcond=None)
    return q, float(np.linalg.norm(b.h @ q - c)) / max(np.linalg.norm(c), 1e-300)


def on_complex_spine(b, c, tol=MEMBERSHIP_TOL):
    c = as_vector(c)
    return abs(inner(c, b.focus)) <= tol * np.linalg.norm(c)


def on_real_spine(b, c, tol=MEMBERSHIP_TOL):
    """Whether c lies on the real spine: c = hq for some q on B_h."""
    c = as_vector(c)
    if not on_complex_spine(b, c, tol):
        return False
    q, _ = preimage(b, c)
    return abs(inner(c, q)) <= tol * np.linalg.norm(q) * np.linalg.norm(c)


def slice_through(b, p):
    """The slice of B_h through p: the line joining p and the focus."""
    p = as_vector(p)
    if not contains(b, p):
        raise NotOnBisector("point is not on the bisector")
    if projective_distance(p, b.focus) <= 1e-9:
        raise FocusInput("the focus lies on every slice")
    return Slice(polar=normalize(b.h @ p), focus=b.focus, point=normalize(p))


def meridian_through(b, q):
    """Meridian through a point q of B_h off the complex spine.

    Returned as an R-span (q', w, w') where w, w' span the real spine and
    q' is q rephased so that all Gram entries are real.
    """
    q = as_vector(q)
    q = q / np.linalg.norm(q)
    if not contains(b, q):
        raise NotOnBisector("point is not on the bisector")
    if projective_distance(q, b.focus) <= 1e-9:
        raise FocusInput("the focus lies on every meridian")
    if on_complex_spine(b, q):
        raise OnComplexSpine("point lies on the complex spine")
    g = real_spine(b)
    w = g.w / np.linalg.norm(g.w)
    wp = g.w_prime / np.linalg.norm(g.w_prime)
    a = max((inner(w, q), inner(wp, q)), key=abs)
    qq = q * (a / abs(a)) if abs(a) > 0 else q
    m = Meridian((qq, w, wp))
    gram = m.gram()
    if np.max(np.abs(gram.imag)) > 1e-8:
        raise ToleranceFailure("meridian Gram matrix failed to be real")
    return m


def normal_vector(b, p):
    """Normal covector at p: the map <-, p> hp as a 3x3 matrix.

    For a tangent vector v of B_h at p, Re <hp, v> = 0.
    """
    p = as_vector(p)
    if not contains(b, p):
        raise NotOnBisector("point is not on the bisector")
    return np.outer(b.h @ p, np.conj(p) @ J)


@dataclass
class SpineReflection:
    c1: np.ndarray
    c2: np.ndarray
    sign: float
    residual: float


def reflect_in_spine(b, c1):
    """Reflection in the real spine of a point c1 of the complex spine.

    Returns c2 together with scaled representatives such that
    h = sign * (<-, c1> c1 - <-, c2> c2) up to the unit normalization.
    """
    c1 = as_vector(c1)
    if not on_complex_spine(b, c1):
        raise NotOnComplexSpine("point is not on the complex spine")
    q1, _ = preimage(b, c1)
    c1 = b.h @ q1
    r1 = inner(q1, c1).real
    scale = np.linalg.norm(q1) * np.linalg.norm(c1)
    if abs(r1) <= MEMBERSHIP_TOL * scale:
        raise OnRealSpine("point lies on the real spine")
    rows = np.array([np.conj(J @ b.focus), np.conj(J @ q1)])
    c2 = null_vector(rows)
    q2, _ = preimage(b, c2)
    c2 = b.h @ q2
    r2 = inner(q2, c2).real
    if r1 * r2 >= 0:
        raise ToleranceFailure("reflection coefficients do not have opposite signs")
    a1 = c1 / np.sqrt(abs(r1))
    a2 = c2 / np.sqrt(abs(r2))
    sign = float(np.sign(r1))
    rebuilt = sign * (rank_one_map(a1) - rank_one_map(a2))
    residual = float(np.linalg.norm(rebuilt - b.h))
    return SpineReflection(a1, a2, sign, residual)


def _on_real_span(p, vectors):
    """Smallest singular value of [v_1, ..., v_k, -p, -ip] realified."""
    cols = [np.asarray(v, complex) / np.linalg.norm(v) for v in vectors]
    p = np.asarray(p, complex) / np.linalg.norm(p)
    cols += [-p, -1j * p]
    mat = np.stack([np.concatenate([c.real, c.imag]) for c in cols], axis=1)
    return float(np.linalg.svd(mat, compute_uv=False)[-1])


def geodesic_location(b, g, samples=7, tol=1e-8):
    """Whether a geodesic of B_h lies in a slice or in a meridian.

    Returns "Slice" when the complex line of the geodesic passes through
    the focus, "Meridian" when every sampled point lies in the meridian
    through one of them, and None otherwise.
    """
    pts = g.points(samples, offset=0.1)
    if any(not contains(b, p, tol) for p in pts):
        raise NotOnBisector("geodesic is not contained in the bisector")
    frame = np.stack([g.w / np.linalg.norm(g.w), g.w_prime / np.linalg.norm(g.w_prime),
                      b.focus], axis=1)
    if abs(np.linalg.det(frame)) <= tol:
        return "Slice"
    for q in pts:
        if on_complex_spine(b, q, 1e-6) or projective_distance(q, b.focus) <= 1e-6:
            continue
        m = meridian_through(b, q)
        if all(_on_real_span(p, m.basis) <= tol for p in pts):
            return "Meridian"
        return None
    return None
