"""Plane cubic curves: evaluation, singular points and projective type.

A ternary cubic is stored as ten coefficients in the monomial order of
:func:`equiloci.forms.monomials` (x0^3, x0^2 x1, ..., x2^3).  The type is
decided from the singular locus: number of singular points, the rank of
the Hessian there, and whether a tangent line is a component.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .forms import format_form, interpolate_form, monomials

EXPS = monomials(3, 3)
_EXP_ARR = np.array(EXPS)

SINGULAR_TOL = 1e-7
CLUSTER_TOL = 1e-3
HESSIAN_RANK_TOL = 1e-5


class CubicType(Enum):
    SMOOTH = "Smooth"
    NODAL = "Nodal"
    CUSPIDAL = "Cuspidal"
    CONIC_PLUS_CHORD = "ConicPlusChord"
    CONIC_PLUS_TANGENT = "ConicPlusTangent"
    THREE_LINES_GENERAL = "ThreeLinesGeneral"
    THREE_LINES_CONCURRENT = "ThreeLinesConcurrent"
    DOUBLE_LINE_PLUS_LINE = "DoubleLinePlusLine"
    TRIPLE_LINE = "TripleLine"
    IDENTICALLY_ZERO = "IdenticallyZero"


@dataclass
class TernaryCubic:
    """Ten coefficients of a homogeneous cubic in (x0, x1, x2)."""

    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex).reshape(10)

    @property
    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    def normalized(self):
        n = self.norm
        return TernaryCubic(self.coeffs / n if n else self.coeffs)

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        pts = np.atleast_2d(x)
        vals = np.prod(pts[:, None, :] ** _EXP_ARR[None], axis=2) @ self.coeffs
        return vals if x.ndim == 2 else vals[0]

    def gradient(self, x):
        x = np.asarray(x, dtype=complex)
        g = np.zeros(3, complex)
        for c, e in zip(self.coeffs, EXPS):
            if c == 0:
                continue
            for k in range(3):
                if e[k]:
                    ee = list(e)
                    ee[k] -= 1
                    g[k] += c * e[k] * np.prod(x ** np.array(ee))
        return g

    def hessian(self, x):
        x = np.asarray(x, dtype=complex)
        hm = np.zeros((3, 3), complex)
        for c, e in zip(self.coeffs, EXPS):
            if c == 0:
                continue
            for i in range(3):
                for j in range(3):
                    ee = list(e)
                    f = ee[i]
                    ee[i] -= 1
                    if ee[i] < 0:
                        continue
                    f *= ee[j]
                    ee[j] -= 1
                    if ee[j] < 0 or f == 0:
                        continue
                    hm[i, j] += c * f * np.prod(x ** np.array(ee))
        return hm

    def substitute(self, m):
        """Cubic x -> F(m x)."""
        m = np.asarray(m, dtype=complex)
        return TernaryCubic(interpolate_form(lambda pts: self(pts @ m.T), 3, 3))

    def on_line(self, line, samples=7):
        """Max |F| on unit points of the line {l . x = 0}, relative to |F|."""
        _, _, vh = np.linalg.svd(np.asarray(line, complex).reshape(1, 3))
        u, v = vh[1].conj(), vh[2].conj()
        ts = np.exp(2j * np.pi * np.arange(samples) / samples)
        pts = np.array([(u + t * v) / np.sqrt(2) for t in ts] + [u, v])
        return float(np.max(np.abs(self(pts)))) / max(self.norm, 1e-300)

    def format(self):
        return format_form(self.coeffs, EXPS)


@dataclass
class CubicAnalysis:
    type: CubicType
    singular_points: list = field(default_factory=list)
    hessian_ranks: list = field(default_factory=list)
    lines: list = field(default_factory=list)
    notes: str = ""


def _random_unitary(rng):
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _quad_in_y(g, x):
    """Coefficients (a, b, c) of y -> g(x, y, 1) for a quadratic g."""
    ys = np.array([0.0, 1.0, -1.0])
    vals = np.array([g(np.array([x, y, 1.0])) for y in ys])
    c = vals[0]
    a = (vals[1] + vals[2]) / 2.0 - c
    b = (vals[1] - vals[2]) / 2.0
    return a, b, c


def _grad_component(cubic, k):
    return lambda p: cubic.gradient(p)[k]


def _polish_singular(cubic, p, iters=60):
    """Gauss-Newton on grad F = 0 restricted to a unit sphere chart."""
    p = p / np.linalg.norm(p)
    for _ in range(iters):
        g = cubic.gradient(p)
        hm = cubic.hessian(p)
        # tangent directions orthogonal to p
        _, _, vh = np.linalg.svd(p.reshape(1, 3))
        t = vh[1:].conj().T
        jac = hm @ t
        step, *_ = np.linalg.lstsq(jac, -g, rcond=None)
        p_new = p + t @ step
        p_new = p_new / np.linalg.norm(p_new)
        if np.linalg.norm(t @ step) < 1e-15:
            p = p_new
            break
        p = p_new
    return p


def singular_points(cubic, seed=0):
    """Singular points of a cubic, or None when the singular locus is a curve.

    In a random unitary chart, the partial derivatives in x and y are two
    conics; their resultant in y is a quartic in x whose roots give the
    candidates, which are then polished and filtered on the full gradient.
    """
    f = cubic.normalized()
    rng = np.random.default_rng(seed)
    for attempt in range(4):
        q = _random_unitary(rng)
        g = f.substitute(q)
        gx, gy = _grad_component(g, 0), _grad_component(g, 1)
        nodes = np.exp(2j * np.pi * np.arange(5) / 5) * 1.3
        res = []
        for x in nodes:
            a1, b1, c1 = _quad_in_y(gx, x)
            a2, b2, c2 = _quad_in_y(gy, x)
            res.append((a1 * c2 - a2 * c1) ** 2 - (a1 * b2 - a2 * b1) * (b1 * c2 - b2 * c1))
        van = np.vander(nodes, 5)
        rpoly = np.linalg.solve(van, np.array(res))
        if np.max(np.abs(rpoly)) <= 1e-10:
            # check this is not an unlucky chart
            if attempt < 1:
                continue
            return None
        nz = np.nonzero(np.abs(rpoly) > 1e-12 * np.max(np.abs(rpoly)))[0]
        rpoly = rpoly[nz[0]:]
        xs = np.roots(rpoly) if len(rpoly) > 1 else np.array([])
        cands = []
        for x in xs:
            a1, b1, c1 = _quad_in_y(gx, x)
            a2, b2, c2 = _quad_in_y(gy, x)
            lin = a2 * b1 - a1 * b2
            ys = []
            if abs(lin) > 1e-9:
                ys.append((a1 * c2 - a2 * c1) / lin)
            else:
                for (a, b, c) in ((a1, b1, c1), (a2, b2, c2)):
                    if abs(a) > 1e-12:
                        disc = np.sqrt(complex(b * b - 4 * a * c))
                        ys.extend([(-b + disc) / (2 * a), (-b - disc) / (2 * a)])
                    elif abs(b) > 1e-12:
                        ys.append(-c / b)
            for y in ys:
                cands.append(np.array([x, y, 1.0], dtype=complex))
        pts = []
        for c in cands:
            p = _polish_singular(g, c)
            if np.linalg.norm(g.gradient(p)) <= SINGULAR_TOL:
                pts.append(q @ p)
        return _cluster(pts)
    return None


def _cluster(points):
    out = []
    for p in points:
        p = p / np.linalg.norm(p)
        for o in out:
            wedge = np.outer(o, p) - np.outer(p, o)
            if np.sqrt(np.sum(np.abs(wedge) ** 2) / 2) <= CLUSTER_TOL:
                break
        else:
            k = int(np.argmax(np.abs(p)))
            out.append(p * np.conj(p[k]) / abs(p[k]))
    return out


def _hessian_rank(cubic, p):
    hm = cubic.hessian(p / np.linalg.norm(p))
    s = np.linalg.svd(hm, compute_uv=False)
    scale = max(cubic.norm, 1e-300)
    return int(np.sum(s > HESSIAN_RANK_TOL * scale)), hm


def line_through(p, q):
    """Coefficient vector l with l . p = l . q = 0."""
    _, _, vh = np.linalg.svd(np.array([p, q]))
    return vh[-1].conj()


def analyze_cubic(cubic, seed=0):
    """Projective type of a complex plane cubic plus supporting data."""
    if cubic.norm <= 1e-12:
        return CubicAnalysis(CubicType.IDENTICALLY_ZERO)
    f = cubic.normalized()
    pts = singular_points(f, seed=seed)
    if pts is None:
        rng = np.random.default_rng(seed + 1)
        grads = np.array([f.gradient(rng.normal(size=3) + 1j * rng.normal(size=3))
                          for _ in range(6)])
        grads /= np.linalg.norm(grads, axis=1, keepdims=True)
        s = np.linalg.svd(grads, compute_uv=False)
        if s[1] <= 1e-7:
            line = grads[0] / np.linalg.norm(grads[0])
            return CubicAnalysis(CubicType.TRIPLE_LINE, lines=[line])
        return CubicAnalysis(CubicType.DOUBLE_LINE_PLUS_LINE)
    ranks = [_hessian_rank(f, p)[0] for p in pts]
    n = len(pts)
    if n == 0:
        return CubicAnalysis(CubicType.SMOOTH)
    if n == 1:
        p = pts[0]
        rank, hm = _hessian_rank(f, p)
        if rank == 0:
            return CubicAnalysis(CubicType.THREE_LINES_CONCURRENT, pts, ranks)
        if rank == 2:
            return CubicAnalysis(CubicType.NODAL, pts, ranks)
        # rank one: the Hessian is c * l l^T for the tangent line l
        _, _, vh = np.linalg.svd(hm)
        line = vh[0]
        if f.on_line(line) <= 1e-4:
            return CubicAnalysis(CubicType.CONIC_PLUS_TANGENT, pts, ranks, lines=[line])
        return CubicAnalysis(CubicType.CUSPIDAL, pts, ranks)
    if n == 2:
        line = line_through(pts[0], pts[1])
        return CubicAnalysis(CubicType.CONIC_PLUS_CHORD, pts, ranks, lines=[line])
    if n == 3:
        lines = [line_through(pts[i], pts[j]) for i, j in ((0, 1), (0, 2), (1, 2))]
        return CubicAnalysis(CubicType.THREE_LINES_GENERAL, pts, ranks, lines=lines)
    return CubicAnalysis(CubicType.DOUBLE_LINE_PLUS_LINE, pts, ranks,
                         notes=f"{n} isolated singular candidates")


def classify_cubic(cubic, seed=0):
    """Projective type of a plane cubic (a :class:`CubicType`)."""
    if not isinstance(cubic, TernaryCubic):
        cubic = TernaryCubic(cubic)
    return analyze_cubic(cubic, seed=seed).type
