"""Equitant families: loci equidistant from four points.

Four points p_i with <p_i, p_i> = sigma give rank-one maps
w_i = <-, p_i> p_i.  The maps sum_i r_i w_i with sum_i r_i = 0 form a
3-dimensional family W whose base is the set of points q with
|<q, p_i>| independent of i.  The points satisfy one linear relation
sum_i a_i p_i = 0; after rephasing, a_i > 0, and the coefficients decide
the shape of the cubic curve E_W = {det = 0} inside P(W).
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .bisector import BisectorMap, contains, rank_one_map, reflect_in_spine
from .cubics import CubicType, TernaryCubic, analyze_cubic
from .errors import (
    CollinearTriple,
    InsufficientSamples,
    IsLinearFamily,
    MixedSignature,
    NonGenericFamily,
    SpanIsLinearFamily,
    ToleranceFailure,
    UnexpectedDimension,
    ValidationError,
)
from .forms import (
    binary_cubic_roots,
    binary_quadratic_real_roots,
    monomial_matrix,
    monomials,
    real_projective_root,
)
from .hermitian_core import (
    J,
    as_vector,
    distance,
    inner,
    norm_sq,
    normalize,
    null_vector,
    orthogonal_point,
    point_signature,
    random_point,
    random_unitary_21,
    rank_kernel,
    realify,
)
from .linear_families import (
    _as_maps,
    common_focus,
    determinant_form,
    family_through,
    giraud_pencil,
)

CASES = ("ThreeLines", "ConicPlusLine", "NodalSymmetric", "NodalAsymmetric", "Smooth")

# Sign patterns (eps_1, ..., eps_4) of <s, p_i> at singular foci, per case.
SINGULAR_PATTERNS = {
    "ThreeLines": [(1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1)],
    "ConicPlusLine": [(1, -1, 1, -1), (1, -1, -1, 1)],
    "NodalSymmetric": [(1, -1, -1, 1)],
    "NodalAsymmetric": [(1, -1, -1, -1)],
    "Smooth": [],
}

# Projective type of E_W expected for each case.
CASE_CUBIC = {
    "ThreeLines": CubicType.THREE_LINES_GENERAL,
    "ConicPlusLine": CubicType.CONIC_PLUS_CHORD,
    "NodalSymmetric": CubicType.NODAL,
    "NodalAsymmetric": CubicType.NODAL,
    "Smooth": CubicType.SMOOTH,
}


@dataclass
class EquitantFamily:
    """Four rephased points sorted so that a_1 >= a_2 >= a_3 >= a_4 > 0.

    `points[i]` satisfies <p_i, p_i> = sigma and sum_i a_i p_i = 0.  The
    coefficients are scaled so that a_4 = 1.  `order[i]` is the index of
    points[i] in the input.
    """

    points: np.ndarray
    a: np.ndarray
    sigma: int
    order: tuple

    @property
    def w(self):
        return [rank_one_map(p) for p in self.points]

    @property
    def basis(self):
        w = self.w
        return [w[0] - w[1], w[1] - w[2], w[2] - w[3]]

    def element(self, x):
        b = self.basis
        return sum(c * m for c, m in zip(x, b))


def make_equitant(points, sigma=None):
    """Build an equitant family from four points of one signature."""
    pts = [as_vector(p) for p in points]
    if len(pts) != 4:
        raise ValidationError("an equitant family needs exactly four points")
    sigs = {point_signature(p).tag for p in pts}
    if len(sigs) != 1:
        raise MixedSignature("points do not share a signature")
    tag = point_signature(pts[0])
    inferred = 0 if tag.is_isotropic else (1 if tag.is_positive else -1)
    if sigma is None:
        sigma = inferred
    elif sigma != inferred:
        raise MixedSignature(f"points have signature {inferred}, not {sigma}")
    for i, j, k in combinations(range(4), 3):
        m = np.stack([pts[i], pts[j], pts[k]], axis=1)
        m = m / np.linalg.norm(m, axis=0)
        if abs(np.linalg.det(m)) <= 1e-9:
            raise CollinearTriple(f"points {i}, {j}, {k} lie on one line")
    if sigma != 0:
        pts = [p / np.sqrt(abs(norm_sq(p))) for p in pts]
    c = null_vector(np.stack(pts, axis=1))
    pts = [p * (ci / abs(ci)) for p, ci in zip(pts, c)]
    a = np.abs(c)
    order = tuple(int(i) for i in np.argsort(-a, kind="stable"))
    a = a[list(order)] / a[order[3]]
    pts = np.array([pts[i] for i in order])
    return EquitantFamily(pts, a, sigma, order)


def _close(x, y, scale):
    return abs(x - y) <= 1e-9 * scale


def classify_equitant(fam):
    """Case of the family read off the dependence coefficients."""
    a1, a2, a3, a4 = fam.a
    s = a1
    if _close(a1, a4, s):
        return "ThreeLines"
    if _close(a1, a2, s) and _close(a3, a4, s):
        return "ConicPlusLine"
    if _close(a1 + a4, a2 + a3, s):
        return "NodalSymmetric"
    if _close(a1, a2 + a3 + a4, s):
        return "NodalAsymmetric"
    return "Smooth"


def singular_foci(fam, case=None):
    """Foci s of the singular points of E_W.

    Each solves <s, p_i> = eps_i for the sign pattern of the case; the
    fourth equation follows from sum_i a_i eps_i = 0.
    """
    case = case or classify_equitant(fam)
    rows = np.array([np.conj(J @ p) for p in fam.points[:3]])
    out = []
    for eps in SINGULAR_PATTERNS[case]:
        s = np.linalg.solve(rows, np.array(eps[:3], dtype=complex))
        check = inner(s, fam.points[3])
        if abs(check - eps[3]) > 1e-8 * np.linalg.norm(s):
            raise ToleranceFailure("fourth singular-focus equation fails")
        out.append({"pattern": eps, "focus": normalize(s)})
    return out


def cubic_EW(fam):
    """E_W as a real ternary cubic in the basis (w1-w2, w2-w3, w3-w4)."""
    coeffs = determinant_form(fam.basis).real
    return TernaryCubic(coeffs / np.linalg.norm(coeffs))


def base_biquadratic(fam_or_a):
    """(r00, r01, r10, r11) of the base curve in (s, t) coordinates.

    p(s, t) = r00 s0^2 t0^2 + r01 s0^2 t1^2 + 2 s0 s1 t0 t1
              + r10 s1^2 t0^2 + r11 s1^2 t1^2.
    """
    a = fam_or_a.a if isinstance(fam_or_a, EquitantFamily) else np.asarray(fam_or_a, float)
    a1, a2, a3, a4 = a
    d = 4.0 * a1 * a2
    r00 = (a1 + a2 + a3 + a4) * (a1 + a2 + a3 - a4) / d
    r01 = (a1 - a2 + a3 + a4) * (a1 - a2 + a3 - a4) / d
    r10 = (a1 - a2 - a3 + a4) * (a1 - a2 - a3 - a4) / d
    r11 = (a1 + a2 - a3 + a4) * (a1 + a2 - a3 - a4) / d
    return np.array([r00, r01, r10, r11])


def dual_basis(fam):
    """Vectors q_1, q_2, q_3 with <q_i, p_j> = delta_ij for j <= 3."""
    rows = np.array([np.conj(J @ p) for p in fam.points[:3]])
    return np.linalg.inv(rows)


@dataclass
class BaseRecord:
    s: tuple
    t: tuple
    x1: complex
    x2: complex
    q: np.ndarray
    signature: str
    distance_spread: float


def distance_spread(fam, q):
    """Spread of the distances from q to the four points.

    For a negative q and negative points this is max - min of the
    hyperbolic distances; otherwise it is the relative spread of the
    moduli |<q, p_i>|.
    """
    if fam.sigma < 0 and point_signature(q).is_negative:
        ds = [distance(q, p) for p in fam.points]
        return float(max(ds) - min(ds))
    mods = [abs(inner(q, p)) for p in fam.points]
    return float((max(mods) - min(mods)) / max(mods))


def trace_base(fam, n):
    """Trace the base curve through n values of (s0 : s1) on a half turn.

    For each s the biquadratic becomes a binary quadratic in t whose real
    roots give points x1, x2 on the unit circle and hence base points
    q = x1 q1 + x2 q2 + q3.  Returns (records, skipped) where skipped
    counts parameter values with no real root or an identically zero
    fiber.
    """
    r00, r01, r10, r11 = base_biquadratic(fam)
    q = dual_basis(fam)
    records = []
    skipped = 0
    for k in range(n):
        phi = np.pi * (k + 0.5) / n
        s0, s1 = np.cos(phi), np.sin(phi)
        a = r00 * s0 ** 2 + r10 * s1 ** 2
        c = r01 * s0 ** 2 + r11 * s1 ** 2
        roots = binary_quadratic_real_roots(a, s0 * s1, c)
        if not roots:
            skipped += 1
            continue
        for t0, t1 in roots:
            x1 = (s0 + 1j * s1) ** 2
            x2 = (t0 + 1j * t1) ** 2 / (t0 ** 2 + t1 ** 2)
            v = x1 * q[:, 0] + x2 * q[:, 1] + q[:, 2]
            v = normalize(v)
            sig = point_signature(v)
            records.append(BaseRecord((s0, s1), (float(t0), float(t1)), complex(x1),
                                      complex(x2), v, sig.tag.value,
                                      distance_spread(fam, v)))
    return records, skipped


@dataclass
class IrreducibilityReport:
    reducible: bool
    mechanism: str
    patterns: list = field(default_factory=list)
    r: np.ndarray = None


def irreducibility_report(fam, tol=1e-12):
    """Decide reducibility of the base biquadratic.

    Linear factors occur only when two of (r00, r01, r10, r11) vanish in
    one of four patterns; a split into two quadratic factors needs
    r01 = 0.  Since r00 > 0 and r01 >= 0 always, the remaining cases are
    irreducible.
    """
    r = base_biquadratic(fam)
    r00, r01, r10, r11 = r
    z = [abs(x) <= tol * max(1.0, r00) for x in r]
    names = {(0, 1): "r00=r01=0", (0, 2): "r00=r10=0",
             (1, 3): "r01=r11=0", (2, 3): "r10=r11=0"}
    hits = [name for (i, j), name in names.items() if z[i] and z[j]]
    if hits:
        return IrreducibilityReport(True, "linear factor", hits, r)
    if z[1]:
        return IrreducibilityReport(True, "quadratic split", ["r01=0"], r)
    return IrreducibilityReport(False, "irreducible since r00 > 0 and r01 > 0", [], r)


@dataclass
class RecoveredFamily:
    maps: list
    dim: int
    singular_values: np.ndarray
    trace_residual: float


def recover_family(samples):
    """Recover W from base points by solving <hb, b> = 0 linearly.

    No trace condition is imposed; the recovered maps come out traceless
    on their own.
    """
    if len(samples) < 9:
        raise InsufficientSamples(f"need at least 9 samples, got {len(samples)}")
    maps, s = family_through(samples, traceless=False)
    if len(maps) != 3:
        raise UnexpectedDimension(f"recovered dimension {len(maps)}, expected 3")
    trace = max(abs(np.trace(m)) for m in maps)
    return RecoveredFamily(maps, len(maps), s, float(trace))


@dataclass
class RealnessWitness:
    foci: list
    residual: float
    line_residual: float


def realness_witness(fam, focal=None):
    """Foci of w1 - w_j (j = 2, 3, 4) lie on the line orthogonal to p1.

    With a fitted focal cubic, line_residual measures how far that line is
    from being a component (norm of the restricted binary cubic).
    """
    w = fam.w
    p1 = fam.points[0] / np.linalg.norm(fam.points[0])
    foci = [normalize(rank_kernel(w[0] - w[j])[1][:, 0]) for j in (1, 2, 3)]
    residual = max(abs(inner(f, p1)) for f in foci)
    line_res = float("nan")
    if focal is not None:
        line = np.conj(J @ p1)
        _, _, vh = np.linalg.svd(line.reshape(1, 3))
        u, v = vh[1].conj(), vh[2].conj()
        pts = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, -1.0]])
        vals = np.array([focal.cubic(x * u + y * v) for x, y in pts])
        restricted = np.linalg.solve(monomial_matrix(pts, monomials(2, 3)), vals)
        line_res = float(np.linalg.norm(restricted) / focal.cubic.norm)
    return RealnessWitness(foci, float(residual), line_res)


@dataclass
class FocalCurve:
    cubic: TernaryCubic
    foci: list
    elements: list
    residual: float
    gap: float


def _real_lines(analysis):
    out = []
    for line in analysis.lines:
        k = int(np.argmax(np.abs(line)))
        l = line * np.conj(line[k]) / abs(line[k])
        if np.max(np.abs(l.imag)) <= 1e-6:
            out.append(l.real / np.linalg.norm(l.real))
    return out


def check_generic(maps, seed=0):
    """Raise NonGenericFamily if E_W has a confocal line or is a line plus a point."""
    cubic = TernaryCubic(determinant_form(maps).real)
    if cubic.norm <= 1e-9:
        raise IsLinearFamily("det vanishes on the whole family")
    analysis = analyze_cubic(cubic, seed=seed)
    t = analysis.type
    if t in (CubicType.DOUBLE_LINE_PLUS_LINE, CubicType.TRIPLE_LINE,
             CubicType.IDENTICALLY_ZERO, CubicType.THREE_LINES_CONCURRENT):
        raise NonGenericFamily(f"E_W is {t.value}")
    lines = _real_lines(analysis)
    if t is CubicType.THREE_LINES_GENERAL and len(lines) < 3:
        raise NonGenericFamily("E_W is a line plus an isolated point")
    for line in lines:
        _, _, vh = np.linalg.svd(line.reshape(1, 3))
        ends = [sum(c * m for c, m in zip(vh[k], maps)) for k in (1, 2)]
        if common_focus(ends) is not None:
            raise NonGenericFamily("E_W contains a confocal line")
    return analysis


def focal_curve(fam, n=30, seed=0):
    """Sample foci of the bisectors of E_W and fit a plane cubic through them.

    Elements of E_W come from real roots of det along seeded random real
    lines of P(W).  The fit is the smallest right singular vector of the
    monomial matrix; `gap` is the next singular value, which is large
    when the cubic through the foci is unique.
    """
    maps = fam.basis if isinstance(fam, EquitantFamily) else _as_maps(fam)
    if len(maps) != 3:
        raise ValidationError("focal curves are defined for 3-dimensional families")
    check_generic(maps, seed)
    stack = np.array(maps)
    rng = np.random.default_rng(seed)
    pts = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, -1.0]])
    mono = monomial_matrix(pts, monomials(2, 3))
    foci, elements = [], []
    for _ in range(50 * n):
        if len(foci) >= n:
            break
        u, v = rng.normal(size=3), rng.normal(size=3)
        vals = np.array([np.linalg.det(np.einsum("i,ijk->jk", x * u + y * v, stack))
                         for x, y in pts]).real
        coeffs = np.linalg.solve(mono, vals)
        if np.linalg.norm(coeffs) == 0:
            continue
        for r, mult in binary_cubic_roots(coeffs):
            real = real_projective_root(r)
            if real is None or mult > 1:
                continue
            x = real[0] * u + real[1] * v
            x /= np.linalg.norm(x)
            h = np.einsum("i,ijk->jk", x, stack)
            rank, ker = rank_kernel(h, tol=1e-7)
            if rank != 2:
                continue
            foci.append(normalize(ker[:, 0]))
            elements.append(x)
    if len(foci) < 10:
        raise InsufficientSamples("too few foci to fit a cubic")
    foci, elements = foci[:n], elements[:n]
    mat = monomial_matrix(np.array(foci), monomials(3, 3))
    _, s, vh = np.linalg.svd(mat)
    coeffs = vh[-1].conj()
    residual = float(np.max(np.abs(mat @ coeffs)))
    return FocalCurve(TernaryCubic(coeffs), foci, elements, residual, float(s[-2]))


@dataclass
class Tangency:
    alternative: str
    points: list = field(default_factory=list)
    residual: float = float("nan")
    double_member: np.ndarray = None
    focus_on: str = ""


def pencil_tangency(h, h_prime, fam=None):
    """Geometry of the pencil spanned by two bisectors (of a family).

    With three rank-two members, returns points P1, P2, P3 so that the
    members are w(P1) - w(P2), w(P2) - w(P3) and w(P1) - w(P3), where
    w(P) = <-, P> P.  With a double root, reports which focus lies on
    which bisector.
    """
    maps = _as_maps([h, h_prime])
    if fam is not None:
        for m in maps:
            span = [realify(x) for x in list(fam.basis) + [m]]
            mat = np.stack([v / np.linalg.norm(v) for v in span], axis=1)
            if np.linalg.svd(mat, compute_uv=False)[-1] > 1e-8:
                raise ValidationError("map is not in the family")
    try:
        pencil = giraud_pencil(maps[0], maps[1])
    except IsLinearFamily as exc:
        raise SpanIsLinearFamily(str(exc)) from None
    b, bp = BisectorMap(maps[0]), BisectorMap(maps[1])
    if pencil.alternative == "FocusOnBisector":
        double = [r for r, m in pencil.roots if m == 2][0]
        if contains(b, bp.focus):
            where = "focus of the second lies on the first"
        elif contains(bp, b.focus):
            where = "focus of the first lies on the second"
        else:
            where = "no focus incidence detected"
        return Tangency("FocusOnBisector", double_member=double, focus_on=where)
    if pencil.alternative != "ThreeRankTwoMembers":
        return Tangency(pencil.alternative)
    p2 = orthogonal_point(b.focus, bp.focus)
    r1 = reflect_in_spine(b, p2)
    r2 = reflect_in_spine(bp, p2)
    big_p2 = r1.c1
    mu = inner(r2.c1, big_p2) / inner(big_p2, big_p2) if abs(norm_sq(big_p2)) > 1e-12 else \
        np.vdot(big_p2, r2.c1) / np.vdot(big_p2, big_p2)
    big_p1 = r1.c2
    big_p3 = r2.c2 / abs(mu)
    w = [rank_one_map(p) for p in (big_p1, big_p2, big_p3)]
    m12 = -r1.sign * b.h
    m23 = r2.sign * bp.h / abs(mu) ** 2
    residual = max(np.linalg.norm(m12 - (w[0] - w[1])), np.linalg.norm(m23 - (w[1] - w[2])))
    return Tangency("ThreeRankTwoMembers", [big_p1, big_p2, big_p3], float(residual))


def _quadrilateral(a, rng):
    """Complex z_i with |z_i| = a_i and sum z_i = 0 (a_1 < a_2 + a_3 + a_4)."""
    a1, a2, a3, a4 = a
    lo = max(abs(a1 - a2), abs(a3 - a4))
    hi = min(a1 + a2, a3 + a4)
    delta = rng.uniform(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo))
    ca = np.clip((a1 ** 2 + delta ** 2 - a2 ** 2) / (2 * a1 * delta), -1, 1)
    cb = np.clip((a3 ** 2 + delta ** 2 - a4 ** 2) / (2 * a3 * delta), -1, 1)
    alpha = np.arccos(ca) * rng.choice([-1, 1])
    beta = np.arccos(cb) * rng.choice([-1, 1])
    z1 = a1 * np.exp(1j * alpha)
    z2 = delta - z1
    z3 = -a3 * np.exp(1j * beta)
    z4 = -delta - z3
    return np.array([z1, z2, z3, z4]) * np.exp(1j * rng.uniform(0, 2 * np.pi))


def _centered_points(a, sigma, rng):
    z = _quadrilateral(a, rng)
    a1, a2, a3, a4 = a
    lo = max(a1 - a2, a3 - a4)
    hi = min(a1 + a2, a3 + a4)
    for _ in range(100):
        target = rng.uniform(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo))
        rho = rng.uniform(0.3, 1.0)
        cg = (target ** 2 - a1 ** 2 - a2 ** 2) / (2 * a1 * a2 * rho)
        if abs(cg) <= 1:
            break
    else:
        return None
    u1 = rng.normal(size=2) + 1j * rng.normal(size=2)
    u1 /= np.linalg.norm(u1)
    perp = np.array([-np.conj(u1[1]), np.conj(u1[0])])
    # u2 . u1 = cg * conj(phase) makes |z1 u1 + z2 u2| equal the target
    phase = (rho + 1j * np.sqrt(1 - rho ** 2) * rng.choice([-1, 1])) * (z[0] / a1) * np.conj(z[1] / a2)
    u2 = cg * phase * u1 + np.sqrt(1 - cg ** 2) * perp
    v = z[0] * u1 + z[1] * u2
    nv = np.linalg.norm(v)
    vhat = v / nv
    vperp = np.array([-np.conj(vhat[1]), np.conj(vhat[0])])
    tau = (a4 ** 2 - a3 ** 2 - nv ** 2) / (2 * nv)
    alpha = tau * np.conj(z[2]) / a3 ** 2
    if abs(alpha) > 1:
        return None
    beta = np.sqrt(1 - abs(alpha) ** 2) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    u3 = alpha * vhat + beta * vperp
    u4 = -(v + z[2] * u3) / z[3]
    us = [u1, u2, u3, u4]
    dist = rng.uniform(0.4, 1.2)
    if sigma < 0:
        big, small = np.sinh(dist), np.cosh(dist)
    else:
        big, small = np.cosh(dist), np.sinh(dist)
    pts = [np.exp(1j * np.angle(zi)) * np.array([big * u[0], big * u[1], small])
           for zi, u in zip(z, us)]
    return pts


def _free_points(a, sigma, rng):
    a1, a2, a3, a4 = a
    kind = "negative" if sigma < 0 else "positive"
    for _ in range(200):
        p1, p2, d = (random_point(rng, kind) for _ in range(3))
        p1, p2, d = (p / np.sqrt(abs(norm_sq(p))) for p in (p1, p2, d))
        v = a1 * p1 + a2 * p2
        g = inner(d, v)
        kappa = (a4 ** 2 * sigma - norm_sq(v) - a3 ** 2 * sigma) / (2 * a3)
        if abs(kappa) > abs(g):
            continue
        c = kappa / abs(g)
        e = np.exp(-1j * np.angle(g)) * (c + 1j * np.sqrt(1 - c * c) * rng.choice([-1, 1]))
        p3 = e * d
        p4 = -(v + a3 * p3) / a4
        return [p1, p2, p3, p4]
    return None


def equitant_instance(a, seed=0, sigma=-1, centered=None):
    """Random equitant family realizing the dependence coefficients a.

    When a_1 < a_2 + a_3 + a_4 the four points are placed at a common
    distance from a center; when a_1 = a_2 + a_3 + a_4 no such center can
    exist and the points are chosen subject only to the relation.  The
    result is moved by a random isometry and its points shuffled and
    rescaled before being passed through :func:`make_equitant`.
    """
    a = np.sort(np.asarray(a, dtype=float))[::-1]
    rng = np.random.default_rng(seed)
    if centered is None:
        centered = a[0] < a[1] + a[2] + a[3] - 1e-12
    for _ in range(200):
        pts = _centered_points(a, sigma, rng) if centered else _free_points(a, sigma, rng)
        if pts is None:
            continue
        g = random_unitary_21(rng, scale=0.4)
        pts = [g @ p for p in pts]
        perm = rng.permutation(4)
        pts = [pts[i] * rng.uniform(0.5, 2.0) * np.exp(1j * rng.uniform(0, 6.3)) for i in perm]
        try:
            fam = make_equitant(pts, sigma)
        except (CollinearTriple, MixedSignature):
            continue
        if np.allclose(fam.a, a / a[3], rtol=0, atol=1e-8):
            return fam
    raise ToleranceFailure("could not realize the requested coefficients")


def case_coefficients(case, rng):
    """Random dependence coefficients (descending, a_4 = 1) for a case."""
    while True:
        if case == "ThreeLines":
            a = np.ones(4)
        elif case == "ConicPlusLine":
            x = rng.uniform(1.2, 2.5)
            a = np.array([x, x, 1.0, 1.0])
        elif case == "NodalSymmetric":
            a3 = rng.uniform(1.05, 1.8)
            a2 = rng.uniform(a3 + 0.05, a3 + 1.0)
            a1 = a2 + a3 - 1.0
            a = np.array([a1, a2, a3, 1.0])
        elif case == "NodalAsymmetric":
            a3 = rng.uniform(1.05, 1.6)
            a2 = rng.uniform(a3 + 0.05, a3 + 1.0)
            a = np.array([a2 + a3 + 1.0, a2, a3, 1.0])
        else:
            a = np.sort(rng.uniform(1.0, 2.2, size=3))[::-1]
            a = np.append(a, 1.0)
            if a[0] >= a[1] + a[2] + a[3] - 0.05:
                continue
        a = np.sort(a)[::-1]
        fam = EquitantFamily(np.zeros((4, 3)), a, -1, (0, 1, 2, 3))
        if classify_equitant(fam) == case:
            return a
