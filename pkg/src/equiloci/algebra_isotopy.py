"""Three-dimensional algebras as matrices of linear forms.

An algebra is stored by its structure tensor c with e_i * e_j = sum_k
c[i, j, k] e_k.  Left multiplication by x = sum x_i e_i is the matrix
Phi(x) = sum_i x_i A_i with (A_i)[k, j] = c[i, j, k]; its determinant is a
plane cubic whose zeros are the left zero divisors.  For a generic algebra
each divisor d1 has a one-dimensional annihilator, giving the map
phi: d1 -> d2 with d1 * d2 = 0.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import least_squares

from .cubics import CubicType, TernaryCubic, analyze_cubic, classify_cubic
from .errors import InsufficientSamples, NotAZeroDivisor, RankDeficient, ValidationError
from .forms import (binary_cubic_roots, interpolate_form, monomial_matrix, monomials,
                    snap_integers)
from .hermitian_core import normalize, projective_distance

__all__ = [
    "Algebra3", "ZeroDivisorPair", "DivisorSample", "GenericityReport",
    "ProjectivityReport", "GraphSpan", "KernelReport", "NormalFormReport",
    "det_cubic", "classify_cubic", "zero_divisors", "left_zero_divisors",
    "right_zero_divisors", "rank_one_points", "is_generic", "phi_of",
    "divisor_pair", "phi_projectivity_test", "graph_span_check",
    "graph_consistency", "multiplication_kernel", "line_remark_residual",
    "normal_form_verify", "isotope", "sl2_algebra", "zero_algebra",
    "random_integer_algebra", "from_matrix_of_forms", "algebra_from_forms",
    "triple_line_form", "line_plus_double_line_form",
    "line_plus_double_line_variant", "nongeneric_triple_line_form",
    "conic_plus_chord_form",
]

SNAP_TOL = 1e-9
DIVISOR_TOL = 1e-8
RANK_TOL = 1e-7
PROJECTIVE_FIT_TOL = 1e-6
NULL_TOL = 1e-9
SPAN_TOL = 1e-8


@dataclass
class Algebra3:
    """Bilinear product on C^3 given by its structure tensor."""

    tensor: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.tensor, dtype=complex)
        if t.shape != (3, 3, 3):
            raise ValidationError(f"structure tensor must be 3x3x3, got {t.shape}")
        if not np.all(np.isfinite(t)):
            raise ValidationError("structure tensor has non-finite entries")
        self.tensor = t

    @property
    def left_matrices(self):
        """A_i with Phi(x) = sum x_i A_i; A_i[k, j] = c[i, j, k]."""
        return np.transpose(self.tensor, (0, 2, 1))

    @property
    def right_matrices(self):
        """B_j with right multiplication R(y) = sum y_j B_j; B_j[k, i] = c[i, j, k]."""
        return np.transpose(self.tensor, (1, 2, 0))

    @property
    def scale(self):
        return float(np.linalg.norm(self.tensor))

    def phi(self, x):
        """Left multiplication matrix Phi(x)."""
        return np.einsum("i,ikj->kj", np.asarray(x, complex), self.left_matrices)

    def right(self, y):
        return np.einsum("j,jki->ki", np.asarray(y, complex), self.right_matrices)

    def multiplication(self, side="left"):
        return self.phi if side == "left" else self.right

    def product(self, x, y):
        return np.einsum("i,j,ijk->k", np.asarray(x, complex), np.asarray(y, complex),
                         self.tensor)


def from_matrix_of_forms(mats):
    """Algebra whose left multiplication is Phi(x) = sum x_i mats[i]."""
    mats = np.asarray(mats, dtype=complex)
    if mats.shape != (3, 3, 3):
        raise ValidationError("need three 3x3 coefficient matrices")
    return Algebra3(np.transpose(mats, (0, 2, 1)))


def algebra_from_forms(func):
    """Algebra from a callable (x0, x1, x2) -> 3x3 matrix linear in x."""
    eye = np.eye(3)
    return from_matrix_of_forms([np.asarray(func(*e), dtype=complex) for e in eye])


def triple_line_form(x0, x1, x2):
    return [[x0, x2, -x1], [x1, x0, 0], [x2, 0, x0]]


def line_plus_double_line_form(x0, x1, x2):
    return [[x1, x2, -x1], [-x1, x0, 0], [-x2, 0, x0]]


def line_plus_double_line_variant(x0, x1, x2):
    # entry (1, 0) with the opposite sign; the determinant gains -2 x0 x1 x2
    return [[x1, x2, -x1], [x1, x0, 0], [-x2, 0, x0]]


def nongeneric_triple_line_form(x0, x1, x2):
    # det = x0^3, but Phi has rank 1 along the whole line x0 = 0
    return [[x0, 0, 0], [0, x0, 0], [x1, x2, x0]]


def conic_plus_chord_form(u=2.0):
    def form(x0, x1, x2):
        return [[x0, 0, 0], [-u * x2, x0, u * x1], [-x1 / u, x2 / u, x0]]
    return form


def sl2_algebra():
    """Commutator product on trace-free 2x2 matrices in the basis H, E, F."""
    c = np.zeros((3, 3, 3))
    h, e, f = 0, 1, 2
    c[h, e, e], c[e, h, e] = 2, -2
    c[h, f, f], c[f, h, f] = -2, 2
    c[e, f, h], c[f, e, h] = 1, -1
    return Algebra3(c)


def zero_algebra():
    return Algebra3(np.zeros((3, 3, 3)))


def random_integer_algebra(seed, bound=3):
    rng = np.random.default_rng(seed)
    return Algebra3(rng.integers(-bound, bound + 1, size=(3, 3, 3)).astype(float))


def isotope(alg, g1, g2, g3):
    """Algebra with product x *' y = g3 ((g1 x) * (g2 y))."""
    g1, g2, g3 = (np.asarray(g, complex) for g in (g1, g2, g3))
    return Algebra3(np.einsum("ai,bj,abm,km->ijk", g1, g2, alg.tensor, g3))


def det_cubic(alg, side="left"):
    """det Phi as a ternary cubic, by interpolation on integer nodes.

    Coefficients are snapped to Gaussian integers when every one of them is
    within SNAP_TOL of one; they are not normalized.
    """
    mats = alg.left_matrices if side == "left" else alg.right_matrices

    def det(pts):
        return np.linalg.det(np.einsum("ni,ikj->nkj", pts.astype(complex), mats))

    coeffs = interpolate_form(det, 3, 3)
    snapped = snap_integers(coeffs, SNAP_TOL)
    if np.all(np.abs(snapped - np.round(snapped.real) - 1j * np.round(snapped.imag)) == 0):
        coeffs = snapped
    return TernaryCubic(coeffs)


@dataclass
class DivisorSample:
    point: np.ndarray
    rank: int
    singular_values: np.ndarray


@dataclass
class ZeroDivisorPair:
    d1: np.ndarray
    d2: np.ndarray
    residual: float


def _rank(mat, scale):
    s = np.linalg.svd(mat, compute_uv=False)
    return int(np.sum(s > RANK_TOL * scale)), s


def _random_frame(rng):
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    q, _ = np.linalg.qr(a)
    return q


def zero_divisors(alg, n=20, seed=0, side="left"):
    """Sample n points of the divisor cubic with the rank of multiplication.

    Each seeded random complex line meets the cubic in three points, the
    roots of a binary cubic.  When det vanishes identically the samples are
    a grid over the plane in a seeded unitary frame.
    """
    rng = np.random.default_rng(seed)
    mult = alg.multiplication(side)
    scale = max(alg.scale, 1e-300)
    out = []
    if det_cubic(alg, side).norm <= SNAP_TOL * scale ** 3:
        frame = _random_frame(rng)
        k = int(np.ceil(np.sqrt(n)))
        grid = np.linspace(-1.5, 1.5, k)
        for a in grid:
            for b in grid:
                if len(out) >= n:
                    break
                x = normalize(frame @ np.array([1.0, a, b]))
                rank, s = _rank(mult(x), scale)
                out.append(DivisorSample(x, rank, s))
        return out
    nodes = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, -1.0]])
    mono = monomial_matrix(nodes, monomials(2, 3))
    for _ in range(10 * n):
        if len(out) >= n:
            break
        u = rng.normal(size=3) + 1j * rng.normal(size=3)
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        vals = [np.linalg.det(mult(x * u + y * v)) for x, y in nodes]
        coeffs = np.linalg.solve(mono, np.array(vals))
        if np.linalg.norm(coeffs) <= 1e-12 * scale ** 3:
            continue
        for root, _ in binary_cubic_roots(coeffs):
            x = normalize(root[0] * u + root[1] * v)
            rank, s = _rank(mult(x), scale)
            out.append(DivisorSample(x, rank, s))
    return out[:n]


def left_zero_divisors(alg, n=20, seed=0):
    return zero_divisors(alg, n, seed, "left")


def right_zero_divisors(alg, n=20, seed=0):
    return zero_divisors(alg, n, seed, "right")


def _minors(m):
    idx = [(0, 1), (0, 2), (1, 2)]
    return np.array([m[r0, c0] * m[r1, c1] - m[r0, c1] * m[r1, c0]
                     for r0, r1 in idx for c0, c1 in idx])


def rank_one_points(alg, side="left", seed=0, starts=16):
    """Points x (unit norm) where the multiplication by x has rank <= 1.

    Found by Levenberg-Marquardt on the nine 2x2 minors from seeded starts.
    """
    if alg.scale == 0:
        return [np.array([1.0, 0.0, 0.0], dtype=complex)]
    mult = alg.multiplication(side)
    scale = alg.scale
    rng = np.random.default_rng(seed)

    def resid(v):
        x = v[:3] + 1j * v[3:]
        m = _minors(mult(x)) / scale ** 2
        return np.concatenate([m.real, m.imag, [np.vdot(x, x).real - 1.0]])

    found = []
    for _ in range(starts):
        x0 = rng.normal(size=3) + 1j * rng.normal(size=3)
        x0 /= np.linalg.norm(x0)
        sol = least_squares(resid, np.concatenate([x0.real, x0.imag]), method="lm",
                            xtol=1e-15, ftol=1e-15, gtol=1e-15)
        if np.linalg.norm(sol.fun) > 1e-10:
            continue
        x = normalize(sol.x[:3] + 1j * sol.x[3:])
        rank, _ = _rank(mult(x), scale)
        if rank <= 1 and all(projective_distance(x, y) > 1e-6 for y in found):
            found.append(x)
    return found


@dataclass
class GenericityReport:
    generic: bool
    witnesses: list = field(default_factory=list)
    left_ranks: list = field(default_factory=list)
    right_ranks: list = field(default_factory=list)


def is_generic(alg, n=20, seed=0, starts=16):
    """Sampled check that every nontrivial zero divisor has rank 2.

    Witnesses are (side, point, rank) for sampled divisors of rank <= 1 and
    for rank <= 1 points located by the minor search.
    """
    witnesses = []
    ranks = {}
    for side in ("left", "right"):
        samples = zero_divisors(alg, n, seed, side)
        ranks[side] = [s.rank for s in samples]
        witnesses += [(side, s.point, s.rank) for s in samples if s.rank <= 1]
        witnesses += [(side, x, 1) for x in rank_one_points(alg, side, seed, starts)]
    return GenericityReport(not witnesses, witnesses, ranks["left"], ranks["right"])


def divisor_pair(alg, d1):
    """Zero-divisor pair (d1, phi(d1)) with the residual |Phi(d1) d2|."""
    d1 = np.asarray(d1, dtype=complex)
    d1 = d1 / np.linalg.norm(d1)
    m = alg.phi(d1)
    scale = max(alg.scale, 1e-300)
    _, s, vh = np.linalg.svd(m)
    if s[-1] > DIVISOR_TOL * scale:
        raise NotAZeroDivisor(f"Phi(d1) is invertible (smallest singular value {s[-1]:.3g})")
    if s[1] <= RANK_TOL * scale:
        raise RankDeficient("Phi(d1) has rank <= 1; the algebra is not generic here")
    d2 = normalize(vh[-1].conj())
    return ZeroDivisorPair(normalize(d1), d2, float(np.linalg.norm(m @ d2)))


def phi_of(alg, d1):
    """The right annihilator of the left zero divisor d1."""
    return divisor_pair(alg, d1).d2


@dataclass
class ProjectivityReport:
    projective: bool
    matrix: np.ndarray
    residual: float
    null_dim: int


def _cross_matrix(e):
    return np.array([[0, -e[2], e[1]], [e[2], 0, -e[0]], [-e[1], e[0], 0]], dtype=complex)


def phi_projectivity_test(alg, n=24, seed=0, tol=PROJECTIVE_FIT_TOL):
    """Fit one linear map M with phi(d) proportional to M d on sampled divisors.

    The conditions phi(d) x (M d) = 0 are linear in M.  When they have a
    null space a seeded random combination of it is used; otherwise the
    least-squares solution.  The residual is the largest sine of the angle
    between phi(d) and M d.
    """
    if n < 8:
        raise InsufficientSamples("need at least 8 divisor pairs")
    pairs = [divisor_pair(alg, s.point) for s in left_zero_divisors(alg, n, seed)
             if s.rank == 2]
    if len(pairs) < 8:
        raise InsufficientSamples(f"only {len(pairs)} rank-2 divisors sampled")
    rows = [_cross_matrix(p.d2) @ np.kron(np.eye(3), p.d1[None, :]) for p in pairs]
    system = np.vstack(rows)
    _, s, vh = np.linalg.svd(system)
    null = vh[s <= NULL_TOL * s[0]]
    rng = np.random.default_rng(seed)
    if len(null):
        w = rng.normal(size=len(null)) + 1j * rng.normal(size=len(null))
        vec = (w @ null).conj()
    else:
        vec = vh[-1].conj()
    mat = vec.reshape(3, 3)
    mat = mat / np.linalg.norm(mat)
    resid = 0.0
    for p in pairs:
        img = mat @ p.d1
        if np.linalg.norm(img) <= 1e-12:
            resid = 1.0
            break
        resid = max(resid, projective_distance(img, p.d2))
    return ProjectivityReport(resid <= tol, mat, resid, len(null))


@dataclass
class GraphSpan:
    rank: int
    kernel_residual: float
    samples: int


def graph_span_check(alg, n=24, seed=0):
    """Rank of the span of d (x) phi(d) and its distance from the kernel of multiplication."""
    pairs = [divisor_pair(alg, s.point) for s in left_zero_divisors(alg, n, seed)
             if s.rank == 2]
    if not pairs:
        return GraphSpan(0, 0.0, 0)
    vecs = np.array([np.kron(p.d1, p.d2) for p in pairs])
    s = np.linalg.svd(vecs, compute_uv=False)
    rank = int(np.sum(s > SPAN_TOL * s[0]))
    mul = _multiplication_matrix(alg)
    scale = max(alg.scale, 1e-300)
    resid = max(float(np.linalg.norm(mul @ v)) / scale for v in vecs)
    return GraphSpan(rank, resid, len(pairs))


def graph_consistency(alg, n=20, seed=0):
    """Largest distance between right divisors found independently and phi.

    Right divisors d2 come from roots of det R(y) along seeded lines, their
    left partners d1 from the kernel of R(d2); then phi(d1) must return d2.
    """
    worst = 0.0
    scale = max(alg.scale, 1e-300)
    for s in right_zero_divisors(alg, n, seed + 7919):
        if s.rank != 2:
            continue
        _, _, vh = np.linalg.svd(alg.right(s.point))
        d1 = vh[-1].conj()
        if np.linalg.norm(alg.phi(d1), ord=2) <= RANK_TOL * scale:
            continue
        worst = max(worst, projective_distance(phi_of(alg, d1), s.point))
    return worst


@dataclass
class KernelReport:
    dim: int
    basis: np.ndarray


def _multiplication_matrix(alg):
    """3 x 9 matrix of x (x) y -> x * y; column 3 i + j holds c[i, j, :]."""
    return alg.tensor.reshape(9, 3).T


def multiplication_kernel(alg):
    basis = null_space(_multiplication_matrix(alg), rcond=NULL_TOL)
    return KernelReport(basis.shape[1], basis)


def line_remark_residual(alg, a1, a2, samples=8, seed=0):
    """Check that the span of a1, a2 annihilates the common point of their kernels.

    Both left multiplications must have rank <= 1, so each kills a line;
    the lines meet in a point p and every s a1 + t a2 must kill p.
    """
    scale = max(alg.scale, 1e-300)
    kernels = []
    for a in (a1, a2):
        _, s, vh = np.linalg.svd(alg.phi(a))
        if s[1] > RANK_TOL * scale:
            raise ValidationError("each element must have left multiplication of rank <= 1")
        kernels.append(vh[1:].conj())
    p = _common_point(kernels[0], kernels[1])
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        s, t = rng.normal(size=2) + 1j * rng.normal(size=2)
        x = s * np.asarray(a1, complex) + t * np.asarray(a2, complex)
        x = x / np.linalg.norm(x)
        worst = max(worst, float(np.linalg.norm(alg.phi(x) @ p)) / scale)
    return worst


def _common_point(k1, k2):
    """Unit vector in the intersection of two planes spanned by rows of k1 and k2."""
    n1 = null_space(k1.conj())
    n2 = null_space(k2.conj())
    return normalize(null_space(np.hstack([n1, n2]).conj().T)[:, 0])


@dataclass
class NormalFormReport:
    triple_line: TernaryCubic
    triple_line_exact: bool
    triple_line_phi_residual: float
    double_line: TernaryCubic
    double_line_exact: bool
    double_line_variant: TernaryCubic
    variant_matches_extra_term: bool
    conic_chord: TernaryCubic
    conic_chord_exact: bool


def _monomial_cubic(terms):
    """Cubic from {exponent tuple: coefficient}."""
    return np.array([terms.get(e, 0) for e in monomials(3, 3)], dtype=complex)


def normal_form_verify(n=12, seed=0):
    """Exact determinants of the built-in normal forms and phi on the triple-line form."""
    tri = det_cubic(algebra_from_forms(triple_line_form))
    dbl = det_cubic(algebra_from_forms(line_plus_double_line_form))
    var = det_cubic(algebra_from_forms(line_plus_double_line_variant))
    con = det_cubic(algebra_from_forms(conic_plus_chord_form(2.0)))
    alg = algebra_from_forms(triple_line_form)
    phi_resid = max(projective_distance(phi_of(alg, s.point), s.point)
                    for s in left_zero_divisors(alg, n, seed))
    return NormalFormReport(
        triple_line=tri,
        triple_line_exact=np.array_equal(tri.coeffs, _monomial_cubic({(3, 0, 0): 1})),
        triple_line_phi_residual=phi_resid,
        double_line=dbl,
        double_line_exact=np.array_equal(dbl.coeffs, _monomial_cubic({(2, 1, 0): 1})),
        double_line_variant=var,
        variant_matches_extra_term=np.array_equal(
            var.coeffs, _monomial_cubic({(2, 1, 0): 1, (1, 1, 1): -2})),
        conic_chord=con,
        conic_chord_exact=np.array_equal(
            con.coeffs, _monomial_cubic({(3, 0, 0): 1, (1, 1, 1): -1})),
    )


def cubic_type(alg, seed=0):
    """Type of the left divisor cubic."""
    cubic = det_cubic(alg)
    if cubic.norm <= SNAP_TOL * max(alg.scale, 1e-300) ** 3:
        return CubicType.IDENTICALLY_ZERO
    return analyze_cubic(cubic, seed=seed).type
