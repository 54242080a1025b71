"""Linear families of bisectors and their classification.

A linear family is a real span W of self-adjoint traceless maps on which
the determinant vanishes identically.  Outside the confocal case there is
a focal embedding f: W -> V, R-linear, with f(h) spanning ker h.  The
C-span of fW (all of V, or a line) together with the dimension and the
signature of the relevant polar point decides the type of the family.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.linalg import eig, subspace_angles
from scipy.optimize import least_squares

from .bisector import BisectorMap, Geodesic, real_spine
from .errors import (
    ConfocalFamily,
    DependentBasis,
    EmptyBaseRegion,
    IsLinearFamily,
    IsotropicInput,
    NonNegativePoint,
    NotALinearFamily,
    NotOnAllBisectors,
    ToleranceFailure,
    UnexpectedDimension,
    ValidationError,
)
from .forms import (
    binary_cubic_roots,
    interpolate_form,
    monomial_matrix,
    monomials,
    real_projective_root,
)
from .hermitian_core import (
    J,
    as_matrix,
    as_vector,
    hermitian_basis,
    inner,
    is_self_adjoint,
    normalize,
    null_vector,
    orthogonal_point,
    point_signature,
    projective_distance,
    rank_kernel,
    realify,
)

DET_TOL = 1e-9
INDEPENDENCE_TOL = 1e-8
TRANSVERSAL_TOL = 1e-8
BASE_TOL = 1e-9

TAGS = (
    "ConfocalLine",
    "ConfocalNegative3",
    "ConfocalNegative4",
    "RPlaneFamily",
    "MaximalNonconfocalWS",
    "SliceGeodesicFamily",
    "EuclideanFocusFamily",
    "NonconfocalLine",
)


def _as_maps(hs):
    if isinstance(hs, LinearFamily):
        return list(hs.basis)
    maps = []
    for h in hs:
        m = h.h if isinstance(h, BisectorMap) else as_matrix(h)
        maps.append(m)
    return maps


def _unit(maps):
    return [m / np.linalg.norm(m) for m in maps]


def realified_singular_values(maps):
    mat = np.stack([realify(m) for m in _unit(maps)], axis=1)
    return np.linalg.svd(mat, compute_uv=False)


def determinant_form(maps):
    """Coefficients of the cubic form x -> det(sum x_i h_i)."""
    stack = np.array(maps)

    def det(pts):
        return np.linalg.det(np.einsum("ni,ijk->njk", pts, stack))

    return interpolate_form(det, len(maps), 3)


def is_linear_family(hs):
    """True when det vanishes identically on the span of the given maps."""
    maps = _unit(_as_maps(hs))
    coeffs = determinant_form(maps)
    return bool(np.max(np.abs(coeffs)) <= DET_TOL)


class LinearFamily:
    """Validated real span of 2 to 4 bisector maps with det identically 0.

    The stored basis is scaled to unit Frobenius norm.
    """

    def __init__(self, maps):
        maps = _as_maps(maps)
        if not 2 <= len(maps) <= 4:
            raise ValidationError(f"a family has 2 to 4 basis maps, got {len(maps)}")
        for m in maps:
            if not is_self_adjoint(m):
                raise ValidationError("basis map is not self-adjoint")
            if abs(np.trace(m)) > 1e-9 * np.linalg.norm(m):
                raise ValidationError("basis map is not traceless")
        maps = _unit(maps)
        if realified_singular_values(maps)[-1] < INDEPENDENCE_TOL:
            raise DependentBasis("basis maps are linearly dependent over R")
        if not is_linear_family(maps):
            raise NotALinearFamily("determinant does not vanish on the span")
        self.basis = maps

    @property
    def dim(self):
        return len(self.basis)

    def element(self, x):
        return np.einsum("i,ijk->jk", np.asarray(x, dtype=float), np.array(self.basis))

    def base_residual(self, p):
        """max_k |<h_k p, p>| for the unit representative of p."""
        p = as_vector(p)
        p = p / np.linalg.norm(p)
        return max(abs(inner(h @ p, p)) for h in self.basis)

    def __repr__(self):
        return f"LinearFamily(dim={self.dim})"


def orthonormal_maps(maps):
    """Orthonormal basis (realified inner product) of the span of maps."""
    mat = np.stack([realify(m) for m in maps], axis=1)
    q, _ = np.linalg.qr(mat)
    return [(q[:9, k] + 1j * q[9:, k]).reshape(3, 3) for k in range(q.shape[1])]


def transversal_at(hs, p):
    """Transversality of bisectors at a common non-isotropic point p.

    Holds when the maps are R-independent and h -> hp is injective on
    their span, measured by the smallest singular value of the realified
    evaluation map on an orthonormal basis.
    """
    maps = _as_maps(hs)
    p = as_vector(p)
    p = p / np.linalg.norm(p)
    if point_signature(p).is_isotropic:
        raise IsotropicInput("transversality is tested at non-isotropic points")
    for m in maps:
        if abs(inner(m @ p, p)) > BASE_TOL * np.linalg.norm(m):
            raise NotOnAllBisectors("point is off one of the bisectors")
    if len(maps) > 4:
        return False
    if realified_singular_values(maps)[-1] < INDEPENDENCE_TOL:
        return False
    ortho = orthonormal_maps(maps)
    evals = np.stack([np.concatenate([(m @ p).real, (m @ p).imag]) for m in ortho], axis=1)
    s = np.linalg.svd(evals, compute_uv=False)
    return bool(s[-1] > TRANSVERSAL_TOL)


def family_through(points, traceless=True, tol=1e-8):
    """Self-adjoint maps h with <hb, b> = 0 for all given points b.

    Solves the real linear system in the nine real parameters of
    H = J h (Hermitian).  Returns an orthonormal list of maps and the
    singular values of the system.
    """
    herm = hermitian_basis()
    rows = []
    for b in points:
        b = as_vector(b)
        b = b / np.linalg.norm(b)
        rows.append([np.vdot(b, e @ b).real for e in herm])
    if traceless:
        rows.append([np.trace(J @ e).real for e in herm])
    a = np.array(rows)
    _, s, vh = np.linalg.svd(a)
    full = np.zeros(9)
    full[: len(s)] = s
    rank = int(np.sum(full > tol * full[0]))
    null = vh[rank:]
    maps = [J @ sum(c * e for c, e in zip(v, herm)) for v in null]
    return maps, full


def subspace_distance(maps_a, maps_b):
    """Sine of the largest principal angle between two spans of maps."""
    a = np.stack([realify(m) for m in _as_maps(maps_a)], axis=1)
    b = np.stack([realify(m) for m in _as_maps(maps_b)], axis=1)
    if a.shape[1] != b.shape[1]:
        return 1.0
    return float(np.sin(np.max(subspace_angles(a, b))))


def common_focus(maps, tol=1e-9):
    """Common kernel vector of all maps, or None."""
    stack = np.vstack(_unit(maps))
    _, s, vh = np.linalg.svd(stack)
    if s[-1] <= tol * s[0]:
        return normalize(vh[-1].conj())
    return None


@dataclass
class FocalEmbedding:
    """R-linear map W -> V; images[k] = f(basis[k])."""

    basis: list
    images: np.ndarray
    residual: float

    def __call__(self, x):
        return np.asarray(x, dtype=float) @ self.images


def focal_embedding(family, seed=0):
    """Focal embedding of a nonconfocal linear family.

    Solves h_i f_j + h_j f_i = 0 with f_k in ker h_k, after a seeded random
    orthogonal change of basis so that every basis element has rank two.
    Unique up to a complex scalar; normalized so |f(h_1)| = 1 with its
    largest coordinate real positive.
    """
    fam = family if isinstance(family, LinearFamily) else LinearFamily(family)
    maps = fam.basis
    if common_focus(maps) is not None:
        raise ConfocalFamily("family is confocal, there is no focal embedding")
    n = len(maps)
    rng = np.random.default_rng(seed)
    t, _ = np.linalg.qr(rng.normal(size=(n, n)))
    gs = [sum(t[j, k] * maps[k] for k in range(n)) for j in range(n)]
    kernels = [rank_kernel(g)[1] for g in gs]
    offsets = np.cumsum([0] + [k.shape[1] for k in kernels])
    rows = []
    for i, j in combinations(range(n), 2):
        block = np.zeros((3, offsets[-1]), complex)
        block[:, offsets[j]:offsets[j + 1]] = gs[i] @ kernels[j]
        block[:, offsets[i]:offsets[i + 1]] = gs[j] @ kernels[i]
        rows.append(block)
    system = np.vstack(rows)
    _, s, vh = np.linalg.svd(system)
    full = np.zeros(offsets[-1])
    full[: len(s)] = s
    if full[-2] <= 1e-8 * full[0]:
        raise ToleranceFailure("focal embedding is not unique")
    z = vh[-1].conj()
    img_g = np.array([kernels[j] @ z[offsets[j]:offsets[j + 1]] for j in range(n)])
    images = t.T @ img_g
    first = images[0]
    k = int(np.argmax(np.abs(first) >= np.abs(first).max() * (1 - 1e-12)))
    images = images * (np.conj(first[k]) / abs(first[k])) / np.linalg.norm(first)
    residual = _focal_residual(maps, images, rng)
    if residual > 1e-8:
        raise ToleranceFailure(f"focal embedding residual {residual:.2e}")
    return FocalEmbedding(maps, images, residual)


def _focal_residual(maps, images, rng, trials=8):
    worst = 0.0
    for _ in range(trials):
        x = rng.normal(size=len(maps))
        h = sum(c * m for c, m in zip(x, maps))
        v = x @ images
        worst = max(worst, np.linalg.norm(h @ v) / (np.linalg.norm(h) * np.linalg.norm(v)))
    return float(worst)


@dataclass
class FamilyClass:
    tag: str
    dim: int
    witness: dict = field(default_factory=dict)


def _confocal_line_base(maps, focus, seed=0):
    """The two lines through the focus forming the base of a confocal line.

    On an auxiliary line the two Hermitian forms vanish at the same two
    points, which are eigenvectors of Q1^-1 Q2.
    """
    rng = np.random.default_rng(seed)
    b = np.linalg.qr(rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2)))[0]
    q1 = b.conj().T @ (J @ maps[0]) @ b
    q2 = b.conj().T @ (J @ maps[1]) @ b
    _, vecs = eig(q2, q1)
    pts = [normalize(b @ vecs[:, k]) for k in range(2)]
    polars = [normalize(orthogonal_point(focus, p)) for p in pts]
    return pts, polars


def _complex_rank(images, tol=1e-8):
    u, s, _ = np.linalg.svd(np.asarray(images).T)
    return int(np.sum(s > tol * s[0])), u


def _fw_cap_ifw(images):
    """Real coefficient vectors a with f(a) in fW cap i fW, and one vector there."""
    a = np.stack([np.concatenate([v.real, v.imag]) for v in images], axis=1)
    b = np.stack([np.concatenate([(1j * v).real, (1j * v).imag]) for v in images], axis=1)
    _, s, vh = np.linalg.svd(np.hstack([a, -b]))
    n = len(images)
    null = vh[-2:, :n].T
    return null


def classify_family(family, seed=0):
    """Classify a linear family into one of the eight tags.

    The witness dictionary records the supporting geometry: common focus,
    common slice polar point, R-plane, geodesic or singular circle.
    """
    fam = family if isinstance(family, LinearFamily) else LinearFamily(family)
    maps = fam.basis
    n = fam.dim
    focus = common_focus(maps)
    if focus is not None:
        sig = point_signature(focus)
        if n == 2:
            pts, polars = _confocal_line_base(maps, focus, seed)
            return FamilyClass("ConfocalLine", n, {
                "focus": focus, "line_points": pts, "line_polars": polars,
                "focus_signature": sig.tag.value})
        if sig.is_negative:
            return FamilyClass(f"ConfocalNegative{n}", n, {"focus": focus})
        raise NotALinearFamily(
            "confocal span of dimension >= 3 with a non-negative focus has no base in the ball")
    emb = focal_embedding(fam, seed)
    images = emb.images
    rank, u = _complex_rank(images)
    if rank == 3:
        if n != 3:
            raise ToleranceFailure("focal image spans V but dim W != 3")
        gram = np.array([[inner(a, b) for b in images] for a in images])
        return FamilyClass("RPlaneFamily", n, {
            "plane": [v for v in images], "gram_imag": float(np.max(np.abs(gram.imag)))})
    slice_basis = u[:, :2]
    polar = normalize(orthogonal_point(slice_basis[:, 0], slice_basis[:, 1]))
    witness = {"slice_polar": polar, "slice_basis": slice_basis, "embedding": emb}
    if n == 4:
        return FamilyClass("MaximalNonconfocalWS", n, witness)
    if n == 3:
        null = _fw_cap_ifw(images)
        f0 = normalize(null[:, 0] @ images)
        witness["line_focus"] = f0
        if point_signature(polar).is_isotropic:
            # any element whose focus is off C f0 is hyperbolic with spine in the base
            a = null_vector(null.T).real
            h = sum(c * m for c, m in zip(a, maps))
            witness["geodesic"] = real_spine(BisectorMap(h))
            return FamilyClass("EuclideanFocusFamily", n, witness)
        coeffs = np.array([[inner(v, f0).real, inner(v, f0).imag] for v in images]).T
        a = null_vector(coeffs).real
        h = sum(c * m for c, m in zip(a, maps))
        val = inner(h @ f0, polar)
        rep = polar * (1j * val / abs(val)) if abs(val) > 1e-14 else polar
        witness["geodesic"] = Geodesic(f0, rep)
        return FamilyClass("SliceGeodesicFamily", n, witness)
    apex = maps[0] @ images[1]
    apex = apex / np.linalg.norm(apex)
    if not point_signature(apex).is_isotropic:
        apex = 1j * apex
    witness["singular_circle"] = (images[0], images[1])
    witness["cone"] = (apex, images[0], images[1])
    return FamilyClass("NonconfocalLine", n, witness)


def rank1_elements(family, seed=0, starts=48):
    """Elements of rank <= 1 in the real span, up to real scale.

    Each is r <-, f0> f0 with f0 isotropic.  Found by minimizing the 2x2
    minors over the unit sphere of coefficients from seeded starts.
    """
    maps = _as_maps(family)
    maps = _unit(maps)
    stack = np.array(maps)
    n = len(maps)
    rng = np.random.default_rng(seed)

    def residuals(x):
        h = np.einsum("i,ijk->jk", x, stack)
        cof = np.array([
            h[1, 1] * h[2, 2] - h[1, 2] * h[2, 1], h[1, 0] * h[2, 2] - h[1, 2] * h[2, 0],
            h[1, 0] * h[2, 1] - h[1, 1] * h[2, 0], h[0, 1] * h[2, 2] - h[0, 2] * h[2, 1],
            h[0, 0] * h[2, 2] - h[0, 2] * h[2, 0], h[0, 0] * h[2, 1] - h[0, 1] * h[2, 0],
            h[0, 1] * h[1, 2] - h[0, 2] * h[1, 1], h[0, 0] * h[1, 2] - h[0, 2] * h[1, 0],
            h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0]])
        return np.concatenate([cof.real, cof.imag, [x @ x - 1.0]])

    found = []
    for _ in range(starts):
        x0 = rng.normal(size=n)
        x0 /= np.linalg.norm(x0)
        sol = least_squares(residuals, x0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15)
        x = sol.x / np.linalg.norm(sol.x)
        h = np.einsum("i,ijk->jk", x, stack)
        s = np.linalg.svd(h, compute_uv=False)
        if s[1] > 1e-8 * s[0]:
            continue
        if any(abs(abs(x @ y["coefficients"]) - 1.0) < 1e-6 for y in found):
            continue
        u = np.linalg.svd(h)[0]
        f0 = normalize(u[:, 0])
        probe = rng.normal(size=3) + 1j * rng.normal(size=3)
        r = inner(h @ probe, probe).real / abs(inner(probe, f0)) ** 2
        found.append({"coefficients": x, "map": h, "f0": f0, "r": r})
    return found


def base_sample(family, n, seed=0, tol=1e-12, iterations=100):
    """n points of the base {p : <hp, p> = 0 for all h in W}.

    Gauss-Newton with minimum-norm steps from seeded random starts, with
    up to 10x oversampling.  Raises EmptyBaseRegion if too few converge.
    """
    maps = _unit(_as_maps(family))
    herm = np.array([J @ m for m in maps])
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(10):
        x = rng.normal(size=(n, 3)) + 1j * rng.normal(size=(n, 3))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        for _ in range(iterations):
            hx = np.einsum("kij,nj->nki", herm, x)
            r = np.einsum("ni,nki->nk", x.conj(), hx).real
            if np.max(np.abs(r)) <= tol * 1e-2:
                break
            jac = 2.0 * np.concatenate([hx.real, hx.imag], axis=2)
            jjt = jac @ jac.transpose(0, 2, 1) + 1e-14 * np.eye(len(maps))
            step = -np.einsum("nkd,nk->nd", jac, np.linalg.solve(jjt, r[..., None])[..., 0])
            x = x + step[:, :3] + 1j * step[:, 3:]
            x /= np.linalg.norm(x, axis=1, keepdims=True)
        hx = np.einsum("kij,nj->nki", herm, x)
        r = np.abs(np.einsum("ni,nki->nk", x.conj(), hx).real).max(axis=1)
        out.extend(normalize(p) for p, ok in zip(x, r <= tol) if ok)
        if len(out) >= n:
            return out[:n]
    raise EmptyBaseRegion(f"only {len(out)} of {n} base points converged")


@dataclass
class GiraudPencil:
    coefficients: np.ndarray
    roots: list
    members: list
    alternative: str


def giraud_pencil(b1, b2):
    """Real roots of the binary cubic det(x h1 + y h2) and their members.

    Two bisector maps not spanning a linear family give a pencil with
    three distinct rank-two members, or a double root when the focus of
    one lies on the other.  Members use the maps as given (not rescaled),
    so telescoping identities survive.
    """
    h1, h2 = _as_maps([b1, b2])
    n1, n2 = np.linalg.norm(h1), np.linalg.norm(h2)
    u1, u2 = h1 / n1, h2 / n2
    pts = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, -1.0]])
    vals = np.array([np.linalg.det(x * u1 + y * u2) for x, y in pts]).real
    coeffs = np.linalg.solve(monomial_matrix(pts, monomials(2, 3)), vals)
    if np.max(np.abs(coeffs)) <= DET_TOL:
        raise IsLinearFamily("the two maps span a linear family")
    roots = []
    members = []
    for r, mult in binary_cubic_roots(coeffs):
        real = real_projective_root(r)
        if real is None:
            continue
        xy = np.array([real[0] / n1, real[1] / n2])
        xy /= np.linalg.norm(xy)
        roots.append((xy, mult))
        members.append(xy[0] * h1 + xy[1] * h2)
    mults = sorted(m for _, m in roots)
    if mults == [1, 1, 1]:
        alt = "ThreeRankTwoMembers"
    elif mults == [1, 2]:
        alt = "FocusOnBisector"
    else:
        alt = "Degenerate"
    coeffs_raw = np.array([
        coeffs[0] * n1 ** 3, coeffs[1] * n1 ** 2 * n2, coeffs[2] * n1 * n2 ** 2, coeffs[3] * n2 ** 3])
    return GiraudPencil(coeffs_raw, roots, members, alt)


@dataclass
class Diagnosis:
    status: str
    family_tag: str = ""
    singular_circle: tuple = ()
    circle_residual: float = float("nan")


def on_real_span(p, vectors):
    """Smallest singular value of [v_1, ..., v_k, -p, -ip] realified.

    Zero exactly when some complex multiple of p lies in the real span of
    the vectors.
    """
    p = as_vector(p)
    cols = [np.asarray(v, complex) / np.linalg.norm(v) for v in vectors]
    cols += [-p / np.linalg.norm(p), -1j * p / np.linalg.norm(p)]
    mat = np.stack([np.concatenate([c.real, c.imag]) for c in cols], axis=1)
    return float(np.linalg.svd(mat, compute_uv=False)[-1])


def nontransversal_diagnosis(b1, b2, p):
    """Explain a failure of transversality of two bisectors at p.

    A nontransversal intersection point of two distinct bisectors lies on
    the singular circle of the nonconfocal line they span.
    """
    p = as_vector(p)
    if not point_signature(p).is_negative:
        raise NonNegativePoint("diagnosis is done at points of the ball")
    maps = _as_maps([b1, b2])
    for m in maps:
        if projective_distance(rank_kernel(m)[1][:, 0], p) <= 1e-9:
            raise ValidationError("point is the focus of one of the bisectors")
    if transversal_at(maps, p):
        return Diagnosis("Transversal")
    if not is_linear_family(maps):
        raise ToleranceFailure("nontransversal point but the span is not a linear family")
    cls = classify_family(maps)
    if cls.tag != "NonconfocalLine":
        return Diagnosis("NonTransversal", cls.tag)
    circle = cls.witness["singular_circle"]
    res = on_real_span(p, circle)
    status = "OnSingularCircle" if res <= 1e-7 else "NonTransversal"
    return Diagnosis(status, cls.tag, circle, res)


def line_samples(u, v, n, rng):
    """n random points on the complex line through u and v."""
    out = []
    for _ in range(n):
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        out.append(z[0] * np.asarray(u) + z[1] * np.asarray(v))
    return out


def real_span_samples(vectors, n, rng):
    """n random points on the projectivized real span of the vectors."""
    vs = np.array(vectors)
    return [rng.normal(size=len(vs)) @ vs for _ in range(n)]


def line_points(polar, n, rng):
    """Random points on the line polar to the given point."""
    _, _, vh = np.linalg.svd(np.conj(J @ np.asarray(polar, complex)).reshape(1, 3))
    basis = vh[1:].conj()
    return line_samples(basis[0], basis[1], n, rng)



def maps_with_focus(focus):
    """Orthonormal basis of the self-adjoint traceless maps h with h f = 0."""
    f = as_vector(focus)
    herm = hermitian_basis()
    rows = np.array([np.concatenate([((J @ e) @ f).real, ((J @ e) @ f).imag]) for e in herm]).T
    rows = np.vstack([rows, [np.trace(J @ e).real for e in herm]])
    _, s, vh = np.linalg.svd(rows)
    rank = int(np.sum(s > 1e-9 * s[0]))
    return [J @ sum(c * e for c, e in zip(v, herm)) for v in vh[rank:]]


def witness_family(tag, seed=0):
    """A family of the given tag, built as the maps vanishing on its base.

    Every construction is the one described by the tag: two slices through
    a negative focus, a real plane, a slice plus its polar point, a slice
    plus a geodesic, and so on.  ConfocalNegative4 needs four independent
    maps with a common negative focus; there are only three, and this
    raises UnexpectedDimension.
    """
    rng = np.random.default_rng(seed)
    e1, e2, e3 = np.eye(3)
    if tag == "ConfocalLine":
        pts = line_points(e1, 12, rng) + line_points(e2, 12, rng)
    elif tag in ("ConfocalNegative3", "ConfocalNegative4"):
        maps = maps_with_focus(e3)
        want = 3 if tag == "ConfocalNegative3" else 4
        if len(maps) < want:
            raise UnexpectedDimension(
                f"maps with a common negative focus span dimension {len(maps)}, not {want}")
        return maps[:want]
    elif tag == "RPlaneFamily":
        pts = real_span_samples(np.eye(3), 20, rng)
    elif tag == "MaximalNonconfocalWS":
        pts = line_points(e2, 20, rng)
    elif tag == "SliceGeodesicFamily":
        pts = line_points(e3, 20, rng) + real_span_samples([e3, e1], 20, rng)
    elif tag == "EuclideanFocusFamily":
        vertex = (e1 + e3) / np.sqrt(2)
        pts = line_points(vertex, 20, rng) + real_span_samples([vertex, (e1 - e3) / np.sqrt(2)],
                                                              20, rng)
    elif tag == "NonconfocalLine":
        apex, d0, d1 = e1, e3, np.array([0, 1, 0.3j])
        pts = line_points(apex, 20, rng) + real_span_samples([apex, d0, d1], 30, rng)
    else:
        raise ValidationError(f"unknown family tag {tag!r}")
    maps, _ = family_through(pts)
    return maps
