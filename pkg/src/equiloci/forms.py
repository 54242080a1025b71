"""Homogeneous polynomials: monomial bookkeeping, interpolation, binary roots."""

from itertools import product

import numpy as np

from .hermitian_core import cubic_roots

ROOT_MERGE = 1e-6


def monomials(nvars, degree=3):
    """Exponent tuples of degree `degree`, lexicographically descending.

    For three variables this is x0^3, x0^2 x1, x0^2 x2, x0 x1^2, x0 x1 x2,
    x0 x2^2, x1^3, x1^2 x2, x1 x2^2, x2^3.
    """
    out = [e for e in product(range(degree, -1, -1), repeat=nvars) if sum(e) == degree]
    return out


def monomial_matrix(points, exps):
    """Rows are the monomials evaluated at each point (points: N x nvars)."""
    pts = np.atleast_2d(np.asarray(points))
    cols = [np.prod(pts ** np.array(e), axis=1) for e in exps]
    return np.stack(cols, axis=1)


def evaluate(coeffs, exps, points):
    return monomial_matrix(points, exps) @ np.asarray(coeffs)


def interpolate_form(func, nvars, degree=3, nodes=range(-2, 3)):
    """Coefficients of the homogeneous form `func` of known degree.

    `func` maps an (N, nvars) array of points to N values.  The form is
    recovered by least squares on the integer grid nodes^nvars, which is
    exact for polynomials of the stated degree.
    """
    exps = monomials(nvars, degree)
    pts = np.array([p for p in product(nodes, repeat=nvars) if any(p)], dtype=float)
    vals = np.asarray(func(pts))
    mat = monomial_matrix(pts, exps)
    coeffs, *_ = np.linalg.lstsq(mat, vals, rcond=None)
    return coeffs


def snap_integers(coeffs, tol=1e-9):
    """Round coefficients that are within tol of Gaussian integers."""
    c = np.asarray(coeffs, dtype=complex).copy()
    re, im = np.round(c.real), np.round(c.imag)
    close_re = np.abs(c.real - re) <= tol
    close_im = np.abs(c.imag - im) <= tol
    c.real = np.where(close_re, re, c.real)
    c.imag = np.where(close_im, im, c.imag)
    return c


def format_form(coeffs, exps, names=("x0", "x1", "x2"), tol=1e-12):
    terms = []
    for c, e in zip(coeffs, exps):
        if abs(c) <= tol:
            continue
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
        )
        if abs(c.imag) <= tol:
            cs = f"{c.real:.12g}"
        else:
            cs = f"({c.real:.12g}{c.imag:+.12g}j)"
        terms.append(f"{cs}*{mono}" if mono else cs)
    return " + ".join(terms) if terms else "0"


def _binary_coeffs_rotated(coeffs, theta):
    """Coefficients of f(cos*u - sin*v, sin*u + cos*v) in the basis
    u^3, u^2 v, u v^2, v^3."""
    c, s = np.cos(theta), np.sin(theta)

    def g(uv):
        u, v = uv[:, 0], uv[:, 1]
        x = c * u - s * v
        y = s * u + c * v
        return coeffs[0] * x ** 3 + coeffs[1] * x ** 2 * y + coeffs[2] * x * y ** 2 + coeffs[3] * y ** 3

    pts = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, -1.0]])
    mat = monomial_matrix(pts, monomials(2, 3))
    return np.linalg.solve(mat, g(pts))


def binary_cubic_roots(coeffs):
    """Projective roots of a*x^3 + b*x^2 y + c*x y^2 + d*y^3.

    Returns a list of (root, multiplicity) where root is a unit vector
    (x, y), complex in general.  Roots closer than ROOT_MERGE are merged.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    norm = np.linalg.norm(coeffs)
    if norm == 0:
        raise ValueError("identically zero binary cubic")
    coeffs = coeffs / norm
    thetas = [0.0, 0.5, 1.1, 1.9, 2.6]
    best = max(thetas, key=lambda t: abs(_binary_coeffs_rotated(coeffs, t)[0]))
    rc = _binary_coeffs_rotated(coeffs, best)
    taus = cubic_roots(rc)
    if np.all(np.abs(coeffs.imag) == 0):
        taus = np.where(np.abs(taus.imag) <= 1e-12 * (1 + np.abs(taus)), taus.real, taus)
    c, s = np.cos(best), np.sin(best)
    raw = []
    for tau in taus:
        u, v = tau, 1.0
        xy = np.array([c * u - s * v, s * u + c * v], dtype=complex)
        raw.append(xy / np.linalg.norm(xy))
    merged = []
    for r in raw:
        for item in merged:
            if _proj_dist2(item[0], r) <= ROOT_MERGE:
                item[1] += 1
                break
        else:
            merged.append([r, 1])
    return [(r, m) for r, m in merged]


def _proj_dist2(a, b):
    return abs(a[0] * b[1] - a[1] * b[0]) / (np.linalg.norm(a) * np.linalg.norm(b))


def real_projective_root(r, tol=1e-6):
    """Return the real representative of a projective root (x:y), or None."""
    k = int(np.argmax(np.abs(r)))
    v = r * np.conj(r[k]) / abs(r[k])
    if np.max(np.abs(v.imag)) <= tol:
        v = v.real
        return v / np.linalg.norm(v)
    return None


def binary_quadratic_real_roots(a, b, c, tol=1e-12):
    """Real projective roots of a*x^2 + 2*b*x*y + c*y^2 (real coefficients).

    Returns a list of unit vectors (x, y); an empty list when the roots are
    complex, and None when the form vanishes identically.
    """
    scale = max(abs(a), abs(b), abs(c))
    if scale <= tol:
        return None
    a, b, c = a / scale, b / scale, c / scale
    disc = b * b - a * c
    if disc < -tol:
        return []
    disc = max(disc, 0.0)
    sq = np.sqrt(disc)
    out = []
    if abs(a) >= abs(c):
        # a t^2 + 2 b t + c = 0 with t = x / y
        q = -(b + np.copysign(sq, b))
        ts = [q / a]
        ts.append(c / q if q != 0 else ts[0])
        for t in ts:
            out.append(np.array([t, 1.0]))
    else:
        q = -(b + np.copysign(sq, b))
        ts = [q / c]
        ts.append(a / q if q != 0 else ts[0])
        for t in ts:
            out.append(np.array([1.0, t]))
    out = [o / np.linalg.norm(o) for o in out]
    if disc <= tol:
        return out[:1]
    return out
