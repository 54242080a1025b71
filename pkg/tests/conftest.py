import numpy as np
import pytest

SINH1, COSH1 = np.sinh(1.0), np.cosh(1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def cross_points():
    """Four points at distance 1 from the centre, at right angles."""
    s, c = SINH1, COSH1
    return [np.array(v, dtype=complex) for v in
            ([s, 0, c], [0, s, c], [-s, 0, c], [0, -s, c])]


def points_on(h, n, rng, negative=True):
    """Random points of the bisector <hx, x> = 0, negative ones by default.

    Each point is x + t y with x negative, y random and t a real root of
    the quadratic <h(x + ty), x + ty> = 0.
    """
    from equiloci.hermitian_core import inner, norm_sq, random_point
    out = []
    while len(out) < n:
        x = random_point(rng)
        y = rng.normal(size=3) + 1j * rng.normal(size=3)
        a = inner(h @ y, y).real
        b = inner(h @ x, y).real
        c = inner(h @ x, x).real
        disc = b * b - a * c
        if disc < 0 or abs(a) < 1e-9:
            continue
        t = (-b + np.sqrt(disc)) / a
        q = x + t * y
        if negative and norm_sq(q) >= -1e-6 * np.vdot(q, q).real:
            continue
        out.append(q / np.linalg.norm(q))
    return out


def random_bisector(kind, rng):
    """A random bisector map of the given kind (a Kind value string)."""
    from equiloci.bisector import Geodesic, bisector_from_points, bisector_from_spine, BisectorMap
    from equiloci.hermitian_core import random_point, random_unitary_21
    if kind == "Hyperbolic":
        return bisector_from_points(random_point(rng), random_point(rng))
    if kind == "Spherical":
        model = bisector_from_spine(Geodesic([1, 0, 0], [0, 1, 0])).h
    else:
        model = bisector_from_spine(Geodesic([1, 0, 1], [0, 1, 0])).h
    g = random_unitary_21(rng, 0.8)
    return BisectorMap(g @ model @ np.linalg.inv(g))


ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance criterion."""
    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        request.config.stash[ACCEPTANCE_KEY].append((number, line))
        return ok
    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
