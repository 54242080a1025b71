import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from equiloci.errors import IllConditionedWarning, NonNegativePoint, ValidationError
from equiloci.hermitian_core import (
    adjoint,
    cubic_roots,
    distance,
    eigen3,
    inner,
    normalize,
    point_signature,
    projective_distance,
    projectively_equal,
    random_point,
    random_unitary_21,
    rank_kernel,
)
from equiloci.bisector import bisector_matrix

from conftest import COSH1, SINH1

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
cvec = st.lists(st.tuples(finite, finite), min_size=3, max_size=3).map(
    lambda xs: np.array([complex(a, b) for a, b in xs]))


class TestInner:
    def test_centre_is_negative_unit(self):
        assert inner([0, 0, 1], [0, 0, 1]) == -1

    def test_orthogonal_axes(self):
        assert inner([1, 0, 0], [0, 0, 1]) == 0

    def test_point_at_distance_one(self):
        assert inner([SINH1, 0, COSH1], [0, 0, 1]) == pytest.approx(-1.5430806348152437, abs=1e-15)

    def test_linear_in_first_slot(self):
        u, v = np.array([1, 2j, 0.5]), np.array([0.3, 1, 1j])
        assert inner(2j * u, v) == pytest.approx(2j * inner(u, v))
        assert inner(u, 2j * v) == pytest.approx(-2j * inner(u, v))

    @settings(max_examples=60, deadline=None)
    @given(cvec, cvec)
    def test_conjugate_symmetry(self, u, v):
        assert abs(inner(u, v) - np.conj(inner(v, u))) <= 1e-14 * (1 + np.linalg.norm(u) * np.linalg.norm(v))


class TestSignature:
    @pytest.mark.parametrize("p, tag", [
        ([0, 0, 1], "Negative"),
        ([1, 0, 0], "Positive"),
        ([1, 0, 1], "Isotropic"),
    ])
    def test_examples(self, p, tag):
        assert point_signature(p).tag.value == tag

    def test_value_is_for_unit_representative(self):
        assert point_signature([0, 0, 5]).value == pytest.approx(-1.0)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValidationError):
            point_signature([0, 0, 0])


class TestDistance:
    def test_identical(self):
        assert distance([0, 0, 1], [0, 0, 1]) == 0.0

    def test_unit_distance(self):
        assert distance([0, 0, 1], [SINH1, 0, COSH1]) == pytest.approx(1.0, abs=1e-12)

    def test_positive_argument(self):
        with pytest.raises(NonNegativePoint):
            distance([0, 0, 1], [1, 0, 0])

    def test_symmetric(self, rng):
        for _ in range(20):
            p, q = random_point(rng), random_point(rng)
            assert distance(p, q) == pytest.approx(distance(q, p), abs=1e-12)

    def test_projective_invariance(self, rng):
        for _ in range(50):
            p, q = random_point(rng), random_point(rng)
            lam, mu = rng.normal(size=2) + 1j * rng.normal(size=2)
            assert abs(distance(lam * p, mu * q) - distance(p, q)) <= 1e-10

    def test_invariant_under_the_group(self, rng):
        for _ in range(20):
            g = random_unitary_21(rng, 0.5)
            p, q = random_point(rng), random_point(rng)
            assert distance(g @ p, g @ q) == pytest.approx(distance(p, q), abs=1e-9)


class TestNormalize:
    def test_largest_coordinate_real_positive(self):
        v = normalize([1j, 2j, 0])
        assert v[1].real > 0 and v[1].imag == 0
        assert np.linalg.norm(v) == pytest.approx(1.0)

    @settings(max_examples=60, deadline=None)
    @given(cvec)
    def test_idempotent(self, v):
        if np.linalg.norm(v) < 1e-3:
            return
        once = normalize(v)
        assert np.allclose(normalize(once), once, atol=1e-14)

    def test_phase_free(self, rng):
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        assert np.allclose(normalize(v), normalize(np.exp(0.7j) * 3 * v), atol=1e-14)


class TestProjectiveEquality:
    def test_same_point(self):
        assert projectively_equal([1, 2j, 3], [2j, -4, 6j])

    def test_near_points_distinguished(self):
        # sin^2 of the angle is about 1e-16 here, above the 1e-18 threshold
        assert not projectively_equal([1, 0, 0], [1, 1e-8, 0])
        assert projectively_equal([1, 0, 0], [1, 1e-10, 0])

    def test_distance_orthogonal(self):
        assert projective_distance([1, 0, 0], [0, 1, 0]) == pytest.approx(1.0)


class TestAdjoint:
    def test_identity(self):
        assert np.allclose(adjoint(np.eye(3)), np.eye(3))

    def test_diagonal(self):
        assert np.allclose(adjoint(np.diag([1j, 0, 0])), np.diag([-1j, 0, 0]))

    def test_defining_identity(self, rng):
        h = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        hs = adjoint(h)
        for _ in range(10):
            x = rng.normal(size=3) + 1j * rng.normal(size=3)
            y = rng.normal(size=3) + 1j * rng.normal(size=3)
            assert abs(inner(h @ x, y) - inner(x, hs @ y)) <= 1e-12 * np.linalg.norm(h) * 10

    def test_involution(self, rng):
        h = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        assert np.max(np.abs(adjoint(adjoint(h)) - h)) <= 1e-12


class TestRankKernel:
    def test_zero_matrix(self):
        rank, ker = rank_kernel(np.zeros((3, 3)))
        assert rank == 0 and ker.shape == (3, 3)

    def test_diagonal(self):
        rank, ker = rank_kernel(np.diag([1, 1, 0]))
        assert rank == 2
        assert projectively_equal(ker[:, 0], [0, 0, 1])

    def test_bisector_kernel(self):
        h = bisector_matrix([0, 0, 1], [SINH1, 0, COSH1])
        rank, ker = rank_kernel(h)
        assert rank == 2
        assert projectively_equal(ker[:, 0], [0, 1, 0])

    def test_random_rank_two(self, rng):
        for _ in range(20):
            h = bisector_matrix(random_point(rng), random_point(rng))
            rank, ker = rank_kernel(h)
            assert rank == 2
            assert np.linalg.norm(h @ ker[:, 0]) <= 1e-9 * np.linalg.norm(h)


class TestEigen:
    def test_diagonal(self):
        vals = sorted((lam for lam, _ in eigen3(np.diag([2j, -2j, 0]))), key=lambda z: z.imag)
        assert np.allclose(vals, [-2j, 0, 2j], atol=1e-12)

    def test_nilpotent(self):
        n = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0]], dtype=complex)
        vals = [lam for lam, _ in eigen3(n)]
        assert np.allclose(vals, 0, atol=1e-12)
        assert np.allclose(np.linalg.matrix_power(n, 3), 0)

    def test_traceless_sum(self, rng):
        for _ in range(20):
            h = bisector_matrix(random_point(rng), random_point(rng, "positive"))
            pairs = eigen3(h)
            assert abs(sum(lam for lam, _ in pairs)) <= 1e-10
            for lam, v in pairs:
                assert np.linalg.norm(h @ v - lam * v) <= 1e-10 * np.linalg.norm(h, 2)

    def test_ill_conditioned_warns(self, monkeypatch):
        # eigenvalues off by 1e-3 cannot meet the residual target
        import equiloci.hermitian_core as core
        monkeypatch.setattr(core, "cubic_roots", lambda c: np.array([1.001, 2.0, 3.0]))
        with pytest.warns(IllConditionedWarning):
            core.eigen3(np.diag([1.0, 2.0, 3.0]))


class TestCubicRoots:
    def test_distinct(self):
        roots = np.sort_complex(cubic_roots([1, -6, 11, -6]))
        assert np.allclose(roots, [1, 2, 3], atol=1e-12)

    def test_triple(self):
        assert np.allclose(cubic_roots([1, -3, 3, -1]), 1, atol=1e-12)

    def test_double(self):
        roots = np.sort_complex(cubic_roots([1, -4, 5, -2]))
        assert np.allclose(roots, [1, 1, 2], atol=1e-7)
