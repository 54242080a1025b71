import numpy as np
import pytest

from equiloci.bisector import bisector_matrix, same_bisector
from equiloci.errors import (
    ConfocalFamily, DependentBasis, IsLinearFamily, UnexpectedDimension, ValidationError,
)
from equiloci.hermitian_core import (
    inner, norm_sq, point_signature, projective_distance, random_point,
)
from equiloci.linear_families import (
    TAGS, LinearFamily, base_sample, classify_family, family_through, focal_embedding,
    giraud_pencil, is_linear_family, line_points, maps_with_focus, nontransversal_diagnosis,
    on_real_span, rank1_elements, subspace_distance, transversal_at, witness_family,
)

from conftest import points_on, random_bisector

E1, E2, E3 = np.eye(3, dtype=complex)
CONSTRUCTIBLE = [t for t in TAGS if t != "ConfocalNegative4"]


def generic_triple(rng):
    return [random_point(rng) for _ in range(3)]


class TestDetection:
    def test_common_slice_is_linear(self, rng):
        maps, _ = family_through(line_points(E1, 12, rng))
        assert is_linear_family(maps[:2])

    def test_generic_pencil_is_not_linear(self, rng):
        p1, p2, p3 = generic_triple(rng)
        assert not is_linear_family([bisector_matrix(p1, p2), bisector_matrix(p2, p3)])

    def test_duplicate_rejected(self, rng):
        maps = witness_family("ConfocalLine")
        with pytest.raises(DependentBasis):
            LinearFamily([maps[0], 2 * maps[0]])

    def test_bad_size(self):
        with pytest.raises(ValidationError):
            LinearFamily(witness_family("ConfocalLine")[:1])


class TestTransversality:
    def test_generic_pair(self, rng):
        for _ in range(10):
            p1, p2, p3 = generic_triple(rng)
            h1, h2 = bisector_matrix(p1, p2), bisector_matrix(p2, p3)
            q = base_sample([h1, h2], 1, seed=int(rng.integers(1000)))[0]
            if point_signature(q).is_isotropic:
                continue
            assert transversal_at([h1, h2], q)

    def test_at_common_focus(self):
        maps = witness_family("ConfocalLine")
        assert not transversal_at(maps, E3)

    def test_five_maps(self):
        maps = maps_with_focus(E3)
        extra = [maps[0] + maps[1], maps[1] - maps[2]]
        assert not transversal_at(maps + extra, E3)

    def test_rplane_cap(self, rng):
        maps = witness_family("RPlaneFamily")
        for _ in range(10):
            p = rng.normal(size=3).astype(complex)
            if point_signature(p).is_isotropic:
                continue
            assert not transversal_at(maps, p)

    def test_maximal_family_caps(self, rng):
        maps = witness_family("MaximalNonconfocalWS")
        for p in line_points(E2, 10, rng):
            if point_signature(p).is_isotropic:
                continue
            assert not transversal_at(maps, p)
        assert transversal_at(maps, E2)


class TestRankOne:
    def test_degenerate_slice_contains_projector(self, rng):
        f0 = np.array([1, 0, 1], dtype=complex)
        maps, _ = family_through(line_points(f0, 20, rng))
        found = rank1_elements(maps)
        assert len(found) == 1
        assert projective_distance(found[0]["f0"], f0) <= 1e-6

    def test_nondegenerate_slice_has_none(self):
        assert rank1_elements(witness_family("MaximalNonconfocalWS")) == []

    def test_positive_focus_confocal_line_has_none(self, rng):
        maps, _ = family_through(line_points(E2, 12, rng) + line_points(E3, 12, rng))
        assert classify_family(maps).tag == "ConfocalLine"
        assert rank1_elements(maps) == []


class TestFocalEmbedding:
    def test_rplane_images_totally_real(self):
        emb = focal_embedding(witness_family("RPlaneFamily"))
        gram = np.array([[inner(a, b) for b in emb.images] for a in emb.images])
        assert np.max(np.abs(gram.imag)) <= 1e-8

    def test_nonconfocal_line_images(self):
        maps = witness_family("NonconfocalLine")
        emb = focal_embedding(maps)
        assert np.linalg.matrix_rank(emb.images, tol=1e-8) == 2
        for k, h in enumerate(emb.basis):
            assert np.linalg.norm(h @ emb.images[k]) <= 1e-9

    def test_polarization(self):
        emb = focal_embedding(witness_family("SliceGeodesicFamily"))
        for i, hi in enumerate(emb.basis):
            for j, hj in enumerate(emb.basis):
                assert np.linalg.norm(hi @ emb.images[j] + hj @ emb.images[i]) <= 1e-8

    def test_confocal_rejected(self):
        with pytest.raises(ConfocalFamily):
            focal_embedding(witness_family("ConfocalLine"))

    def test_unique_up_to_scalar(self):
        for tag in ("RPlaneFamily", "MaximalNonconfocalWS", "NonconfocalLine"):
            maps = witness_family(tag)
            a = focal_embedding(maps, seed=1).images.ravel()
            b = focal_embedding(maps, seed=7).images.ravel()
            lam = np.vdot(a, b) / np.vdot(a, a)
            assert np.max(np.abs(lam * a - b)) <= 1e-7


class TestClassification:
    @pytest.mark.parametrize("tag", CONSTRUCTIBLE)
    def test_witness(self, tag):
        assert classify_family(witness_family(tag)).tag == tag

    def test_confocal_negative_four_does_not_exist(self):
        assert len(maps_with_focus(E3)) == 3
        with pytest.raises(UnexpectedDimension):
            witness_family("ConfocalNegative4")

    def test_confocal_line_base(self, rng):
        cls = classify_family(witness_family("ConfocalLine"))
        polars = cls.witness["line_polars"]
        want = [E1, E2]
        for p in polars:
            assert min(projective_distance(p, w) for w in want) <= 1e-6

    def test_slice_geodesic_witness(self):
        cls = classify_family(witness_family("SliceGeodesicFamily"))
        assert projective_distance(cls.witness["slice_polar"], E3) <= 1e-8
        g = cls.witness["geodesic"]
        assert np.max(np.abs(g.gram().imag)) <= 1e-8

    def test_euclidean_witness(self):
        cls = classify_family(witness_family("EuclideanFocusFamily"))
        assert point_signature(cls.witness["slice_polar"]).is_isotropic


class TestBase:
    def test_residuals(self):
        for tag in CONSTRUCTIBLE:
            maps = witness_family(tag)
            fam = LinearFamily(maps)
            for p in base_sample(maps, 20, seed=3):
                assert fam.base_residual(p) <= 1e-9

    def test_confocal_line_on_two_lines(self):
        for p in base_sample(witness_family("ConfocalLine"), 50):
            assert min(abs(p[0]), abs(p[1])) <= 1e-6

    def test_rplane(self):
        for p in base_sample(witness_family("RPlaneFamily"), 50):
            assert on_real_span(p, np.eye(3)) <= 1e-8

    def test_nonconfocal_line_split(self):
        cls = classify_family(witness_family("NonconfocalLine"))
        apex, u, v = cls.witness["cone"]
        slice_pts = cone_pts = 0
        for p in base_sample(witness_family("NonconfocalLine"), 100):
            if abs(p[0]) <= 1e-6:
                slice_pts += 1
            else:
                assert on_real_span(p, [E1, E3, np.array([0, 1, 0.3j])]) <= 1e-6
                cone_pts += 1
        assert slice_pts and cone_pts

    @pytest.mark.parametrize("tag", [t for t in CONSTRUCTIBLE if not t.startswith("ConfocalNeg")])
    def test_recovery_from_base(self, tag):
        maps = witness_family(tag)
        got, _ = family_through(base_sample(maps, 200, seed=11))
        assert len(got) == len(maps)
        assert subspace_distance(got, maps) <= 1e-6


class TestGiraud:
    def test_telescoping_roots(self, rng):
        for _ in range(20):
            p1, p2, p3 = generic_triple(rng)
            h12, h23, h13 = bisector_matrix(p1, p2), bisector_matrix(p2, p3), bisector_matrix(p1, p3)
            pencil = giraud_pencil(h12, h23)
            assert pencil.alternative == "ThreeRankTwoMembers"
            for target in (h12, h23, h13):
                assert any(same_bisector(m, target, tol=1e-8) for m in pencil.members)
            assert np.max(np.abs(h12 + h23 - h13)) <= 1e-14

    def test_focus_on_bisector(self, rng):
        for _ in range(5):
            b = random_bisector("Hyperbolic", rng)
            f = points_on(b.h, 1, rng)[0]
            other = sum(rng.normal() * m for m in maps_with_focus(f))
            pencil = giraud_pencil(b.h, other)
            assert pencil.alternative == "FocusOnBisector"
            double = [r for r, m in pencil.roots if m == 2][0]
            # the double root is the member whose focus lies on the other bisector
            assert abs(double[0]) <= 1e-5 or abs(double[1]) <= 1e-5

    def test_common_slice_rejected(self):
        maps = witness_family("MaximalNonconfocalWS")
        with pytest.raises(IsLinearFamily):
            giraud_pencil(maps[0], maps[1])


class TestDiagnosis:
    def test_transversal(self, rng):
        p1, p2, p3 = generic_triple(rng)
        h1, h2 = bisector_matrix(p1, p2), bisector_matrix(p2, p3)
        q = [x for x in base_sample([h1, h2], 40, seed=2) if point_signature(x).is_negative][0]
        assert nontransversal_diagnosis(h1, h2, q).status == "Transversal"

    def test_singular_circle(self, rng):
        maps = witness_family("NonconfocalLine")
        circle = classify_family(maps).witness["singular_circle"]
        while True:
            p = rng.normal(size=2) @ np.array(circle)
            if norm_sq(p) < -1e-3 * np.vdot(p, p).real:
                break
        d = nontransversal_diagnosis(maps[0], maps[1], p)
        assert d.status == "OnSingularCircle" and d.family_tag == "NonconfocalLine"

    def test_focus_rejected(self):
        maps = witness_family("ConfocalLine")
        with pytest.raises(ValidationError):
            nontransversal_diagnosis(maps[0], maps[1], E3)


class TestPatchContainment:
    def test_patch_determines_pencil(self, rng):
        p1, p2, p3 = generic_triple(rng)
        h1, h2 = bisector_matrix(p1, p2), bisector_matrix(p2, p3)
        pts = base_sample([h1, h2], 3000, seed=5)
        centre = pts[0]
        patch = sorted(pts, key=lambda p: projective_distance(p, centre))[:40]
        assert projective_distance(patch[-1], centre) < 0.5
        got, _ = family_through(patch)
        assert len(got) == 2
        assert subspace_distance(got, [h1, h2]) <= 1e-7
