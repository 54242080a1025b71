import numpy as np
import pytest

from equiloci.bisector import rank_one_map
from equiloci.cubics import CubicType, analyze_cubic, classify_cubic
from equiloci.equitant_loci import (
    CASE_CUBIC, CASES, base_biquadratic, case_coefficients, classify_equitant, cubic_EW,
    dual_basis, equitant_instance, focal_curve, irreducibility_report, make_equitant,
    pencil_tangency, realness_witness, recover_family, singular_foci, trace_base,
)
from equiloci.errors import (
    CollinearTriple, InsufficientSamples, MixedSignature, NonGenericFamily,
    SpanIsLinearFamily, UnexpectedDimension,
)
from equiloci.hermitian_core import (
    inner, point_signature, projective_distance, projectively_equal, random_point,
)
from equiloci.linear_families import (
    line_points, subspace_distance, transversal_at, witness_family,
)

from conftest import COSH1, SINH1

SMOOTH_A = (1.3, 1.1, 1.0, 0.7)


@pytest.fixture
def cross(cross_points):
    return make_equitant(cross_points)


@pytest.fixture(scope="module")
def smooth():
    return equitant_instance(SMOOTH_A, seed=2)


def centred_points(angles_deg, dist=1.0):
    s, c = np.sinh(dist), np.cosh(dist)
    return [np.array([s * np.cos(t), s * np.sin(t), c], dtype=complex)
            for t in np.radians(angles_deg)]


class TestConstruction:
    def test_cross_coefficients(self, cross):
        assert np.allclose(cross.a, 1.0, atol=1e-12)
        assert cross.sigma == -1

    def test_invariants(self, cross, smooth):
        for fam in (cross, smooth):
            assert np.linalg.norm(fam.a @ fam.points) <= 1e-10
            for p in fam.points:
                assert inner(p, p).real == pytest.approx(-1.0)
            for m in fam.basis:
                assert abs(np.trace(m)) <= 1e-12
                assert np.allclose(np.diag([1, 1, -1]) @ m, (np.diag([1, 1, -1]) @ m).conj().T)

    def test_generic_angles(self):
        fam = make_equitant(centred_points([0, 90, 170, 280]))
        assert np.all(fam.a > 0) and np.all(np.diff(fam.a) <= 0)

    def test_collinear(self):
        pts = [np.array([x, 0, 1], dtype=complex) for x in (0, 0.2, 0.4)] + [np.array([0, 0.3, 1])]
        with pytest.raises(CollinearTriple):
            make_equitant(pts)

    def test_mixed(self, cross_points):
        with pytest.raises(MixedSignature):
            make_equitant(cross_points[:3] + [np.array([1, 0, 0.5])])

    def test_instance_coefficients(self):
        fam = equitant_instance(SMOOTH_A, seed=0)
        assert np.allclose(fam.a, np.array(SMOOTH_A) / 0.7, atol=1e-8)


class TestCases:
    def test_cross_three_lines(self, cross):
        assert classify_equitant(cross) == "ThreeLines"
        assert classify_cubic(cubic_EW(cross)) is CubicType.THREE_LINES_GENERAL
        patterns = {f["pattern"] for f in singular_foci(cross)}
        assert patterns == {(1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1)}

    def test_conic_plus_line(self):
        fam = equitant_instance((1.2, 1.2, 0.9, 0.9), seed=0)
        assert classify_equitant(fam) == "ConicPlusLine"
        assert {f["pattern"] for f in singular_foci(fam)} == {(1, -1, 1, -1), (1, -1, -1, 1)}

    def test_smooth(self, smooth):
        assert classify_equitant(smooth) == "Smooth"
        assert singular_foci(smooth) == []
        assert classify_cubic(cubic_EW(smooth)) is CubicType.SMOOTH

    def test_basis_permutation(self, smooth):
        b = smooth.basis
        from equiloci.linear_families import determinant_form
        from equiloci.cubics import TernaryCubic
        permuted = TernaryCubic(determinant_form([b[2], b[0], b[1]]).real)
        assert classify_cubic(permuted) is classify_cubic(cubic_EW(smooth))

    @pytest.mark.parametrize("case", CASES)
    def test_tag_agrees_with_cubic(self, case):
        rng = np.random.default_rng(CASES.index(case))
        for k in range(4):
            fam = equitant_instance(case_coefficients(case, rng), seed=k)
            assert classify_equitant(fam) == case
            assert classify_cubic(cubic_EW(fam)) is CASE_CUBIC[case]

    @pytest.mark.parametrize("case", [c for c in CASES if c != "Smooth"])
    def test_singular_foci_are_base_points(self, case):
        rng = np.random.default_rng(7)
        fam = equitant_instance(case_coefficients(case, rng), seed=1)
        for item in singular_foci(fam):
            s, eps = item["focus"], np.array(item["pattern"])
            mods = [abs(inner(s, p)) for p in fam.points]
            assert max(mods) - min(mods) <= 1e-9 * max(mods)
            assert abs(eps @ fam.a) <= 1e-9 * fam.a[0]
            assert not transversal_at(fam.basis, s)


class TestBiquadratic:
    def test_cross(self, cross):
        assert np.array_equal(base_biquadratic([1, 1, 1, 1]), [2.0, 0.0, 0.0, 0.0])
        # the family's coefficients come from a null-space solve
        assert np.allclose(base_biquadratic(cross), [2, 0, 0, 0], rtol=0, atol=1e-14)

    def test_smooth_values(self):
        r = base_biquadratic(SMOOTH_A)
        assert np.allclose(r, [1.93531, 0.16608, 0.02622, 0.25699], atol=5e-6)

    def test_scaling(self, rng):
        for _ in range(20):
            a = np.sort(rng.uniform(0.5, 2, 4))[::-1]
            lam = rng.uniform(0.1, 10)
            assert np.max(np.abs(base_biquadratic(a) - base_biquadratic(lam * a))) <= 1e-12
            assert base_biquadratic(a)[0] > 0

    def test_irreducibility(self, cross, smooth):
        assert irreducibility_report(cross).reducible
        assert not irreducibility_report(smooth).reducible
        clp = equitant_instance((1.2, 1.2, 0.9, 0.9), seed=0)
        rep = irreducibility_report(clp)
        assert rep.reducible and rep.mechanism == "quadratic split"


class TestTrace:
    def test_empty(self, smooth):
        assert trace_base(smooth, 0) == ([], 0)

    def test_smooth_equalizes(self, smooth):
        records, _ = trace_base(smooth, 200)
        assert len(records) >= 150
        for rec in records:
            mods = [abs(inner(rec.q, p)) for p in smooth.points]
            assert max(mods) - min(mods) <= 1e-8 * max(mods)
            if rec.signature == "Negative":
                assert rec.distance_spread <= 1e-7
            assert abs(abs(rec.x1) - 1) <= 1e-12 and abs(abs(rec.x2) - 1) <= 1e-12

    def test_cross_points_on_lines(self, cross):
        records, _ = trace_base(cross, 50)
        assert records
        for rec in records:
            s0, s1 = rec.s
            t0, t1 = rec.t
            # (2,0,0,0) form: 2 s0 t0 (s0 t0 + s1 t1)
            assert abs(s0 * t0 * (s0 * t0 + s1 * t1)) <= 1e-9
            mods = [abs(inner(rec.q, p)) for p in cross.points]
            assert max(mods) - min(mods) <= 1e-8 * max(mods)

    def test_dual_basis(self, smooth):
        q = dual_basis(smooth)
        for i in range(3):
            for j in range(3):
                assert abs(inner(q[:, i], smooth.points[j]) - (i == j)) <= 1e-10

    def test_traced_points_transversal(self, smooth):
        records, _ = trace_base(smooth, 100)
        for rec in records[:50]:
            assert transversal_at(smooth.basis, rec.q)


class TestRecovery:
    def test_smooth(self, smooth):
        records, _ = trace_base(smooth, 60)
        rec = recover_family([r.q for r in records[:40]])
        assert rec.dim == 3
        assert rec.trace_residual <= 1e-8
        assert subspace_distance(rec.maps, smooth.basis) <= 1e-6

    def test_too_few(self, smooth):
        records, _ = trace_base(smooth, 10)
        with pytest.raises(InsufficientSamples):
            recover_family([r.q for r in records[:5]])

    def test_single_slice(self, rng):
        with pytest.raises(UnexpectedDimension):
            recover_family(line_points(np.array([1, 0, 0]), 30, rng))

    def test_stability(self, smooth, rng):
        a, _ = trace_base(smooth, 60)
        b, _ = trace_base(smooth, 77)
        ra = recover_family([r.q for r in a])
        noisy = [r.q + 1e-10 * (rng.normal(size=3) + 1j * rng.normal(size=3)) for r in b]
        rb = recover_family(noisy)
        assert subspace_distance(ra.maps, rb.maps) <= 1e-6


class TestFocalCurve:
    def test_smooth_fit(self, smooth):
        fc = focal_curve(smooth, 30)
        assert fc.residual <= 1e-7
        assert len(fc.foci) == 30

    def test_three_lines_fit(self, cross):
        assert focal_curve(cross, 30).residual <= 1e-7

    def test_confocal_line_rejected(self):
        a, b, c = (np.array([0, z, 1]) for z in (0.1, 0.3j, -0.4))
        d = np.array([0.2, 0.1, 1])
        w = [rank_one_map(p) / inner(p, p).real for p in (a, b, c, d)]
        maps = [w[0] - w[1], w[1] - w[2], w[2] - w[3]]
        with pytest.raises(NonGenericFamily):
            focal_curve(maps)

    def test_injective_on_samples(self, smooth):
        fc = focal_curve(smooth, 30, seed=3)
        for i in range(len(fc.elements)):
            for j in range(i):
                e_dist = np.linalg.norm(np.cross(fc.elements[i], fc.elements[j]))
                if e_dist >= 1e-4:
                    assert projective_distance(fc.foci[i], fc.foci[j]) >= 1e-6


class TestRealness:
    def test_cross(self, cross):
        w = realness_witness(cross)
        assert w.residual <= 1e-9

    def test_smooth(self, smooth):
        fc = focal_curve(smooth, 30)
        w = realness_witness(smooth, fc)
        assert w.residual <= 1e-9
        assert w.line_residual >= 1e-3


class TestTangency:
    def test_three_points(self, smooth):
        w = smooth.w
        t = pencil_tangency(w[0] - w[1], w[1] - w[2], smooth)
        assert t.alternative == "ThreeRankTwoMembers"
        assert t.residual <= 1e-8
        for got, want in zip(t.points, smooth.points[:3]):
            assert projectively_equal(got, want)

    def test_focus_on_bisector(self, rng):
        from equiloci.linear_families import maps_with_focus
        from conftest import points_on, random_bisector
        b = random_bisector("Hyperbolic", rng)
        f = points_on(b.h, 1, rng)[0]
        other = sum(rng.normal() * m for m in maps_with_focus(f))
        t = pencil_tangency(b.h, other)
        assert t.alternative == "FocusOnBisector"
        assert t.focus_on == "focus of the second lies on the first"

    def test_linear_span_rejected(self):
        maps = witness_family("ConfocalLine")
        with pytest.raises(SpanIsLinearFamily):
            pencil_tangency(maps[0], maps[1])
