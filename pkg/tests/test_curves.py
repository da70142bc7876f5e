import numpy as np
import pytest

from wallachflow.core import DomainError, KahlerParameterError, Metric, SpaceParams, volume
from wallachflow.curvature import ricci_form, sectional_form
from wallachflow.curves import (
    Branch,
    CurveId,
    Family,
    PROJECTION_CURVES,
    SECTIONAL_CONTACT_SCALE,
    kahler_scale,
    projection_residual,
    ricci_boundary_asymptote,
    ricci_domain_gap,
    ricci_intersection_point,
    ricci_scale,
    sample_curve,
    sample_invariant_curve,
    sample_kahler_curve,
    sample_ricci_boundary,
    sample_sectional_boundary,
    sectional_boundary_asymptote,
    sectional_invariant_intersection,
    sectional_scale,
)

P0 = np.cbrt(6.0) / 2.0
LOG_TS = np.geomspace(1e-3, 1e3, 1000)


class TestSectionalScale:
    def test_contact_value_at_one(self):
        assert abs(float(sectional_scale(1.0)) - P0) < 1e-15
        assert abs(P0 - 0.908560296416070) < 1e-15

    def test_closed_form_at_two(self):
        # alpha(2)^3 = (2 sqrt(3) - 3) / 2 from the conjugate-free form.
        expected = np.cbrt((2.0 * np.sqrt(3.0) - 3.0) / 2.0)
        np.testing.assert_allclose(float(sectional_scale(2.0)), expected, rtol=1e-15)

    def test_divergence_at_origin(self):
        assert float(sectional_scale(1e-8)) > 1e2

    def test_matches_textbook_form_away_from_one(self):
        for t in (0.3, 0.5, 2.0, 7.0, 40.0):
            direct = np.cbrt((-t - 1.0 + 2.0 * np.sqrt(t * t - t + 1.0)) / (t * (t - 1.0) ** 2))
            np.testing.assert_allclose(float(sectional_scale(t)), direct, rtol=1e-12)

    def test_continuity_near_one(self):
        values = sectional_scale(np.array([1.0 - 1e-6, 1.0, 1.0 + 1e-6]))
        assert abs(values[0] - values[1]) < 1e-5
        assert abs(values[2] - values[1]) < 1e-5

    def test_domain(self):
        with pytest.raises(DomainError):
            sectional_scale(0.0)
        with pytest.raises(DomainError):
            sectional_scale(-2.0)


class TestSectionalBoundary:
    def test_contact_point(self):
        sample = sample_sectional_boundary(3, 1.0)
        np.testing.assert_allclose(
            sample.m.coords, (P0, P0, P0 ** (-2)), rtol=0, atol=1e-15
        )

    def test_volume_exact_cancellation(self):
        pts = sample_curve("s2", LOG_TS)
        v = pts[:, 0] * pts[:, 1] * pts[:, 2]
        assert np.abs(v - 1.0).max() <= 1e-13

    def test_defining_residual(self):
        for k in (1, 2, 3):
            pts = sample_curve(CurveId(Family.S, k), LOG_TS)
            assert np.abs(sectional_form(k, pts)).max() <= 1e-10

    def test_carrier_coordinate_placement(self):
        # For k = 3 the factor-t coordinate is x2: small t makes x2 small.
        m = sample_sectional_boundary(3, 1e-3).m
        assert m.x2 < 0.1 < m.x1
        np.testing.assert_allclose(m.x2, 1e-2, rtol=0.01)


class TestRicciDomainGap:
    def test_quarter_values(self):
        m, big = ricci_domain_gap(SpaceParams(0.25))
        np.testing.assert_allclose(m, 2.0 - np.sqrt(3.0), rtol=1e-15)
        np.testing.assert_allclose(big, 2.0 + np.sqrt(3.0), rtol=1e-15)

    def test_product_one_and_ordering(self):
        for a in np.linspace(0.02, 0.48, 24):
            m, big = ricci_domain_gap(SpaceParams(a))
            assert abs(m * big - 1.0) <= 1e-14
            assert a < m < 1.0 < big < 1.0 / a


class TestRicciScale:
    def test_collapses_at_t_equals_a(self):
        for a in (0.05, 1 / 6, 0.3):
            np.testing.assert_allclose(
                float(ricci_scale(a, SpaceParams(a))), a ** (-2 / 3), rtol=1e-13
            )

    def test_excluded_interval_rejected(self):
        p = SpaceParams(0.25)
        m, big = ricci_domain_gap(p)
        for t in (m, 0.5 * (m + big), big):
            with pytest.raises(DomainError):
                ricci_scale(t, p)

    def test_radicand_value(self):
        # At a = 1/4, t = 0.1 the radicand is 0.0001 - 0.004 + 0.01.
        np.testing.assert_allclose(
            float(ricci_scale(0.1, SpaceParams(0.25))), 0.0061 ** (-1 / 6), rtol=1e-14
        )


class TestRicciBoundary:
    def test_pairwise_point_at_trim_end(self):
        a = 1 / 8
        sample = sample_ricci_boundary(1, Branch.TOWARD_J, a, SpaceParams(a))
        np.testing.assert_allclose(sample.m.coords, (0.5, 0.5, 4.0), rtol=0, atol=1e-12)

    def test_toward_i_hits_other_pair(self):
        a = 1 / 8
        sample = sample_ricci_boundary(1, Branch.TOWARD_I, a, SpaceParams(a))
        np.testing.assert_allclose(sample.m.coords, (0.5, 4.0, 0.5), rtol=0, atol=1e-12)

    def test_volume_and_residual_all_branches(self):
        for a in (0.05, 1 / 6, 0.3, 0.45):
            params = SpaceParams(a)
            ts = np.geomspace(a * 1e-3, a, 1000)
            for k in (1, 2, 3):
                for branch in (Branch.TOWARD_I, Branch.TOWARD_J):
                    pts = sample_curve(CurveId(Family.R, k, branch), ts, params)
                    v = pts[:, 0] * pts[:, 1] * pts[:, 2]
                    assert np.abs(v - 1.0).max() <= 1e-13
                    assert np.abs(ricci_form(k, pts, params)).max() <= 1e-10

    def test_trimmed_range_enforced(self):
        p = SpaceParams(0.2)
        with pytest.raises(DomainError):
            sample_ricci_boundary(1, Branch.TOWARD_I, 0.21, p)

    def test_untrimmed_second_coincidence(self):
        # Past the gap, t = 1/a lands on the intersection point with the
        # other partner curve.
        a = 0.2
        p = SpaceParams(a)
        sample = sample_ricci_boundary(1, Branch.TOWARD_I, 1.0 / a, p, untrimmed=True)
        expected = ricci_intersection_point(1, 2, p)
        np.testing.assert_allclose(sample.m.coords, expected.coords, rtol=1e-12)

    def test_untrimmed_still_respects_gap(self):
        p = SpaceParams(0.2)
        with pytest.raises(DomainError):
            sample_ricci_boundary(1, Branch.TOWARD_I, 1.0, p, untrimmed=True)

    def test_coincidence_roots_by_bisection(self):
        # Coordinate coincidences on one untrimmed branch happen exactly at
        # the roots {a, 1/a} of a t^2 - (a^2 + 1) t + a.
        a = 0.3
        p = SpaceParams(a)
        m, big = ricci_domain_gap(p)

        def coincidence(t, which):
            pts = sample_curve(CurveId(Family.R, 1, Branch.TOWARD_I), [t], p, untrimmed=True)
            return pts[0, 0] - pts[0, which]

        lo, hi = 1e-4, m * 0.999999
        f = lambda t: coincidence(t, 2)  # distinguished vs carrier
        assert f(lo) * f(hi) < 0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if f(lo) * f(mid) <= 0:
                hi = mid
            else:
                lo = mid
        assert abs(0.5 * (lo + hi) - a) < 1e-10

        lo, hi = big * 1.000001, 100.0
        g = lambda t: coincidence(t, 1)  # distinguished vs plain slot
        assert g(lo) * g(hi) < 0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if g(lo) * g(mid) <= 0:
                hi = mid
            else:
                lo = mid
        assert abs(0.5 * (lo + hi) - 1.0 / a) < 1e-9

        roots = np.roots([a, -(a * a + 1.0), a])
        np.testing.assert_allclose(sorted(roots), [a, 1.0 / a], rtol=1e-12)


class TestKahlerCurve:
    def test_scale_at_one(self):
        np.testing.assert_allclose(float(kahler_scale(1.0)), 2.0 ** (-1 / 3), rtol=1e-15)

    def test_saddle_point(self):
        sample = sample_kahler_curve(3, 1.0)
        np.testing.assert_allclose(
            sample.m.coords,
            (2.0 ** (-1 / 3), 2.0 ** (-1 / 3), 2.0 ** (2 / 3)),
            rtol=0,
            atol=1e-14,
        )

    def test_kahler_relation(self):
        ts = np.geomspace(0.05, 20.0, 1000)
        for k in (1, 2, 3):
            pts = sample_curve(CurveId(Family.L, k), ts)
            i, j = [idx for idx in (1, 2, 3) if idx != k]
            relation = pts[:, k - 1] - pts[:, i - 1] - pts[:, j - 1]
            assert np.abs(relation).max() <= 1e-12
            v = pts[:, 0] * pts[:, 1] * pts[:, 2]
            assert np.abs(v - 1.0).max() <= 1e-13

    def test_gate_on_parameter(self):
        with pytest.raises(KahlerParameterError):
            sample_kahler_curve(3, 2.0, a=0.2)
        with pytest.warns(UserWarning):
            sample = sample_kahler_curve(3, 2.0, a=0.2, force=True)
        assert sample.m.on_sigma(1e-13)

    def test_exact_sixth_accepted_silently(self):
        sample_kahler_curve(3, 2.0, a=1.0 / 6.0)


class TestInvariantCurve:
    def test_symmetric_point(self):
        assert sample_invariant_curve(3, 1.0).m.coords == (1.0, 1.0, 1.0)

    def test_contact_with_sectional_boundary(self):
        m = sample_invariant_curve(3, P0).m
        assert abs(sectional_form(3, m)) < 1e-13

    def test_reaches_saddle_point(self):
        m = sample_invariant_curve(3, 2.0 ** (-1 / 3)).m
        np.testing.assert_allclose(m.x3, 2.0 ** (2 / 3), rtol=1e-15)

    def test_gamma_identity_along_curve(self):
        # The non-distinguished sectional forms equal p^-4 exactly.  The
        # working precision of the evaluation scales with the squared size
        # of the largest coordinate, so the tolerance does too.
        ps = np.geomspace(0.2, 50.0, 300)
        pts = sample_curve("I3", ps)
        term_scale = np.maximum(ps, 1.0 / ps) ** 4
        for other in (1, 2):
            diff = np.abs(np.asarray(sectional_form(other, pts)) - ps ** (-4.0))
            assert (diff <= 1e-13 * np.maximum(term_scale, 1.0)).all()

    def test_lambda_identities_along_curve(self):
        ps = np.geomspace(0.2, 50.0, 300)
        pts = sample_curve("I3", ps)
        a = 0.3
        params = SpaceParams(a)
        np.testing.assert_allclose(
            ricci_form(1, pts, params), (ps**3 - a) * ps ** (-4.0), rtol=1e-11
        )
        expected = (1.0 - 2.0 * a) * ps**2 + a * ps ** (-4.0)
        np.testing.assert_allclose(ricci_form(3, pts, params), expected, rtol=1e-12)
        assert (np.asarray(ricci_form(3, pts, params)) > 0.0).all()


class TestIntersections:
    def test_pairwise_point_coordinates(self):
        p = ricci_intersection_point(1, 2, SpaceParams(1 / 8))
        np.testing.assert_allclose(p.coords, (0.5, 0.5, 4.0), rtol=1e-15)

    def test_pairwise_point_residuals(self):
        for a in (0.05, 1 / 6, 0.3, 0.45):
            params = SpaceParams(a)
            for i, j in ((1, 2), (1, 3), (2, 3)):
                point = ricci_intersection_point(i, j, params)
                assert abs(ricci_form(i, point, params)) <= 1e-12
                assert abs(ricci_form(j, point, params)) <= 1e-12
                assert volume(point) == pytest.approx(1.0, abs=1e-13)

    def test_third_form_positive_at_pairwise_point(self):
        for a in (0.05, 0.2, 0.45):
            params = SpaceParams(a)
            point = ricci_intersection_point(1, 2, params)
            assert ricci_form(3, point, params) > 0.0

    def test_invalid_indices(self):
        with pytest.raises(DomainError):
            ricci_intersection_point(1, 1, SpaceParams(0.2))

    def test_sectional_invariant_intersection(self):
        m = sectional_invariant_intersection(3)
        np.testing.assert_allclose(m.coords[:2], (0.908560296416070,) * 2, rtol=1e-14)
        np.testing.assert_allclose(m.x3, 0.75 ** (-2.0 / 3.0), rtol=1e-14)
        assert abs(sectional_form(3, m)) <= 1e-13
        for k in (1, 2):
            other = sectional_invariant_intersection(k)
            assert abs(sectional_form(k, other)) <= 1e-13
            assert sorted(other.coords) == pytest.approx(sorted(m.coords), rel=1e-15)

    def test_contact_root_unique_by_sign_scan(self):
        grid = np.linspace(0.1, 10.0, 1_000_000)
        values = (4.0 * grid**3 - 3.0) / grid**4
        signs = np.sign(values)
        assert int(np.sum(signs[:-1] != signs[1:])) == 1


class TestAsymptotes:
    def test_sectional_carrier_error_order(self):
        ts = np.array([1e-2, 1e-3, 1e-4])
        exact = sample_curve("s3", ts)
        errs = np.abs(exact[:, 1] - ts ** (2.0 / 3.0))
        slope = np.polyfit(np.log(ts), np.log(errs), 1)[0]
        assert abs(slope - 8.0 / 3.0) < 0.1
        assert (errs / ts ** (8.0 / 3.0)).max() <= 10.0

    def test_ricci_second_order_term_improves_order(self):
        a = 1 / 6
        params = SpaceParams(a)
        ts = np.array([1e-2, 1e-3, 1e-4])
        exact = sample_curve(CurveId(Family.R, 1, Branch.TOWARD_J), ts, params)
        lead_err = np.abs(exact[:, 1] - ts ** (2.0 / 3.0))
        slope_lead = np.polyfit(np.log(ts), np.log(lead_err), 1)[0]
        assert abs(slope_lead - 5.0 / 3.0) < 0.1
        two_term = np.array([ricci_boundary_asymptote(t, params).coords for t in ts])
        two_err = np.abs(exact[:, 1] - two_term[:, 1])
        slope_two = np.polyfit(np.log(ts), np.log(two_err), 1)[0]
        assert abs(slope_two - 8.0 / 3.0) < 0.1

    def test_asymptote_domain(self):
        with pytest.raises(DomainError):
            sectional_boundary_asymptote(0.2)
        with pytest.raises(DomainError):
            ricci_boundary_asymptote(0.2, SpaceParams(1 / 6))

    def test_asymptote_values_match_truncations(self):
        t = 1e-3
        s = sectional_boundary_asymptote(t)
        np.testing.assert_allclose(s.coords, (t ** (-1 / 3), t ** (2 / 3), t ** (-1 / 3)))
        a = 0.25
        r = ricci_boundary_asymptote(t, SpaceParams(a))
        np.testing.assert_allclose(
            r.coords,
            (
                t ** (-1 / 3),
                t ** (2 / 3) + t ** (5 / 3) / (6 * a),
                t ** (-1 / 3) + t ** (2 / 3) / (6 * a),
            ),
        )


class TestProjections:
    def test_sectional_projection_consistency(self):
        ts = np.geomspace(0.1, 10.0, 50)
        for k, name in ((1, "s1p"), (2, "s2p"), (3, "s3p")):
            pts = sample_curve(CurveId(Family.S, k), ts)
            res = projection_residual(name, pts[:, 0], pts[:, 1])
            assert np.abs(res).max() <= 1e-10

    def test_ricci_projection_consistency(self):
        for a in (0.1, 0.3):
            params = SpaceParams(a)
            ts = np.geomspace(a * 1e-2, a, 50)
            for k, name in ((1, "r1p"), (2, "r2p"), (3, "r3p")):
                for branch in (Branch.TOWARD_I, Branch.TOWARD_J):
                    pts = sample_curve(CurveId(Family.R, k, branch), ts, params)
                    res = projection_residual(name, pts[:, 0], pts[:, 1], params)
                    assert np.abs(res).max() <= 1e-10

    def test_kahler_projection_point(self):
        u = 2.0 ** (-1 / 3)
        assert abs(projection_residual("k3p", u, u)) < 1e-15

    def test_kahler_projection_consistency(self):
        ts = np.geomspace(0.1, 10.0, 50)
        for k, name in ((1, "k1p"), (2, "k2p"), (3, "k3p")):
            pts = sample_curve(CurveId(Family.L, k), ts)
            res = projection_residual(name, pts[:, 0], pts[:, 1])
            assert np.abs(res).max() <= 1e-10

    def test_unknown_name_and_missing_params(self):
        with pytest.raises(DomainError):
            projection_residual("q1p", 1.0, 1.0)
        with pytest.raises(DomainError):
            projection_residual("r1p", 1.0, 1.0)

    def test_all_projection_names_present(self):
        assert len(PROJECTION_CURVES) == 9


class TestCurveId:
    @pytest.mark.parametrize(
        "name,family,k,branch",
        [
            ("s1", Family.S, 1, None),
            ("l2", Family.L, 2, None),
            ("I3", Family.I, 3, None),
            ("r1i", Family.R, 1, Branch.TOWARD_I),
            ("r3j", Family.R, 3, Branch.TOWARD_J),
        ],
    )
    def test_parse_roundtrip(self, name, family, k, branch):
        cid = CurveId.from_string(name)
        assert (cid.family, cid.k, cid.branch) == (family, k, branch)
        assert str(cid) == name

    @pytest.mark.parametrize("bad", ["s4", "r1", "x1", "r1k", "", "ss1"])
    def test_parse_rejects(self, bad):
        with pytest.raises(DomainError):
            CurveId.from_string(bad)

    def test_branch_requirement(self):
        with pytest.raises(DomainError):
            CurveId(Family.S, 1, Branch.TOWARD_I)
        with pytest.raises(DomainError):
            CurveId(Family.R, 1)


class TestDisjointness:
    def test_sectional_curves_pairwise_disjoint(self):
        ts = np.geomspace(1e-2, 1e2, 200)
        samples = {k: sample_curve(CurveId(Family.S, k), ts) for k in (1, 2, 3)}
        for ki in (1, 2):
            for kj in range(ki + 1, 4):
                d = np.linalg.norm(samples[ki][:, None, :] - samples[kj][None, :, :], axis=-1)
                assert d.min() > 0.0
