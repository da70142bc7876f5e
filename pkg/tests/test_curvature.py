import numpy as np
import pytest

from wallachflow.core import Metric, MissingDimensionsError, SpaceParams, volume
from wallachflow.curvature import (
    CurvatureLabel,
    classify,
    principal_ricci,
    ricci_form,
    ricci_form_gradient,
    scalar_curvature,
    sectional_form,
    sectional_form_gradient,
    volume_gradient,
)

from conftest import random_metrics

P0 = np.cbrt(6.0) / 2.0


def central_difference(func, x, step=1e-6):
    grad = np.zeros(3)
    for c in range(3):
        xp, xm = x.copy(), x.copy()
        xp[c] += step
        xm[c] -= step
        grad[c] = (func(xp) - func(xm)) / (2.0 * step)
    return grad


class TestSectionalForm:
    def test_symmetric_point(self):
        assert sectional_form(1, Metric(1, 1, 1)) == 1.0

    def test_contact_point_vanishes(self):
        # On the invariant curve the distinguished form is (4p^3 - 3) / p^4,
        # which vanishes exactly at p = cbrt(6)/2.
        m = Metric(P0, P0, P0 ** (-2))
        assert abs(sectional_form(3, m)) < 1e-14

    def test_hand_evaluation(self):
        assert sectional_form(1, Metric(1, 2, 3)) == 8.0

    def test_swap_symmetry(self, rng):
        for coords in random_metrics(rng, 50):
            m = Metric(*coords)
            swapped = Metric(coords[0], coords[2], coords[1])
            assert sectional_form(1, m) == sectional_form(1, swapped)

    def test_scaling_homogeneity(self, rng):
        for coords in random_metrics(rng, 20):
            base = sectional_form(2, coords)
            for c in (0.1, 1.0, 10.0):
                np.testing.assert_allclose(sectional_form(2, c * coords), c * c * base, rtol=1e-12)


class TestRicciForm:
    def test_symmetric_point(self):
        p = SpaceParams(1 / 6)
        for k in (1, 2, 3):
            np.testing.assert_allclose(ricci_form(k, Metric(1, 1, 1), p), 5.0 / 6.0, rtol=1e-15)

    def test_stretched_fixed_point_value(self):
        # At (2, 1, 1) with a = 1/6 every form equals (1 - 4a^2)/(4a) = 4/3.
        p = SpaceParams(1 / 6)
        for k in (1, 2, 3):
            np.testing.assert_allclose(ricci_form(k, Metric(2, 1, 1), p), 4.0 / 3.0, rtol=1e-15)

    def test_vanishes_at_pairwise_point(self):
        a = 1 / 6
        small = np.cbrt(a)
        m = Metric(small, small, a ** (-2 / 3))
        assert abs(ricci_form(1, m, SpaceParams(a))) < 1e-15
        assert abs(ricci_form(2, m, SpaceParams(a))) < 1e-15

    def test_swap_symmetry(self, rng):
        p = SpaceParams(0.3)
        for coords in random_metrics(rng, 50):
            swapped = np.array([coords[1], coords[0], coords[2]])
            assert ricci_form(3, coords, p) == ricci_form(3, swapped, p)

    def test_scaling_homogeneity(self, rng):
        p = SpaceParams(0.2)
        for coords in random_metrics(rng, 20):
            base = ricci_form(1, coords, p)
            for c in (0.1, 1.0, 10.0):
                np.testing.assert_allclose(ricci_form(1, c * coords, p), c * c * base, rtol=1e-12)


class TestPrincipalRicci:
    def test_symmetric_point(self):
        np.testing.assert_allclose(
            principal_ricci(1, Metric(1, 1, 1), SpaceParams(1 / 6)), 5.0 / 12.0, rtol=1e-15
        )

    def test_form_identity_specific(self):
        # 2 * V * r_k == ricci_form_k, here at V = 24.
        m = Metric(2, 3, 4)
        p = SpaceParams(0.2)
        np.testing.assert_allclose(
            principal_ricci(1, m, p), ricci_form(1, m, p) / (2.0 * 24.0), rtol=1e-14
        )

    def test_form_identity_randomized(self, rng):
        for a in (0.05, 1 / 6, 0.3, 0.45):
            p = SpaceParams(a)
            for coords in random_metrics(rng, 100):
                v = volume(Metric(*coords))
                for k in (1, 2, 3):
                    lhs = 2.0 * v * principal_ricci(k, coords, p)
                    rhs = ricci_form(k, coords, p)
                    np.testing.assert_allclose(lhs, rhs, rtol=1e-12)

    def test_zero_form_means_zero_ricci_on_sigma(self):
        a = 0.3
        small = np.cbrt(a)
        m = Metric(small, small, a ** (-2 / 3))
        assert abs(principal_ricci(1, m, SpaceParams(a))) < 1e-14


class TestScalarCurvature:
    def test_symmetric_point(self):
        p = SpaceParams(1 / 6, d1=2, d2=2, d3=2)
        np.testing.assert_allclose(scalar_curvature(Metric(1, 1, 1), p), 2.5, rtol=1e-15)

    def test_equal_terms(self):
        p = SpaceParams(0.3, d1=1, d2=1, d3=1)
        m = Metric(1, 1, 1)
        np.testing.assert_allclose(
            scalar_curvature(m, p), 3.0 * principal_ricci(1, m, p), rtol=1e-15
        )

    def test_missing_dimensions(self):
        with pytest.raises(MissingDimensionsError):
            scalar_curvature(Metric(1, 1, 1), SpaceParams(0.3))


class TestGradients:
    def test_sectional_gradient_symmetric_point(self):
        np.testing.assert_allclose(
            sectional_form_gradient(1, Metric(1, 1, 1)), [-2.0, 2.0, 2.0], rtol=0, atol=0
        )

    def test_sectional_gradient_distinguished_component(self):
        # d/dx1 of the k=1 form at (1,2,3): 2(-3 + 2 + 3) = 4.
        grad = sectional_form_gradient(1, Metric(1, 2, 3))
        assert grad[0] == 4.0

    def test_ricci_gradient_symmetric_point(self):
        grad = ricci_form_gradient(3, Metric(1, 1, 1), SpaceParams(1 / 6))
        np.testing.assert_allclose(grad, [2 / 3, 2 / 3, 1 / 3], rtol=1e-15)

    def test_ricci_gradient_nonzero_at_pairwise_point(self):
        a = 0.3
        m = Metric(np.cbrt(a), np.cbrt(a), a ** (-2 / 3))
        grad = ricci_form_gradient(1, m, SpaceParams(a))
        assert grad[0] > 0.0

    def test_finite_difference_agreement(self, rng):
        p = SpaceParams(0.22)
        for coords in random_metrics(rng, 1000):
            for k in (1, 2, 3):
                fd = central_difference(lambda x: float(sectional_form(k, x)), coords)
                np.testing.assert_allclose(
                    sectional_form_gradient(k, coords), fd, rtol=0, atol=1e-6
                )
                fd = central_difference(lambda x: float(ricci_form(k, x, p)), coords)
                np.testing.assert_allclose(
                    ricci_form_gradient(k, coords, p), fd, rtol=0, atol=1e-6
                )

    def test_volume_gradient_values(self):
        np.testing.assert_array_equal(volume_gradient(Metric(1, 1, 1)), [1.0, 1.0, 1.0])
        np.testing.assert_array_equal(volume_gradient(Metric(2, 3, 4)), [12.0, 8.0, 6.0])

    def test_volume_gradient_reciprocal_on_sigma(self):
        m = Metric(0.5, 2.0, 1.0)
        np.testing.assert_allclose(volume_gradient(m), [2.0, 0.5, 1.0], rtol=1e-15)

    def test_linear_independence_with_volume_gradient(self, rng):
        p = SpaceParams(0.18)
        count = 0
        for coords in random_metrics(rng, 300):
            m = Metric(*coords)
            if not m.is_generic(tol=1e-3):
                continue
            count += 1
            for k in (1, 2, 3):
                cross = np.cross(volume_gradient(coords), sectional_form_gradient(k, coords))
                assert np.linalg.norm(cross) > 0.0
                cross = np.cross(volume_gradient(coords), ricci_form_gradient(k, coords, p))
                assert np.linalg.norm(cross) > 0.0
        assert count > 200


class TestClassify:
    def test_fully_positive(self):
        signs = classify(Metric(1, 1, 1), SpaceParams(1 / 6))
        assert signs.label is CurvatureLabel.POSITIVE_SECTIONAL
        assert signs.sec_positive and signs.ricci_positive
        np.testing.assert_allclose(signs.sectional, (1, 1, 1), rtol=1e-15)
        np.testing.assert_allclose(signs.ricci, (5 / 6,) * 3, rtol=1e-14)

    def test_boundary_point(self):
        signs = classify(Metric(P0, P0, P0 ** (-2)), SpaceParams(1 / 6))
        assert signs.label is CurvatureLabel.BOUNDARY

    def test_mixed_ricci(self):
        signs = classify(Metric(1, 1, 10), SpaceParams(1 / 6))
        assert signs.label is CurvatureLabel.MIXED_RICCI
        assert signs.ricci[2] > 0.0 > signs.ricci[0]

    def test_positive_ricci_only(self):
        # The stretched fixed point at a = 1/6 sits inside the Ricci set
        # but outside the sectional set (a < 3/14).
        q = np.cbrt(0.5)
        signs = classify(Metric(q, q, 2 * q), SpaceParams(1 / 6))
        assert signs.label is CurvatureLabel.POSITIVE_RICCI_ONLY

    def test_sectional_implies_ricci(self, rng):
        p = SpaceParams(0.12)
        for coords in random_metrics(rng, 2000, lo=0.05, hi=20.0):
            signs = classify(Metric(*coords), p)
            if signs.sec_positive:
                assert signs.ricci_positive

    def test_scale_invariant_labels(self, rng):
        p = SpaceParams(0.3)
        for coords in random_metrics(rng, 100):
            labels = {classify(Metric(*(c * coords)), p).label for c in (0.1, 1.0, 10.0)}
            boundaryless = {l for l in labels if l is not CurvatureLabel.BOUNDARY}
            assert len(boundaryless) <= 1
