import numpy as np
import pytest

from wallachflow.core import (
    DomainError,
    Metric,
    NonPositiveCoordinateError,
    SpaceParams,
    Tolerances,
    normalize_to_sigma,
    other_indices,
    validate_metric,
    volume,
)

from conftest import random_metrics


class TestMetric:
    def test_identity_point(self):
        m = validate_metric(1, 1, 1)
        assert m.coords == (1.0, 1.0, 1.0)

    def test_zero_coordinate_rejected_with_index(self):
        with pytest.raises(NonPositiveCoordinateError) as err:
            validate_metric(1, 0, 2)
        assert err.value.index == 2

    @pytest.mark.parametrize("bad", [(-1, 1, 1), (1, 1, float("nan")), (1, float("inf"), 1)])
    def test_nonfinite_or_negative_rejected(self, bad):
        with pytest.raises(NonPositiveCoordinateError):
            validate_metric(*bad)

    def test_on_sigma_product_one(self):
        m = validate_metric(0.5, 2.0, 1.0)
        assert m.on_sigma(1e-12)

    def test_generic_predicate(self):
        assert Metric(1, 2, 3).is_generic()
        assert not Metric(1, 1, 2).is_generic()
        assert not Metric(1.0, 1.0 + 1e-9, 2.0).is_generic(tol=1e-6)

    def test_array_protocol(self):
        arr = np.asarray(Metric(2, 3, 4))
        np.testing.assert_array_equal(arr, [2.0, 3.0, 4.0])

    def test_permuted(self):
        assert Metric(1, 2, 3).permuted((3, 1, 2)).coords == (3.0, 1.0, 2.0)


class TestVolume:
    def test_identity(self):
        assert volume(Metric(1, 1, 1)) == 1.0

    def test_direct_product(self):
        assert volume(Metric(2, 3, 4)) == 24.0

    def test_saddle_point_unit_volume(self):
        # (2^-1/3, 2^-1/3, 2^2/3) multiplies to 2^0 = 1.
        m = Metric(2.0 ** (-1 / 3), 2.0 ** (-1 / 3), 2.0 ** (2 / 3))
        assert abs(volume(m) - 1.0) < 1e-15


class TestNormalizeToSigma:
    def test_scales_symmetric_point(self):
        m = normalize_to_sigma(Metric(2, 2, 2))
        np.testing.assert_allclose(m.coords, (1, 1, 1), rtol=0, atol=1e-15)

    def test_fixed_point(self):
        m = normalize_to_sigma(Metric(1, 1, 1))
        assert m.coords == (1.0, 1.0, 1.0)

    def test_345_point(self):
        m = normalize_to_sigma(Metric(3, 4, 5))
        scale = np.cbrt(60.0)
        np.testing.assert_allclose(m.coords, (3 / scale, 4 / scale, 5 / scale), rtol=1e-15)
        assert abs(volume(m) - 1.0) <= 1e-14

    def test_volume_one_and_idempotent_randomized(self, rng):
        for coords in random_metrics(rng, 200):
            m = normalize_to_sigma(Metric(*coords))
            assert abs(volume(m) - 1.0) <= 1e-13
            again = normalize_to_sigma(m)
            np.testing.assert_allclose(again.coords, m.coords, rtol=0, atol=1e-13)


class TestSpaceParams:
    def test_a_range_enforced(self):
        SpaceParams(0.2)
        for bad in (0.0, 0.5, -0.1, 1.0):
            with pytest.raises(DomainError):
                SpaceParams(bad)

    def test_per_module_defaults(self):
        p = SpaceParams(0.2)
        assert p.a_triple == (0.2, 0.2, 0.2)
        q = SpaceParams(0.2, a1=0.5, a2=0.3, a3=0.2)
        assert q.a_triple == (0.5, 0.3, 0.2)

    def test_dims_all_or_none(self):
        assert SpaceParams(0.2).dims is None
        assert SpaceParams(0.2, d1=2, d2=2, d3=2).dims == (2, 2, 2)
        with pytest.raises(DomainError):
            SpaceParams(0.2, d1=2)
        with pytest.raises(DomainError):
            SpaceParams(0.2, d1=2, d2=0, d3=2)


class TestTolerances:
    def test_defaults(self):
        tol = Tolerances()
        assert tol.sigma_tol == 1e-10
        assert tol.root_tol == 1e-12
        assert tol.eig_tol == 1e-9
        assert tol.grad_fd_tol == 1e-6

    def test_positive_required(self):
        with pytest.raises(DomainError):
            Tolerances(sigma_tol=0.0)


def test_other_indices():
    assert other_indices(1) == (2, 3)
    assert other_indices(2) == (1, 3)
    assert other_indices(3) == (1, 2)
    with pytest.raises(DomainError):
        other_indices(4)
