import math

import numpy as np
import pytest

from composition_lab import (
    CarlesonWindow,
    ConfigurationError,
    IdentitySymbol,
    MonomialSymbol,
    ScalingSymbol,
    StatisticalFloorError,
    WindowForm,
    build_pullback,
    region_measure,
)
from composition_lab import carleson
from composition_lab.internal.trends import GrowthVerdict

M = 2 ** 14


@pytest.fixture(scope="module")
def identity_sample():
    return build_pullback(IdentitySymbol(), M)


@pytest.fixture(scope="module")
def scaling_sample():
    return build_pullback(ScalingSymbol(0.5), M)


def test_pullback_requires_power_of_two():
    with pytest.raises(ConfigurationError):
        build_pullback(IdentitySymbol(), 1000)
    with pytest.raises(ConfigurationError):
        build_pullback(IdentitySymbol(), 2 ** 9)


def test_identity_sample_is_uniform(identity_sample):
    assert identity_sample.size == M
    assert identity_sample.unconverged_fraction == 0.0
    assert identity_sample.symbol_label == "identity"
    np.testing.assert_allclose(identity_sample.modulus, 1.0 - 1e-6)


@pytest.mark.parametrize("h", [0.2, 0.1, 0.05])
def test_identity_rho_is_h_over_pi(identity_sample, h):
    rows = carleson.rho_table(identity_sample, [h])
    assert abs(rows[0]["rho"] - h / math.pi) <= 3 * rows[0]["stderr"] + 1.0 / M


def test_rho_below_floor_raises(identity_sample):
    with pytest.raises(StatisticalFloorError):
        carleson.rho_table(identity_sample, [0.1, 5.0 / M])


def test_scaling_has_empty_windows(scaling_sample):
    assert carleson.rho(scaling_sample, 0.1) == 0.0
    assert carleson.rho(scaling_sample, 0.6) > 0.0


def test_band_index_is_lower_closed():
    n = 3
    width = 2 * np.pi / 2 ** n
    lower_edges = (np.arange(2 ** n) - 0.5) * width
    np.testing.assert_array_equal(carleson.band_index(lower_edges + 1e-9, n), np.arange(2 ** n))
    np.testing.assert_array_equal(carleson.band_index(lower_edges - 1e-9, n), (np.arange(2 ** n) - 1) % 2 ** n)
    assert carleson.band_index(np.array([-0.01, 2 * np.pi - 0.01]), n).tolist() == [0, 0]


def test_windows_membership():
    annular = CarlesonWindow.annular(1.0, 0.1)
    assert annular.form is WindowForm.ANNULAR
    assert annular.contains(np.array([0.95, 0.95 * np.exp(0.2j), 0.5])).tolist() == [True, False, False]
    disk = CarlesonWindow.disk(1j, 0.1)
    assert disk.contains(np.array([0.95j, 0.8j])).tolist() == [True, False]
    luecking = CarlesonWindow.luecking(2, 0)
    assert luecking.contains(np.array([0.8, 0.9])).tolist() == [True, False]
    dyadic = CarlesonWindow.dyadic(2, 0)
    assert dyadic.contains(np.array([0.8, 0.9])).tolist() == [True, True]


@pytest.mark.parametrize("args", [(2.0, 0.1), (1.0, 0.0), (1.0, 1.0)])
def test_windows_validate(args):
    with pytest.raises(ConfigurationError):
        CarlesonWindow.annular(*args)
    with pytest.raises(ConfigurationError):
        CarlesonWindow.dyadic(2, 4)


def test_region_measure_of_dyadic_windows(identity_sample):
    measure, stderr = region_measure(identity_sample, CarlesonWindow.dyadic(3, 5))
    assert measure == pytest.approx(1 / 8, abs=2.0 / M)
    assert stderr > 0
    assert np.sum(carleson.dyadic_masses(identity_sample, 4)) == pytest.approx(1.0)


def test_center_grid_must_cover_circle():
    assert carleson.center_grid(0.1).size == math.ceil(8 * math.pi / 0.1)
    with pytest.raises(ConfigurationError):
        carleson.center_grid(0.1, centers=10)


def test_luecking_sum_identity_doubles(identity_sample):
    sums = carleson.luecking_sum(identity_sample, 2.0, 6)
    np.testing.assert_allclose(sums.partial_sums, [2.0 ** (n + 1) - 2 for n in range(1, 7)], rtol=1e-9)
    assert sums.verdict is GrowthVerdict.DIVERGING
    assert sums.to_dict()["verdict"] == "diverging"


def test_luecking_sum_scaling_vanishes(scaling_sample):
    sums = carleson.luecking_sum(scaling_sample, 2.0, 6)
    assert sums.partial_sums[-1] == 0.0
    assert sums.verdict is GrowthVerdict.STABILIZING


def test_luecking_sum_validates(identity_sample):
    with pytest.raises(ConfigurationError):
        carleson.luecking_sum(identity_sample, 0.0, 4)
    with pytest.raises(ConfigurationError):
        carleson.luecking_sum(identity_sample, 2.0, 20)


@pytest.mark.parametrize("symbol", [IdentitySymbol(), MonomialSymbol(2)])
def test_closed_range_for_inner_symbols(symbol):
    result = carleson.closed_range_test(build_pullback(symbol, M), [0.2, 0.1, 0.05])
    assert result.consistent
    assert 0.9 / math.pi <= result.c_est <= 1.1 / math.pi
    assert result.to_dict()["verdict"] == "closed-range-consistent"


def test_closed_range_fails_for_scaling(scaling_sample):
    result = carleson.closed_range_test(scaling_sample, [0.2, 0.1])
    assert not result.consistent
    assert result.c_est == 0.0
    assert result.verdict == "fails"


def test_carleson_constant_and_collar(identity_sample):
    constant, rows = carleson.carleson_constant(identity_sample, [0.2, 0.1])
    assert len(rows) == 2
    assert 0.0 < constant < 1.0
    assert carleson.arc_collar_mass(identity_sample, 0.1) == pytest.approx(1 / (2 * math.pi), rel=0.05)


@pytest.mark.parametrize("n", [1, 2, 5, 30])
def test_f_n_norms_match_wallis(n):
    expected = 2 * math.pi * math.comb(2 * n, n) / 4 ** n
    assert carleson.test_function_norm(n, 2.0) == pytest.approx(expected, abs=1e-8)
    assert carleson.wallis_closed_form(n, 2.0) == pytest.approx(expected, rel=1e-12)


def test_wallis_floor():
    scaled = [carleson.wallis_closed_form(n, 2.0) * math.sqrt(n) for n in range(1, 1001)]
    assert min(scaled[9:]) >= 3.5
    assert min(scaled[:9]) >= math.pi - 1e-12


def test_f_n_norm_validates():
    with pytest.raises(ConfigurationError):
        carleson.test_function_norm(0, 2.0)
    with pytest.raises(ConfigurationError):
        carleson.test_function_norm(3, 0.5)


def test_embedding_ratio_identity_is_one(identity_sample):
    assert carleson.embedding_ratio(identity_sample, 8, 2.0) == pytest.approx(1.0, rel=1e-3)
