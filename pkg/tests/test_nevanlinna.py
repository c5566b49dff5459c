import math

import numpy as np
import pytest

from composition_lab import (
    ConfigurationError,
    IdentitySymbol,
    LinearFractionalSymbol,
    MonomialSymbol,
    PuncturedDiskSymbol,
    ScalingSymbol,
    SolverUnavailableError,
    build_pullback,
    counting_function,
    counting_grid,
    luecking_integral,
    luecking_window_ratios,
    submean_check,
    window_average,
)
from composition_lab.internal.trends import GrowthVerdict
from composition_lab.nevanlinna import counting_values, ray_decay


@pytest.mark.parametrize("k", [1, 2, 5])
def test_monomial_counting_is_log_of_modulus(k):
    w = 0.3 + 0.2j
    result = counting_function(MonomialSymbol(k), w)
    assert result.value == pytest.approx(-math.log(abs(w)), rel=1e-10)
    assert sum(m for _, m in result.preimages) == k
    assert not result.at_origin_image


def test_counting_at_origin_image_is_flagged():
    result = counting_function(IdentitySymbol(), 0j)
    assert result.at_origin_image
    assert result.value == 0.0
    lft = LinearFractionalSymbol(0.5, 0.5, 0, 1)
    assert counting_function(lft, 0.5).at_origin_image


def test_closed_forms_agree_with_root_finding():
    lft = LinearFractionalSymbol(0.5, 0.5, 0, 1)
    w = np.array([0.3, 0.1 + 0.2j, -0.4])
    for symbol in (lft, ScalingSymbol(0.5), MonomialSymbol(3)):
        fast = counting_values(symbol, w)
        slow = [counting_function(symbol, complex(v)).value for v in w]
        np.testing.assert_allclose(fast, slow, rtol=1e-9, atol=1e-12)


def test_scaling_counting_vanishes_outside_image():
    values = counting_values(ScalingSymbol(0.5), np.array([0.25, 0.6, 0.9j]))
    assert values[0] == pytest.approx(math.log(2.0))
    assert values[1:].tolist() == [0.0, 0.0]


def test_punctured_symbol_has_no_counting_function():
    with pytest.raises(SolverUnavailableError):
        counting_function(PuncturedDiskSymbol(), 0.2)
    with pytest.raises(SolverUnavailableError):
        window_average(PuncturedDiskSymbol(), 1.0, 0.1)


def test_counting_grid_keeps_disk_points():
    rows = counting_grid(IdentitySymbol(), 11)
    assert rows
    assert all(row["x"] ** 2 + row["y"] ** 2 < 1.0 for row in rows)
    center = [row for row in rows if row["x"] == 0.0 and row["y"] == 0.0]
    assert center[0]["N"] == 0.0
    with pytest.raises(ConfigurationError):
        counting_grid(IdentitySymbol(), 1)


def test_window_average_identity_is_of_order_h():
    for h in (0.1, 0.05):
        average = window_average(IdentitySymbol(), 1.0, h)
        assert 0.2 * h < average < h


def test_window_average_of_scaling_is_zero_near_circle():
    assert window_average(ScalingSymbol(0.5), 1j, 0.1) == 0.0


@pytest.mark.parametrize("xi, h", [(1.0, 2.0), (1.0, 1e-6), (0.5, 0.1)])
def test_window_average_validates(xi, h):
    with pytest.raises(ConfigurationError):
        window_average(IdentitySymbol(), xi, h)


def test_submean_is_exact_for_harmonic_counting():
    lhs, rhs, ratio = submean_check(IdentitySymbol(), 0.5, 0.2, 1.0)
    assert ratio == pytest.approx(1.0, rel=1e-4)
    assert lhs == pytest.approx(math.log(2.0))


def test_submean_with_convex_power():
    _, _, ratio = submean_check(MonomialSymbol(2), 0.6j, 0.2, 2.0)
    assert ratio <= 1.0 + 1e-6


@pytest.mark.parametrize("a, r", [(0.9, 0.2), (0.1, 0.2)])
def test_submean_rejects_bad_disks(a, r):
    with pytest.raises(ConfigurationError):
        submean_check(IdentitySymbol(), a, r, 1.0)


def test_luecking_integral_identity_diverges():
    result = luecking_integral(IdentitySymbol(), 2.0, 8)
    assert result.depths == list(range(2, 9))
    assert result.verdict is GrowthVerdict.DIVERGING
    assert result.lambda_form == sorted(result.lambda_form)
    assert result.to_dict()["lambda_verdict"] == "diverging"


def test_luecking_integral_scaling_stabilizes():
    result = luecking_integral(ScalingSymbol(0.5), 1.0, 6)
    assert result.lambda_form[-1] == 0.0
    assert result.verdict is GrowthVerdict.STABILIZING


def test_luecking_integral_validates():
    with pytest.raises(ConfigurationError):
        luecking_integral(IdentitySymbol(), -1.0, 5)
    with pytest.raises(ConfigurationError):
        luecking_integral(IdentitySymbol(), 2.0, 2)


def test_luecking_windows_are_matched_for_identity():
    sample = build_pullback(IdentitySymbol(), 2 ** 12)
    result = luecking_window_ratios(IdentitySymbol(), sample, 3)
    assert result["unmatched"] == 0
    assert 0.0 < result["max_ratio"] < math.inf


def test_counting_decays_along_rays():
    radii = np.array([0.5, 0.9, 0.99, 0.999])
    values = ray_decay(MonomialSymbol(3), 0.7, radii)
    assert np.all(np.diff(values) < 0)
    assert values[-1] < 2e-3
