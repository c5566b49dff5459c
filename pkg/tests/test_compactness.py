import math

import numpy as np
import pytest

from composition_lab import (
    ConfigurationError,
    IdentitySymbol,
    ScalingSymbol,
    build_pullback,
    build_report,
    delta_ratio,
    pointwise_ratios,
    schatten_report,
    verdicts_agree,
)
from composition_lab.carleson import LueckingSums
from composition_lab.compactness import BANNER, geometric_grid
from composition_lab.internal.trends import GrowthVerdict, Trend

HS = [0.2 / 2 ** k for k in range(5)]


@pytest.fixture(scope="module")
def scaling_report(square):
    return build_report(ScalingSymbol(0.5), square, HS, samples=2 ** 12, integral_depth=4)


@pytest.fixture(scope="module")
def identity_report(square):
    return build_report(IdentitySymbol(), square, HS, samples=2 ** 14, integral_depth=4)


@pytest.fixture(scope="module")
def square():
    from composition_lab import make_orlicz

    return make_orlicz("power", 2.0)


def _sums(p, verdict):
    return LueckingSums(p, [1, 2, 3], [1.0, 2.0, 3.0], verdict, [])


def test_geometric_grid():
    assert geometric_grid(0.2, 2.0, 3) == pytest.approx([0.2, 0.1, 0.05])
    for args in [(1.0, 2.0, 3), (0.2, 1.0, 3), (0.2, 2.0, 0)]:
        with pytest.raises(ConfigurationError):
            geometric_grid(*args)


def test_delta_ratio_is_zero_where_rho_vanishes(square):
    result = delta_ratio(square, [0.0, 0.0, 0.0], [0.05, 0.2, 0.1])
    assert [row["h"] for row in result["rows"]] == [0.2, 0.1, 0.05]
    assert all(row["delta"] == 0.0 for row in result["rows"])
    assert result["trend"] is Trend.TO_ZERO
    with pytest.raises(ConfigurationError):
        delta_ratio(square, [0.1], [0.1, 0.2])


def test_delta_ratio_for_rho_linear_in_h_is_bounded(square):
    hs = geometric_grid(0.2, 2.0, 6)
    result = delta_ratio(square, [h / math.pi for h in hs], hs)
    np.testing.assert_allclose([row["delta"] for row in result["rows"]], 1 / math.sqrt(math.pi))
    assert result["trend"] is Trend.BOUNDED_AWAY


def test_pointwise_ratios(square):
    radii = [0.5, 0.75, 0.9, 0.99, 0.999, 0.9999]
    result = pointwise_ratios(ScalingSymbol(0.5), square, radii)
    assert result["angular_trend"] is Trend.TO_ZERO
    assert result["orlicz_trend"] is Trend.TO_ZERO
    identity = pointwise_ratios(IdentitySymbol(), square, radii)
    assert all(row["ratio"] == pytest.approx(1.0) for row in identity["angular"])
    assert identity["angular_trend"] is Trend.BOUNDED_AWAY
    with pytest.raises(ConfigurationError):
        pointwise_ratios(IdentitySymbol(), square, [0.9, 0.5])


def test_schatten_exponential_decay_is_all_classes():
    rows = [{"h": h, "rho": math.exp(-0.5 / h)} for h in (0.2, 0.1, 0.05, 0.04, 0.03)]
    report = schatten_report(rows)
    assert report.verdict == "all S_p"
    assert report.c == pytest.approx(0.5, rel=1e-6)
    assert report.exp_r2 == pytest.approx(1.0)


def test_schatten_linear_decay_is_no_class():
    rows = [{"h": h, "rho": h / math.pi} for h in HS]
    report = schatten_report(rows)
    assert report.verdict == "no S_p"
    assert report.alpha == pytest.approx(1.0)


def test_schatten_power_decay_uses_luecking_sums():
    rows = [{"h": h, "rho": h ** 3} for h in HS]
    sums = [_sums(1.0, GrowthVerdict.DIVERGING), _sums(2.0, GrowthVerdict.STABILIZING),
            _sums(4.0, GrowthVerdict.STABILIZING)]
    report = schatten_report(rows, sums)
    assert report.verdict == "S_p for p >= 2"
    assert report.per_p == {"1": "not S_p", "2": "S_p", "4": "S_p"}
    assert schatten_report(rows).verdict == "inconclusive"


def test_schatten_sums_from_sample_and_p_list():
    sample = build_pullback(ScalingSymbol(0.5), 2 ** 12)
    rows = [{"h": h, "rho": math.exp(-0.5 / h)} for h in (0.2, 0.1, 0.05, 0.04, 0.03)]
    report = schatten_report(rows, sample=sample, p_list=[1.0, 2.0])
    assert report.per_p == {"1": "S_p", "2": "S_p"}
    with pytest.raises(ConfigurationError):
        schatten_report(rows, p_list=[2.0])
    with pytest.raises(ConfigurationError):
        schatten_report(rows, [_sums(2.0, GrowthVerdict.STABILIZING)], sample=sample, p_list=[2.0])


def test_schatten_vanishing_tail_and_bound_rows():
    rows = [{"h": 0.2, "bound": 1e-2}, {"h": 0.1, "bound": 1e-3}] + [{"h": h, "bound": 0.0} for h in HS[2:]]
    assert schatten_report(rows).verdict == "all S_p"
    with pytest.raises(ConfigurationError):
        schatten_report(rows[:2])


def test_scaling_report_headline(scaling_report):
    assert scaling_report.headline == "compact, all S_p"
    assert scaling_report.banner == BANNER
    assert all(s.verdict is GrowthVerdict.STABILIZING for s in scaling_report.sums)
    assert verdicts_agree(scaling_report)


def test_identity_report_headline(identity_report):
    assert identity_report.headline == "not compact, no S_p"
    assert identity_report.delta_trend is Trend.BOUNDED_AWAY
    assert verdicts_agree(identity_report)


def test_report_serializes(identity_report):
    data = identity_report.to_dict()
    assert data["banner"] == BANNER
    assert data["compactness"]["verdict"] == "not compact"
    assert len(data["rows"]) == len(HS)
    assert {"h", "rho", "stderr", "delta"} <= set(identity_report.csv_rows()[0])
    assert [s["p"] for s in data["luecking_sums"]] == [1.0, 2.0, 4.0]
