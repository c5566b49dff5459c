import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from composition_lab import (
    ConfigurationError,
    DecayFunction,
    OrliczFamily,
    delta_from_psi,
    load_orlicz_table,
    make_orlicz,
    orlicz_ratio,
    psi_inverse,
    validate_orlicz,
)


def test_power_family_evaluates_and_labels(square):
    assert square.family is OrliczFamily.POWER
    assert square(3.0) == 9.0
    assert square(0.0) == 0.0
    assert square.label == "power:2"
    np.testing.assert_allclose(square(np.array([1.0, 2.0])), [1.0, 4.0])


def test_exp_family_is_expm1():
    psi = make_orlicz("exp", 1.0)
    assert psi(1.0) == pytest.approx(math.e - 1.0)
    assert psi_inverse(psi, math.e - 1.0) == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("family, parameter", [("power", 0.5), ("exp", 0.0), ("power", None), ("cubic", 2.0)])
def test_bad_families_are_rejected(family, parameter):
    with pytest.raises(ConfigurationError):
        make_orlicz(family, parameter)


@given(st.floats(min_value=1e-6, max_value=1e6))
@settings(max_examples=50, deadline=None)
def test_inverse_round_trip_power(x):
    psi = make_orlicz("power", 3.0)
    assert psi_inverse(psi, psi(x)) == pytest.approx(x, rel=1e-10)


def test_inverse_edge_values(square):
    assert psi_inverse(square, 0.0) == 0.0
    assert psi_inverse(square, math.inf) == math.inf
    with pytest.raises(ConfigurationError):
        psi_inverse(square, -1.0)
    with pytest.raises(ConfigurationError):
        psi_inverse(square, float("nan"))


def test_inverse_is_vectorized(square):
    out = psi_inverse(square, np.array([[4.0, 9.0], [16.0, 25.0]]))
    assert out.shape == (2, 2)
    np.testing.assert_allclose(out, [[2.0, 3.0], [4.0, 5.0]], rtol=1e-12)
    mixed = psi_inverse(square, np.array([[0.0, np.inf], [4.0, 0.25]]))
    assert mixed[0, 0] == 0.0
    assert mixed[0, 1] == np.inf
    np.testing.assert_allclose(mixed[1], [2.0, 0.5], rtol=1e-12)


def test_delta_from_square_is_sqrt(square):
    delta = delta_from_psi(square)
    assert delta.provenance == "from-psi"
    assert delta(0.01) == pytest.approx(0.1, rel=1e-9)
    assert delta(1e-10) == pytest.approx(1e-5, rel=1e-9)
    # clamped at 1/2
    assert delta(0.81) == 0.5
    assert delta.is_monotone()
    assert delta.tends_to_zero()


def test_delta_domain_is_open_unit_interval(square):
    delta = delta_from_psi(square)
    for t in (0.0, 1.0, -0.5):
        with pytest.raises(ConfigurationError):
            delta(t)


def test_user_decay_function_that_does_not_vanish():
    flat = DecayFunction(raw=lambda t: np.full_like(t, 0.25))
    assert flat.is_monotone()
    assert not flat.tends_to_zero()


def test_orlicz_ratio_for_square_is_fourth_root(square):
    t = np.array([1e-2, 1e-4, 1e-8])
    np.testing.assert_allclose(orlicz_ratio(square, t), t ** 0.25, rtol=1e-9)


def test_table_family_interpolates_log_log():
    psi = make_orlicz("table", table=([1.0, 2.0, 4.0], [1.0, 4.0, 16.0]))
    assert psi(3.0) == pytest.approx(9.0, rel=1e-12)
    # extrapolation keeps the end slope
    assert psi(8.0) == pytest.approx(64.0, rel=1e-12)
    assert psi.to_dict()["family"] == "table"


def test_table_with_flat_is_rejected():
    with pytest.raises(ConfigurationError, match="flats"):
        make_orlicz("table", table=([1.0, 2.0, 3.0], [1.0, 4.0, 4.0]))


def test_concave_table_fails_validation():
    with pytest.raises(ConfigurationError):
        make_orlicz("table", table=([1.0, 2.0, 4.0], [1.0, 1.5, 2.0]))


def test_load_orlicz_table_from_csv(tmp_path):
    path = tmp_path / "psi.csv"
    path.write_text("x,psi\n1,1\n2,8\n4,64\n", encoding="utf-8")
    psi = load_orlicz_table(str(path))
    assert psi.label == f"table:{path}"
    assert psi(3.0) == pytest.approx(27.0, rel=1e-12)
    validate_orlicz(psi)


def test_load_orlicz_table_missing_file(tmp_path):
    with pytest.raises(ConfigurationError):
        load_orlicz_table(str(tmp_path / "missing.csv"))


def test_to_dict_round_trips_through_config(square):
    from composition_lab import load_orlicz_spec

    again = load_orlicz_spec(square.to_dict())
    assert again(5.0) == square(5.0)
    assert load_orlicz_spec({"family": "exp", "a": 2}).label == "exp:2"
