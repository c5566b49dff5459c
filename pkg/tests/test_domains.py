import math

import numpy as np
import pytest

from composition_lab import (
    BarrierSpec,
    ConfigurationError,
    DomainError,
    cut_disk_domain,
    disk_domain,
    half_plane_domain,
    make_barrier,
    omega_domain,
    omega_n_domain,
    region_r_domain,
    slit_disk_domain,
)
from composition_lab.domains import (
    FOUR_PI,
    HyperbolaArc,
    b_value,
    check_containment,
    hole_center,
    in_region_r,
    max_hole_width,
)


def _barriers(n_max):
    return {n: make_barrier(n, max_hole_width(n) / 2) for n in range(1, n_max + 1)}


def test_disk_distance_and_label():
    disk = disk_domain()
    np.testing.assert_allclose(disk.distance(np.array([0j, 0.5, 0.9j])), [1.0, 0.5, 0.1])
    assert disk.label(np.array([0.5j])).tolist() == ["circle"]
    assert disk.labels == ["circle"]
    with pytest.raises(ConfigurationError):
        disk_domain(radius=0.0)


def test_slit_and_cut_disks_label_nearest_piece():
    slit = slit_disk_domain(0.5)
    z = np.array([0.7 + 0.01j, -0.95])
    assert slit.label(z).tolist() == ["slit", "circle"]
    assert slit.distance(z)[0] == pytest.approx(0.01)
    assert not slit.inside(np.array([0.7 + 0j]))[0]

    cut = cut_disk_domain(0.5)
    assert cut.label(np.array([0.4, -0.95])).tolist() == ["chord", "arc"]
    assert not cut.inside(np.array([0.6]))[0]


def test_half_plane_has_far_cap():
    plane = half_plane_domain()
    assert plane.label(np.array([3 + 0j, 9999.0 + 0j])).tolist() == ["axis", "far"]
    assert plane.distance(np.array([3 + 1j]))[0] == pytest.approx(3.0)


def test_require_inside():
    disk_domain().require_inside(0.5j)
    with pytest.raises(DomainError):
        disk_domain().require_inside(1.5)
    with pytest.raises(DomainError):
        region_r_domain().require_inside(1 + 0.5j)


def test_region_r_membership():
    z = np.array([1 + 2j, 1 + 0.5j, 1 + 14j, -1 + 2j])
    assert in_region_r(z).tolist() == [True, False, False, False]
    region = region_r_domain()
    assert region.label(np.array([1 + 1.05j])).tolist() == ["lower"]
    assert set(region.labels) == {"far", "lower", "upper"}


def test_hyperbola_distance_is_a_lower_bound():
    arc = HyperbolaArc(0.0, 0.1, 10.0, "lower")
    x = np.geomspace(0.1, 10.0, 200_001)
    curve = x + 1j / x
    rng = np.random.default_rng(5)
    z = rng.uniform(0.05, 12.0, 300) + 1j * rng.uniform(0.0, 12.0, 300)
    # far right, where the inverse branch is steepest
    z = np.concatenate([z, [8.3829 + 0.4490j, 10.1386 + 0.1870j, 9.5 + 0.3j]])
    brute = np.array([np.min(np.abs(curve - p)) for p in z])
    bound = arc.distance(z)
    assert np.all(bound <= brute + 1e-9)
    assert np.all(bound >= 0.0)
    np.testing.assert_allclose(arc.distance(arc.points(16)), 0.0, atol=1e-12)


def test_hyperbola_arc_validates():
    with pytest.raises(ConfigurationError):
        HyperbolaArc(0.0, 0.0, 1.0, "lower")


def test_b_values_and_hole_centers():
    assert b_value(0) == math.inf
    assert b_value(2) == pytest.approx(1 / (8 * math.pi))
    m = hole_center(3)
    assert m.imag == pytest.approx(12 * math.pi)
    assert m.imag == pytest.approx(1 / m.real + 2 * math.pi)
    for n in range(1, 6):
        assert b_value(n) < hole_center(n).real - max_hole_width(n)
        assert hole_center(n).real + max_hole_width(n) < b_value(n - 1)


def test_barrier_geometry():
    barrier = make_barrier(1, 0.01)
    plus, minus = barrier.tip_plus, barrier.tip_minus
    assert plus.imag == pytest.approx(1 / plus.real)
    assert plus.imag == pytest.approx(barrier.altitude - 2 * (plus.real - barrier.foot_plus))
    assert minus.imag == pytest.approx(1 / minus.real + FOUR_PI)
    assert minus.imag == pytest.approx(barrier.altitude + 2 * (minus.real - barrier.foot_minus))
    inside_plus = complex(barrier.foot_plus - 1e-3, barrier.altitude + 1e-3)
    assert barrier.contains(np.array([inside_plus, hole_center(1) + 1e-3j])).tolist() == [True, False]


@pytest.mark.parametrize("n, delta", [(0, 0.01), (1, 0.0), (1, 1.0), (1.5, 0.01)])
def test_barrier_rejects_bad_parameters(n, delta):
    with pytest.raises(ConfigurationError):
        BarrierSpec(n, delta)


def test_barrier_to_dict_carries_expressions():
    data = make_barrier(2, 0.005).to_dict()
    assert data["n"] == 2
    assert data["b_n"]["expr"] == "1/(4*pi*2)"
    assert data["M_n"]["value"][1] == pytest.approx(8 * math.pi)
    assert len(data["c_plus"]) == 2


def test_omega_n_is_inside_omega():
    barriers = _barriers(3)
    outer = omega_domain(barriers)
    for n in (1, 2, 3):
        inner = omega_n_domain(n, barriers[n].delta, barriers)
        check_containment(inner, outer, "hole", samples=5000)
        assert "hole" in inner.labels


def test_omega_n_requires_lower_barriers():
    with pytest.raises(ConfigurationError):
        omega_n_domain(3, 0.001, {1: make_barrier(1, 0.01)})


def test_omega_n_start_points():
    domain = omega_n_domain(1, 0.01, {})
    domain.require_inside(1 + 2j)
    with pytest.raises(DomainError):
        domain.require_inside(1 + 20j)


def test_omega_requires_contiguous_barriers():
    with pytest.raises(ConfigurationError):
        omega_domain({2: make_barrier(2, 0.005)})
    omega = omega_domain(_barriers(2))
    assert omega.to_dict()["kind"] == "omega"
    assert len(omega.to_dict()["barriers"]) == 2
