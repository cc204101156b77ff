"""Chart round-trips, unit Jacobian, and quadrature convergence."""

import numpy as np
import pytest

from siegel.chart import (
    QuadratureSpec,
    Region,
    ToleranceError,
    chart_to_point,
    geometric_edges,
    grid_nodes,
    integrate_chart,
    integrate_expanding,
    integrate_with_estimate,
    midpoint_grid,
    point_to_chart,
    sample_region,
    symmetric_edges,
)
from siegel.geometry import rho


def test_region_validation():
    with pytest.raises(ValueError):
        Region(n=1, rho_min=2.0, rho_max=1.0)
    with pytest.raises(ValueError):
        Region(n=0, rho_min=0.1, rho_max=1.0)
    region = Region(n=2, rho_min=0.1, rho_max=1.0, zprime_radius=2.0, re_zn_bound=3.0)
    assert region.dim == 4
    assert Region.from_dict(region.to_dict()) == region


def test_chart_roundtrip():
    rng = np.random.default_rng(0)
    for n in (1, 2, 3):
        region = Region(n=n, rho_min=0.05, rho_max=8.0, zprime_radius=3.0, re_zn_bound=5.0)
        z = sample_region(region, 5000, rng)
        np.testing.assert_allclose(chart_to_point(point_to_chart(z)), z, atol=1e-14)
        assert np.all(rho(z) >= region.rho_min - 1e-14)
        assert np.all(rho(z) <= region.rho_max + 1e-14)


def test_chart_height_is_last_coordinate():
    x = np.array([[0.3, -0.4, 1.7, 0.25]])
    z = chart_to_point(x)
    assert rho(z)[0] == pytest.approx(0.25, abs=1e-15)


def test_panel_edges():
    edges = geometric_edges(0.5, 8.0, 2.0)
    assert edges == [0.5, 1.0, 2.0, 4.0, 8.0]
    sym = symmetric_edges(4.0, 1.0, 2.0)
    assert sym == [-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0]
    assert symmetric_edges(0.25, 1.0, 2.0) == [-0.25, 0.0, 0.25]


def test_constant_integrates_to_chart_volume():
    # the chart has unit Jacobian, so dV of a region is its coordinate volume
    region = Region(n=2, rho_min=0.5, rho_max=2.0, zprime_radius=1.0, re_zn_bound=1.5)
    spec = QuadratureSpec(region=region, order=4)
    value = integrate_chart(lambda z: np.ones(z.shape[0]), spec)
    assert value == pytest.approx(region.chart_volume(), rel=1e-12)


def test_quadrature_exact_on_smooth_integrand():
    # int over h in [1, 2] of h dx dh on n=1, x in [-1, 1]: 2 * 3/2 = 3
    region = Region(n=1, rho_min=1.0, rho_max=2.0, re_zn_bound=1.0)
    spec = QuadratureSpec(region=region, order=6)
    value = integrate_chart(lambda z: rho(z), spec)
    assert value == pytest.approx(3.0, rel=1e-13)


def test_integrate_with_estimate_converges():
    region = Region(n=1, rho_min=0.01, rho_max=4.0, re_zn_bound=4.0)
    spec = QuadratureSpec(region=region, order=6, rel_tol=1e-6)
    # smooth in chart coordinates, decaying in x
    value, err = integrate_with_estimate(
        lambda z: np.exp(-(z[:, -1].real ** 2)) * rho(z), spec
    )
    exact = np.sqrt(np.pi) * (4.0**2 - 0.01**2) / 2 * 0.999999984582742  # erf(4)
    assert err <= 1e-6
    assert value == pytest.approx(exact, rel=1e-5)


def test_integrate_with_estimate_raises_on_rough_integrand():
    region = Region(n=1, rho_min=1e-6, rho_max=1.0, re_zn_bound=1.0)
    spec = QuadratureSpec(region=region, order=2, rel_tol=1e-12, max_refine=1)
    with pytest.raises(ToleranceError) as exc:
        integrate_with_estimate(lambda z: rho(z) ** -0.999, spec)
    assert len(exc.value.estimates) == 2


def test_integrate_expanding_reports_tail():
    region = Region(n=1, rho_min=0.05, rho_max=4.0, re_zn_bound=4.0)
    spec = QuadratureSpec(region=region, order=8, rel_tol=1e-3, max_refine=5)
    # integrable over all of U, vanishing toward the boundary h = 0
    value, tail = integrate_expanding(
        lambda z: rho(z) * np.exp(-rho(z) - z[:, -1].real ** 2), spec
    )
    assert tail <= 1e-3
    # int h e^-h dh = 1, int e^-x^2 dx = sqrt(pi)
    assert value == pytest.approx(np.sqrt(np.pi), rel=5e-3)


def test_grid_nodes_deterministic_and_bounded():
    region = Region(n=1, rho_min=0.1, rho_max=1.0, re_zn_bound=1.0)
    spec = QuadratureSpec(region=region, order=4)
    pts1, w1 = grid_nodes(spec)
    pts2, w2 = grid_nodes(spec)
    np.testing.assert_array_equal(pts1, pts2)
    np.testing.assert_array_equal(w1, w2)
    with pytest.raises(ValueError):
        grid_nodes(spec, max_size=4)


def test_midpoint_grid_total_volume():
    region = Region(n=1, rho_min=0.5, rho_max=1.5, re_zn_bound=2.0)
    pts, cell = midpoint_grid(region, 16)
    assert pts.shape == (256, 1)
    assert cell * 256 == pytest.approx(region.chart_volume())
