"""Atomic and density measures: masses, admissibility, discretization."""

import numpy as np
import pytest

from siegel.chart import Region
from siegel.geometry import ball_volume, bergman_metric, coords_of, i_point
from siegel.measures import (
    AtomicMeasure,
    DensityMeasure,
    admissibility,
    ball_mass,
    constant_on_box,
    discretize,
    gaussian_in_coordinates,
)

BOX = Region(n=1, rho_min=0.5, rho_max=1.5, re_zn_bound=1.0)


def test_atomic_validation():
    with pytest.raises(ValueError):
        AtomicMeasure(np.array([[1j]]), np.array([-1.0]))
    with pytest.raises(ValueError):
        AtomicMeasure(np.array([[-1j]]), np.array([1.0]))  # below the boundary
    mu = AtomicMeasure(np.array([[1j], [2j]]), np.array([1.0, 3.0]))
    assert len(mu) == 2
    assert mu.total_mass == 4.0
    assert mu.scaled(2.0).total_mass == 8.0


def test_atomic_json_roundtrip():
    mu = AtomicMeasure(np.array([[0.1 + 1j], [0.2 + 2.5j]]), np.array([1.5, 0.5]))
    back = AtomicMeasure.from_json(mu.to_json())
    np.testing.assert_allclose(back.points, mu.points, atol=1e-15)
    np.testing.assert_allclose(back.weights, mu.weights, atol=1e-15)
    empty = AtomicMeasure.from_json({"atoms": []})
    assert len(empty) == 0


def test_delta():
    mu = AtomicMeasure.delta(i_point(1), weight=2.0)
    assert len(mu) == 1
    assert mu.total_mass == 2.0


def test_atomic_ball_mass_counts_atoms_in_ball():
    atoms = np.array([[1j], [1.05j], [50j]])
    mu = AtomicMeasure(atoms, np.array([1.0, 2.0, 4.0]))
    z = i_point(1)
    near = float(bergman_metric(z, atoms[1]))
    far = float(bergman_metric(z, atoms[2]))
    assert ball_mass(mu, z, (near + far) / 2) == pytest.approx(3.0)
    assert ball_mass(mu, z, far + 0.1) == pytest.approx(7.0)
    # vectorized over z (both low atoms are within 0.1 of i)
    out = ball_mass(mu, np.array([[1j], [50j]]), 0.1)
    np.testing.assert_allclose(out, [3.0, 4.0])


def test_density_ball_mass_of_constant_is_ball_volume():
    # a constant density 1 on a box containing the ball integrates to |D|
    big = Region(n=1, rho_min=0.05, rho_max=8.0, re_zn_bound=6.0)
    mu = constant_on_box(big)
    z = i_point(1)
    r = 0.4
    got = ball_mass(mu, z, r)
    assert got == pytest.approx(float(ball_volume(z, r)), rel=0.05)


def test_admissibility_atomic():
    mu = AtomicMeasure(np.array([[1j]]), np.array([3.0]))
    # |i + i|^{-2} = 1/4
    assert admissibility(mu, 2.0) == pytest.approx(0.75)
    with pytest.raises(ValueError):
        admissibility(mu, 0.0)


def test_discretize_conserves_mass():
    mu = constant_on_box(BOX, value=2.0)
    atoms = discretize(mu, 32)
    assert atoms.total_mass == pytest.approx(2.0 * BOX.chart_volume(), rel=1e-12)
    assert np.all(coords_of(atoms.points)[:, -1].imag > 0)


def test_gaussian_density_nonnegative():
    mu = gaussian_in_coordinates(BOX, center=[1j], width=0.7)
    atoms = discretize(mu, 16)
    assert np.all(atoms.weights > 0)
    assert atoms.total_mass < 2.0 * BOX.chart_volume()


def test_discretize_rejects_atomic():
    with pytest.raises(TypeError):
        discretize(AtomicMeasure.delta(i_point(1)), 8)
