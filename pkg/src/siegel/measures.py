"""Positive symbols: finite atomic measures and truncated density measures.

These are the two computable realizations of the admissible positive
measures the Toeplitz machinery accepts.  Both have bounded support, so
the admissibility integral int dmu(z) / |z_n + i|^alpha is always finite.
"""

from dataclasses import dataclass, field

import numpy as np

from .chart import Region, midpoint_grid
from .geometry import SiegelPoint, bergman_metric, coords_of, rho


@dataclass(frozen=True)
class AtomicMeasure:
    """Finite sum of weighted point masses; points (m, n), weights (m,) > 0."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=complex))
        wts = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if pts.shape[0] != wts.shape[0]:
            raise ValueError("points and weights must have equal length")
        if wts.size and np.any(wts <= 0):
            raise ValueError("weights must be positive")
        if pts.size and np.any(rho(pts) <= 0):
            raise ValueError("all atoms must lie in the upper half-space")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)

    def __len__(self):
        return self.weights.size

    @property
    def total_mass(self):
        return float(self.weights.sum())

    def scaled(self, factor):
        return AtomicMeasure(self.points, self.weights * factor)

    def to_json(self):
        return {
            "atoms": [
                {"point": [[c.real, c.imag] for c in p], "weight": float(w)}
                for p, w in zip(self.points, self.weights)
            ]
        }

    @classmethod
    def from_json(cls, data):
        atoms = data["atoms"]
        if not atoms:
            return cls(np.zeros((0, 1), dtype=complex), np.zeros(0))
        pts = np.array(
            [[complex(re, im) for re, im in a["point"]] for a in atoms], dtype=complex
        )
        wts = np.array([a["weight"] for a in atoms], dtype=float)
        return cls(pts, wts)

    @classmethod
    def delta(cls, point, weight=1.0):
        return cls(coords_of(point)[None, :], np.array([weight]))


@dataclass(frozen=True)
class DensityMeasure:
    """Measure g dV with a nonnegative density supported on a finite region."""

    density: callable
    support: Region
    label: str = "density"
    resolution: int = field(default=0)

    def default_resolution(self):
        if self.resolution:
            return self.resolution
        # keep midpoint grids at ~10^5-10^6 nodes regardless of dimension
        return {1: 256, 2: 32, 3: 10}.get(self.support.n, 8)


def constant_on_box(region, value=1.0):
    return DensityMeasure(lambda z: np.full(z.shape[0], value), region, label="constant")


def gaussian_in_coordinates(region, center, width=1.0):
    """Gaussian bump exp(-|z - center|^2 / width^2) truncated to a region."""
    c = coords_of(center)

    def density(z):
        return np.exp(-np.sum(np.abs(z - c) ** 2, axis=-1) / width**2)

    return DensityMeasure(density, region, label="gaussian")


DENSITY_FAMILIES = {
    "constant-on-box": constant_on_box,
    "gaussian-in-coordinates": gaussian_in_coordinates,
}


def ball_mass(mu, z, r):
    """mu(D(z, r)).

    Atomic: exact weight sum over atoms with beta(z, atom) < r; vectorized
    over a leading axis of z.  Density: midpoint-rule quadrature of the
    density over the support intersected with the ball.
    """
    if not r > 0:
        raise ValueError("r must be positive")
    if isinstance(mu, AtomicMeasure):
        if len(mu) == 0:
            return np.zeros(np.shape(coords_of(z))[:-1])
        zc = coords_of(z)
        beta = bergman_metric(zc[..., None, :], mu.points)
        out = np.sum(np.where(beta < r, mu.weights, 0.0), axis=-1)
        return float(out) if out.ndim == 0 else out
    pts, cell = midpoint_grid(mu.support, mu.default_resolution())
    inside = bergman_metric(coords_of(z)[None, :], pts) < r
    return float(np.sum(mu.density(pts)[inside]) * cell)


def admissibility(mu, alpha):
    """The integral int dmu(z) / |z_n + i|^alpha (finite for these measures)."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if isinstance(mu, AtomicMeasure):
        if len(mu) == 0:
            return 0.0
        return float(np.sum(mu.weights * np.abs(mu.points[:, -1] + 1j) ** (-alpha)))
    pts, cell = midpoint_grid(mu.support, mu.default_resolution())
    return float(np.sum(mu.density(pts) * np.abs(pts[:, -1] + 1j) ** (-alpha)) * cell)


def discretize(mu, resolution):
    """Midpoint-rule atomization of a density measure.

    One atom per chart cell at the cell midpoint, weighted by
    density * cell volume (the chart has unit Jacobian).  Zero-density
    cells are dropped.
    """
    if not isinstance(mu, DensityMeasure):
        raise TypeError("discretize expects a DensityMeasure")
    pts, cell = midpoint_grid(mu.support, resolution)
    wts = mu.density(pts) * cell
    keep = wts > 0
    if not np.any(keep):
        return AtomicMeasure(np.zeros((0, mu.support.n), dtype=complex), np.zeros(0))
    return AtomicMeasure(pts[keep], wts[keep])
