"""Global coordinate chart on U and tensor Gauss-Legendre quadrature.

The chart is (x', y', x_n, h) -> z with z' = x' + i y' and
z_n = x_n + i (h + |z'|^2), so that rho(z) = h and the real Jacobian is 1:
Lebesgue measure on U is the product measure in chart coordinates.  All
integration in the package runs through this chart, on finite truncation
regions, with fixed-order Gauss-Legendre nodes on geometrically graded
panels (graded toward h = 0 because integrands are power laws in h, and
outward in the unbounded x directions because they decay like power laws).
"""

from dataclasses import dataclass, replace

import numpy as np
from numpy.polynomial.legendre import leggauss


class ToleranceError(RuntimeError):
    """Quadrature failed to reach the requested relative tolerance.

    Carries the last two successive estimates for inspection.
    """

    def __init__(self, message, estimates=()):
        super().__init__(message)
        self.estimates = tuple(estimates)


@dataclass(frozen=True)
class Region:
    """Finite truncation of U in chart coordinates.

    h ranges over [rho_min, rho_max], each real component of z' over
    [-zprime_radius, zprime_radius], and Re z_n over [-re_zn_bound, re_zn_bound].
    """

    n: int
    rho_min: float
    rho_max: float
    zprime_radius: float = 1.0
    re_zn_bound: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if not (0 < self.rho_min < self.rho_max):
            raise ValueError("need 0 < rho_min < rho_max")
        if self.n > 1 and self.zprime_radius <= 0:
            raise ValueError("zprime_radius must be positive")
        if self.re_zn_bound <= 0:
            raise ValueError("re_zn_bound must be positive")

    @property
    def dim(self):
        """Real dimension of the chart, 2n."""
        return 2 * self.n

    def chart_bounds(self):
        """Per-axis (lo, hi) in the order (x'_1.., y'_1.., x_n, h)."""
        b = [(-self.zprime_radius, self.zprime_radius)] * (2 * (self.n - 1))
        b.append((-self.re_zn_bound, self.re_zn_bound))
        b.append((self.rho_min, self.rho_max))
        return b

    def chart_volume(self):
        return float(np.prod([hi - lo for lo, hi in self.chart_bounds()]))

    def expand(self, factor=2.0, rho_min_factor=0.25):
        """Larger region for tail estimation / refinement."""
        return replace(
            self,
            rho_min=self.rho_min * rho_min_factor,
            rho_max=self.rho_max * factor,
            zprime_radius=self.zprime_radius * factor,
            re_zn_bound=self.re_zn_bound * factor,
        )

    def to_dict(self):
        return {
            "n": self.n,
            "rho_min": self.rho_min,
            "rho_max": self.rho_max,
            "zprime_radius": self.zprime_radius,
            "re_zn_bound": self.re_zn_bound,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


def chart_to_point(x):
    """Map chart coordinates (..., 2n) to complex points (..., n)."""
    x = np.asarray(x, dtype=float)
    n = x.shape[-1] // 2
    xp = x[..., : n - 1]
    yp = x[..., n - 1 : 2 * n - 2]
    xn = x[..., -2]
    h = x[..., -1]
    zp = xp + 1j * yp
    zn = xn + 1j * (h + np.sum(np.abs(zp) ** 2, axis=-1))
    return np.concatenate([zp, zn[..., None]], axis=-1)


def point_to_chart(z):
    """Inverse of chart_to_point."""
    z = np.asarray(z, dtype=complex)
    n = z.shape[-1]
    zp = z[..., : n - 1]
    h = z[..., -1].imag - np.sum(np.abs(zp) ** 2, axis=-1)
    return np.concatenate(
        [zp.real, zp.imag, z[..., -1].real[..., None], h[..., None]], axis=-1
    )


def sample_region(region, count, rng):
    """Uniform samples (w.r.t. Lebesgue measure) from a region, as points (count, n)."""
    bounds = region.chart_bounds()
    los = np.array([lo for lo, _ in bounds])
    widths = np.array([hi - lo for lo, hi in bounds])
    x = rng.random((count, len(bounds))) * widths + los
    return chart_to_point(x)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor Gauss-Legendre scheme on a region.

    order: nodes per panel per axis; h panels grow geometrically by
    h_ratio from rho_min, x panels grow by x_ratio outward from x_base.
    """

    region: Region
    order: int = 8
    h_ratio: float = 2.0
    x_base: float = 0.5
    x_ratio: float = 2.0
    rel_tol: float = 1e-2
    max_refine: int = 3

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("order must be >= 2")
        if not 0 < self.rel_tol < 1:
            raise ValueError("rel_tol must be in (0, 1)")


def _panel_nodes(edges, order):
    x, w = leggauss(order)
    a = np.asarray(edges[:-1])
    b = np.asarray(edges[1:])
    mid = 0.5 * (a + b)[:, None]
    half = 0.5 * (b - a)[:, None]
    return (mid + half * x).ravel(), (half * w).ravel()


def geometric_edges(lo, hi, ratio):
    edges = [lo]
    while edges[-1] < hi:
        edges.append(min(edges[-1] * ratio, hi))
    return edges


def symmetric_edges(bound, base, ratio):
    pos = [0.0, min(base, bound)]
    while pos[-1] < bound:
        pos.append(min(pos[-1] * ratio, bound))
    return [-e for e in reversed(pos[1:])] + pos


def axis_rules(spec):
    """Per-axis (nodes, weights) arrays in chart order for a QuadratureSpec."""
    region = spec.region
    axes = []
    for _ in range(2 * (region.n - 1)):
        edges = symmetric_edges(region.zprime_radius, spec.x_base, spec.x_ratio)
        axes.append(_panel_nodes(edges, spec.order))
    edges = symmetric_edges(region.re_zn_bound, spec.x_base, spec.x_ratio)
    axes.append(_panel_nodes(edges, spec.order))
    edges = geometric_edges(region.rho_min, region.rho_max, spec.h_ratio)
    axes.append(_panel_nodes(edges, spec.order))
    return axes


def stream_grid(axes, chunk=1 << 21):
    """Stream the tensor-product grid of per-axis (nodes, weights) rules.

    Yields (coords, weights) blocks in a fixed deterministic order;
    coords has shape (B, d) in chart axis order.
    """
    sizes = [len(nodes) for nodes, _ in axes]
    d = len(axes)
    total = int(np.prod(sizes))
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        coords = np.empty((idx.size, d))
        wts = np.ones(idx.size)
        rem = idx
        for ax in range(d - 1, -1, -1):
            j = rem % sizes[ax]
            rem = rem // sizes[ax]
            coords[:, ax] = axes[ax][0][j]
            wts *= axes[ax][1][j]
        yield coords, wts


def grid_nodes(spec, max_size=1 << 24):
    """Materialize the full quadrature grid as (points (N, n), weights (N,))."""
    axes = axis_rules(spec)
    total = int(np.prod([len(nodes) for nodes, _ in axes]))
    if total > max_size:
        raise ValueError(f"grid of {total} nodes exceeds max_size={max_size}")
    blocks = list(stream_grid(axes, chunk=max_size))
    coords = np.concatenate([c for c, _ in blocks])
    wts = np.concatenate([w for _, w in blocks])
    return chart_to_point(coords), wts


def integrate_chart(func, spec, chunk=1 << 21):
    """Integrate func over spec.region w.r.t. Lebesgue measure dV.

    func maps complex points of shape (N, n) to real values of shape (N,).
    Evaluation streams over the tensor grid in fixed order, so the result
    is deterministic for a fixed spec.
    """
    acc = 0.0
    for coords, wts in stream_grid(axis_rules(spec), chunk=chunk):
        acc += float(np.sum(func(chart_to_point(coords)) * wts))
    return acc


def integrate_with_estimate(func, spec, chunk=1 << 21):
    """Integral plus a refinement-based relative error estimate.

    Refines by raising the Gauss order until successive estimates agree to
    spec.rel_tol; raises ToleranceError when the refinement limit is hit.
    Returns (value, error_estimate).
    """
    prev = integrate_chart(func, spec, chunk=chunk)
    cur_spec = spec
    for _ in range(spec.max_refine):
        cur_spec = replace(cur_spec, order=cur_spec.order + 4)
        cur = integrate_chart(func, cur_spec, chunk=chunk)
        scale = max(abs(cur), 1e-300)
        err = abs(cur - prev) / scale
        if err <= spec.rel_tol:
            return cur, err
        prev = cur
    raise ToleranceError(
        f"quadrature did not reach rel_tol={spec.rel_tol} "
        f"within {spec.max_refine} refinements",
        estimates=(prev, cur),
    )


def integrate_expanding(func, spec, chunk=1 << 21):
    """Integral over expanding truncations, with a region-tail estimate.

    Expands the region until the added mass is below rel_tol; returns
    (value, tail_estimate) where tail_estimate is the last increment
    relative to the value.  Raises ToleranceError at the expansion limit.
    """
    region = spec.region
    prev = integrate_chart(func, spec, chunk=chunk)
    for _ in range(spec.max_refine):
        region = region.expand()
        cur = integrate_chart(func, replace(spec, region=region), chunk=chunk)
        scale = max(abs(cur), 1e-300)
        tail = abs(cur - prev) / scale
        if tail <= spec.rel_tol:
            return cur, tail
        prev = cur
    raise ToleranceError(
        f"region expansion did not converge to rel_tol={spec.rel_tol}",
        estimates=(prev, cur),
    )


def midpoint_grid(region, resolution):
    """Midpoint-rule grid on a region: (points (N, n), cell_volume).

    resolution is either an int (per axis) or a sequence of 2n ints.
    """
    bounds = region.chart_bounds()
    d = len(bounds)
    if np.isscalar(resolution):
        resolution = [int(resolution)] * d
    if len(resolution) != d or any(r < 1 for r in resolution):
        raise ValueError("resolution must give a count >= 1 per chart axis")
    axes = []
    cell = 1.0
    for (lo, hi), m in zip(bounds, resolution):
        step = (hi - lo) / m
        axes.append(lo + step * (np.arange(m) + 0.5))
        cell *= step
    mesh = np.meshgrid(*axes, indexing="ij")
    coords = np.stack([g.ravel() for g in mesh], axis=-1)
    return chart_to_point(coords), cell
