"""Closed-form geometry of the Siegel upper half-space.

The domain is U = {z in C^n : Im z_n > |z'|^2}, with z = (z', z_n).  All
functions here are exact pointwise formulas: the height form rho, the
Bergman kernel and metric, the dilation / translation / point-swapping
automorphisms, and metric-ball volumes.  Everything is vectorized over
leading axes of complex coordinate arrays of shape (..., n); the
``SiegelPoint`` wrapper validates membership and is accepted anywhere a
coordinate array is.
"""

from math import factorial, pi, tanh

import numpy as np

# Minimum height for point construction; below this the point is treated
# as boundary-degenerate.
HEIGHT_TOL = 1e-14

# Rounding slack allowed when clamping the metric radicand into [0, 1).
METRIC_CLAMP_TOL = 1e-12


class SiegelPoint:
    """A validated point of U, wrapping an immutable coordinate vector."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        c = np.array(coords, dtype=complex)
        if c.ndim != 1 or c.size < 1:
            raise ValueError("coordinates must be a nonempty 1-d complex vector")
        height = c[-1].imag - float(np.sum(np.abs(c[:-1]) ** 2))
        if not height > HEIGHT_TOL:
            raise ValueError(
                f"point is not in the upper half-space: height {height:.3e} <= {HEIGHT_TOL}"
            )
        c.flags.writeable = False
        self.coords = c

    @property
    def n(self):
        return self.coords.size

    @property
    def height(self):
        return rho(self)

    def to_json(self):
        """Serialize as a list of [re, im] pairs."""
        return [[float(c.real), float(c.imag)] for c in self.coords]

    @classmethod
    def from_json(cls, data):
        return cls([complex(re, im) for re, im in data])

    def __eq__(self, other):
        return isinstance(other, SiegelPoint) and np.array_equal(self.coords, other.coords)

    def __repr__(self):
        return f"SiegelPoint({list(self.coords)})"


def i_point(n):
    """The distinguished point (0', i)."""
    return SiegelPoint([0.0] * (n - 1) + [1j])


def coords_of(z):
    """Coordinate array of a SiegelPoint or passthrough of a complex array."""
    if isinstance(z, SiegelPoint):
        return z.coords
    return np.asarray(z, dtype=complex)


def _wrap_like(template, c):
    if isinstance(template, SiegelPoint):
        return SiegelPoint(c)
    return c


def rho_form(z, w):
    """The pairing rho(z, w) = (i/2)(conj(w_n) - z_n) - z' . conj(w')."""
    zc, wc = coords_of(z), coords_of(w)
    if zc.shape[-1] != wc.shape[-1]:
        raise ValueError(f"dimension mismatch: {zc.shape[-1]} vs {wc.shape[-1]}")
    zp, zn = zc[..., :-1], zc[..., -1]
    wp, wn = wc[..., :-1], wc[..., -1]
    return 0.5j * (np.conj(wn) - zn) - np.sum(zp * np.conj(wp), axis=-1)


def rho(z):
    """Height rho(z) = Im z_n - |z'|^2 (positive on U)."""
    zc = coords_of(z)
    return zc[..., -1].imag - np.sum(np.abs(zc[..., :-1]) ** 2, axis=-1)


def kernel_constant(n):
    """The normalization n! / (4 pi^n) of the Bergman kernel."""
    return factorial(n) / (4.0 * pi**n)


def bergman_kernel(z, w):
    """Bergman kernel K(z, w) = n!/(4 pi^n) rho(z, w)^{-(n+1)}.

    The complex power uses the principal branch, which is well defined
    because Re rho(z, w) >= (rho(z) + rho(w)) / 2 > 0 on U x U.
    """
    n = coords_of(z).shape[-1]
    return kernel_constant(n) * rho_form(z, w) ** (-(n + 1))


def normalized_kernel(z, w):
    """k_z(w) = K(z, w) / sqrt(K(z, z)); has unit Bergman norm in w."""
    kzz = bergman_kernel(z, z).real
    return bergman_kernel(z, w) / np.sqrt(kzz)


def invariant_density(z):
    """Density K(z, z) of the Mobius invariant measure dlambda = K(z,z) dV."""
    return bergman_kernel(z, z).real


def bergman_metric(z, w):
    """Bergman distance beta(z, w) = atanh sqrt(1 - rho(z) rho(w) / |rho(z, w)|^2)."""
    radicand = 1.0 - rho(z) * rho(w) / np.abs(rho_form(z, w)) ** 2
    bad_low = radicand < -METRIC_CLAMP_TOL
    bad_high = radicand >= 1.0 + METRIC_CLAMP_TOL
    if np.any(bad_low) or np.any(bad_high):
        worst = np.min(radicand) if np.any(bad_low) else np.max(radicand)
        raise ArithmeticError(f"metric radicand {worst!r} outside [0, 1] beyond tolerance")
    radicand = np.clip(radicand, 0.0, 1.0 - 1e-300)
    return np.arctanh(np.sqrt(radicand))


def dilate(t, u):
    """Nonisotropic dilation delta_t(u) = (t u', t^2 u_n), t > 0.

    t may be a scalar or an array broadcasting against the leading axes of u.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("dilation parameter must be positive")
    uc = coords_of(u)
    out = np.concatenate(
        [t[..., None] * uc[..., :-1], t[..., None] ** 2 * uc[..., -1:]], axis=-1
    )
    return _wrap_like(u, out)


def translate(z, u):
    """Height-preserving affine automorphism h_z(u); sends z to (0', i rho(z))."""
    zc, uc = coords_of(z), coords_of(u)
    zp, zn = zc[..., :-1], zc[..., -1]
    up, un = uc[..., :-1], uc[..., -1]
    wn = un - zn.real - 2j * np.sum(up * np.conj(zp), axis=-1) + 1j * np.sum(np.abs(zp) ** 2, axis=-1)
    out = np.concatenate([up - zp, wn[..., None]], axis=-1)
    return _wrap_like(u, out)


def translate_inverse(z, u):
    """Inverse of h_z."""
    zc, uc = coords_of(z), coords_of(u)
    zp, zn = zc[..., :-1], zc[..., -1]
    vp, vn = uc[..., :-1], uc[..., -1]
    un = vn + zn.real + 2j * np.sum(vp * np.conj(zp), axis=-1) + 1j * np.sum(np.abs(zp) ** 2, axis=-1)
    out = np.concatenate([vp + zp, un[..., None]], axis=-1)
    return _wrap_like(u, out)


def automorphism(z, u):
    """sigma_z(u) = delta_{rho(z)^{-1/2}} h_z(u); sends z to (0', i)."""
    return dilate(rho(z) ** -0.5, translate(z, u))


def inverse_automorphism(z, u):
    """sigma_z^{-1}(u) = h_z^{-1} delta_{rho(z)^{1/2}}(u)."""
    return translate_inverse(z, dilate(rho(z) ** 0.5, u))


def ball_volume(z, r):
    """Lebesgue volume of the Bergman metric ball D(z, r), in closed form."""
    if not r > 0:
        raise ValueError("radius must be positive")
    n = coords_of(z).shape[-1]
    th = tanh(r)
    shape = (4.0 * pi**n / factorial(n)) * th ** (2 * n) / (1.0 - th**2) ** (n + 1)
    return shape * rho(z) ** (n + 1)


def averaging_volume_factor(n, r):
    """n!/(4 pi^n) (1 - tanh^2 r)^{n+1} / tanh^{2n} r, so that
    1 / |D(z, r)| = factor / rho(z)^{n+1}."""
    th = tanh(r)
    return kernel_constant(n) * (1.0 - th**2) ** (n + 1) / th ** (2 * n)


def domination_constant(n, r):
    """Explicit constant C(r, n) with averaging <= C(r, n) * Berezin pointwise."""
    th = tanh(r)
    return ((1.0 - th**2) ** (n + 1) / th ** (2 * n)) * ((1.0 + th) / (1.0 - th)) ** (2 * (n + 1))


def ball_bounding_box(z, r):
    """Chart-coordinate box guaranteed to contain D(z, r).

    Bounds in the order (x'_1.., y'_1.., x_n, h), from necessary membership
    conditions: beta(z, w) < r forces rho(z) rho(w) > (1 - T^2) |rho(z,w)|^2
    with T = tanh r, and Re rho(z,w) = (rho(z) + rho(w) + |z'-w'|^2) / 2,
    which pins the height ratio s = rho(w)/rho(z) between the roots of
    c(1+s)^2 = s (c = (1-T^2)/4), caps |z'-w'|^2, and through the imaginary
    part caps |Re w_n - Re z_n|.
    """
    zc = coords_of(z)
    n = zc.shape[-1]
    rz = float(rho(z))
    th = tanh(r)
    c = (1.0 - th**2) / 4.0
    root = np.sqrt(1.0 - 4.0 * c)
    s_lo = ((1.0 - 2.0 * c) - root) / (2.0 * c)
    s_hi = ((1.0 - 2.0 * c) + root) / (2.0 * c)
    # |z' - w'|^2 < 2 sqrt(rho(z) rho(w)) (1/sqrt(1-T^2) - 1)
    q_max = 2.0 * rz * np.sqrt(s_hi) * (1.0 / np.sqrt(1.0 - th**2) - 1.0)
    dprime = np.sqrt(q_max)
    zprime_norm = float(np.sqrt(np.sum(np.abs(zc[:-1]) ** 2)))
    # |Im rho(z,w)| <= |rho(z,w)| and Im rho = (Re w_n - Re z_n)/2 - Im(z'.(w'-z')bar)
    xn_half = 2.0 * rz * np.sqrt(s_hi) / np.sqrt(1.0 - th**2) + 2.0 * zprime_norm * dprime
    bounds = []
    for j in range(n - 1):
        bounds.append((zc[j].real - dprime, zc[j].real + dprime))
    for j in range(n - 1):
        bounds.append((zc[j].imag - dprime, zc[j].imag + dprime))
    bounds.append((zc[-1].real - xn_half, zc[-1].real + xn_half))
    bounds.append((rz * s_lo, rz * s_hi))
    return bounds


def _mc_ball_sum(z, r, samples, seed, weight=None, chunk=1 << 20):
    """Monte Carlo integral over D(z, r) of `weight` (1 if None).

    Rejection sampling in the chart bounding box; the chart has unit
    Jacobian, so the box volume is the product of side lengths.
    Returns (estimate, standard_error).
    """
    from .chart import chart_to_point

    bounds = ball_bounding_box(z, r)
    widths = np.array([hi - lo for lo, hi in bounds])
    los = np.array([lo for lo, _ in bounds])
    box_vol = float(np.prod(widths))
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        x = rng.random((m, len(bounds))) * widths + los
        w = chart_to_point(x)
        inside = bergman_metric(coords_of(z), w) < r
        vals = inside.astype(float)
        if weight is not None:
            vals = np.where(inside, weight(w), 0.0)
        total += float(np.sum(vals))
        total_sq += float(np.sum(vals**2))
        done += m
    mean = total / samples
    var = max(total_sq / samples - mean**2, 0.0)
    est = box_vol * mean
    stderr = box_vol * np.sqrt(var / samples)
    return est, stderr


def ball_volume_mc(z, r, samples=2_000_000, seed=0):
    """Monte Carlo estimate of |D(z, r)|; independent oracle for ball_volume."""
    return _mc_ball_sum(z, r, samples, seed)


def ball_lambda_mass_mc(z, r, samples=2_000_000, seed=0):
    """Monte Carlo estimate of lambda(D(z, r)) = int_D K(w, w) dV(w)."""
    return _mc_ball_sum(z, r, samples, seed, weight=lambda w: bergman_kernel(w, w).real)
