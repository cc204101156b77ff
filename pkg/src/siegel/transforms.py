"""Averaging functions, Berezin transforms, L^p(dlambda) norms and lattice sums.

The averaging function at scale r is ball mass over ball volume; the
Berezin transform integrates |k_z|^2 against the measure, which for atomic
measures collapses to the exact finite sum
    n!/(4 pi^n) sum_j c_j rho(z)^{n+1} / |rho(z, w_j)|^{2(n+1)}.
L^p norms against the invariant measure dlambda = K(z,z) dV are computed
by chart quadrature on truncation regions, with refinement-based error
estimates and power-law tail reporting.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .chart import (
    QuadratureSpec,
    Region,
    ToleranceError,
    integrate_expanding,
    integrate_with_estimate,
)
from .geometry import (
    averaging_volume_factor,
    ball_volume,
    coords_of,
    invariant_density,
    kernel_constant,
    normalized_kernel,
    rho,
    rho_form,
)
from .measures import AtomicMeasure, DensityMeasure, ball_mass


@dataclass(frozen=True)
class ScalarField:
    """A nonnegative field on U: evaluator maps points (N, n) -> values (N,)."""

    evaluator: callable
    label: str = ""

    def __call__(self, z):
        return self.evaluator(z)


def averaging_function(mu, z, r):
    """mu(D(z, r)) / |D(z, r)|, both factors in closed form where possible."""
    return ball_mass(mu, z, r) / ball_volume(z, r)


def averaging_field(mu, r):
    """The averaging function as a ScalarField (vectorized for atomic mu)."""
    return ScalarField(lambda z: averaging_function(mu, z, r), label=f"averaging[r={r}]")


def berezin_transform(mu, z, spec=None):
    """Berezin transform of a measure at z (vectorized over leading axes of z).

    Atomic measures are summed exactly; density measures are integrated by
    chart quadrature over their support (spec overrides the default scheme).
    """
    zc = coords_of(z)
    n = zc.shape[-1]
    if isinstance(mu, AtomicMeasure):
        if len(mu) == 0:
            return np.zeros(zc.shape[:-1]) if zc.ndim > 1 else 0.0
        num = rho(zc)[..., None] ** (n + 1)
        den = np.abs(rho_form(zc[..., None, :], mu.points)) ** (2 * (n + 1))
        out = kernel_constant(n) * np.sum(mu.weights * num / den, axis=-1)
        return float(out) if out.ndim == 0 else out
    if not isinstance(mu, DensityMeasure):
        raise TypeError("expected AtomicMeasure or DensityMeasure")
    if spec is None:
        spec = QuadratureSpec(region=mu.support)

    def integrand(w):
        return np.abs(normalized_kernel(zc, w)) ** 2 * mu.density(w)

    value, _ = integrate_with_estimate(integrand, spec)
    return value


def berezin_field(mu):
    return ScalarField(lambda z: berezin_transform(mu, z), label="berezin")


def lp_lambda_norm(field, p, spec, return_estimate=True):
    """(int_region F^p dlambda)^{1/p} with a refinement-based error estimate.

    Raises ToleranceError (carrying the last two estimates) if refinement
    stalls before spec.rel_tol.
    """
    if not p > 0:
        raise ValueError("p must be positive")
    evaluator = field.evaluator if isinstance(field, ScalarField) else field

    def integrand(z):
        return evaluator(z) ** p * invariant_density(z)

    value, err = integrate_with_estimate(integrand, spec)
    norm = value ** (1.0 / p)
    return (norm, err) if return_estimate else norm


def lattice_lp_sum(mu, lat, p):
    """(sum_k muhat_r(a_k)^p)^{1/p} over the lattice points at the lattice's r."""
    if not p > 0:
        raise ValueError("p must be positive")
    vals = np.asarray(averaging_function(mu, lat.points, lat.r), dtype=float)
    return float(np.sum(vals**p) ** (1.0 / p))


def keylemma_constant(n, s, t):
    """C(n, s, t) = 4 pi^n Gamma(1+t) Gamma(s-t-n-1) / Gamma(s/2)^2."""
    if not (t > -1 and s - t > n + 1):
        raise ValueError(
            f"divergent branch: require t > -1 and s - t > n + 1, got t={t}, s-t={s - t}"
        )
    log = gammaln(1 + t) + gammaln(s - t - n - 1) - 2 * gammaln(s / 2.0)
    return 4.0 * np.pi**n * np.exp(log)


def keylemma_closed_form(z, s, t):
    """Closed-form value of int rho(w)^t / |rho(z, w)|^s dV(w)."""
    zc = coords_of(z)
    n = zc.shape[-1]
    return keylemma_constant(n, s, t) / float(rho(zc)) ** (s - t - n - 1)


@dataclass(frozen=True)
class KeyLemmaResult:
    numeric: float
    closed_form: float
    tail_estimate: float

    @property
    def ratio(self):
        return self.numeric / self.closed_form


def default_keylemma_spec(z, rel_tol=1e-2, order=8):
    """Truncation region scaled to the height of z (integrals are homogeneous)."""
    zc = coords_of(z)
    n = zc.shape[-1]
    scale = max(float(rho(zc)), 1.0)
    zprime_extent = float(np.max(np.abs(zc[:-1]), initial=0.0))
    region = Region(
        n=n,
        rho_min=1e-3 * scale,
        rho_max=64.0 * scale,
        zprime_radius=8.0 * np.sqrt(scale) + zprime_extent,
        re_zn_bound=64.0 * scale + abs(zc[-1].real),
    )
    return QuadratureSpec(
        region=region,
        order=order,
        h_ratio=4.0,
        x_base=0.5 * np.sqrt(scale),
        x_ratio=2.0 if n == 1 else 4.0,
        rel_tol=rel_tol,
    )


def keylemma_check(z, s, t, spec=None):
    """Numeric vs closed-form evaluation of the key integral.

    Rejects divergent-branch parameters (t <= -1 or s - t <= n + 1) with a
    ValueError.  The numeric side integrates over expanding truncations
    until the increment falls below spec.rel_tol.
    """
    zc = coords_of(z)
    n = zc.shape[-1]
    closed = keylemma_closed_form(zc, s, t)  # raises on the divergent branch
    if spec is None:
        spec = default_keylemma_spec(zc)

    def integrand(w):
        return rho(w) ** t / np.abs(rho_form(zc, w)) ** s

    numeric, tail = integrate_expanding(integrand, spec)
    return KeyLemmaResult(numeric=numeric, closed_form=closed, tail_estimate=tail)
