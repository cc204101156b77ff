"""Exact Schatten-class computations for Toeplitz operators with atomic symbols.

For a finite atomic symbol, the Toeplitz operator is a finite positive sum
of rank-one kernel projections; its nonzero spectrum equals that of the
Hermitian Gram matrix with entries sqrt(c_i c_j) K(w_i, w_j).  Everything
downstream (Schatten norms, trace, operator Berezin transform, power
inequalities) reduces to dense Hermitian linear algebra on that matrix.
"""

from dataclasses import dataclass

import numpy as np

from .chart import QuadratureSpec
from .geometry import bergman_kernel, coords_of, invariant_density, normalized_kernel
from .measures import AtomicMeasure
from .transforms import berezin_transform

# Relative threshold (w.r.t. spectral radius) below which negative
# eigenvalues of a numerically rank-deficient Gram matrix are zeroed.
PSD_CLAMP = 1e-10


class NumericalError(RuntimeError):
    """Eigensolve failure or PSD violation beyond the clamp threshold."""


@dataclass(frozen=True)
class ToeplitzGram:
    """Hermitian PSD matrix sqrt(c_i c_j) K(w_i, w_j) with its atoms."""

    matrix: np.ndarray
    atoms: AtomicMeasure


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a Toeplitz Gram matrix, sorted descending, clamped >= 0."""

    eigenvalues: np.ndarray

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=float)
        object.__setattr__(self, "eigenvalues", ev)

    @property
    def trace(self):
        return float(self.eigenvalues.sum())


def gram_matrix(mu):
    """Gram matrix of the rank-one decomposition of T_mu (atom order fixed)."""
    if not isinstance(mu, AtomicMeasure) or len(mu) == 0:
        raise ValueError("gram_matrix needs an atomic measure with at least one atom")
    k = bergman_kernel(mu.points[:, None, :], mu.points[None, :, :])
    scale = np.sqrt(mu.weights)
    return ToeplitzGram(matrix=scale[:, None] * k * scale[None, :], atoms=mu)


def spectrum(gram):
    """Hermitian eigendecomposition, clamped and sorted descending."""
    m = gram.matrix
    herm_defect = np.max(np.abs(m - m.conj().T))
    if herm_defect > 1e-12 * max(np.max(np.abs(m)), 1e-300):
        raise NumericalError(f"Gram matrix is not Hermitian: defect {herm_defect:.3e}")
    try:
        ev = np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolve failed: {exc}") from exc
    top = max(float(ev.max()), 0.0)
    floor = -PSD_CLAMP * max(top, 1e-300)
    if np.any(ev < floor):
        raise NumericalError(
            f"eigenvalue {ev.min():.3e} below PSD clamp {floor:.3e}"
        )
    ev = np.where(ev < 0.0, 0.0, ev)
    return Spectrum(eigenvalues=np.sort(ev)[::-1])


def schatten_norm(spec, p):
    """(sum_k lambda_k^p)^{1/p} over the positive eigenvalues."""
    if not p > 0:
        raise ValueError("p must be positive")
    ev = spec.eigenvalues[spec.eigenvalues > 0]
    if ev.size == 0:
        return 0.0
    return float(np.sum(ev**p) ** (1.0 / p))


def operator_berezin(gram, z):
    """Berezin transform of the operator at z, via the rank-one representation.

    Equals sum_j c_j |k_z(w_j)|^2, so it must agree with the measure-side
    Berezin transform; the two are computed through independent formulas.
    """
    mu = gram.atoms
    vals = np.abs(normalized_kernel(coords_of(z), mu.points)) ** 2
    return float(np.sum(mu.weights * vals))


@dataclass(frozen=True)
class TraceCheck:
    trace: float
    integral: float
    tail_estimate: float

    @property
    def relative_gap(self):
        return abs(self.integral - self.trace) / self.trace


def default_trace_region(mu, margin=64.0):
    """Truncation region generously containing the Berezin mass of the atoms."""
    from .chart import Region

    pts = mu.points
    n = pts.shape[1]
    heights = pts[:, -1].imag - np.sum(np.abs(pts[:, :-1]) ** 2, axis=1)
    zprime_extent = float(np.max(np.abs(pts[:, :-1]), initial=0.0))
    scale = float(np.max(heights))
    return Region(
        n=n,
        rho_min=float(np.min(heights)) / margin,
        rho_max=scale * margin,
        zprime_radius=zprime_extent + 4.0 * np.sqrt(scale * margin / 8),
        re_zn_bound=float(np.max(np.abs(pts[:, -1].real), initial=0.0)) + scale * margin / 2,
    )


def trace_identity_check(mu, spec=None):
    """Exact trace vs quadrature of the Berezin transform against dlambda.

    Returns the exact eigenvalue sum, the truncated integral of the Berezin
    transform, and the region-tail estimate from the final expansion.
    """
    from .chart import integrate_expanding

    spec_obj = spec
    if spec_obj is None:
        spec_obj = QuadratureSpec(region=default_trace_region(mu), h_ratio=4.0, x_ratio=4.0)
    lhs = spectrum(gram_matrix(mu)).trace

    def integrand(z):
        return berezin_transform(mu, z) * invariant_density(z)

    rhs, tail = integrate_expanding(integrand, spec_obj)
    return TraceCheck(trace=lhs, integral=rhs, tail_estimate=tail)


def power_inequality_check(gram, p, x, slack=1e-10):
    """Check <T^p x, x> >= <T x, x>^p - slack for a unit vector x and p >= 1."""
    if p < 1:
        raise ValueError("power inequality requires p >= 1")
    x = np.asarray(x, dtype=complex)
    nrm = np.linalg.norm(x)
    if abs(nrm - 1.0) > 1e-8:
        raise ValueError("x must be a unit vector")
    ev, vec = np.linalg.eigh(gram.matrix)
    ev = np.clip(ev, 0.0, None)
    proj = np.abs(vec.conj().T @ x) ** 2
    lhs = float(np.sum(ev**p * proj))
    rhs = float(np.sum(ev * proj)) ** p
    return lhs >= rhs - slack
