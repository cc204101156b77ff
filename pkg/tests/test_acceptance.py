"""Acceptance gate: eleven numbered criteria, one pass/fail line each.

Run with ``pytest -v tests/test_acceptance.py``; each test below is one
criterion, so the verbose listing is the pass/fail report.  Tolerances are
stated inline next to each assertion.
"""

import time

import numpy as np
import pytest

from siegel.chart import QuadratureSpec, Region, grid_nodes, sample_region
from siegel.experiments import (
    ExperimentConfig,
    run_cutoff,
    run_domination,
    run_equivalence,
    run_keylemma,
    run_trace,
)
from siegel.geometry import (
    automorphism,
    ball_lambda_mass_mc,
    ball_volume,
    ball_volume_mc,
    bergman_metric,
    coords_of,
    i_point,
    inverse_automorphism,
    kernel_constant,
    rho,
    rho_form,
)
from siegel.measures import AtomicMeasure
from siegel.schatten import gram_matrix, power_inequality_check, schatten_norm, spectrum

ONE_OVER_4PI = 0.079577471545947668  # K(i, i), n = 1, frozen via mpmath

SAMPLING = {
    n: Region(n=n, rho_min=0.2, rho_max=5.0, zprime_radius=2.0, re_zn_bound=3.0)
    for n in (1, 2, 3)
}


def _triples(n, count, seed):
    rng = np.random.default_rng(seed)
    region = SAMPLING[n]
    return tuple(sample_region(region, count, rng) for _ in range(3)), rng


def test_criterion_01_algebraic_identity_suite():
    """Pairing/automorphism identities < 1e-10 over 1e4 samples, n in {1,2,3}, < 10 s."""
    start = time.monotonic()
    tol = 1e-10
    for n in (1, 2, 3):
        (z, u, v), _ = _triples(n, 10_000, seed=100 + n)
        center = coords_of(i_point(n))
        checks = {
            "scaling": np.abs(
                rho_form(automorphism(z, u), automorphism(z, v)) * rho(z) - rho_form(u, v)
            ),
            "inverse-scaling": np.abs(
                rho_form(inverse_automorphism(z, u), inverse_automorphism(z, v))
                - rho(z) * rho_form(u, v)
            ),
            "hermitian": np.abs(rho_form(z, u) - np.conj(rho_form(u, z))),
            "center": np.abs(automorphism(z, z) - center).max(axis=-1),
            "roundtrip": np.abs(inverse_automorphism(z, automorphism(z, u)) - u).max(axis=-1),
            "metric-invariance": np.abs(
                bergman_metric(automorphism(z, u), automorphism(z, v)) - bergman_metric(u, v)
            ),
        }
        for name, err in checks.items():
            worst = float(np.max(err))
            assert worst < tol, f"{name} identity at n={n}: max error {worst:.3e} >= {tol}"
    elapsed = time.monotonic() - start
    assert elapsed < 10.0, f"identity suite took {elapsed:.1f}s >= 10s"


def test_criterion_02_inequality_suite():
    """2|rho(z,w)| >= max(rho) and r-ball distortion bounds: zero violations, 1e4 samples, n in {1,2}."""
    r = 0.8
    th = np.tanh(r)
    lo, hi = (1 - th) / (1 + th), (1 + th) / (1 - th)
    for n in (1, 2):
        (z, u, w), rng = _triples(n, 10_000, seed=200 + n)
        lower = 2 * np.abs(rho_form(z, u)) - np.maximum(rho(z), rho(u))
        assert int(np.sum(lower < -1e-12)) == 0, f"lower bound violated at n={n}"
        # v with beta(u, v) <= r exactly: pull back points near the center
        near_center = sample_region(
            Region(n=n, rho_min=0.5, rho_max=2.0, zprime_radius=0.3, re_zn_bound=0.3),
            10_000,
            rng,
        )
        mask = bergman_metric(coords_of(i_point(n)), near_center) <= r
        v = inverse_automorphism(u[mask], near_center[mask])
        ratio = np.abs(rho_form(z[mask], u[mask])) / np.abs(rho_form(z[mask], v))
        bad = int(np.sum((ratio < lo - 1e-12) | (ratio > hi + 1e-12)))
        assert bad == 0, f"distortion bound violated {bad} times at n={n}"
        assert int(np.sum(mask)) > 1000  # the check is not vacuous


def test_criterion_03_key_integral_lemma():
    """Numeric/closed-form ratio in [0.99, 1.01] on the (n,s,t) grid, divergent branch rejected, < 60 s."""
    start = time.monotonic()
    report = run_keylemma(ExperimentConfig(scenario="keylemma"))
    for v in report.verdicts:
        if v["name"].endswith(":rejected"):
            assert v["passed"], f"divergent branch not rejected: {v['name']}"
        else:
            assert 0.99 <= v["value"] <= 1.01, f"{v['name']}: ratio {v['value']:.5f}"
    elapsed = time.monotonic() - start
    assert elapsed < 60.0, f"key lemma grid took {elapsed:.1f}s >= 60s"


def test_criterion_04_ball_volume():
    """Closed form vs Monte Carlo within 1% for 5 random (z, r) per n; lambda-mass constant within 2%."""
    for n in (1, 2):
        rng = np.random.default_rng(400 + n)
        samples = 2_000_000 if n == 1 else 6_000_000
        for k in range(5):
            z = sample_region(SAMPLING[n], 1, rng)[0]
            r = float(rng.uniform(0.4, 0.8))
            exact = float(ball_volume(z, r))
            est, _ = ball_volume_mc(z, r, samples=samples, seed=410 * n + k)
            rel = abs(est - exact) / exact
            assert rel < 0.01, f"ball volume n={n} case {k}: {rel:.4f} >= 1%"
    rng = np.random.default_rng(450)
    masses = []
    for k in range(5):
        z = sample_region(SAMPLING[1], 1, rng)[0]
        est, _ = ball_lambda_mass_mc(z, 0.5, samples=2_000_000, seed=460 + k)
        masses.append(est)
    spread = max(masses) / min(masses) - 1.0
    assert spread < 0.02, f"lambda(D(z, r)) varies by {spread:.4f} >= 2% across centers"


def test_criterion_05_normalization():
    """Berezin transform of Lebesgue measure equals 1 within 2% at 20 sampled z (n=1)."""
    region = Region(n=1, rho_min=1e-4, rho_max=1024.0, re_zn_bound=1024.0)
    pts, wts = grid_nodes(QuadratureSpec(region=region, order=8))
    rng = np.random.default_rng(500)
    z = sample_region(SAMPLING[1], 20, rng)
    # mutilde(z) for dmu = dV:  (1/4pi) rho(z)^2 int |rho(z, w)|^-4 dV(w)
    integ = np.sum(
        wts / np.abs(rho_form(z[:, None, :], pts[None, :, :])) ** 4, axis=1
    )
    vals = kernel_constant(1) * rho(z) ** 2 * integ
    worst = float(np.max(np.abs(vals - 1.0)))
    assert worst < 0.02, f"||k_z||_2^2 deviates from 1 by {worst:.4f} >= 2%"


def test_criterion_06_rank_one_exactness():
    """||T_{delta_i}||_p = K(i, i) = 1/(4 pi) to 1e-12 relative, p in {0.4, 0.6, 1, 2}."""
    spec = spectrum(gram_matrix(AtomicMeasure.delta(i_point(1))))
    for p in (0.4, 0.6, 1.0, 2.0):
        got = schatten_norm(spec, p)
        rel = abs(got - ONE_OVER_4PI) / ONE_OVER_4PI
        assert rel <= 1e-12, f"p={p}: relative gap {rel:.2e}"


def test_criterion_07_trace_formula():
    """Sum of eigenvalues vs truncated Berezin integral within 2% + tail, 10 measures <= 50 atoms, < 5 min."""
    start = time.monotonic()
    report = run_trace(ExperimentConfig(scenario="trace", instances=10, seed=7))
    for case in report.cases:
        assert case["atoms"] <= 50
        assert case["relative_gap"] <= 0.02 + case["tail_estimate"], (
            f"instance {case['instance']}: gap {case['relative_gap']:.4f} "
            f"> 2% + tail {case['tail_estimate']:.4f}"
        )
    elapsed = time.monotonic() - start
    assert elapsed < 300.0, f"trace suite took {elapsed:.1f}s >= 5 min"


def test_criterion_08_equivalence_bands():
    """Q1/Q2, Q2/Q3, Q1/Q4 ratio spreads <= 1e2 over 20 measures; paired lattices agree within 10x."""
    report = run_equivalence(ExperimentConfig(scenario="equivalence", seed=8))
    for case in report.cases:
        for key in ("Q1", "Q2", "Q2_alt", "Q3", "Q4"):
            assert np.isfinite(case[key]) and case[key] > 0, f"{key} degenerate: {case[key]}"
    for v in report.verdicts:
        assert v["passed"], f"{v['name']}: spread {v['value']:.3f} > {v['threshold']}"


def test_criterion_09_cutoff_sharpness():
    """Fitted slope n - p(n+1) (10% at n=1, 15% at n=2); convergence for p > 1/2 at n=1 (2%)."""
    report = run_cutoff(ExperimentConfig(scenario="cutoff", seed=9))
    names = [v["name"] for v in report.verdicts]
    for want in ("slope[n=1,p=0.3]", "slope[n=1,p=0.4]", "convergence[n=1,p=0.6]",
                 "convergence[n=1,p=0.75]", "slope[n=2,p=0.5]"):
        assert any(name.startswith(want) for name in names), f"missing check {want}"
    for v in report.verdicts:
        assert v["passed"], f"{v['name']}: {v['value']:.4f} > {v['threshold']}"


def test_criterion_10_power_inequality():
    """<T^p x, x> >= <T x, x>^p - 1e-10 over 1e4 random (Gram, x, p) trials."""
    rng = np.random.default_rng(10)
    trials = 0
    for _ in range(100):
        m = int(rng.integers(3, 9))
        h = rng.uniform(0.3, 3.0, m)
        x_re = rng.uniform(-2.0, 2.0, m)
        mu = AtomicMeasure((x_re + 1j * h)[:, None], rng.lognormal(size=m))
        gram = gram_matrix(mu)
        for _ in range(100):
            x = rng.normal(size=m) + 1j * rng.normal(size=m)
            x /= np.linalg.norm(x)
            p = float(rng.uniform(1.0, 3.0))
            assert power_inequality_check(gram, p, x, slack=1e-10), (
                f"power inequality violated at trial {trials} (m={m}, p={p:.3f})"
            )
            trials += 1
    assert trials == 10_000


def test_criterion_11_domination():
    """Fitted constant relating Berezin(mu) to Berezin(muhat_r dV) has spread <= 10 (100 points, 5 measures)."""
    report = run_domination(ExperimentConfig(scenario="domination", seed=11))
    assert len(report.cases) == 5
    for v in report.verdicts:
        assert v["passed"], f"{v['name']}: spread {v['value']:.3f} > {v['threshold']}"
