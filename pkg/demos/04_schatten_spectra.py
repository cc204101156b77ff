"""Exact Schatten norms of Toeplitz operators with atomic symbols.

T_mu for a finite atomic mu is a finite sum of weighted rank-one kernel
projections, so its nonzero spectrum is that of the Gram matrix
sqrt(c_i c_j) K(w_i, w_j).  This gives every Schatten norm exactly, and
the trace formula tr(T_mu) = int mutilde dlambda can be checked against
quadrature.
"""

import numpy as np

from siegel import (
    AtomicMeasure,
    bergman_kernel,
    gram_matrix,
    i_point,
    operator_berezin,
    berezin_transform,
    schatten_norm,
    spectrum,
    trace_identity_check,
)

rng = np.random.default_rng(0)
m = 12
heights = rng.uniform(0.5, 3.0, m)
xs = rng.uniform(-1.5, 1.5, m)
mu = AtomicMeasure((xs + 1j * heights)[:, None], rng.lognormal(size=m))

gram = gram_matrix(mu)
spec = spectrum(gram)
print(f"symbol: {m} atoms; Gram matrix is {gram.matrix.shape[0]}x{gram.matrix.shape[1]} Hermitian PSD")
print("eigenvalues (descending):")
print("  " + "  ".join(f"{ev:.5f}" for ev in spec.eigenvalues))

print("\nSchatten norms (exact, from the spectrum):")
for p in (0.5, 1.0, 2.0, np.inf if False else 4.0):
    print(f"  ||T_mu||_{p} = {schatten_norm(spec, p):.6f}")
print(f"  (p -> infinity limit is the top eigenvalue {spec.eigenvalues[0]:.6f})")

print("\nrank-one sanity: for mu = delta_i every norm equals K(i, i) = 1/(4 pi)")
one = spectrum(gram_matrix(AtomicMeasure.delta(i_point(1))))
print(f"  ||T||_0.4 = {schatten_norm(one, 0.4):.10f}, "
      f"||T||_2 = {schatten_norm(one, 2.0):.10f}, "
      f"K(i,i) = {float(bergman_kernel(i_point(1), i_point(1)).real):.10f}")

print("\noperator-side vs measure-side Berezin transform at i:")
print(f"  sum_j c_j |k_i(w_j)|^2 = {operator_berezin(gram, i_point(1)):.8f}")
print(f"  int |k_i|^2 dmu        = {float(berezin_transform(mu, i_point(1))):.8f}")

print("\ntrace formula tr(T_mu) = int mutilde dlambda:")
check = trace_identity_check(mu)
print(f"  exact trace = {check.trace:.6f}")
print(f"  quadrature  = {check.integral:.6f} (tail estimate {check.tail_estimate:.1e})")
print(f"  relative gap = {check.relative_gap:.2e}")
