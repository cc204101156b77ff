"""A tour of the closed-form geometry of the Siegel upper half-space.

U = {z in C^n : Im z_n > |z'|^2}.  Everything here is an exact formula:
the pairing rho(z, w), the Bergman kernel and distance, the automorphisms
that move any point to the center (0', i), and metric-ball volumes.
"""

import numpy as np

from siegel import (
    SiegelPoint,
    automorphism,
    ball_volume,
    ball_volume_mc,
    bergman_kernel,
    bergman_metric,
    dilate,
    i_point,
    inverse_automorphism,
    rho,
    rho_form,
)

center = i_point(1)
z = SiegelPoint([0.7 + 2.0j])

print("== points and the height function ==")
print(f"center (0', i): rho = {float(rho(center)):.6f}")
print(f"z = {z}: rho = {float(rho(z)):.6f}  (Im z_n - |z'|^2)")

print("\n== the pairing and the kernel ==")
print(f"rho(z, center) = {complex(rho_form(z, center)):.6f}")
print(f"K(center, center) = {complex(bergman_kernel(center, center)).real:.10f}"
      f"  (= 1/(4 pi) = {1 / (4 * np.pi):.10f})")
print(f"K(z, center)      = {complex(bergman_kernel(z, center)):.6f}")

print("\n== Bergman distance ==")
two_i = SiegelPoint([2j])
print(f"beta(i, 2i) = {float(bergman_metric(center, two_i)):.10f}"
      f"  (= atanh(1/3) = {np.arctanh(1/3):.10f})")
print(f"beta is dilation-invariant: beta(2i, 4i) = "
      f"{float(bergman_metric(two_i, dilate(np.sqrt(2), two_i))):.10f}")

print("\n== automorphisms ==")
moved = automorphism(z, z)
print(f"sigma_z(z) = {moved}  (always the center)")
w = SiegelPoint([-0.3 + 1.5j])
print(f"round trip |sigma_z^-1(sigma_z(w)) - w| = "
      f"{np.max(np.abs(inverse_automorphism(z, automorphism(z, w)).coords - w.coords)):.2e}")
print(f"distance invariance: beta(z, w) = {float(bergman_metric(z, w)):.8f}, "
      f"beta(sigma_z z, sigma_z w) = "
      f"{float(bergman_metric(automorphism(z, z), automorphism(z, w))):.8f}")

print("\n== metric-ball volumes ==")
r = 0.6
exact = float(ball_volume(z, r))
mc, err = ball_volume_mc(z, r, samples=1_000_000, seed=0)
print(f"|D(z, {r})| closed form = {exact:.6f}")
print(f"|D(z, {r})| Monte Carlo = {mc:.6f} +- {err:.6f}")
print(f"volume scales like rho(z)^(n+1): ratio under dilation by 2 = "
      f"{float(ball_volume(dilate(2.0, z), r)) / exact:.6f} (expected 16.0)")
