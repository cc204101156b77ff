"""Berezin transforms, averaging functions, and L^p(dlambda) norms.

A positive measure mu on U induces the Berezin transform
mutilde(z) = int |k_z|^2 dmu (exact finite sum for atomic mu) and the
averaging function muhat_r(z) = mu(D(z, r)) / |D(z, r)|.  Their L^p norms
against the invariant measure dlambda = K(z, z) dV, and lattice sums of
muhat_r, are the quantities the Schatten-class equivalences compare.
"""

import numpy as np

from siegel import (
    AtomicMeasure,
    QuadratureSpec,
    Region,
    averaging_field,
    averaging_function,
    berezin_field,
    berezin_transform,
    build_lattice,
    i_point,
    keylemma_check,
    lattice_lp_sum,
    lp_lambda_norm,
)

mu = AtomicMeasure(
    points=np.array([[0.0 + 1.0j], [0.5 + 2.0j], [-0.3 + 0.8j]]),
    weights=np.array([1.0, 2.0, 0.5]),
)
print(f"atomic measure: {len(mu)} atoms, total mass {mu.total_mass}")

z = i_point(1)
r = 0.5
print(f"\nmutilde(i)  = {berezin_transform(mu, z):.6f}  (exact finite sum)")
print(f"muhat_r(i)  = {averaging_function(mu, z, r):.6f}  (ball mass / ball volume)")

# transforms along a vertical ray: both decay as the point leaves the mass
heights = [0.5, 1.0, 2.0, 4.0, 8.0]
ray = np.array([[1j * h] for h in heights])
print("\nheight   berezin      averaging")
for h, b, a in zip(heights, berezin_transform(mu, ray), averaging_function(mu, ray, r)):
    print(f"{h:<8} {b:<12.6f} {a:.6f}")

# L^p norms against dlambda on a generous truncation.  The averaging
# function is piecewise constant in z (atoms enter and leave the ball), so
# its quadrature gets a looser tolerance than the real-analytic Berezin side.
region = Region(n=1, rho_min=1e-3, rho_max=128.0, re_zn_bound=128.0)
spec = QuadratureSpec(region=region, order=8, rel_tol=1e-3)
rough = QuadratureSpec(region=region, order=8, rel_tol=5e-2)
for p in (1.0, 2.0):
    nb, eb = lp_lambda_norm(berezin_field(mu), p, spec)
    na, ea = lp_lambda_norm(averaging_field(mu, r), p, rough)
    print(f"\np = {p}:  ||mutilde||_p = {nb:.6f} (err {eb:.1e}),"
          f"  ||muhat_r||_p = {na:.6f} (err {ea:.1e})")

lat = build_lattice(Region(n=1, rho_min=0.05, rho_max=16.0, re_zn_bound=16.0), r, seed=0)
print(f"\nlattice sum (p = 1): {lattice_lp_sum(mu, lat, 1.0):.6f} over {len(lat)} points")

# the key integral lemma: quadrature against the gamma-function closed form
res = keylemma_check(i_point(1), s=4.0, t=0.0)
print(f"\nkey integral (n=1, s=4, t=0): numeric = {res.numeric:.6f}, "
      f"closed form = {res.closed_form:.6f} (= 4 pi), ratio = {res.ratio:.5f}")
