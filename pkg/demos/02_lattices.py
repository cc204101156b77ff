"""Building r-lattices: separated, covering point sets in the Bergman metric.

An r-lattice is a maximal r/2-separated subset of a truncated region of U;
maximality makes the metric r-balls around its points cover the region.
The builder draws low-discrepancy candidates (heights distributed like the
invariant measure) and keeps them greedily.
"""

from siegel import Region, build_lattice, overlap_count, partition_separated, verify_covering

region = Region(n=1, rho_min=0.1, rho_max=10.0, zprime_radius=1.0, re_zn_bound=10.0)
r = 0.5

print(f"region: {region}")
lat = build_lattice(region, r, seed=0)
print(f"built {len(lat)} points at r = {r}")
print(f"min pairwise distance = {lat.min_separation():.4f}  (must be >= r/2 = {r / 2})")

report = verify_covering(lat, samples=50_000, seed=1)
print(f"covering check on 50k samples: fraction covered = {report['fraction_covered']:.4f}, "
      f"worst gap = {report['worst_gap']:.4f}  (must be < r)")

count = overlap_count(lat, 2 * r, samples=20_000, seed=2)
print(f"max overlap of the 2r-balls: {count} (finite overlap, as the covering lemma asserts)")

part = partition_separated(lat, R=2.0)
sizes = sorted((len(f) for f in part.families), reverse=True)
print(f"partition into 2.0-separated families: {len(part.families)} families, sizes {sizes[:8]}...")

# denser lattices for smaller r
for r_try in (1.0, 0.5, 0.25):
    lat_try = build_lattice(region, r_try, seed=0)
    print(f"r = {r_try:<5} -> {len(lat_try)} points")
