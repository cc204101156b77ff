"""r-lattices on truncated regions of U.

A lattice is a maximal r/2-separated set in the Bergman metric, built
greedily from a seeded low-discrepancy candidate stream; maximality makes
it cover the region by metric r-balls.  Also provides the finite-overlap
count and the partition into R-separated families.
"""

from dataclasses import dataclass

import numpy as np
from scipy.stats import qmc

from .chart import Region, chart_to_point, sample_region
from .geometry import bergman_metric


class LatticeConstructionError(RuntimeError):
    """Raised when the candidate budget leaves part of the region uncovered."""


@dataclass(frozen=True)
class Lattice:
    """Accepted points (m, n) complex, in acceptance order."""

    points: np.ndarray
    r: float
    region: Region

    def __len__(self):
        return self.points.shape[0]

    def min_separation(self):
        m = len(self)
        if m < 2:
            return np.inf
        beta = bergman_metric(self.points[:, None, :], self.points[None, :, :])
        beta[np.diag_indices(m)] = np.inf
        return float(beta.min())

    def to_json(self):
        return {
            "r": self.r,
            "region": self.region.to_dict(),
            "points": [[[c.real, c.imag] for c in p] for p in self.points],
        }

    @classmethod
    def from_json(cls, data):
        pts = np.array(
            [[complex(re, im) for re, im in p] for p in data["points"]], dtype=complex
        )
        return cls(points=pts, r=float(data["r"]), region=Region.from_dict(data["region"]))


@dataclass(frozen=True)
class SeparatedPartition:
    """Index families Gamma_1..Gamma_m, each R-separated in the metric."""

    families: tuple
    R: float


def build_lattice(region, r, seed=0, budget=50_000, check_samples=2000):
    """Greedy maximal r/2-separated set from a Halton candidate stream.

    Deterministic for fixed (region, r, seed).  After exhausting the
    budget, covering is spot-checked on uniform samples; an uncovered
    sample is a construction error (the budget was too small).
    """
    if not r > 0:
        raise ValueError("r must be positive")
    bounds = region.chart_bounds()
    los = np.array([lo for lo, _ in bounds])
    his = np.array([hi for _, hi in bounds])
    sampler = qmc.Halton(d=len(bounds), seed=seed, scramble=True)
    unit = sampler.random(budget)
    coords = qmc.scale(unit, los, his)
    # distribute candidate heights like the invariant measure (density
    # h^-(n+1)); uniform-in-h streams starve the small-h end of the region,
    # where metric balls are small in chart coordinates
    n = region.n
    a, b = region.rho_min ** (-n), region.rho_max ** (-n)
    coords[:, -1] = (a - unit[:, -1] * (a - b)) ** (-1.0 / n)
    candidates = chart_to_point(coords)

    accepted = [candidates[0]]
    block = 512
    for start in range(1, budget, block):
        cand = candidates[start : start + block]
        acc = np.array(accepted)
        beta = bergman_metric(cand[:, None, :], acc[None, :, :])
        ok = beta.min(axis=1) >= r / 2
        for row in cand[ok]:
            # re-check against points accepted within this block
            if len(accepted) > len(acc):
                extra = np.array(accepted[len(acc) :])
                if float(bergman_metric(row[None, :], extra).min()) < r / 2:
                    continue
            accepted.append(row)

    lat = Lattice(points=np.array(accepted), r=float(r), region=region)

    rng = np.random.default_rng(seed)
    samples = sample_region(region, check_samples, rng)
    beta = bergman_metric(samples[:, None, :], lat.points[None, :, :])
    gaps = beta.min(axis=1)
    worst = int(np.argmax(gaps))
    if gaps[worst] >= r:
        raise LatticeConstructionError(
            f"candidate budget {budget} too small: sample {samples[worst]} "
            f"is at distance {gaps[worst]:.4f} >= r={r} from the lattice"
        )
    return lat


def verify_covering(lat, samples=100_000, seed=0, chunk=20_000):
    """Fraction of uniform region samples within distance r of the lattice.

    Returns a report dict: {fraction_covered, worst_gap}; a valid lattice
    has fraction 1.0.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    covered = 0
    worst = 0.0
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        pts = sample_region(lat.region, m, rng)
        beta = bergman_metric(pts[:, None, :], lat.points[None, :, :])
        gaps = beta.min(axis=1)
        covered += int(np.sum(gaps < lat.r))
        worst = max(worst, float(gaps.max()))
        done += m
    return {"fraction_covered": covered / samples, "worst_gap": worst}


def overlap_count(lat, R, samples=20_000, seed=0, chunk=20_000):
    """Max over sampled points of the number of balls D(a_k, R) containing it."""
    if not R > 0:
        raise ValueError("R must be positive")
    rng = np.random.default_rng(seed)
    best = 0
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        pts = sample_region(lat.region, m, rng)
        beta = bergman_metric(pts[:, None, :], lat.points[None, :, :])
        counts = np.sum(beta < R, axis=1)
        best = max(best, int(counts.max()))
        done += m
    # lattice points themselves are the natural worst cases
    beta = bergman_metric(lat.points[:, None, :], lat.points[None, :, :])
    best = max(best, int(np.sum(beta < R, axis=1).max()))
    return best


def partition_separated(lat, R):
    """Greedy coloring of the conflict graph (edges where beta <= R).

    Each returned family is R-separated; families partition the indices.
    """
    if not R > 0:
        raise ValueError("R must be positive")
    m = len(lat)
    beta = bergman_metric(lat.points[:, None, :], lat.points[None, :, :])
    families = []
    for k in range(m):
        for fam in families:
            if np.all(beta[k, list(fam)] > R):
                fam.append(k)
                break
        else:
            families.append([k])
    return SeparatedPartition(families=tuple(tuple(f) for f in families), R=float(R))
