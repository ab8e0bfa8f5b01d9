"""Range sampling and asymptotic-direction estimation.

The range of an entire harmonic map is sampled on a bounded disc; a
direction on the unit circle counts as asymptotic when samples keep
appearing near it at every modulus cutoff of an increasing schedule.
Estimation is inherently one-sided: directions realized only beyond the
sampling radius can be missed, so every estimate records the radius and
schedule it was computed with.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from .arcs import ArcSet, TWO_PI, circle_distance
from .expressions import HarmonicMap

__all__ = [
    "RangeSample",
    "DirectionEstimate",
    "Cone",
    "PhiProfile",
    "sample_range",
    "estimate_directions",
    "antipodal_pairs",
    "antipodal_gap_alpha",
    "cone_avoidance_normalize",
    "i_alpha_arcs",
    "i_alpha_fit",
    "phi_profile",
    "phi_sublinearity_check",
]


@dataclass
class RangeSample:
    """Desk-scale sample of the range: pairs (z, w = f(z))."""

    z: np.ndarray
    w: np.ndarray
    radius: float
    n_grid: int
    seed: int
    grid_type: str = "polar+sobol"

    @property
    def count(self) -> int:
        return int(self.z.size)

    def metadata(self) -> dict:
        return {
            "radius": self.radius,
            "n_grid": self.n_grid,
            "seed": self.seed,
            "grid_type": self.grid_type,
            "count": self.count,
        }

    def to_csv(self, path: str):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["z_re", "z_im", "w_re", "w_im"])
            for z, w in zip(self.z, self.w):
                writer.writerow([repr(float(z.real)), repr(float(z.imag)),
                                 repr(float(w.real)), repr(float(w.imag))])


def sample_range(f: HarmonicMap, R: float, n_grid: int = 256,
                 seed: int = 0) -> RangeSample:
    """Deterministic polar grid on D(0,R) plus seeded quasi-random points."""
    if n_grid < 64:
        raise ValueError("n_grid must be at least 64")
    radii = R * (np.arange(1, n_grid + 1) / n_grid)
    theta = TWO_PI * np.arange(n_grid) / n_grid
    zg = (radii[:, None] * np.exp(1j * theta[None, :])).ravel()
    sob = qmc.Sobol(d=2, scramble=True, seed=seed)
    pts = sob.random(n_grid * n_grid)
    r = R * np.sqrt(pts[:, 0])
    t = TWO_PI * pts[:, 1]
    zq = r * np.exp(1j * t)
    z = np.concatenate([zg, zq])
    w = f.value(z)
    return RangeSample(z=z, w=np.asarray(w, dtype=complex), radius=R,
                       n_grid=n_grid, seed=seed)


@dataclass
class DirectionEstimate:
    arcs: ArcSet
    cutoffs: tuple[float, ...]
    bins: int
    survival_counts: np.ndarray = field(repr=False)
    stabilization_index: int = 0
    low_confidence: bool = False
    radius: float = 0.0

    def to_dict(self) -> dict:
        return {
            "arcs": self.arcs.to_dict()["arcs"],
            "cutoffs": list(self.cutoffs),
            "bins": self.bins,
            "stabilization_index": self.stabilization_index,
            "low_confidence": self.low_confidence,
            "radius": self.radius,
            "occupied_bins": int(np.count_nonzero(
                self.survival_counts >= len(self.cutoffs) - self.stabilization_index)),
        }


def _default_cutoffs(mods: np.ndarray) -> tuple[float, ...]:
    """Quantile cutoffs plus a geometric ladder of absolute floors."""
    finite = mods[np.isfinite(mods) & (mods > 0)]
    if finite.size == 0:
        return (1.0,)
    qs = [float(np.quantile(finite, q)) for q in (0.90, 0.99, 0.999)]
    m0 = float(np.quantile(finite, 0.5))
    top = float(finite.max())
    ladder = []
    m = max(m0, 1e-12)
    while m < top:
        ladder.append(m)
        m *= 4.0
    cuts = sorted(set(qs + ladder))
    return tuple(cuts) if cuts else (top,)


def estimate_directions(samples: RangeSample, bins: int = 720,
                        cutoffs=None, fatten_bins: int = 1,
                        min_large: int = 8) -> DirectionEstimate:
    """Bin sample directions and keep bins that survive every cutoff from
    the stabilization index on; merge surviving bins into closed arcs."""
    if bins < 90:
        raise ValueError("need at least 90 bins")
    w = samples.w
    mods = np.abs(w)
    if cutoffs is None:
        cutoffs = _default_cutoffs(mods)
    cutoffs = tuple(sorted(float(c) for c in cutoffs))
    ang = np.mod(np.angle(w), TWO_PI)
    idx = np.minimum((ang / TWO_PI * bins).astype(int), bins - 1)
    # per-bin maximum modulus
    G = np.zeros(bins)
    np.maximum.at(G, idx, np.where(np.isfinite(mods), mods, 0.0))

    occupied = [G > c for c in cutoffs]
    stab = len(cutoffs) - 1
    for j in range(len(cutoffs) - 1):
        if np.array_equal(occupied[j], occupied[j + 1]):
            stab = j
            break
    # occupancy is monotone in the cutoff, so the occupied set at the
    # stabilization index is the one every later cutoff agrees on up to
    # further shrinking; it is the estimate
    keep = occupied[stab].copy()
    survival = np.sum(np.stack(occupied), axis=0)

    n_large = int(np.count_nonzero(mods > cutoffs[-1]))
    low_conf = n_large < min_large

    if not np.any(mods > cutoffs[-1]):
        arcs = ArcSet.empty()
    else:
        width = TWO_PI / bins
        intervals = [(k * width, (k + 1) * width) for k in np.nonzero(keep)[0]]
        arcs = ArcSet.from_intervals(intervals).fatten(fatten_bins * width)
    return DirectionEstimate(arcs=arcs, cutoffs=cutoffs, bins=bins,
                             survival_counts=survival,
                             stabilization_index=stab,
                             low_confidence=low_conf,
                             radius=samples.radius)


def antipodal_pairs(arcs: ArcSet, tol_rad: float = 0.0) -> ArcSet:
    """Angles theta (mod pi, represented in [0, pi)) with both e^{i theta}
    and -e^{i theta} in the tol-fattened set."""
    fat = arcs.fatten(tol_rad) if tol_rad > 0 else arcs
    both = fat.intersect(fat.rotate(math.pi))
    half = both.intersect(ArcSet.from_intervals([(0.0, math.pi)]))
    # drop the duplicate representative at pi when 0 is already present
    out = list(half.arcs)
    if len(out) >= 2 and out[0][0] == 0.0 and out[-1] == (math.pi, math.pi):
        out.pop()
    return ArcSet.from_intervals(out)


def antipodal_gap_alpha(E: ArcSet, tol_rad: float = 1e-3,
                        grid_step: float = 1e-3) -> float | None:
    """An angle alpha whose three probes {alpha - pi/2, alpha, alpha + pi/2}
    all stay at least tol away from E, or None."""
    n = int(math.ceil(TWO_PI / grid_step))
    for k in range(n):
        alpha = k * grid_step
        if (E.distance(alpha) >= tol_rad
                and E.distance(alpha + math.pi / 2) >= tol_rad
                and E.distance(alpha - math.pi / 2) >= tol_rad):
            return alpha
    return None


def cone_avoidance_normalize(arcs: ArcSet, tol_rad: float = 1e-3,
                             samples: RangeSample | None = None) -> dict | None:
    """Rotation normalization: returns {theta, a, rho_hint} such that the
    rotated arcs avoid the whole cone about the vertical axis and the half
    cone about the negative real axis with margin, with a > 1."""
    alpha = antipodal_gap_alpha(arcs, tol_rad=tol_rad)
    if alpha is None:
        return None
    theta = math.pi - alpha  # sends e^{i alpha} to -1
    rotated = arcs.rotate(theta)
    gap = min(rotated.distance(math.pi),
              rotated.distance(math.pi / 2),
              rotated.distance(3 * math.pi / 2))
    phi = min(gap - tol_rad, math.pi / 4 - 1e-6)
    if phi <= 0:
        return None
    a = 1.0 / math.tan(phi)
    if a <= 1.0:
        return None
    rho_hint = 0.0
    if samples is not None:
        mods = np.abs(samples.w)
        rho_hint = float(np.quantile(mods[np.isfinite(mods)], 0.5))
    return {"theta": theta, "a": a, "rho_hint": rho_hint}


def i_alpha_arcs(alpha: float) -> ArcSet:
    """The three-arc circle subset left after cone normalization."""
    if not (0.0 < alpha < math.pi / 4):
        raise ValueError("alpha must lie in (0, pi/4)")
    return ArcSet.from_intervals([
        (-math.pi / 2 + alpha, math.pi / 2 - alpha),
        (math.pi / 2 + alpha, math.pi - alpha),
        (math.pi + alpha, 3 * math.pi / 2 - alpha),
    ])


def i_alpha_fit(arcs: ArcSet, tol_rad: float = 1e-2,
                grid: int = 200) -> float | None:
    """Largest alpha in (0, pi/4) with arcs contained in the three-arc set,
    or None when no alpha on the grid works."""
    best = None
    for k in range(1, grid):
        alpha = (math.pi / 4) * k / grid
        # alpha at or below the tolerance would admit sets touching the
        # excluded directions; demand a genuine margin
        if alpha <= tol_rad:
            continue
        if arcs.subset_of(i_alpha_arcs(alpha), tol=tol_rad):
            best = alpha
    return best


@dataclass(frozen=True)
class Cone:
    """Whole or half cone with vertex at the origin."""

    axis: complex
    half_aperture: float
    kind: str = "whole"  # "whole" | "half"

    def __post_init__(self):
        if self.kind not in ("whole", "half"):
            raise ValueError("kind must be 'whole' or 'half'")
        if not (0.0 < self.half_aperture < math.pi / 2):
            raise ValueError("half aperture must lie in (0, pi/2)")

    def contains(self, w: complex, tol: float = 0.0) -> bool:
        if w == 0:
            return True
        alpha = math.atan2(self.axis.imag, self.axis.real)
        ang = math.atan2(w.imag, w.real)
        d = circle_distance(ang, alpha)
        if self.kind == "half":
            return d <= self.half_aperture + tol
        return min(d, circle_distance(ang, alpha + math.pi)) <= self.half_aperture + tol


@dataclass
class PhiProfile:
    """Upper envelope of v over u-slabs of the sampled range, clipped at 0."""

    edges: np.ndarray
    values: np.ndarray
    occupied: np.ndarray
    radius: float

    def to_dict(self) -> dict:
        return {
            "edges": [float(x) for x in self.edges],
            "values": [float(x) for x in self.values],
            "occupied": [bool(b) for b in self.occupied],
            "radius": self.radius,
        }


def phi_profile(samples: RangeSample, bins: int = 200) -> PhiProfile:
    u = samples.w.real
    v = samples.w.imag
    lo, hi = float(u.min()), float(u.max())
    if hi <= lo:
        hi = lo + 1.0
    edges = np.linspace(lo, hi, bins + 1)
    idx = np.minimum(((u - lo) / (hi - lo) * bins).astype(int), bins - 1)
    values = np.full(bins, -np.inf)
    np.maximum.at(values, idx, v)
    occupied = np.isfinite(values)
    values = np.where(occupied, np.maximum(values, 0.0), 0.0)
    return PhiProfile(edges=edges, values=values, occupied=occupied,
                      radius=samples.radius)


def phi_sublinearity_check(profile: PhiProfile, n_dyadic: int = 7,
                           final_factor: float = 0.1) -> dict:
    """Does the tail ratio max_{|u| >= u0} phi(u)/|u| vanish as u0 grows?

    The profile must span at least two decades of |u|.
    """
    centers = 0.5 * (profile.edges[:-1] + profile.edges[1:])
    mask = profile.occupied & (np.abs(centers) > 0)
    if not np.any(mask):
        return {"holds": False, "error": "insufficient-span", "ratios": []}
    absu = np.abs(centers[mask])
    phi = profile.values[mask]
    umax = float(absu.max())
    if umax / max(float(absu.min()), 1e-300) < 100.0:
        return {"holds": False, "error": "insufficient-span", "ratios": []}
    # stop the schedule at umax/2: the tail at umax itself holds a single
    # bin and says nothing about the limit
    u0s = [umax / 2 ** k for k in range(n_dyadic, 0, -1)]
    ratios = []
    for u0 in u0s:
        tail = absu >= u0
        if not np.any(tail):
            ratios.append(0.0)
            continue
        ratios.append(float(np.max(phi[tail] / absu[tail])))
    nonincreasing = all(b <= a * (1.0 + 1e-9) + 1e-12
                        for a, b in zip(ratios, ratios[1:]))
    if ratios[0] <= 1e-12:
        holds = all(r <= 1e-12 for r in ratios)
    else:
        holds = nonincreasing and ratios[-1] <= final_factor * ratios[0]
    return {"holds": holds, "ratios": ratios, "u0_schedule": u0s}
