"""Finite unions of closed arcs on the unit circle.

Angles are radians mod 2*pi.  An ArcSet is stored as a sorted list of
disjoint closed intervals [lo, hi] with 0 <= lo < 2*pi and lo <= hi; an
arc crossing angle 0 is split internally, and merging treats 0 and 2*pi
as the same point.  Point arcs (lo == hi) are allowed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi

__all__ = ["ArcSet", "TWO_PI", "circle_distance"]


def _mod(theta: float) -> float:
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    # fmod can return exactly TWO_PI after the correction for tiny negatives
    if t >= TWO_PI:
        t -= TWO_PI
    return t


def circle_distance(a: float, b: float) -> float:
    """Geodesic distance between two angles on the circle."""
    d = abs(_mod(a) - _mod(b))
    return min(d, TWO_PI - d)


def _normalize(intervals: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Split wrap-around arcs, sort, and merge overlapping/touching arcs."""
    pieces: list[tuple[float, float]] = []
    for lo, hi in intervals:
        if hi - lo >= TWO_PI - 1e-15:
            return [(0.0, TWO_PI)]
        lo_m = _mod(lo)
        span = hi - lo
        if span < 0:
            raise ValueError("arc with hi < lo")
        hi_m = lo_m + span
        if hi_m <= TWO_PI:
            pieces.append((lo_m, hi_m))
        else:
            pieces.append((lo_m, TWO_PI))
            pieces.append((0.0, hi_m - TWO_PI))
    if not pieces:
        return []
    pieces.sort()
    merged = [pieces[0]]
    for lo, hi in pieces[1:]:
        mlo, mhi = merged[-1]
        if lo <= mhi:
            merged[-1] = (mlo, max(mhi, hi))
        else:
            merged.append((lo, hi))
    # merge across the 0 == 2*pi seam
    if len(merged) > 1 and merged[0][0] == 0.0 and merged[-1][1] >= TWO_PI:
        lo, hi = merged.pop()
        first_lo, first_hi = merged[0]
        merged[0] = (lo, TWO_PI + first_hi)
        # keep representative lo in [0, 2*pi)
        if merged[0][1] - merged[0][0] >= TWO_PI:
            merged = [(0.0, TWO_PI)]
        merged.sort()
    return merged


@dataclass(frozen=True)
class ArcSet:
    """Union of closed arcs; immutable after construction."""

    arcs: tuple[tuple[float, float], ...]

    # ---- constructors ----

    @staticmethod
    def from_intervals(intervals) -> "ArcSet":
        return ArcSet(tuple(_normalize([(float(a), float(b)) for a, b in intervals])))

    @staticmethod
    def from_points(points) -> "ArcSet":
        return ArcSet.from_intervals([(p, p) for p in points])

    @staticmethod
    def empty() -> "ArcSet":
        return ArcSet(())

    @staticmethod
    def full() -> "ArcSet":
        return ArcSet(((0.0, TWO_PI),))

    # ---- predicates ----

    @property
    def is_empty(self) -> bool:
        return not self.arcs

    @property
    def is_full(self) -> bool:
        return bool(self.arcs) and self.measure() >= TWO_PI - 1e-12

    def measure(self) -> float:
        return sum(hi - lo for lo, hi in self.arcs)

    def contains(self, theta: float, tol: float = 0.0) -> bool:
        return self.distance(theta) <= tol

    def distance(self, theta: float) -> float:
        """Geodesic distance from an angle to the set (0 if inside)."""
        if not self.arcs:
            return math.pi
        t = _mod(theta)
        best = math.inf
        for lo, hi in self.arcs:
            # the arc may extend past 2*pi when it crosses the seam
            for shift in (0.0, TWO_PI, -TWO_PI):
                ts = t + shift
                if lo <= ts <= hi:
                    return 0.0
                best = min(best, abs(ts - lo), abs(ts - hi))
        return min(best, TWO_PI - best) if best <= TWO_PI else best

    # ---- algebra ----

    def union(self, other: "ArcSet") -> "ArcSet":
        return ArcSet.from_intervals(list(self.arcs) + list(other.arcs))

    def intersect(self, other: "ArcSet") -> "ArcSet":
        out = []
        for alo, ahi in self._unrolled():
            for blo, bhi in other._unrolled():
                lo = max(alo, blo)
                hi = min(ahi, bhi)
                if lo <= hi:
                    out.append((lo, hi))
        return ArcSet.from_intervals(out)

    def complement(self) -> "ArcSet":
        """Closure of the complement (endpoints shared with this set)."""
        if not self.arcs:
            return ArcSet.full()
        if self.is_full:
            return ArcSet.empty()
        gaps = []
        arcs = list(self.arcs)
        for (lo1, hi1), (lo2, hi2) in zip(arcs, arcs[1:]):
            gaps.append((hi1, lo2))
        last_hi = arcs[-1][1]
        first_lo = arcs[0][0]
        span = math.fmod(first_lo - last_hi, TWO_PI)
        if span < 0:
            span += TWO_PI
        gaps.append((last_hi, last_hi + span))
        return ArcSet.from_intervals(gaps)

    def rotate(self, phi: float) -> "ArcSet":
        return ArcSet.from_intervals([(lo + phi, hi + phi) for lo, hi in self.arcs])

    def fatten(self, delta: float) -> "ArcSet":
        if delta < 0:
            raise ValueError("fatten requires delta >= 0")
        return ArcSet.from_intervals([(lo - delta, hi + delta) for lo, hi in self.arcs])

    def subset_of(self, other: "ArcSet", tol: float = 0.0) -> bool:
        """Every point of self within tol of other (checked at resolution tol/4)."""
        if self.is_empty:
            return True
        fat = other.fatten(tol) if tol > 0 else other
        step = max(tol / 4.0, 1e-4)
        for theta in self._sample_points(step):
            if not fat.contains(theta):
                return False
        return True

    # ---- metrics ----

    def hausdorff(self, other: "ArcSet") -> float:
        """Circle Hausdorff distance between two arc sets."""
        if self.is_empty and other.is_empty:
            return 0.0
        if self.is_empty or other.is_empty:
            return math.pi
        return max(self._directed_hausdorff(other), other._directed_hausdorff(self))

    def _directed_hausdorff(self, other: "ArcSet", step: float = 5e-4) -> float:
        worst = 0.0
        for theta in self._sample_points(step):
            worst = max(worst, other.distance(theta))
        return worst

    # ---- helpers ----

    def _unrolled(self) -> list[tuple[float, float]]:
        """Arcs plus copies shifted by +-2*pi, for interval intersection."""
        out = []
        for lo, hi in self.arcs:
            out.append((lo, hi))
            out.append((lo - TWO_PI, hi - TWO_PI))
            out.append((lo + TWO_PI, hi + TWO_PI))
        return out

    def _sample_points(self, step: float):
        for lo, hi in self.arcs:
            if hi == lo:
                yield lo
                continue
            n = max(2, int(math.ceil((hi - lo) / step)) + 1)
            for k in range(n):
                yield lo + (hi - lo) * k / (n - 1)

    def to_dict(self) -> dict:
        return {"arcs": [[lo, hi] for lo, hi in self.arcs]}

    @staticmethod
    def from_dict(d: dict) -> "ArcSet":
        return ArcSet.from_intervals(d["arcs"])
