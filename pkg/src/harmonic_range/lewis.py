"""Lewis discs and the rescaling construction.

A Lewis disc for a harmonic function u is a disc D(z, r) with u(z) = 0
whose oscillation is controlled in two ways: the maximum of |u| on the
disc boundary is comparable to the maximum of u on the 3/4 circle
(doubling), and the growth of u from the origin is captured on the disc
(growth).  Rescaling u and its partner v by the disc produces harmonic
functions on the unit disc with normalized oscillation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circles import circle_max
from .expressions import HarmonicComponent, HarmonicMap
from .reports import TheoremVerdict

__all__ = [
    "Rect",
    "LewisDisc",
    "RescaledMap",
    "NoSignChangeError",
    "ConstantComponentError",
    "find_zero",
    "lewis_disc_search",
    "rescaled_sequence",
    "rescaled_range_check",
]


class NoSignChangeError(ValueError):
    """u has no sign change on the search grid."""


class ConstantComponentError(ValueError):
    """The component is (numerically) constant."""


@dataclass(frozen=True)
class Rect:
    x0: float
    x1: float
    y0: float
    y1: float

    def grid(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        xs = np.linspace(self.x0, self.x1, n)
        ys = np.linspace(self.y0, self.y1, n)
        return xs, ys

    def contains(self, z: complex) -> bool:
        return self.x0 <= z.real <= self.x1 and self.y0 <= z.imag <= self.y1


def _newton_to_zero(u: HarmonicComponent, z: complex, target: float,
                    max_iter: int = 60) -> complex:
    """Steepest-descent Newton steps onto the zero level set of u."""
    for _ in range(max_iter):
        val = float(u.value(z))
        if abs(val) <= target:
            return z
        g = u.gradient(z)
        g2 = g.real * g.real + g.imag * g.imag
        if g2 < 1e-300:
            break
        z = z - val * g / g2
    return z


def find_zero(u: HarmonicComponent, search_box: Rect, grid_n: int = 64) -> complex:
    """A point where u vanishes, via grid sign change + bisection + Newton."""
    xs, ys = search_box.grid(grid_n)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    Z = X + 1j * Y
    V = np.asarray(u.value(Z), dtype=float)
    scale = float(V.max() - V.min())
    if scale <= 0.0:
        raise NoSignChangeError("u is constant on the search grid")
    target = 1e-12 * scale
    sx = np.sign(V)
    # horizontal then vertical edges with a sign change
    edge = None
    flips = np.nonzero(sx[:-1, :] * sx[1:, :] < 0)
    if flips[0].size:
        i, j = int(flips[0][0]), int(flips[1][0])
        edge = (complex(Z[i, j]), complex(Z[i + 1, j]))
    else:
        flips = np.nonzero(sx[:, :-1] * sx[:, 1:] < 0)
        if flips[0].size:
            i, j = int(flips[0][0]), int(flips[1][0])
            edge = (complex(Z[i, j]), complex(Z[i, j + 1]))
    if edge is None:
        zeros = np.nonzero(V == 0.0)
        if zeros[0].size:
            return complex(Z[int(zeros[0][0]), int(zeros[1][0])])
        raise NoSignChangeError("u attains only one sign on the search grid")
    a, b = edge
    fa = float(u.value(a))
    for _ in range(80):
        m = 0.5 * (a + b)
        fm = float(u.value(m))
        if fm == 0.0:
            a = b = m
            break
        if (fa > 0) == (fm > 0):
            a, fa = m, fm
        else:
            b = m
    z = 0.5 * (a + b)
    zn = _newton_to_zero(u, z, target)
    if abs(float(u.value(zn))) <= abs(float(u.value(z))):
        return zn
    return z  # Newton stagnated; keep the bisection point


@dataclass
class LewisDisc:
    center: complex
    radius: float
    M: float                  # M(|u|, center, radius)
    growth_ratio: float       # M(u, 0, R/2) / M(u, center, radius)
    doubling_ratio: float     # M(|u|, center, radius) / M(u, center, 3r/4)
    domain_radius: float
    budget_met: bool = True

    @property
    def empirical_C0(self) -> float:
        return max(self.growth_ratio, self.doubling_ratio)

    def to_dict(self) -> dict:
        return {
            "center": [self.center.real, self.center.imag],
            "radius": self.radius,
            "M": self.M,
            "growth_ratio": self.growth_ratio,
            "doubling_ratio": self.doubling_ratio,
            "empirical_C0": self.empirical_C0,
            "domain_radius": self.domain_radius,
            "budget_met": self.budget_met,
        }


def _candidate_centers(u: HarmonicComponent, R: float,
                       per_component: int = 64) -> list[complex]:
    from . import zeros as zeros_mod  # deferred: zeros imports find_zero from here

    half = R / math.sqrt(2.0)
    box = Rect(-half, half, -half, half)
    curves = zeros_mod.trace_zero_set(u, box, step=R / 100.0, grid_n=48)
    centers: list[complex] = []
    for curve in curves:
        pts = curve.points
        if len(pts) <= per_component:
            centers.extend(pts)
        else:
            idx = np.linspace(0, len(pts) - 1, per_component).astype(int)
            centers.extend(pts[k] for k in idx)
    if not centers:
        centers = [find_zero(u, box)]
    return centers


def lewis_disc_search(u: HarmonicComponent, R: float,
                      C0_budget: float = 100.0,
                      per_component: int = 64,
                      n_search: int = 1024) -> LewisDisc:
    """Search discs centered on the zero set with dyadic radii; return the
    one minimizing max(doubling_ratio, growth_ratio)."""
    if R <= 0:
        raise ValueError("R must be positive")
    M_half = circle_max(u, 0.0, R / 2.0).value
    osc = circle_max(u, 0.0, R / 2.0, absolute=True).value
    if osc <= 1e-14:
        raise ConstantComponentError("u is constant at this scale")

    centers = _candidate_centers(u, R, per_component)
    theta = np.arange(n_search) * (2.0 * math.pi / n_search)
    ring = np.exp(1j * theta)

    best = None  # (score, radius, center_key, center, r, ratios, M)
    for z in centers:
        zval = abs(float(u.value(z)))
        max_r = R - abs(z)
        for j in range(1, 21):
            r = R * 2.0 ** (-j)
            if r > max_r:
                continue
            circ = z + r * ring
            vals = np.asarray(u.value(circ), dtype=float)
            M_abs = float(np.max(np.abs(vals)))
            if M_abs <= 0 or zval > 1e-9 * M_abs:
                continue
            vals34 = np.asarray(u.value(z + 0.75 * r * ring), dtype=float)
            M_u = float(np.max(vals))
            M_34 = float(np.max(vals34))
            if M_34 <= 0 or M_u <= 0:
                continue
            doubling = M_abs / M_34
            growth = M_half / M_u
            score = max(doubling, growth)
            key = (score, r, (z.real, z.imag))
            if best is None or key < best[0]:
                best = (key, z, r)
    if best is None:
        raise NoSignChangeError("no admissible disc found on the zero set")
    _, z, r = best
    # refine the winner with the precise circle maximum
    M_abs = circle_max(u, z, r, absolute=True).value
    M_34 = circle_max(u, z, 0.75 * r).value
    M_u = circle_max(u, z, r).value
    doubling = M_abs / M_34
    growth = M_half / M_u
    return LewisDisc(center=z, radius=r, M=M_abs,
                     growth_ratio=growth, doubling_ratio=doubling,
                     domain_radius=R,
                     budget_met=max(doubling, growth) <= C0_budget)


@dataclass
class RescaledMap:
    """Unit-disc harmonic pair built from a Lewis disc of the source map."""

    source: HarmonicMap
    disc: LewisDisc

    def U(self, z):
        w = self.disc.center + self.disc.radius * np.asarray(z, dtype=complex)
        return self.source.u.value(w) / self.disc.M

    def V(self, z):
        w = self.disc.center + self.disc.radius * np.asarray(z, dtype=complex)
        return self.source.v.value(w) / self.disc.M

    def value(self, z):
        return self.U(z) + 1j * self.V(z)

    def certify(self, grid_n: int = 101, eps: float = 1e-3) -> dict:
        """Check the three rescaling certificates on a grid."""
        xs = np.linspace(-1.0 + eps, 1.0 - eps, grid_n)
        X, Y = np.meshgrid(xs, xs, indexing="ij")
        Z = X + 1j * Y
        mask = np.abs(Z) <= 1.0 - eps
        Uv = np.asarray(self.U(Z), dtype=float)
        u0 = abs(float(np.asarray(self.U(np.array(0.0j))).ravel()[0]))
        sup_abs = float(np.max(np.abs(Uv[mask])))
        m34 = circle_max(self.source.u, self.disc.center,
                         0.75 * self.disc.radius).value / self.disc.M
        C0 = self.disc.empirical_C0
        return {
            "center_zero": u0,
            "center_zero_ok": u0 <= 1e-9,
            "sup_abs": sup_abs,
            "sup_abs_ok": sup_abs <= 1.0 + 1e-6,
            "M_three_quarters": m34,
            "lower_bound_ok": m34 >= 1.0 / C0 - 1e-12,
            "empirical_C0": C0,
        }

    def to_dict(self) -> dict:
        return {"disc": self.disc.to_dict(), "certificates": self.certify()}


def rescaled_sequence(f: HarmonicMap, R_schedule,
                      C0_budget: float = 100.0,
                      diag_rho: float | None = None) -> list[RescaledMap]:
    """One rescaled map per domain radius; M_n is nondecreasing along an
    increasing schedule for nonconstant u."""
    R_schedule = list(R_schedule)
    if any(b <= a for a, b in zip(R_schedule, R_schedule[1:])):
        raise ValueError("R_schedule must be increasing")
    out = []
    for R in R_schedule:
        disc = lewis_disc_search(f.u, R, C0_budget=C0_budget)
        out.append(RescaledMap(source=f, disc=disc))
    if diag_rho is None:
        diag_rho = R_schedule[0]
    for rm in out:
        rm.L_diagnostic = circle_max(f.v, 0.0, diag_rho,
                                     absolute=True).value / rm.disc.M
    return out


def rescaled_range_check(rm: RescaledMap, D_f, grid_n: int = 101,
                         angle_tol: float = math.radians(5.0),
                         zero_tol: float = 1e-2) -> TheoremVerdict:
    """Directions of the rescaled range must lie in the cone over D_f, and
    the zero-set inclusions {U=0} within {V=0} within {U>=0} must hold."""
    eps = 1e-3
    xs = np.linspace(-1.0 + eps, 1.0 - eps, grid_n)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    Z = (X + 1j * Y).ravel()
    Z = Z[np.abs(Z) <= 1.0 - eps]
    Uv = np.asarray(rm.U(Z), dtype=float)
    Vv = np.asarray(rm.V(Z), dtype=float)
    W = Uv + 1j * Vv
    mods = np.abs(W)
    top = float(mods.max()) if mods.size else 0.0
    witnesses = []

    nz = mods > zero_tol * max(top, 1e-300)
    angs = np.angle(W[nz])
    for z0, ang, w in zip(Z[nz], angs, W[nz]):
        if D_f.distance(ang) > angle_tol:
            witnesses.append({"z": [z0.real, z0.imag],
                              "w": [w.real, w.imag],
                              "kind": "direction"})
            if len(witnesses) >= 16:
                break

    tU = zero_tol * max(float(np.max(np.abs(Uv))), 1e-300)
    tV = zero_tol * max(float(np.max(np.abs(Vv))), 1e-300)
    zU = np.abs(Uv) <= tU
    zV = np.abs(Vv) <= tV
    incl1 = zU & ~zV          # {U=0} not within {V=0}
    incl2 = zV & (Uv < -tU)   # {V=0} not within {U>=0}
    for bad, kind in ((incl1, "zeroU-not-zeroV"), (incl2, "zeroV-not-Upos")):
        idx = np.nonzero(bad)[0][:8]
        for k in idx:
            witnesses.append({"z": [Z[k].real, Z[k].imag],
                              "w": [W[k].real, W[k].imag], "kind": kind})

    holds = not witnesses
    return TheoremVerdict(
        theorem="rescaled_range",
        hypothesis_holds=True,
        hypothesis_witnesses=[],
        conclusion_holds=holds,
        conclusion_witnesses=witnesses,
        params={"angle_tol": angle_tol, "zero_tol": zero_tol,
                "disc": rm.disc.to_dict()},
        sampling={"grid_n": grid_n, "eps": eps},
    )
