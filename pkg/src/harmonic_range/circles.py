"""Circle-based functionals on harmonic functions.

The central quantity is M(u, z, r): the maximum of u over the circle
|w - z| = r.  Sampling is dense and deterministic, followed by
golden-section refinement of the best brackets, so results are
reproducible bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .expressions import HarmonicComponent

__all__ = [
    "CircleMax",
    "FourierProfile",
    "PositivityError",
    "CenterNotZeroError",
    "DegenerateZeroError",
    "circle_max",
    "circle_values",
    "fourier_profile",
    "harnack_bound_check",
    "lemma_abs_check",
    "multiplicity",
]

DEFAULT_SAMPLES = 4096
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class PositivityError(ValueError):
    """u fails to be positive on the disc; carries a witness point."""

    def __init__(self, witness: complex, value: float):
        super().__init__(f"u({witness}) = {value} <= 0 violates positivity")
        self.witness = witness
        self.value = value


class CenterNotZeroError(ValueError):
    pass


class DegenerateZeroError(ValueError):
    """u appears to vanish identically on the disc."""


@dataclass(frozen=True)
class CircleMax:
    center: complex
    radius: float
    value: float
    argmax_angle: float
    samples_used: int

    def to_dict(self) -> dict:
        return {
            "center": [self.center.real, self.center.imag],
            "radius": self.radius,
            "value": self.value,
            "argmax_angle": self.argmax_angle,
            "samples_used": self.samples_used,
        }


def circle_values(u: HarmonicComponent, center: complex, radius: float,
                  n: int = DEFAULT_SAMPLES) -> np.ndarray:
    theta = np.arange(n) * (2.0 * math.pi / n)
    z = center + radius * np.exp(1j * theta)
    return np.asarray(u.value(z), dtype=float)


def _golden_max(g, lo: float, hi: float, iters: int = 60) -> tuple[float, float]:
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = g(c), g(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = g(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = g(d)
    theta = 0.5 * (a + b)
    return theta, g(theta)


def circle_max(u: HarmonicComponent, z: complex, r: float,
               absolute: bool = False, n: int = DEFAULT_SAMPLES,
               refine: int = 3) -> CircleMax:
    """M(u, z, r) (or M(|u|, z, r) with absolute=True)."""
    if r <= 0:
        raise ValueError("radius must be positive")
    vals = circle_values(u, z, r, n)
    if absolute:
        vals = np.abs(vals)
    # local maxima on the cyclic grid
    left = np.roll(vals, 1)
    right = np.roll(vals, -1)
    is_peak = (vals >= left) & (vals >= right)
    peaks = np.nonzero(is_peak)[0]
    if peaks.size == 0:
        peaks = np.array([int(np.argmax(vals))])
    order = np.lexsort((peaks, -vals[peaks]))  # by value desc, then smaller angle
    top = peaks[order][:refine]
    step = 2.0 * math.pi / n

    def g(theta: float) -> float:
        w = float(u.value(z + r * complex(math.cos(theta), math.sin(theta))))
        return abs(w) if absolute else w

    best_val = -math.inf
    best_theta = 0.0
    for k in top:
        theta, val = _golden_max(g, (k - 1) * step, (k + 1) * step)
        if val > best_val or (val == best_val and theta < best_theta):
            best_val = val
            best_theta = theta
    # never do worse than the raw grid
    k0 = int(np.argmax(vals))
    if vals[k0] > best_val:
        best_val = float(vals[k0])
        best_theta = k0 * step
    return CircleMax(center=z, radius=r, value=best_val,
                     argmax_angle=best_theta % (2.0 * math.pi),
                     samples_used=n)


@dataclass(frozen=True)
class FourierProfile:
    """Coefficients c_k of u(center + r e^{i t}) = sum_k Re(c_k e^{i k t})."""

    center: complex
    radius: float
    coefficients: tuple[complex, ...]

    def reconstruct(self, theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        out = np.full(theta.shape, self.coefficients[0].real, dtype=float)
        for k, c in enumerate(self.coefficients[1:], start=1):
            out += (c * np.exp(1j * k * theta)).real
        return out


def fourier_profile(u: HarmonicComponent, center: complex, radius: float,
                    n_terms: int = 64, n: int = 1024) -> FourierProfile:
    """Trapezoidal-rule Fourier coefficients (spectrally accurate here)."""
    vals = circle_values(u, center, radius, n)
    fft = np.fft.fft(vals)
    coeffs = [complex(fft[0].real / n, 0.0)]
    for k in range(1, n_terms + 1):
        coeffs.append(complex(2.0 * fft[k] / n))
    return FourierProfile(center=center, radius=radius, coefficients=tuple(coeffs))


def _check_positive(u: HarmonicComponent, z0: complex, r: float,
                    n_circles: int = 24, n_angles: int = 256):
    for j in range(n_circles + 1):
        rho = r * j / n_circles
        if rho == 0.0:
            val = float(u.value(z0))
            if val <= 0.0:
                raise PositivityError(z0, val)
            continue
        theta = np.arange(n_angles) * (2.0 * math.pi / n_angles)
        z = z0 + rho * np.exp(1j * theta)
        vals = np.asarray(u.value(z), dtype=float)
        k = int(np.argmin(vals))
        if vals[k] <= 0.0:
            raise PositivityError(complex(z[k]), float(vals[k]))


def harnack_bound_check(u: HarmonicComponent, z0: complex, r: float,
                        s: float) -> dict:
    """Harnack inequality M(u,z0,s) <= ((r+s)/(r-s)) u(z0) for positive u.

    With s = 2r/3 the right-hand factor is exactly 5.
    """
    if not (0.0 < s < r):
        raise ValueError("need 0 < s < r")
    _check_positive(u, z0, r)
    lhs = circle_max(u, z0, s).value
    rhs = (r + s) / (r - s) * float(u.value(z0))
    return {"lhs": lhs, "rhs": rhs, "holds": lhs <= rhs * (1.0 + 1e-9)}


def lemma_abs_check(u: HarmonicComponent, z0: complex, r: float) -> dict:
    """M(|u|, z0, 2r/3) <= 4 M(u, z0, r) for u vanishing at the center."""
    scale = circle_max(u, z0, r, absolute=True).value
    if abs(float(u.value(z0))) > 1e-9 * (1.0 + scale):
        raise CenterNotZeroError(f"u({z0}) = {float(u.value(z0))} is not zero")
    lhs = circle_max(u, z0, 2.0 * r / 3.0, absolute=True).value
    rhs = 4.0 * circle_max(u, z0, r).value
    return {"lhs": lhs, "rhs": rhs, "holds": lhs <= rhs * (1.0 + 1e-9)}


def multiplicity(u: HarmonicComponent, z0: complex, r: float,
                 tol: float = 1e-8, max_shrink: int = 8) -> int:
    """Order of the zero of u at z0: index of the first dominant harmonic.

    The radius is halved until the answer agrees on two consecutive radii.
    """
    scale = circle_max(u, z0, r, absolute=True).value
    if abs(float(u.value(z0))) > tol * (1.0 + scale):
        raise CenterNotZeroError(f"u({z0}) is not zero at tolerance {tol}")

    def first_index(rho: float) -> int | None:
        prof = fourier_profile(u, z0, rho)
        mags = np.array([abs(c) for c in prof.coefficients])
        mags[0] = 0.0
        top = mags.max()
        if top <= 1e-300:
            return None
        idx = np.nonzero(mags > tol * top)[0]
        return int(idx[0]) if idx.size else None

    prev = None
    rho = r
    for _ in range(max_shrink + 1):
        k = first_index(rho)
        if k is None:
            raise DegenerateZeroError("no dominant harmonic; u may vanish on the disc")
        if prev is not None and k == prev:
            return k
        prev = k
        rho *= 0.5
    raise DegenerateZeroError("multiplicity did not stabilize across radii")
