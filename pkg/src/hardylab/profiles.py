"""Piecewise-smooth scalar profiles of one radial variable.

A Profile bundles a vectorized value function, its derivative, and compact
support metadata. Products (maximizer times cut-off) keep analytic
derivatives via the product rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["Profile", "smooth_bump", "random_profile", "power_profile"]


@dataclass(frozen=True)
class Profile:
    value: Callable
    derivative: Callable
    support: tuple[float, float]
    compactly_supported: bool = True
    knots: tuple[float, ...] = ()   # junctions of piecewise definitions

    def __call__(self, r):
        return self.value(r)

    def __mul__(self, other: "Profile") -> "Profile":
        lo = max(self.support[0], other.support[0])
        hi = min(self.support[1], other.support[1])
        if not lo < hi:
            raise ValueError("profile supports do not overlap")
        f, fp = self.value, self.derivative
        g, gp = other.value, other.derivative

        def value(r):
            return f(r) * g(r)

        def derivative(r):
            return fp(r) * g(r) + f(r) * gp(r)

        return Profile(
            value, derivative, (lo, hi),
            self.compactly_supported or other.compactly_supported,
            tuple(sorted(set(self.knots) | set(other.knots))),
        )

    def scaled(self, c: float) -> "Profile":
        f, fp = self.value, self.derivative
        return Profile(lambda r: c * f(r), lambda r: c * fp(r),
                       self.support, self.compactly_supported, self.knots)

    def check_derivative(self, tol: float = 1e-5, n: int = 200,
                         margin: float = 1e-3) -> float:
        """Max relative mismatch between stored derivative and central FD."""
        lo, hi = self.support
        pad = margin * (hi - lo)
        r = np.linspace(lo + pad, hi - pad, n)
        h = 1e-6 * (hi - lo)
        fd = (self.value(r + h) - self.value(r - h)) / (2 * h)
        scale = np.max(np.abs(self.derivative(r))) + 1e-300
        err = float(np.max(np.abs(fd - self.derivative(r))) / scale)
        if err > tol:
            raise ValueError(f"derivative inconsistent with value: rel FD error {err:.3e}")
        return err


def smooth_bump(center: float, halfwidth: float, amplitude: float = 1.0) -> Profile:
    """C-infinity bump a*exp(1 - 1/(1-t^2)), t=(r-center)/halfwidth."""
    c, w, a = float(center), float(halfwidth), float(amplitude)

    def value(r):
        r = np.asarray(r, dtype=float)
        t = (np.atleast_1d(r) - c) / w
        inside = np.abs(t) < 1.0
        out = np.zeros_like(t)
        ts = np.where(inside, t, 0.0)
        out[inside] = a * np.exp(1.0 - 1.0 / (1.0 - ts**2))[inside]
        return out[0] if r.ndim == 0 else out

    def derivative(r):
        r = np.asarray(r, dtype=float)
        t = (np.atleast_1d(r) - c) / w
        inside = np.abs(t) < 1.0
        out = np.zeros_like(t)
        ts = np.where(inside, t, 0.0)
        core = np.exp(1.0 - 1.0 / (1.0 - ts**2)) * (-2.0 * ts / (1.0 - ts**2) ** 2)
        out[inside] = (a / w) * core[inside]
        return out[0] if r.ndim == 0 else out

    return Profile(value, derivative, (c - w, c + w))


def _sum_profiles(parts: list[Profile]) -> Profile:
    lo = min(p.support[0] for p in parts)
    hi = max(p.support[1] for p in parts)

    def value(r):
        return sum(p.value(r) for p in parts)

    def derivative(r):
        return sum(p.derivative(r) for p in parts)

    return Profile(value, derivative, (lo, hi))


def random_profile(rng: np.random.Generator, interval: tuple[float, float],
                   max_bumps: int = 4) -> Profile:
    """Random admissible test profile: a sum of smooth bumps supported
    strictly inside the open interval (improper ends are truncated)."""
    rbar, rmax = interval
    lo = max(rbar, 1e-6)
    hi = rmax if np.isfinite(rmax) else 30.0
    # keep clear of both endpoints
    span = hi - lo
    left = lo + 0.05 * span
    right = hi - 0.05 * span
    n = int(rng.integers(1, max_bumps + 1))
    parts = []
    for i in range(n):
        c = rng.uniform(left, right)
        wmax = min(c - lo, hi - c)
        w = rng.uniform(0.2, 0.95) * wmax
        amp = rng.uniform(0.2, 1.0)
        if i > 0 and rng.random() < 0.4:
            amp = -amp
        parts.append(smooth_bump(c, w, amp))
    return _sum_profiles(parts)


def power_profile(exponent: float, support: tuple[float, float],
                  scale: float = 1.0) -> Profile:
    """r -> scale * r^exponent with analytic derivative (not compactly supported)."""
    g, s = float(exponent), float(scale)
    return Profile(
        lambda r: s * np.asarray(r, dtype=float) ** g,
        lambda r: s * g * np.asarray(r, dtype=float) ** (g - 1.0),
        support,
        compactly_supported=False,
    )
