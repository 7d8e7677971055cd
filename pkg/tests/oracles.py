"""Independent quadrature oracles for the tests.

Deliberately disjoint from hardylab.quadrature: fixed composite
Gauss-Legendre grids (numpy's leggauss) with geometric panel grading. Frozen
expected values in the tests were computed with these routines.
"""

from __future__ import annotations

import numpy as np


def composite_gauss(f, a: float, b: float, panels: int = 64,
                    nodes: int = 20) -> float:
    """Composite Gauss-Legendre on a uniform panel mesh."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return float(np.sum(wts * f(pts)))


def graded_gauss(f, a: float, b: float, toward: str = "left",
                 levels: int = 60, nodes: int = 20) -> float:
    """Composite Gauss-Legendre on a mesh graded geometrically toward one
    endpoint (for integrable endpoint singularities)."""
    t = (b - a) * 0.5 ** np.arange(1, levels + 1)
    if toward == "left":
        edges = np.concatenate([[a], a + t[::-1], [b]])
    else:
        edges = np.concatenate([[a], b - t, [b]])
    edges = np.unique(edges)
    x, w = np.polynomial.legendre.leggauss(nodes)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return float(np.sum(wts * f(pts)))


def decades_gauss(f, a: float, b: float, per_decade: int = 8,
                  nodes: int = 24) -> float:
    """Composite Gauss-Legendre on log-spaced panels (multi-decade spans)."""
    assert a > 0 and b > a
    n_dec = int(np.ceil(np.log10(b / a)))
    edges = np.geomspace(a, b, per_decade * n_dec + 1)
    x, w = np.polynomial.legendre.leggauss(nodes)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return float(np.sum(wts * f(pts)))


def segment_identity_oracle(p: float, f: complex, g: complex,
                            n: int = 400_000) -> tuple[float, float]:
    """Brute-force midpoint evaluation of the two identity s-integrals,
    straight from their definitions (no parabola rewriting)."""
    s = (np.arange(n) + 0.5) / n
    h = s * g + (1.0 - s) * f
    habs = np.abs(h)
    re = np.real((f - g) * np.conj(h))
    im = np.imag(f * np.conj(g))
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        core = np.where(habs > 0, habs ** (p - 4.0), 0.0)
    w_term = p * (p - 1.0) * np.mean(s * core * re ** 2)
    wt_term = p * np.mean(s * core * im ** 2)
    return float(w_term), float(wt_term)
