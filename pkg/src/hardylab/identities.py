"""Exact verification of the algebraic identities behind the inequalities.

The scalar identity splits |f|^p + (p-1)|g|^p - p|g|^(p-2) Re(conj(g) f)
into two nonnegative s-integrals over the segment h(s) = s g + (1-s) f.
Everything here exploits the exact parabola

    |h(s)|^2 = A (s - s0)^2 + d^2,      A = |f - g|^2,

and the identity Re((f-g) conj(h(s))) = -A (s - s0), which removes the
spurious |h|^(p-4) singularity analytically: the integrands become powers of
q(s) = A (s-s0)^2 + d^2 and are integrated on per-pair geometrically graded
Gauss-Legendre panels, vectorized over large sample batches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import integrate_adaptive

__all__ = [
    "ComplexPair",
    "IdentityBreakdown",
    "scalar_identity_breakdown",
    "scalar_identity_batch",
    "vector_identity_breakdown",
    "vector_identity_batch",
    "realified_identity_oracle",
    "check_cp_lower_bound",
    "sample_complex_pairs",
    "rhs_closed_form",
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(12)
_N_PANELS = 42          # geometric panels per side of the near-zero point
_MIN_FEATURE = 1e-12
_CHUNK = 2048


@dataclass(frozen=True)
class ComplexPair:
    f: np.ndarray
    g: np.ndarray
    p: float

    def __post_init__(self) -> None:
        if self.p < 2:
            raise ValueError(f"p must be >= 2, got {self.p}")
        f = np.atleast_1d(np.asarray(self.f))
        g = np.atleast_1d(np.asarray(self.g))
        if f.shape != g.shape or f.ndim != 1 or f.size < 1:
            raise ValueError("f and g must be complex vectors of equal length >= 1")
        if not (np.all(np.isfinite(f.real)) and np.all(np.isfinite(f.imag))
                and np.all(np.isfinite(g.real)) and np.all(np.isfinite(g.imag))):
            raise ValueError("entries must be finite")


@dataclass(frozen=True)
class IdentityBreakdown:
    w_term: float
    wtilde_term: float
    rhs_closed: float
    residual: float

    def __post_init__(self) -> None:
        if self.w_term < 0 or self.wtilde_term < 0:
            raise ValueError("both split terms are integrals of squares and must be >= 0")


def rhs_closed_form(p: float, f: np.ndarray, g: np.ndarray,
                    vector: bool = False) -> np.ndarray:
    """|f|^p + (p-1)|g|^p - p |g|^(p-2) Re<g, f>.

    Elementwise over a batch of scalar pairs by default; with vector=True the
    inputs are batches of C^h pairs of shape (n, h) and the inner product
    contracts the last axis.

    For f near g the three terms cancel down to O(|f-g|^2) and the naive sum
    loses everything to roundoff; there the algebraically identical form
    (|f|^p - |g|^p) - p |g|^(p-2) Re<g, f-g>, with the power difference
    evaluated through expm1/log1p, keeps the absolute error at the scale of
    the result.
    """
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    if vector:
        af = np.linalg.norm(f, axis=-1)
        ag = np.linalg.norm(g, axis=-1)
        re_gf = np.real(np.sum(np.conj(g) * f, axis=-1))
        re_gd = np.real(np.sum(np.conj(g) * (f - g), axis=-1))
        d2 = np.sum(np.abs(f - g) ** 2, axis=-1)
    else:
        af = np.abs(f)
        ag = np.abs(g)
        re_gf = np.real(np.conj(g) * f)
        re_gd = np.real(np.conj(g) * (f - g))
        d2 = np.abs(f - g) ** 2
    direct = af ** p + (p - 1.0) * ag ** p + (-p) * ag ** (p - 2.0) * re_gf
    near = (d2 < 0.25 * ag ** 2) & (ag > 0.0)
    if not np.any(near):
        return direct
    ag_n = np.where(near, ag, 1.0)
    af_n = np.where(near, af, 1.0)
    # |f| - |g| without cancellation: (|f|^2 - |g|^2) / (|f| + |g|)
    diff_mag = (2.0 * re_gd + d2) / (af_n + ag_n)
    with np.errstate(invalid="ignore"):
        power_diff = ag_n ** p * np.expm1(p * np.log1p(diff_mag / ag_n))
    stable = power_diff - p * ag_n ** (p - 2.0) * re_gd
    return np.where(near, stable, direct)


def _graded_nodes(s0: np.ndarray, width: np.ndarray):
    """Per-element panel nodes and weights on [0,1], graded toward s0.

    Returns (nodes, weights) of shape (n, 2 * _N_PANELS * len(_GL_NODES));
    panels clipped to [0,1] collapse to zero weight.
    """
    n = s0.shape[0]
    j = np.arange(_N_PANELS + 1, dtype=float)
    offs = np.where(j == 0, 0.0, 2.0 ** (j - 1.0))
    offs = width[:, None] * offs[None, :]                      # (n, K+1)
    right = np.clip(s0[:, None] + offs, 0.0, 1.0)
    left = np.clip(s0[:, None] - offs, 0.0, 1.0)
    lo = np.concatenate([right[:, :-1], left[:, 1:]], axis=1)  # (n, 2K)
    hi = np.concatenate([right[:, 1:], left[:, :-1]], axis=1)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = mid[:, :, None] + half[:, :, None] * _GL_NODES[None, None, :]
    weights = np.abs(half)[:, :, None] * _GL_WEIGHTS[None, None, :]
    return nodes.reshape(n, -1), weights.reshape(n, -1)


def _segment_kernels(p: float, A: np.ndarray, s0: np.ndarray, d2: np.ndarray):
    """The three s-integrals shared by the scalar and vector identities:

    K1m4 = int_0^1 s q^((p-4)/2) ds
    K2m4 = int_0^1 s (s-s0)^2 q^((p-4)/2) ds
    K1m2 = int_0^1 s q^((p-2)/2) ds
    """
    n = A.shape[0]
    K1m4 = np.zeros(n)
    K2m4 = np.zeros(n)
    K1m2 = np.zeros(n)
    live_idx = np.flatnonzero(A > 0.0)
    for start in range(0, live_idx.size, _CHUNK):
        idx = live_idx[start:start + _CHUNK]
        a = A[idx]
        c = s0[idx]
        dd = d2[idx]
        width = np.clip(np.sqrt(np.maximum(dd, 0.0) / a), _MIN_FEATURE, 0.25)
        s, w = _graded_nodes(c, width)
        ds = s - c[:, None]
        q = np.maximum(a[:, None] * ds ** 2 + dd[:, None], 1e-300)
        qm4 = q ** ((p - 4.0) / 2.0)
        K1m4[idx] = np.einsum("ij,ij->i", w, s * qm4)
        K2m4[idx] = np.einsum("ij,ij->i", w, s * ds ** 2 * qm4)
        K1m2[idx] = np.einsum("ij,ij->i", w, s * qm4 * q)
    return K1m4, K2m4, K1m2


def scalar_identity_batch(p: float, f: np.ndarray, g: np.ndarray) -> dict:
    """Scalar identity split for a batch of complex pairs (vectorized)."""
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    f = np.atleast_1d(np.asarray(f, dtype=complex))
    g = np.atleast_1d(np.asarray(g, dtype=complex))
    diff = f - g
    A = np.abs(diff) ** 2
    A_safe = np.where(A > 0, A, 1.0)
    # h(s) = f + s (g - f); minimum of |h|^2 at s0, value d^2
    s0 = np.real(np.conj(f) * diff) / A_safe
    h_at = f + s0 * (g - f)
    d2 = np.abs(h_at) ** 2
    im = np.imag(f * np.conj(g))
    K1m4, K2m4, _ = _segment_kernels(p, A, s0, d2)
    w_term = p * (p - 1.0) * A ** 2 * K2m4
    wtilde_term = p * im ** 2 * K1m4
    rhs = rhs_closed_form(p, f, g)
    residual = np.abs(w_term + wtilde_term - rhs)
    return {"w_term": w_term, "wtilde_term": wtilde_term,
            "rhs_closed": rhs, "residual": residual}


def scalar_identity_breakdown(p: float, f: complex, g: complex) -> IdentityBreakdown:
    out = scalar_identity_batch(p, np.array([f]), np.array([g]))
    return IdentityBreakdown(float(out["w_term"][0]), float(out["wtilde_term"][0]),
                             float(out["rhs_closed"][0]), float(out["residual"][0]))


def vector_identity_batch(p: float, zeta: np.ndarray, xi: np.ndarray) -> dict:
    """Vector identity split for a batch of pairs in C^h, shape (n, h)."""
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    zeta = np.atleast_2d(np.asarray(zeta, dtype=complex))
    xi = np.atleast_2d(np.asarray(xi, dtype=complex))
    if zeta.shape != xi.shape:
        raise ValueError("zeta and xi must have equal shapes (n, h)")
    diff = zeta - xi
    A = np.sum(np.abs(diff) ** 2, axis=1)
    A_safe = np.where(A > 0, A, 1.0)
    # k(s) = zeta + s (xi - zeta); |k|^2 minimal at s0 with value d^2
    s0 = np.real(np.sum(np.conj(zeta) * diff, axis=1)) / A_safe
    k_at = zeta + s0[:, None] * (xi - zeta)
    d2 = np.sum(np.abs(k_at) ** 2, axis=1)
    K1m4, K2m4, K1m2 = _segment_kernels(p, A, s0, d2)
    w_term = p * A * K1m2
    wtilde_term = p * (p - 2.0) * A ** 2 * K2m4
    rhs = rhs_closed_form(p, zeta, xi, vector=True)
    residual = np.abs(w_term + wtilde_term - rhs)
    return {"w_term": w_term, "wtilde_term": wtilde_term,
            "rhs_closed": rhs, "residual": residual}


def vector_identity_breakdown(p: float, zeta, xi) -> IdentityBreakdown:
    zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
    xi = np.atleast_1d(np.asarray(xi, dtype=complex))
    out = vector_identity_batch(p, zeta[None, :], xi[None, :])
    return IdentityBreakdown(float(out["w_term"][0]), float(out["wtilde_term"][0]),
                             float(out["rhs_closed"][0]), float(out["residual"][0]))


def realified_identity_oracle(p: float, mu, nu, tol: float = 1e-12) -> dict:
    """Taylor-remainder route for the realified identity in R^(2h).

    The right side is computed through the t-integral remainder
    int_0^1 (1-t) [p(p-2)|c|^(p-4) (c . D)^2 + p |c|^(p-2) |D|^2] dt,
    c(t) = nu + t (mu - nu), D = mu - nu, using the generic adaptive engine;
    an independent numerical path from the graded-panel batch quadrature.
    """
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    mu = np.asarray(mu, dtype=float)
    nu = np.asarray(nu, dtype=float)
    if mu.shape != nu.shape or mu.ndim != 1:
        raise ValueError("mu and nu must be real vectors of equal length")
    delta = mu - nu
    nd2 = float(delta @ delta)
    lhs = float(np.linalg.norm(mu) ** p + (p - 1.0) * np.linalg.norm(nu) ** p
                - p * np.linalg.norm(nu) ** (p - 2.0) * float(nu @ mu))
    if nd2 == 0.0:
        return {"lhs": lhs, "rhs": 0.0}

    def integrand(t):
        t = np.asarray(t, dtype=float)
        c = nu[None, :] + t[:, None] * delta[None, :]
        q = np.maximum(np.sum(c * c, axis=1), 1e-300)
        cdot = c @ delta
        second = p * q ** ((p - 2.0) / 2.0) * nd2
        if p != 2.0:
            second = second + p * (p - 2.0) * q ** ((p - 4.0) / 2.0) * cdot ** 2
        return (1.0 - t) * second

    t0 = -float(nu @ delta) / nd2
    points = [t0] if 0.0 < t0 < 1.0 else []
    est = integrate_adaptive(integrand, 0.0, 1.0, tol=tol, rel_tol=tol,
                             points=points)
    return {"lhs": lhs, "rhs": est.value}


def sample_complex_pairs(rng: np.random.Generator, count: int,
                         radius: float = 10.0, adversarial: bool = True):
    """Uniform pairs on the disc of given radius, with a slice of adversarial
    near-collinear pairs (g close to f, -f, and 0) stressing the s-quadrature."""
    def disc(n):
        r = radius * np.sqrt(rng.uniform(size=n))
        ang = rng.uniform(0.0, 2.0 * math.pi, size=n)
        return r * np.exp(1j * ang)

    f = disc(count)
    g = disc(count)
    if adversarial and count >= 20:
        n_adv = count // 10
        sl = slice(0, n_adv)
        base = disc(n_adv)
        eps = 10.0 ** rng.uniform(-12.0, -3.0, size=n_adv)
        kind = rng.integers(0, 3, size=n_adv)
        wiggle = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, size=n_adv))
        f[sl] = base
        g[sl] = np.where(kind == 0, base * (1.0 + eps * wiggle),
                         np.where(kind == 1, -base * (1.0 + eps * wiggle),
                                  eps * wiggle * radius))
    return f, g


def check_cp_lower_bound(p: float, sample_count: int, seed: int) -> dict:
    """Sampled check of rhs_closed >= 2^-p |f-g|^p (the guaranteed lower end
    of the c_p window)."""
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    rng = np.random.default_rng(seed)
    f, g = sample_complex_pairs(rng, sample_count)
    rhs = rhs_closed_form(p, f, g)
    slack = rhs - 2.0 ** (-p) * np.abs(f - g) ** p
    i = int(np.argmin(slack))
    return {
        "min_slack": float(slack[i]),
        "worst_pair": ComplexPair(np.array([f[i]]), np.array([g[i]]), p),
        "slacks": slack,
    }
