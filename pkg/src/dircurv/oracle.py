"""Brute-force geometric oracles: modulus sampling and containment radii.

These routines never look at the Hessian.  They probe the boundary directly
by root-finding the field along circles inside the section plane
span{u, grad f} centered at the boundary point, and reduce curvature to its
definitional ingredients:

* ``modulus_bruteforce``: the minimal dual-pairing drop <xi - eta, dual> over
  boundary points eta at chord distance exactly r from xi inside the section
  plane -- the (sampled, two-dimensional) modulus of strict convexity at xi.
* ``gamma_estimate``: the limit of drop(r) / r^2 along a dyadic radius
  schedule, which converges to gamma_hat(u) without ever differentiating f
  twice.
* ``radius_containment``: the smallest radius R such that the dual-weighted
  osculating ball bound d(eta)^2 / (2 drop(eta)) <= R holds for every sampled
  nearby section point eta; flat sections (vanishing drop) report +inf.

Root-finding along a circle treats grid points with |f| below a gradient-
scaled floor as boundary points outright -- necessary on flat pieces, where
the field is identically zero along an arc and never changes sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .body import BoundaryPoint, in_tangent_hyperplane
from .errors import (
    DimensionMismatchError,
    InputError,
    NoBoundaryIntersectionError,
    NotTangentError,
    ZeroDirectionError,
)

__all__ = [
    "ModulusSample", "GammaEstimate",
    "modulus_bruteforce", "gamma_estimate", "radius_containment",
]


@dataclass(frozen=True)
class ModulusSample:
    """Sampled modulus at one chord radius.

    Attributes:
        r: the chord radius probed.
        value: minimal dual drop <xi - eta, dual> over the intersection points.
        witnesses: the intersection points attaining the minimum (within
            max(1e-12, 1e-6 |value|)).
    """

    r: float
    value: float
    witnesses: tuple[np.ndarray, ...]


@dataclass(frozen=True)
class GammaEstimate:
    """Derivative-free estimate of gamma_hat along a dyadic radius schedule.

    ``quotients[k]`` is drop(r_k) / r_k^2 for r_k = r_0 / 2^k; ``estimate``
    is the final (smallest-radius) quotient.
    """

    estimate: float
    quotients: tuple[float, ...]


def _section_basis(p: BoundaryPoint, u) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal basis (e_t, e_n) of the section plane span{u, grad}."""
    u = np.asarray(u, dtype=float)
    if u.ndim != 1 or u.shape[0] != p.body.n:
        raise DimensionMismatchError(
            f"direction must have length {p.body.n}, got shape {u.shape}"
        )
    unorm = float(np.linalg.norm(u))
    if unorm == 0.0:
        raise ZeroDirectionError("section plane of the zero direction is not defined")
    if not in_tangent_hyperplane(p, u):
        raise NotTangentError("direction is not tangent at the point")
    e_t = u / unorm
    w = p.grad - float(np.dot(p.grad, e_t)) * e_t
    e_n = w / float(np.linalg.norm(w))
    return e_t, e_n


def _circle_roots(
    p: BoundaryPoint, e_t: np.ndarray, e_n: np.ndarray, r: float, m: int
) -> list[np.ndarray]:
    """Boundary points on the radius-r circle around p inside the section plane.

    Scans m equispaced angles; a grid value within the floor is a root
    outright (flat arcs), and each sign change between non-root neighbours is
    bisected in the angle until the interval exhausts float resolution.
    """
    body = p.body
    xi = p.point
    ftol = 1e-12 * (1.0 + float(np.linalg.norm(p.grad)))

    def at(theta: float) -> np.ndarray:
        return xi + r * math.cos(theta) * e_t + r * math.sin(theta) * e_n

    thetas = [2.0 * math.pi * s / m for s in range(m)]
    values = [body.value(at(th)) for th in thetas]
    roots: list[float] = []
    is_root = [abs(v) <= ftol for v in values]
    for s in range(m):
        if is_root[s]:
            roots.append(thetas[s])
    for s in range(m):
        s_next = (s + 1) % m
        if is_root[s] or is_root[s_next]:
            continue
        va, vb = values[s], values[s_next]
        if (va > 0.0) == (vb > 0.0):
            continue
        lo, hi = thetas[s], thetas[s] + 2.0 * math.pi / m
        v_lo = va
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:
                break
            v_mid = body.value(at(mid))
            if abs(v_mid) <= ftol:
                lo = hi = mid
                break
            if (v_mid > 0.0) == (v_lo > 0.0):
                lo, v_lo = mid, v_mid
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))
    return [at(th) for th in roots]


def modulus_bruteforce(p: BoundaryPoint, u, r: float, m: int = 512) -> ModulusSample:
    """Sample the two-dimensional modulus of strict convexity at chord radius r.

    Args:
        p: validated boundary point.
        u: tangent direction selecting the section plane.
        r: chord radius, 0 < r < body.delta.
        m: number of scan angles, at least 64.

    Raises:
        NoBoundaryIntersectionError: the circle misses the boundary entirely.
    """
    if not 0.0 < r < p.body.delta:
        raise InputError(
            f"chord radius must satisfy 0 < r < delta = {p.body.delta}, got {r!r}"
        )
    if m < 64:
        raise InputError(f"need at least 64 scan angles, got {m}")
    e_t, e_n = _section_basis(p, u)
    etas = _circle_roots(p, e_t, e_n, r, m)
    if not etas:
        raise NoBoundaryIntersectionError(
            f"the radius-{r} section circle does not meet the boundary"
        )
    drops = [float(np.dot(p.point - eta, p.dual)) for eta in etas]
    value = min(drops)
    band = max(1e-12, 1e-6 * abs(value))
    witnesses = tuple(
        eta for eta, d in zip(etas, drops) if d - value <= band
    )
    return ModulusSample(r=r, value=value, witnesses=witnesses)


def gamma_estimate(p: BoundaryPoint, u, m: int = 512) -> GammaEstimate:
    """Estimate gamma_hat(u) as the small-radius limit of drop(r) / r^2.

    Radii follow the dyadic schedule r_k = r_0 / 2^k for k = 0..6 with
    r_0 = min(delta / 4, 0.1); the estimate is the last quotient.
    """
    r0 = min(p.body.delta / 4.0, 0.1)
    quotients = []
    for k in range(7):
        rk = r0 * 0.5**k
        sample = modulus_bruteforce(p, u, rk, m)
        quotients.append(sample.value / (rk * rk))
    return GammaEstimate(estimate=quotients[-1], quotients=tuple(quotients))


def radius_containment(p: BoundaryPoint, u, eps: float, m: int = 512) -> float:
    """Smallest dual-weighted ball radius containing the sampled section locally.

    For every boundary point eta found on section circles of radii
    eps * l / 16 (l = 1..16), the containment bound is
    |eta - xi|^2 / (2 <xi - eta, dual>); the result is the maximum over all
    sampled points, or +inf as soon as a sampled point is flat (drop below
    1e-10 |eta - xi|^2).  Converges to radius_hat / |dual| as eps shrinks.
    """
    if not 0.0 < eps < p.body.delta / 2.0:
        raise InputError(
            f"sampling radius must satisfy 0 < eps < delta/2 = {p.body.delta / 2.0}, "
            f"got {eps!r}"
        )
    e_t, e_n = _section_basis(p, u)
    worst = 0.0
    levels = 16
    for l in range(1, levels + 1):
        rho = eps * l / levels
        etas = _circle_roots(p, e_t, e_n, rho, m)
        if not etas:
            raise NoBoundaryIntersectionError(
                f"the radius-{rho} section circle does not meet the boundary"
            )
        for eta in etas:
            dsq = float(np.dot(eta - p.point, eta - p.point))
            drop = float(np.dot(p.point - eta, p.dual))
            if drop <= 1e-10 * dsq:
                return math.inf
            worst = max(worst, dsq / (2.0 * drop))
    return worst
