"""Implicitly defined convex bodies and boundary-point validation.

A body is the solid F contained in {x : f(x) <= 0} for a C^2 scalar field f
given as an expression tree, with the origin interior (f(0) < 0 is checked at
construction).  Near a boundary point the zero set of f is the boundary of F
within the locality radius ``delta``; delta is carried here but consumed by
the sampling oracles.

``validate_point`` enforces the standing hypotheses at a point xi:

* xi lies on the zero set within a tolerance band scaled by the gradient;
* the gradient does not vanish (there is a supporting direction);
* <xi, grad f(xi)> > 0, which orients the gradient outward relative to the
  interior origin and makes the dual vector well defined.

The pivot index is the first coordinate whose partial derivative is
nonvanishing (numerically: above tol_pivot relative to the sup-norm of the
gradient).  When several partials tie near the maximum the first index wins;
this can relabel the tangent basis vectors u^j but never changes the tangent
hyperplane itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np

from . import expr
from .errors import (
    DimensionMismatchError,
    InputError,
    InvalidBodyError,
    NonSmoothPointError,
    NotOnBoundaryError,
    OrientationViolationError,
    RayEscapesError,
    ZeroDirectionError,
)
from .linalg import orthonormalize

__all__ = [
    "ImplicitBody", "BoundaryPoint", "TangentFrame",
    "validate_point", "tangent_frame", "in_tangent_hyperplane", "minkowski_gauge",
    "body_from_dict",
]


@dataclass(frozen=True)
class ImplicitBody:
    """The solid F in R^n described by the field f, with 0 interior.

    Attributes:
        n: ambient dimension, >= 2.
        f: expression tree of the defining field.
        delta: locality radius within which {f = 0} is the boundary of F.
        tol_boundary: half-width of the boundary membership band.
        tol_pivot: relative threshold for "nonvanishing" partial derivatives.
    """

    n: int
    f: expr.Expression
    delta: float
    tol_boundary: float = 1e-9
    tol_pivot: float = 1e-9

    def __post_init__(self):
        if self.n < 2:
            raise InvalidBodyError(f"dimension must be >= 2, got {self.n}")
        if not (self.delta > 0.0 and np.isfinite(self.delta)):
            raise InvalidBodyError(f"locality radius must be positive, got {self.delta}")
        origin_value = expr.evaluate(self.f, np.zeros(self.n))
        if not origin_value < 0.0:
            raise InvalidBodyError(
                f"the origin must be interior: f(0) = {origin_value!r} is not < 0"
            )

    @cached_property
    def _partials(self) -> tuple[expr.Expression, ...]:
        return tuple(expr.differentiate(self.f, k) for k in range(1, self.n + 1))

    @cached_property
    def _second_partials(self) -> dict[tuple[int, int], expr.Expression]:
        table = {}
        for k in range(1, self.n + 1):
            for l in range(k, self.n + 1):
                table[(k, l)] = expr.differentiate(self._partials[k - 1], l)
        return table

    def partial(self, k: int) -> expr.Expression:
        """The symbolic partial derivative of f with respect to x_k (1-based)."""
        return self._partials[k - 1]

    def second_partial(self, k: int, l: int) -> expr.Expression:
        """The symbolic second partial of f; stored once per unordered pair."""
        return self._second_partials[(k, l) if k <= l else (l, k)]

    def value(self, x) -> float:
        return expr.evaluate(self.f, x)

    def gradient(self, x) -> np.ndarray:
        return np.array([expr.evaluate(p, x) for p in self._partials])

    def hessian(self, x) -> np.ndarray:
        """Numeric Hessian; the upper triangle is evaluated and mirrored."""
        h = np.empty((self.n, self.n))
        for k in range(1, self.n + 1):
            for l in range(k, self.n + 1):
                v = expr.evaluate(self._second_partials[(k, l)], x)
                h[k - 1, l - 1] = v
                h[l - 1, k - 1] = v
        return h


@dataclass(frozen=True)
class BoundaryPoint:
    """A validated boundary point with its cached local data.

    Attributes:
        body: the owning body.
        point: the boundary point itself.
        grad: gradient of f there.
        hess: Hessian of f there (symmetric by construction).
        pivot: 1-based index of the first nonvanishing partial.
        dual: the dual vector grad / <point, grad>, so <point, dual> = 1.
        pairing: <point, grad>, positive by hypothesis.
    """

    body: ImplicitBody
    point: np.ndarray
    grad: np.ndarray
    hess: np.ndarray
    pivot: int
    dual: np.ndarray
    pairing: float


@dataclass(frozen=True)
class TangentFrame:
    """Basis of the tangent hyperplane at a boundary point.

    ``basis[t]`` is the vector u^j for the t-th index j != pivot (ascending):
    1 in coordinate j, -f_j/f_i in the pivot coordinate i, 0 elsewhere.
    ``ortho`` is the orthonormalized copy, and ``indices`` records j per slot.
    """

    indices: tuple[int, ...]
    basis: tuple[np.ndarray, ...]
    ortho: tuple[np.ndarray, ...]


def validate_point(body: ImplicitBody, x) -> BoundaryPoint:
    """Check the standing hypotheses at x and cache the local derivatives.

    Args:
        body: the implicit body.
        x: candidate boundary point, length body.n.

    Returns:
        A BoundaryPoint with gradient, Hessian, pivot index, dual vector and
        the pairing <x, grad f(x)>.

    Raises:
        NotOnBoundaryError: |f(x)| exceeds tol_boundary * (1 + |grad|).
        NonSmoothPointError: the gradient vanishes (no supporting direction).
        OrientationViolationError: <x, grad f(x)> <= 0.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != body.n:
        raise DimensionMismatchError(f"point must have length {body.n}, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise InputError("point has non-finite coordinates")
    grad = body.gradient(x)
    gnorm = float(np.linalg.norm(grad))
    fval = body.value(x)
    if abs(fval) > body.tol_boundary * (1.0 + gnorm):
        raise NotOnBoundaryError(
            f"f(x) = {fval!r} is outside the boundary band {body.tol_boundary} * (1 + |grad|)"
        )
    if gnorm <= body.tol_pivot:
        raise NonSmoothPointError(f"gradient norm {gnorm!r} vanishes at the point")
    pairing = float(np.dot(x, grad))
    if pairing <= 0.0:
        raise OrientationViolationError(
            f"<x, grad f(x)> = {pairing!r} must be positive (is the origin interior here?)"
        )
    gmax = float(np.max(np.abs(grad)))
    pivot = 0
    for i in range(body.n):
        if abs(grad[i]) > body.tol_pivot * gmax:
            pivot = i + 1
            break
    dual = grad / pairing
    hess = body.hessian(x)
    return BoundaryPoint(
        body=body, point=x.copy(), grad=grad, hess=hess,
        pivot=pivot, dual=dual, pairing=pairing,
    )


def tangent_frame(p: BoundaryPoint) -> TangentFrame:
    """Build the n-1 tangent basis vectors u^j and their orthonormal copy."""
    n = p.body.n
    i = p.pivot
    fi = p.grad[i - 1]
    indices = []
    basis = []
    for j in range(1, n + 1):
        if j == i:
            continue
        u = np.zeros(n)
        u[j - 1] = 1.0
        u[i - 1] = -p.grad[j - 1] / fi
        indices.append(j)
        basis.append(u)
    ortho = orthonormalize(basis)
    return TangentFrame(indices=tuple(indices), basis=tuple(basis), ortho=tuple(ortho))


def in_tangent_hyperplane(p: BoundaryPoint, u) -> bool:
    """True iff u is a nonzero vector orthogonal to the gradient at p (1e-9 relative)."""
    u = np.asarray(u, dtype=float)
    if u.ndim != 1 or u.shape[0] != p.body.n:
        raise DimensionMismatchError(f"direction must have length {p.body.n}, got shape {u.shape}")
    unorm = float(np.linalg.norm(u))
    if unorm == 0.0:
        return False
    gnorm = float(np.linalg.norm(p.grad))
    return abs(float(np.dot(u, p.grad))) <= 1e-9 * unorm * gnorm


def minkowski_gauge(body: ImplicitBody, x) -> float:
    """Gauge (Minkowski functional) of x: the lambda > 0 with x/lambda on the boundary.

    The ray {x/lambda} is scanned over the bracket lambda in [1e-9, 1e9] from
    large lambda (deep interior, f < 0) downward until f changes sign, then the
    crossing is bisected to floating-point exhaustion, which lands well inside
    |f| <= 1e-12 * (1 + |grad f|).

    Raises:
        RayEscapesError: no sign change inside the bracket (the ray never
            leaves the f <= 0 region, e.g. an unbounded body).
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != body.n:
        raise DimensionMismatchError(f"point must have length {body.n}, got shape {x.shape}")
    if float(np.linalg.norm(x)) == 0.0:
        raise ZeroDirectionError("the gauge of the zero vector is not defined by a ray crossing")

    def g(lam: float) -> float:
        return body.value(x / lam)

    grid = [10.0 ** e for e in range(9, -10, -1)]  # 1e9 down to 1e-9
    lo = hi = None
    prev_lam = grid[0]
    prev_val = g(prev_lam)
    if prev_val == 0.0:
        return prev_lam
    for lam in grid[1:]:
        val = g(lam)
        if val == 0.0:
            return lam
        if (val > 0.0) != (prev_val > 0.0):
            lo, hi = lam, prev_lam  # g(lo), g(hi) have opposite signs
            lo_val = val
            break
        prev_lam, prev_val = lam, val
    if lo is None:
        raise RayEscapesError(
            "no boundary crossing in the gauge bracket [1e-9, 1e9] along the ray"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        val = g(mid)
        if val == 0.0:
            return mid
        if (val > 0.0) == (lo_val > 0.0):
            lo = mid
            lo_val = val
        else:
            hi = mid
    return 0.5 * (lo + hi)


_TOLERANCE_KEYS = {"boundary", "pivot"}


def body_from_dict(obj: Mapping) -> ImplicitBody:
    """Build a body from its JSON object form.

    Schema: {"n": int >= 2, "f": string in the expression grammar,
    "delta": number > 0, "tolerances": {"boundary"?: number, "pivot"?: number}}.
    Unknown keys anywhere are rejected.
    """
    if not isinstance(obj, Mapping):
        raise InvalidBodyError("body JSON must be an object")
    unknown = set(obj) - {"n", "f", "delta", "tolerances"}
    if unknown:
        raise InvalidBodyError(f"unknown body keys: {sorted(unknown)}")
    missing = {"n", "f", "delta"} - set(obj)
    if missing:
        raise InvalidBodyError(f"missing body keys: {sorted(missing)}")
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise InvalidBodyError(f"'n' must be an integer, got {n!r}")
    text = obj["f"]
    if not isinstance(text, str):
        raise InvalidBodyError("'f' must be a string in the expression grammar")
    delta = obj["delta"]
    if isinstance(delta, bool) or not isinstance(delta, (int, float)):
        raise InvalidBodyError(f"'delta' must be a number, got {delta!r}")
    tols = {}
    if "tolerances" in obj:
        block = obj["tolerances"]
        if not isinstance(block, Mapping):
            raise InvalidBodyError("'tolerances' must be an object")
        unknown = set(block) - _TOLERANCE_KEYS
        if unknown:
            raise InvalidBodyError(f"unknown tolerance keys: {sorted(unknown)}")
        for key, value in block.items():
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
                raise InvalidBodyError(f"tolerance {key!r} must be a positive number, got {value!r}")
            tols["tol_" + key] = float(value)
    f = expr.parse(text, n)
    return ImplicitBody(n=n, f=f, delta=float(delta), **tols)
